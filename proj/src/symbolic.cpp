#include "thermoform/symbolic.hpp"

#include <charconv>
#include <limits>

namespace thermoform {

namespace {

void check_alphabet(Symbol alphabet_size) {
  if (alphabet_size < 2) {
    throw InvalidInputError("alphabet size must be at least 2, got " +
                            std::to_string(alphabet_size));
  }
}

}  // namespace

std::uint64_t word_count(Symbol alphabet_size, std::size_t length) {
  check_alphabet(alphabet_size);
  std::uint64_t count = 1;
  for (std::size_t q = 0; q < length; ++q) {
    if (count > std::numeric_limits<std::uint64_t>::max() / alphabet_size) {
      throw ResourceLimitError("word count " + std::to_string(alphabet_size) +
                               "^" + std::to_string(length) +
                               " overflows 64 bits");
    }
    count *= alphabet_size;
  }
  return count;
}

Word::Word(std::vector<Symbol> symbols, Symbol alphabet_size)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
  check_alphabet(alphabet_size_);
  if (symbols_.empty()) {
    throw InvalidInputError("words are nonempty");
  }
  for (Symbol s : symbols_) {
    if (s < 1 || s > alphabet_size_) {
      throw InvalidInputError("symbol " + std::to_string(s) +
                              " outside alphabet of size " +
                              std::to_string(alphabet_size_));
    }
  }
}

Word concat(const Word& a, const Word& b) {
  if (a.alphabet_size() != b.alphabet_size()) {
    throw InvalidInputError("cannot concatenate words over different alphabets");
  }
  std::vector<Symbol> joined = a.symbols();
  joined.insert(joined.end(), b.symbols().begin(), b.symbols().end());
  return Word(std::move(joined), a.alphabet_size());
}

Word word_power(const Word& w, std::size_t n) {
  if (n == 0) {
    throw InvalidInputError("word power requires a positive exponent");
  }
  std::vector<Symbol> repeated;
  repeated.reserve(w.length() * n);
  for (std::size_t q = 0; q < n; ++q) {
    repeated.insert(repeated.end(), w.symbols().begin(), w.symbols().end());
  }
  return Word(std::move(repeated), w.alphabet_size());
}

std::uint64_t lex_index(const Word& w) {
  const std::uint64_t total = word_count(w.alphabet_size(), w.length());
  (void)total;  // overflow guard for the accumulation below
  std::uint64_t index = 0;
  for (Symbol s : w.symbols()) {
    index = index * w.alphabet_size() + (s - 1);
  }
  return index + 1;
}

Word lex_inverse(std::uint64_t index, Symbol alphabet_size, std::size_t length) {
  if (length == 0) {
    throw InvalidInputError("words are nonempty");
  }
  const std::uint64_t total = word_count(alphabet_size, length);
  if (index < 1 || index > total) {
    throw InvalidInputError("lex index " + std::to_string(index) +
                            " outside [1, " + std::to_string(total) + "]");
  }
  std::vector<Symbol> symbols(length);
  std::uint64_t rest = index - 1;
  for (std::size_t pos = length; pos-- > 0;) {
    symbols[pos] = static_cast<Symbol>(rest % alphabet_size) + 1;
    rest /= alphabet_size;
  }
  return Word(std::move(symbols), alphabet_size);
}

Word recode_word(const Word& w, std::size_t block_length) {
  if (block_length == 0 || w.length() % block_length != 0) {
    throw InvalidInputError("block length " + std::to_string(block_length) +
                            " does not divide word length " +
                            std::to_string(w.length()));
  }
  const std::uint64_t recoded_alphabet =
      word_count(w.alphabet_size(), block_length);
  if (recoded_alphabet > std::numeric_limits<Symbol>::max()) {
    throw ResourceLimitError("recoded alphabet does not fit a symbol");
  }
  std::vector<Symbol> blocks;
  blocks.reserve(w.length() / block_length);
  for (std::size_t start = 0; start < w.length(); start += block_length) {
    std::vector<Symbol> chunk(w.symbols().begin() + start,
                              w.symbols().begin() + start + block_length);
    blocks.push_back(static_cast<Symbol>(
        lex_index(Word(std::move(chunk), w.alphabet_size()))));
  }
  return Word(std::move(blocks), static_cast<Symbol>(recoded_alphabet));
}

LexWordStream::LexWordStream(Symbol alphabet_size, std::size_t length,
                             EnumerationBudget budget)
    : alphabet_size_(alphabet_size) {
  if (length == 0) {
    throw InvalidInputError("words are nonempty");
  }
  const std::uint64_t total = word_count(alphabet_size, length);
  if (total > budget.max_terms) {
    throw ResourceLimitError(
        "enumerating " + std::to_string(total) + " words exceeds budget of " +
        std::to_string(budget.max_terms));
  }
  current_.assign(length, 1);
}

bool LexWordStream::advance() {
  if (exhausted_) return false;
  for (std::size_t pos = current_.size(); pos-- > 0;) {
    if (current_[pos] < alphabet_size_) {
      ++current_[pos];
      return true;
    }
    current_[pos] = 1;
  }
  exhausted_ = true;
  current_.clear();
  return false;
}

std::string to_string(const Word& w) {
  std::string text;
  const bool digits = w.alphabet_size() <= 9;
  for (std::size_t pos = 0; pos < w.length(); ++pos) {
    if (!digits && pos > 0) text += ',';
    text += std::to_string(w.at(pos));
  }
  return text;
}

Word parse_word(std::string_view text, Symbol alphabet_size) {
  check_alphabet(alphabet_size);
  if (text.empty()) {
    throw InvalidInputError("empty word text");
  }
  std::vector<Symbol> symbols;
  if (alphabet_size <= 9) {
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw InvalidInputError(std::string("invalid symbol character '") + c +
                                "' in word text");
      }
      symbols.push_back(static_cast<Symbol>(c - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      Symbol value = 0;
      auto [ptr, ec] =
          std::from_chars(text.data() + start, text.data() + end, value);
      if (ec != std::errc() || ptr != text.data() + end) {
        throw InvalidInputError("invalid symbol token in word text");
      }
      symbols.push_back(value);
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  return Word(std::move(symbols), alphabet_size);
}

}  // namespace thermoform
