#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thermoform/errors.hpp"

namespace thermoform {

// Symbols are 1-based: a word over an alphabet of size N draws from {1,...,N}.
using Symbol = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

// Cap on the number of terms an exhaustive enumeration may visit.
struct EnumerationBudget {
  std::uint64_t max_terms = kDefaultEnumerationBudget;
};

// N^n, guarded against uint64 overflow (throws ResourceLimitError).
std::uint64_t word_count(Symbol alphabet_size, std::size_t length);

// Finite nonempty word over a fixed alphabet {1,...,N}, N >= 2.
class Word {
 public:
  Word(std::vector<Symbol> symbols, Symbol alphabet_size);

  Symbol alphabet_size() const { return alphabet_size_; }
  std::size_t length() const { return symbols_.size(); }
  // 0-based position, 1-based symbol value.
  Symbol at(std::size_t pos) const { return symbols_[pos]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_size_ == b.alphabet_size_ && a.symbols_ == b.symbols_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Symbol> symbols_;
  Symbol alphabet_size_;
};

// Juxtaposition ij; both words must share one alphabet.
Word concat(const Word& a, const Word& b);

// w repeated n times, n >= 1.
Word word_power(const Word& w, std::size_t n);

// 1-based rank of w among all words of its length in lexicographic order;
// inverse of lex_inverse. Equals 1 + sum (w_q - 1) N^(n-q).
std::uint64_t lex_index(const Word& w);

// Word of the given length whose lex_index equals index (1 <= index <= N^n).
Word lex_inverse(std::uint64_t index, Symbol alphabet_size, std::size_t length);

// Splits w into consecutive blocks of the given length (which must divide |w|)
// and replaces each block by its lex rank, producing a word over {1,...,N^block}.
Word recode_word(const Word& w, std::size_t block_length);

// Streams all words of one length in strictly increasing lexicographic order
// without materialising the list. Construction checks the budget.
class LexWordStream {
 public:
  LexWordStream(Symbol alphabet_size, std::size_t length,
                EnumerationBudget budget = {});

  // Valid until the next advance(); empty only after exhaustion.
  const std::vector<Symbol>& current() const { return current_; }
  bool exhausted() const { return exhausted_; }
  // Steps to the lexicographic successor; false once all words were seen.
  bool advance();

 private:
  std::vector<Symbol> current_;
  Symbol alphabet_size_;
  bool exhausted_ = false;
};

// Applies fn to every word of the given length, in lexicographic order.
// fn receives const std::vector<Symbol>&; the buffer is reused between calls.
template <typename Fn>
void for_each_word(Symbol alphabet_size, std::size_t length, Fn&& fn,
                   EnumerationBudget budget = {}) {
  LexWordStream stream(alphabet_size, length, budget);
  if (stream.exhausted()) return;
  do {
    fn(stream.current());
  } while (stream.advance());
}

// Compact form: digit string ("1221") when N <= 9, comma-separated otherwise.
std::string to_string(const Word& w);
Word parse_word(std::string_view text, Symbol alphabet_size);

}  // namespace thermoform
