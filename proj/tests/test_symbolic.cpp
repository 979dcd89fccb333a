#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "thermoform/symbolic.hpp"

using namespace thermoform;

TEST_CASE("word_count multiplies and guards overflow") {
  CHECK(word_count(2, 0) == 1);
  CHECK(word_count(2, 10) == 1024);
  CHECK(word_count(3, 4) == 81);
  CHECK_THROWS_AS(word_count(2, 64), ResourceLimitError);
}

TEST_CASE("word validation") {
  CHECK_THROWS_AS(Word({}, 2), InvalidInputError);
  CHECK_THROWS_AS(Word({1, 2}, 1), InvalidInputError);
  CHECK_THROWS_AS(Word({0, 1}, 2), InvalidInputError);
  CHECK_THROWS_AS(Word({3}, 2), InvalidInputError);
  const Word w({1, 2, 1}, 2);
  CHECK(w.length() == 3);
  CHECK(w.alphabet_size() == 2);
  CHECK(w.at(0) == 1);
  CHECK(w.at(1) == 2);
}

TEST_CASE("lex_index pins the rank convention") {
  // Rank 1 is the all-ones word; the last symbol varies fastest.
  CHECK(lex_index(Word({1, 1}, 2)) == 1);
  CHECK(lex_index(Word({1, 2}, 2)) == 2);
  CHECK(lex_index(Word({2, 1}, 2)) == 3);
  CHECK(lex_index(Word({2, 2}, 2)) == 4);
  CHECK(lex_index(Word({3, 1}, 3)) == 7);
}

TEST_CASE("lex_inverse round trips exhaustively") {
  for (Symbol n : {Symbol{2}, Symbol{3}}) {
    for (std::size_t len = 1; len <= 5; ++len) {
      const std::uint64_t total = word_count(n, len);
      for (std::uint64_t index = 1; index <= total; ++index) {
        const Word w = lex_inverse(index, n, len);
        CHECK(lex_index(w) == index);
      }
    }
  }
  CHECK_THROWS_AS(lex_inverse(0, 2, 3), InvalidInputError);
  CHECK_THROWS_AS(lex_inverse(9, 2, 3), InvalidInputError);
}

TEST_CASE("concat and word_power") {
  const Word a({1, 2}, 2);
  const Word b({2, 2}, 2);
  CHECK(concat(a, b) == Word({1, 2, 2, 2}, 2));
  CHECK(word_power(a, 3) == Word({1, 2, 1, 2, 1, 2}, 2));
  CHECK_THROWS_AS(word_power(a, 0), InvalidInputError);
  CHECK_THROWS_AS(concat(a, Word({1}, 3)), InvalidInputError);
}

TEST_CASE("recode_word blocks pairs of symbols") {
  // Blocks of two binary symbols map onto a four letter alphabet in rank
  // order: 11 -> 1, 12 -> 2, 21 -> 3, 22 -> 4.
  CHECK(recode_word(Word({1, 1, 2, 2}, 2), 2) == Word({1, 4}, 4));
  CHECK(recode_word(Word({1, 2, 2, 1}, 2), 2) == Word({2, 3}, 4));
  CHECK(recode_word(Word({1, 2, 1}, 2), 1) == Word({1, 2, 1}, 2));
  CHECK_THROWS_AS(recode_word(Word({1, 2, 1}, 2), 2), InvalidInputError);
}

TEST_CASE("recode_word agrees with lex_inverse block by block") {
  for (std::uint64_t index = 1; index <= 16; ++index) {
    const Word w = lex_inverse(index, 2, 4);
    const Word recoded = recode_word(w, 2);
    REQUIRE(recoded.length() == 2);
    for (std::size_t block = 0; block < 2; ++block) {
      const Word piece({w.at(2 * block), w.at(2 * block + 1)}, 2);
      CHECK(recoded.at(block) == lex_index(piece));
    }
  }
}

TEST_CASE("stream enumerates in rank order") {
  LexWordStream stream(3, 3);
  std::uint64_t index = 1;
  while (!stream.exhausted()) {
    CHECK(stream.current() == lex_inverse(index, 3, 3).symbols());
    stream.advance();
    ++index;
  }
  CHECK(index == 28);  // 27 words visited

  EnumerationBudget tiny{16};
  CHECK_THROWS_AS(LexWordStream(2, 5, tiny), ResourceLimitError);
}

TEST_CASE("for_each_word covers the full level") {
  std::size_t count = 0;
  std::vector<Symbol> first;
  std::vector<Symbol> last;
  for_each_word(2, 4, [&](const std::vector<Symbol>& symbols) {
    if (count == 0) first = symbols;
    last = symbols;
    ++count;
  });
  CHECK(count == 16);
  CHECK(first == std::vector<Symbol>{1, 1, 1, 1});
  CHECK(last == std::vector<Symbol>{2, 2, 2, 2});
}

TEST_CASE("word text round trip") {
  CHECK(to_string(Word({1, 2, 2, 1}, 2)) == "1221");
  const Word wide({10, 2}, 12);
  CHECK(to_string(wide) == "10,2");
  CHECK(parse_word("1221", 2) == Word({1, 2, 2, 1}, 2));
  CHECK(parse_word("10,2", 12) == wide);
  CHECK_THROWS_AS(parse_word("1031", 2), InvalidInputError);
  CHECK_THROWS_AS(parse_word("", 2), InvalidInputError);
}
