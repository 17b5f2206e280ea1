#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "fgaut/random.hpp"
#include "fgaut/word.hpp"

using namespace fgaut;

namespace {

// Reference reduction: repeatedly delete the first cancelling pair.
std::vector<letter_t> naive_reduce(std::vector<letter_t> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == -s[i + 1]) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return s;
}

// Cancels pairs at random positions until none remain.
std::vector<letter_t> random_order_reduce(std::vector<letter_t> s, Rng& rng) {
  while (true) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == -s[i + 1]) spots.push_back(i);
    if (spots.empty()) return s;
    std::size_t i = spots[rng.below(spots.size())];
    s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + 2));
  }
}

std::vector<letter_t> raw_letters(Rng& rng, int rank, std::size_t len) {
  std::vector<letter_t> s;
  for (std::size_t i = 0; i < len; ++i) {
    auto g = static_cast<letter_t>(rng.below(static_cast<std::size_t>(rank)) + 1);
    s.push_back(rng.coin() ? g : -g);
  }
  return s;
}

std::vector<letter_t> as_vector(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

}  // namespace

TEST(Parse, IdentityToken) {
  Word w = parse_word("1", 2);
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(w.rank(), 2);
}

TEST(Parse, Cancels) { EXPECT_EQ(parse_word("x1 X1 x2", 2), word(2, {2})); }

TEST(Parse, AlreadyReduced) {
  Word w = parse_word("x1 x2 X1", 3);
  EXPECT_EQ(w.size(), 3U);
  EXPECT_EQ(w, word(3, {1, 2, -1}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_word("", 2), SyntaxError);
  EXPECT_THROW(parse_word("x1  x2", 2), SyntaxError);
  EXPECT_THROW(parse_word(" x1", 2), SyntaxError);
  EXPECT_THROW(parse_word("x1 ", 2), SyntaxError);
  EXPECT_THROW(parse_word("y1", 2), SyntaxError);
  EXPECT_THROW(parse_word("x01", 2), SyntaxError);
  EXPECT_THROW(parse_word("x0", 2), SyntaxError);
  EXPECT_THROW(parse_word("x", 2), SyntaxError);
  EXPECT_THROW(parse_word("1 x1", 2), SyntaxError);
  EXPECT_THROW(parse_word("x1\tx2", 2), SyntaxError);
  EXPECT_THROW(parse_word("x3", 2), RankError);
  EXPECT_THROW(parse_word("x1", 0), RankError);
}

TEST(Parse, RoundTrip) {
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    int rank = static_cast<int>(rng.between(1, 12));
    Word w = random_word_upto(rng, rank, 20);
    EXPECT_EQ(parse_word(render(w), rank), w);
  }
  for (const char* text : {"1", "x1", "X12 x3 x12", "x1 x2 X1 X2"}) {
    EXPECT_EQ(render(parse_word(text, 12)), text);
  }
}

TEST(Multiply, Examples) {
  EXPECT_TRUE(multiply(word(2, {1, 2}), word(2, {-2, -1})).empty());
  EXPECT_EQ(multiply(word(2, {1}), word(2, {1})), word(2, {1, 1}));
  EXPECT_EQ(multiply(word(2, {1, 2, -1}), word(2, {1, -2})), word(2, {1}));
  EXPECT_THROW(multiply(word(2, {1}), word(3, {1})), RankError);
}

TEST(Multiply, Associative) {
  Rng rng(12);
  for (int t = 0; t < 10000; ++t) {
    int rank = static_cast<int>(rng.between(1, 4));
    Word u = random_word_upto(rng, rank, 8);
    Word v = random_word_upto(rng, rank, 8);
    Word w = random_word_upto(rng, rank, 8);
    ASSERT_EQ((u * v) * w, u * (v * w));
  }
}

TEST(Multiply, MatchesNaiveReduction) {
  Rng rng(13);
  for (int t = 0; t < 2000; ++t) {
    auto a = raw_letters(rng, 2, rng.below(12));
    auto b = raw_letters(rng, 2, rng.below(12));
    std::vector<letter_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    Word prod = Word::from_letters(2, a) * Word::from_letters(2, b);
    ASSERT_EQ(as_vector(prod), naive_reduce(ab));
  }
}

TEST(Reduction, Confluent) {
  Rng rng(14);
  for (int t = 0; t < 1000; ++t) {
    auto s = raw_letters(rng, static_cast<int>(rng.between(1, 3)), rng.below(30));
    Word w = Word::from_letters(3, s);
    ASSERT_EQ(as_vector(w), random_order_reduce(s, rng));
    ASSERT_EQ(as_vector(w), naive_reduce(s));
  }
}

TEST(Invert, Examples) {
  EXPECT_TRUE(invert_word(Word(2)).empty());
  EXPECT_EQ(invert_word(word(2, {1, 2})), word(2, {-2, -1}));
  EXPECT_EQ(invert_word(word(2, {1, 2, -1, -2})), word(2, {2, 1, -2, -1}));
  Rng rng(15);
  for (int t = 0; t < 1000; ++t) {
    Word w = random_word_upto(rng, 3, 15);
    ASSERT_TRUE((w * invert_word(w)).empty());
  }
}

TEST(CyclicReduce, Examples) {
  auto a = cyclic_reduce(word(2, {1, 2, -1}));
  EXPECT_EQ(a.core, word(2, {2}));
  EXPECT_EQ(a.conjugator, word(2, {1}));
  auto b = cyclic_reduce(word(2, {2}));
  EXPECT_EQ(b.core, word(2, {2}));
  EXPECT_TRUE(b.conjugator.empty());
  auto c = cyclic_reduce(word(2, {1, 2, -2, -1}));
  EXPECT_TRUE(c.core.empty());
  EXPECT_TRUE(c.conjugator.empty());
}

TEST(CyclicReduce, Properties) {
  Rng rng(16);
  for (int t = 0; t < 2000; ++t) {
    Word w = random_word_upto(rng, 3, 16);
    auto cr = cyclic_reduce(w);
    ASSERT_LE(cr.core.size(), w.size());
    ASSERT_EQ(conjugate(cr.core, cr.conjugator), w);
    if (cr.core.size() >= 2) {
      ASSERT_NE(cr.core.front(), -cr.core.back());
    }
    ASSERT_EQ(cyclic_length(w), cr.core.size());
  }
}

TEST(Conjugate, Examples) {
  EXPECT_EQ(conjugate(word(2, {2}), word(2, {1})), word(2, {1, 2, -1}));
  EXPECT_TRUE(conjugate(Word(2), word(2, {1, 2, 2})).empty());
  EXPECT_EQ(conjugate(word(2, {1}), word(2, {1, 1})), word(2, {1}));
  EXPECT_THROW(conjugate(word(2, {1}), word(3, {1})), RankError);
}

TEST(Power, Basic) {
  Word w = word(2, {1, 2});
  EXPECT_EQ(power(w, 0), Word(2));
  EXPECT_EQ(power(w, 2), word(2, {1, 2, 1, 2}));
  EXPECT_EQ(power(w, -1), invert_word(w));
}

TEST(LengthGuard, Throws) {
  std::size_t old = max_word_length();
  set_max_word_length(10);
  EXPECT_THROW(power(word(1, {1}), 11), LengthError);
  EXPECT_NO_THROW(power(word(1, {1}), 10));
  set_max_word_length(old);
}

TEST(Letter, Codes) {
  Word w = word(3, {1, -3});
  EXPECT_EQ(w.letter(0).index, 1);
  EXPECT_EQ(w.letter(0).sign, 1);
  EXPECT_EQ(w.letter(1).index, 3);
  EXPECT_EQ(w.letter(1).sign, -1);
  EXPECT_THROW(word(2, {3}), RankError);
  EXPECT_THROW(word(2, {0}), RankError);
}
