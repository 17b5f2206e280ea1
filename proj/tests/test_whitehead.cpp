#include <gtest/gtest.h>

#include <vector>

#include "fgaut/random.hpp"
#include "fgaut/whitehead.hpp"

using namespace fgaut;

namespace {

std::vector<Word> reduced_words(int rank, std::size_t max_len) {
  std::vector<Word> out{Word(rank)};
  std::vector<Word> frontier{Word(rank)};
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (letter_t c = -rank; c <= rank; ++c) {
        if (c == 0 || (!w.empty() && w.back() == -c)) continue;
        next.push_back(w * Word::from_letters(rank, {c}));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(word(2, {1})));
  EXPECT_TRUE(is_primitive(word(2, {1, 2})));
  EXPECT_TRUE(is_primitive(word(2, {1, 1, 2})));
  EXPECT_TRUE(is_primitive(word(3, {1, 2, 3})));
  EXPECT_FALSE(is_primitive(word(2, {1, 1})));
  EXPECT_FALSE(is_primitive(word(2, {1, 2, -1, -2})));
  EXPECT_FALSE(is_primitive(Word(2)));
  EXPECT_FALSE(is_primitive(word(2, {1, 1, 2, 2})));
  EXPECT_THROW(is_primitive(word(1, {1})), RankError);
}

TEST(Primitive, ImagesOfBasisLetters) {
  Rng rng(51);
  for (int t = 0; t < 500; ++t) {
    int n = static_cast<int>(rng.between(2, 4));
    Automorphism f = random_automorphism(n, static_cast<int>(rng.between(1, 10)), rng);
    int g = static_cast<int>(rng.between(1, n));
    ASSERT_TRUE(is_primitive(f.image(g))) << render(f);
  }
}

TEST(Primitive, ProperPowersAreNot) {
  Rng rng(52);
  for (int t = 0; t < 300; ++t) {
    Automorphism f = random_automorphism(3, 6, rng);
    Word p = f.image(1);
    ASSERT_FALSE(is_primitive(power(p, 2)));
    ASSERT_FALSE(is_primitive(power(p, -3)));
  }
}

TEST(Primitive, InvariantUnderAutomorphisms) {
  Rng rng(53);
  for (int t = 0; t < 300; ++t) {
    Word w = random_word_upto(rng, 2, 8);
    Automorphism f = random_automorphism(2, 6, rng);
    ASSERT_EQ(is_primitive(w), is_primitive(apply(f, w))) << render(w);
    ASSERT_EQ(is_primitive(w), is_primitive(conjugate(w, random_word_upto(rng, 2, 4))));
  }
}

TEST(Minimize, TraceIsConsistent) {
  Word w = word(2, {1, 2, 1, 2, 2});
  auto tr = whitehead_minimize(w);
  EXPECT_EQ(tr.start, w);
  std::size_t prev = cyclic_length(w);
  for (const auto& m : tr.moves) {
    EXPECT_LT(m.cyclic_length, prev);
    prev = m.cyclic_length;
  }
  EXPECT_EQ(tr.end.size(), prev);
}

TEST(Census, AgreesWithBruteLength4) {
  auto brute = primitive_census_brute(2, 4);
  for (const auto& w : reduced_words(2, 4)) {
    ASSERT_EQ(is_primitive(w), brute.count(w) == 1) << render(w);
  }
}

TEST(Census, KnownCounts) {
  // Primitive elements of F2 by length: 4, 8, 16 (x1^2 x2 type and conjugates).
  auto brute = primitive_census_brute(2, 3);
  std::size_t len1 = 0, len2 = 0;
  for (const auto& w : brute) {
    if (w.size() == 1) ++len1;
    if (w.size() == 2) ++len2;
  }
  EXPECT_EQ(len1, 4U);
  EXPECT_EQ(len2, 8U);
}

TEST(SpecExamples, Minimize) {
  auto a = whitehead_minimize(word(2, {1}));
  EXPECT_EQ(a.end, word(2, {1}));
  EXPECT_TRUE(a.moves.empty());
  EXPECT_EQ(whitehead_minimize(word(2, {1, 2, -1})).end.size(), 1U);
  auto c = whitehead_minimize(word(2, {1, 1}));
  EXPECT_EQ(c.end, word(2, {1, 1}));
  EXPECT_TRUE(c.moves.empty());
  EXPECT_TRUE(is_primitive(word(2, {2})));
  EXPECT_TRUE(is_primitive(conjugate(word(2, {1}), word(2, {2}))));
  auto census = primitive_census_brute(2, 1);
  EXPECT_EQ(census, (std::set<Word>{word(2, {1}), word(2, {-1}), word(2, {2}), word(2, {-2})}));
}
