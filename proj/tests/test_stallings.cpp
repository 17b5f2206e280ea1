#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "fgaut/involution.hpp"
#include "fgaut/random.hpp"
#include "fgaut/stallings.hpp"

using namespace fgaut;

namespace {

// Every element of the subgroup that is a product of at most `factors`
// generators (or their inverses), restricted to length <= max_len.
std::set<Word> products_upto(int rank, const std::vector<Word>& gens, int factors, std::size_t max_len) {
  std::vector<Word> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(invert_word(g));
  }
  std::set<Word> seen{Word(rank)};
  std::vector<Word> frontier{Word(rank)};
  for (int d = 0; d < factors; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        Word p = w * l;
        if (p.size() <= 2 * max_len + 4 && seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  std::set<Word> out;
  for (const auto& w : seen)
    if (w.size() <= max_len) out.insert(w);
  return out;
}

void all_words(int rank, std::size_t max_len, std::vector<Word>& out) {
  std::vector<Word> frontier{Word(rank)};
  out.push_back(Word(rank));
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
}

}  // namespace

TEST(Fold, FreeFactor) {
  SubgroupGraph g = fold(3, {word(3, {1}), word(3, {2})});
  EXPECT_EQ(graph_rank(g), 2);
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_TRUE(contains(g, word(3, {1, 2, -1, -1})));
  EXPECT_FALSE(contains(g, word(3, {1, 3})));
  EXPECT_TRUE(contains(g, Word(3)));
}

TEST(Fold, FoldsSharedPrefixes) {
  // <x1 x2, x1 X2> = <x1 x2, x2 x2> after folding
  SubgroupGraph g = fold(2, {word(2, {1, 2}), word(2, {1, -2})});
  EXPECT_EQ(graph_rank(g), 2);
  EXPECT_TRUE(contains(g, word(2, {2, 2})));
  EXPECT_FALSE(contains(g, word(2, {2})));
  EXPECT_FALSE(contains(g, word(2, {1})));
}

TEST(Fold, RedundantGenerators) {
  SubgroupGraph g = fold(2, {word(2, {1}), word(2, {1, 1}), word(2, {2, 1, -2}), word(2, {2, 1, 1, -2})});
  EXPECT_EQ(graph_rank(g), 2);
  EXPECT_EQ(subgroup_basis(g).size(), 2U);
}

TEST(Fold, WholeGroup) {
  SubgroupGraph g = fold(2, {word(2, {1, 2}), word(2, {2})});
  EXPECT_EQ(graph_rank(g), 2);
  EXPECT_EQ(g.vertex_count(), 1);
}

TEST(Fold, TrivialSubgroup) {
  SubgroupGraph g = fold(2, {Word(2), word(2, {1, -1})});
  EXPECT_EQ(graph_rank(g), 0);
  EXPECT_TRUE(contains(g, Word(2)));
  EXPECT_FALSE(contains(g, word(2, {1})));
}

TEST(Membership, MatchesBruteProducts) {
  // Nielsen-reduced generating sets: a product of k factors has length >= k,
  // so products of <= L factors list every member of length <= L.
  const std::size_t L = 6;
  std::vector<std::vector<Word>> sets = {
      {word(2, {1, 1}), word(2, {2, 1, -2})},
      {word(2, {1, 2}), word(2, {2, 2})},
      {word(3, {1}), word(3, {2, 3, -2})},
      {word(3, {1, 2}), word(3, {3, 1}), word(3, {2, -3})},
  };
  for (const auto& gens : sets) {
    int rank = gens.front().rank();
    SubgroupGraph g = fold(rank, gens);
    std::set<Word> members = products_upto(rank, gens, static_cast<int>(L), L);
    std::vector<Word> words;
    all_words(rank, L, words);
    for (const auto& w : words) {
      ASSERT_EQ(contains(g, w), members.count(w) == 1) << render(w);
    }
  }
}

TEST(Basis, GeneratesSameSubgroup) {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    int rank = static_cast<int>(rng.between(2, 3));
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_word_upto(rng, rank, 5));
    SubgroupGraph g = fold(rank, gens);
    auto basis = subgroup_basis(g);
    ASSERT_EQ(static_cast<int>(basis.size()), graph_rank(g));
    SubgroupGraph h = fold(rank, basis);
    for (const auto& w : gens) ASSERT_TRUE(contains(h, w));
    for (const auto& b : basis) ASSERT_TRUE(contains(g, b));
    ASSERT_EQ(render(g), render(h));
  }
}

TEST(Intersect, PowersOfX1) {
  SubgroupGraph a = fold(3, {word(3, {1}), word(3, {2})});
  SubgroupGraph b = fold(3, {word(3, {1}), word(3, {3})});
  SubgroupGraph c = intersect(a, b);
  EXPECT_EQ(graph_rank(c), 1);
  std::vector<Word> words;
  all_words(3, 6, words);
  for (const auto& w : words) {
    bool power_of_x1 = std::all_of(w.letters().begin(), w.letters().end(), [](letter_t l) { return l == 1 || l == -1; });
    ASSERT_EQ(contains(c, w), power_of_x1) << render(w);
  }
}

TEST(Intersect, MembershipIsConjunction) {
  Rng rng(42);
  std::vector<Word> words;
  all_words(2, 5, words);
  for (int t = 0; t < 40; ++t) {
    std::vector<Word> g1{random_word_upto(rng, 2, 4), random_word_upto(rng, 2, 4)};
    std::vector<Word> g2{random_word_upto(rng, 2, 4), random_word_upto(rng, 2, 4)};
    SubgroupGraph a = fold(2, g1);
    SubgroupGraph b = fold(2, g2);
    SubgroupGraph c = intersect(a, b);
    for (const auto& w : words) ASSERT_EQ(contains(c, w), contains(a, w) && contains(b, w));
  }
}

TEST(FixedSubgroup, RankEqualsFixedPart) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& d : enumerate_canonical_data(n)) {
      CanonicalInvolution c = build_canonical(d, n);
      SubgroupGraph g = fixed_subgroup_approx(c.aut, 8);
      EXPECT_EQ(graph_rank(g), d.fixed) << render(d);
      for (int u : c.layout.fixed) EXPECT_TRUE(contains(g, Word::generator(n, u)));
    }
  }
}

TEST(FixedSubgroup, PairSwapHasOnlyFixedLetters) {
  // z z' maps to z' z, so Fix is just <U>.
  CanonicalInvolution c = build_canonical({1, 1, {}}, 3);
  SubgroupGraph g = fixed_subgroup_approx(c.aut, 8);
  EXPECT_EQ(graph_rank(g), 1);
  EXPECT_FALSE(contains(g, word(3, {2, 3})));
}

TEST(FixedSubgroup, MembersAreFixed) {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    Automorphism f = random_automorphism(2, 4, rng);
    SubgroupGraph g = fixed_subgroup_approx(f, 6);
    for (const auto& b : subgroup_basis(g)) ASSERT_EQ(apply(f, b), b);
  }
}

TEST(FixedSubgroup, NodeLimit) {
  EXPECT_THROW(fixed_subgroup_approx(Automorphism::identity(3), 8, 100), BudgetError);
}

TEST(SpecExamples, Graphs) {
  SubgroupGraph a = fold(2, {word(2, {1})});
  EXPECT_EQ(a.vertex_count(), 1);
  EXPECT_EQ(graph_rank(a), 1);
  SubgroupGraph b = fold(2, {word(2, {1}), word(2, {2, 1, -2})});
  EXPECT_EQ(graph_rank(b), 2);
  EXPECT_EQ(b.vertex_count(), 2);
  SubgroupGraph e = fold(2, std::vector<Word>{});
  EXPECT_EQ(e.vertex_count(), 1);
  EXPECT_EQ(graph_rank(e), 0);
  EXPECT_TRUE(contains(a, word(2, {1, 1})));
  EXPECT_FALSE(contains(a, word(2, {2})));
  EXPECT_TRUE(contains(fold(2, {word(2, {1, 2})}), word(2, {1, 2, 1, 2})));
  EXPECT_EQ(graph_rank(fold(3, {word(3, {1}), word(3, {2})})), 2);
  SubgroupGraph c = intersect(b, b);
  EXPECT_EQ(render(c), render(b));
  EXPECT_EQ(graph_rank(intersect(fold(2, {word(2, {1})}), fold(2, {word(2, {2})}))), 0);
}

TEST(SpecExamples, FixedSubgroups) {
  EXPECT_EQ(graph_rank(fixed_subgroup_approx(quasi_conjugation(2).aut, 6)), 0);
  Automorphism psi = Automorphism::involution({word(3, {-1}), word(3, {1, 2, -1}), word(3, {3})});
  SubgroupGraph g = fixed_subgroup_approx(psi, 4);
  EXPECT_EQ(graph_rank(g), 1);
  EXPECT_TRUE(contains(g, word(3, {3})));
  EXPECT_EQ(graph_rank(fixed_subgroup_approx(Automorphism::identity(3), 2)), 3);
}
