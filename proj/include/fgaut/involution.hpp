#pragma once

// Canonical forms of involutions: every involution of F acts on some basis as
//
//   u -> u                      (fixed part U)
//   z -> z', z' -> z            (pairs Z)
//   x -> x^-1, y -> x y x^-1    (blocks {x} + Y_x)
//
// This header builds such involutions, recognizes them, searches for a
// canonical basis of an arbitrary involution, and classifies the conjugacy
// classes used later (symmetries, quasi-conjugations, anti-commutative
// classes).

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fgaut/abelian.hpp"
#include "fgaut/automorphism.hpp"
#include "fgaut/stallings.hpp"

namespace fgaut {

/// Shape of a canonical basis: |U|, |Z| and the multiset of block sizes
/// (size = |Y_x| + 1), kept sorted in decreasing order.
struct CanonicalData {
  int fixed = 0;
  int pairs = 0;
  std::vector<int> blocks;

  CanonicalData() = default;
  CanonicalData(int fixed_count, int pair_count, std::vector<int> block_sizes)
      : fixed(fixed_count), pairs(pair_count), blocks(std::move(block_sizes)) {
    std::sort(blocks.begin(), blocks.end(), std::greater<>());
  }

  int total() const {
    int t = fixed + 2 * pairs;
    for (int b : blocks) t += b;
    return t;
  }
  bool is_identity() const { return pairs == 0 && blocks.empty(); }
  bool is_soft() const { return pairs == 0; }

  friend bool operator==(const CanonicalData&, const CanonicalData&) = default;
  friend auto operator<=>(const CanonicalData&, const CanonicalData&) = default;
};

inline std::string render(const CanonicalData& d) {
  std::string out = "{U=" + std::to_string(d.fixed) + ", Z=" + std::to_string(d.pairs) + ", blocks={";
  for (std::size_t i = 0; i < d.blocks.size(); ++i) out += (i ? "," : "") + std::to_string(d.blocks[i]);
  return out + "}}";
}

struct Block {
  int head = 0;
  std::vector<int> ys;
  int size() const { return static_cast<int>(ys.size()) + 1; }
};

/// Assignment of canonical roles to the standard generators.
struct CanonicalLayout {
  int rank = 0;
  std::vector<int> fixed;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Block> blocks;

  CanonicalData data() const {
    std::vector<int> sizes;
    for (const auto& b : blocks) sizes.push_back(b.size());
    return CanonicalData(static_cast<int>(fixed.size()), static_cast<int>(pairs.size()), sizes);
  }

  /// Block headed by generator `x`, if any.
  const Block* block_of_head(int x) const {
    for (const auto& b : blocks)
      if (b.head == x) return &b;
    return nullptr;
  }

  /// The canonical action on the standard generators.
  Automorphism involution() const {
    std::vector<Word> images(static_cast<std::size_t>(rank), Word(rank));
    std::vector<char> seen(static_cast<std::size_t>(rank + 1), 0);
    auto claim = [&](int g) {
      if (g < 1 || g > rank || seen[static_cast<std::size_t>(g)]) {
        throw RankError("canonical layout does not partition the basis");
      }
      seen[static_cast<std::size_t>(g)] = 1;
    };
    for (int u : fixed) {
      claim(u);
      images[static_cast<std::size_t>(u - 1)] = Word::generator(rank, u);
    }
    for (auto [z, zp] : pairs) {
      claim(z);
      claim(zp);
      images[static_cast<std::size_t>(z - 1)] = Word::generator(rank, zp);
      images[static_cast<std::size_t>(zp - 1)] = Word::generator(rank, z);
    }
    for (const auto& b : blocks) {
      claim(b.head);
      Word x = Word::generator(rank, b.head);
      images[static_cast<std::size_t>(b.head - 1)] = invert_word(x);
      for (int y : b.ys) {
        claim(y);
        images[static_cast<std::size_t>(y - 1)] = conjugate(Word::generator(rank, y), x);
      }
    }
    for (int g = 1; g <= rank; ++g) {
      if (!seen[static_cast<std::size_t>(g)]) throw RankError("canonical layout does not cover the basis");
    }
    return Automorphism::involution(std::move(images));
  }
};

/// Standard assignment: U letters first, then pairs (z, z') interleaved, then
/// blocks in decreasing size with the head letter first.
inline CanonicalLayout standard_layout(const CanonicalData& data, int rank) {
  if (data.fixed < 0 || data.pairs < 0) throw RankError("canonical data with negative counts");
  for (int b : data.blocks)
    if (b < 1) throw RankError("block sizes must be positive");
  if (data.total() != rank) {
    throw RankError("canonical data " + render(data) + " does not sum to rank " + std::to_string(rank));
  }
  CanonicalData sorted(data.fixed, data.pairs, data.blocks);
  CanonicalLayout layout;
  layout.rank = rank;
  int next = 1;
  for (int i = 0; i < sorted.fixed; ++i) layout.fixed.push_back(next++);
  for (int i = 0; i < sorted.pairs; ++i) {
    layout.pairs.emplace_back(next, next + 1);
    next += 2;
  }
  for (int size : sorted.blocks) {
    Block b;
    b.head = next++;
    for (int j = 1; j < size; ++j) b.ys.push_back(next++);
    layout.blocks.push_back(std::move(b));
  }
  return layout;
}

struct CanonicalInvolution {
  CanonicalLayout layout;
  Automorphism aut;
  int order = 2;  // 1 when the data describes the identity

  CanonicalData data() const { return layout.data(); }
  int rank() const { return layout.rank; }
};

inline CanonicalInvolution from_layout(CanonicalLayout layout) {
  Automorphism aut = layout.involution();
  int order = aut.is_identity() ? 1 : 2;
  return {std::move(layout), std::move(aut), order};
}

inline CanonicalInvolution build_canonical(const CanonicalData& data, int rank) {
  return from_layout(standard_layout(data, rank));
}

/// Quasi-conjugation x1 -> X1, xi -> x1 xi X1.
inline CanonicalInvolution quasi_conjugation(int rank) { return build_canonical({0, 0, {rank}}, rank); }

/// Inverts every generator.
inline CanonicalInvolution symmetry(int rank) {
  return build_canonical({0, 0, std::vector<int>(static_cast<std::size_t>(rank), 1)}, rank);
}

/// Reads f as a canonical involution on the standard basis itself (any
/// labelling: u -> u, z <-> z', x -> x^-1, y -> x y x^-1).
inline std::optional<CanonicalInvolution> as_canonical(const Automorphism& f) {
  const int n = f.rank();
  CanonicalLayout layout;
  layout.rank = n;
  std::map<int, std::vector<int>> ys;
  std::vector<int> heads;
  for (int i = 1; i <= n; ++i) {
    const Word& img = f.image(i);
    if (img.size() == 1 && img[0] == i) {
      layout.fixed.push_back(i);
    } else if (img.size() == 1 && img[0] == -i) {
      heads.push_back(i);
    } else if (img.size() == 1 && img[0] > 0) {
      if (i < img[0]) layout.pairs.emplace_back(i, img[0]);
    } else if (img.size() == 3 && img[0] > 0 && img[1] == i && img[2] == -img[0]) {
      ys[img[0]].push_back(i);
    } else {
      return std::nullopt;
    }
  }
  for (int h : heads) layout.blocks.push_back({h, ys[h]});
  std::stable_sort(layout.blocks.begin(), layout.blocks.end(),
                   [](const Block& a, const Block& b) { return a.size() > b.size(); });
  try {
    CanonicalInvolution c = from_layout(std::move(layout));
    if (!(c.aut == f)) return std::nullopt;
    return c;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Recognition and canonical-basis search

/// A canonical basis for f, packaged as a basis change: f = B o phi o B^-1,
/// where phi = build_canonical(data, rank).aut. The images B(x_i) are the
/// canonical basis elements.
struct CanonicalWitness {
  CanonicalData data;
  Automorphism basis_change;
  int search_moves = 0;  // Whitehead conjugations used to find it
};

namespace detail {

struct YRole {
  int head = 0;
  int sign = 1;     // conjugated by head^sign
  int rewrite = 0;  // 0: y itself; -1: head^-1 y; +1: y head
};

// Recognizes an involution whose images already have canonical shape up to
// relabelling, letter inversion and the x^-1 y x^-1 variant of a block.
inline std::optional<CanonicalWitness> recognize_canonical(const Automorphism& f) {
  const int n = f.rank();
  enum class Role { none, fixed, head, pair, y };
  std::vector<Role> role(static_cast<std::size_t>(n + 1), Role::none);
  std::vector<int> partner(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> pair_sign(static_cast<std::size_t>(n + 1), 1);
  std::vector<YRole> yrole(static_cast<std::size_t>(n + 1));

  for (int i = 1; i <= n; ++i) {
    const Word& img = f.image(i);
    auto I = static_cast<std::size_t>(i);
    if (img.size() == 1 && img[0] == i) {
      role[I] = Role::fixed;
    } else if (img.size() == 1 && img[0] == -i) {
      role[I] = Role::head;
    } else if (img.size() == 1) {
      int j = std::abs(img[0]);
      int e = img[0] > 0 ? 1 : -1;
      const Word& back = f.image(j);
      if (back.size() != 1 || back[0] != e * i) return std::nullopt;
      role[I] = Role::pair;
      partner[I] = j;
      pair_sign[I] = e;
    } else if (img.size() == 3 && img[1] == i && std::abs(img[0]) == std::abs(img[2]) && std::abs(img[0]) != i) {
      role[I] = Role::y;
      int h = std::abs(img[0]);
      if (img[0] == -img[2]) {
        yrole[I] = {h, img[0] > 0 ? 1 : -1, 0};
      } else if (img[0] == -h) {
        yrole[I] = {h, 1, -1};  // X y X: use X y
      } else {
        yrole[I] = {h, 1, 1};   // x y x: use y x
      }
    } else {
      return std::nullopt;
    }
  }

  std::map<int, std::vector<int>> block_ys;
  std::map<int, int> head_sign;
  for (int i = 1; i <= n; ++i) {
    if (role[static_cast<std::size_t>(i)] != Role::y) continue;
    const auto& yr = yrole[static_cast<std::size_t>(i)];
    if (role[static_cast<std::size_t>(yr.head)] != Role::head) return std::nullopt;
    auto [it, inserted] = head_sign.emplace(yr.head, yr.sign);
    if (!inserted && it->second != yr.sign) return std::nullopt;
    block_ys[yr.head].push_back(i);
  }

  // Standard layout positions.
  struct Slot {
    Word element;
  };
  std::vector<int> fixed;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Block> blocks;
  for (int i = 1; i <= n; ++i) {
    auto I = static_cast<std::size_t>(i);
    if (role[I] == Role::fixed) fixed.push_back(i);
    if (role[I] == Role::pair && i < partner[I]) pairs.emplace_back(i, partner[I]);
    if (role[I] == Role::head) blocks.push_back({i, block_ys[i]});
  }
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.size() > b.size(); });

  std::vector<int> sizes;
  for (const auto& b : blocks) sizes.push_back(b.size());
  CanonicalData data(static_cast<int>(fixed.size()), static_cast<int>(pairs.size()), sizes);
  CanonicalLayout std_layout = standard_layout(data, n);

  std::vector<Word> fwd(static_cast<std::size_t>(n), Word(n));  // B(x_p)
  std::vector<Word> bwd(static_cast<std::size_t>(n), Word(n));  // B^-1(x_i)
  auto gen = [n](int g, int s = 1) { return Word::generator(n, g, s); };
  auto set = [&](int pos, const Word& w) { fwd[static_cast<std::size_t>(pos - 1)] = w; };
  auto set_inv = [&](int g, const Word& w) { bwd[static_cast<std::size_t>(g - 1)] = w; };

  for (std::size_t k = 0; k < fixed.size(); ++k) {
    int pos = std_layout.fixed[k];
    set(pos, gen(fixed[k]));
    set_inv(fixed[k], gen(pos));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [pz, pzp] = std_layout.pairs[k];
    auto [z, zp] = pairs[k];
    int e = pair_sign[static_cast<std::size_t>(z)];
    set(pz, gen(z));
    set(pzp, gen(zp, e));
    set_inv(z, gen(pz));
    set_inv(zp, gen(pzp, e));
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& sb = std_layout.blocks[k];
    const Block& b = blocks[k];
    int s = head_sign.count(b.head) ? head_sign[b.head] : 1;
    set(sb.head, gen(b.head, s));
    set_inv(b.head, gen(sb.head, s));
    for (std::size_t j = 0; j < b.ys.size(); ++j) {
      int y = b.ys[j];
      int pos = sb.ys[j];
      const auto& yr = yrole[static_cast<std::size_t>(y)];
      if (yr.rewrite == 0) {
        set(pos, gen(y));
        set_inv(y, gen(pos));
      } else if (yr.rewrite < 0) {
        // element X_h y; y = x_h * element
        set(pos, gen(b.head, -1) * gen(y));
        set_inv(y, gen(sb.head) * gen(pos));
      } else {
        // element y x_h; y = element * X_h
        set(pos, gen(y) * gen(b.head));
        set_inv(y, gen(pos) * gen(sb.head, -1));
      }
    }
  }
  Automorphism basis = make_automorphism(std::move(fwd), std::move(bwd));
  Automorphism phi = std_layout.involution();
  if (!(compose(compose(basis, phi), basis.inverse()) == f)) return std::nullopt;
  return CanonicalWitness{data, std::move(basis), 0};
}

}  // namespace detail

using detail::recognize_canonical;

/// Bounded search for a canonical basis of the involution f.
///
/// Conjugates f by inner-type Whitehead generators, greedily taking the move
/// that most shortens the total image length. When no move shortens it, a
/// breadth-first search over at most `depth` further moves that do not
/// lengthen it looks for either a shorter conjugate or a recognizable one.
/// `budget` bounds the number of conjugates examined.
inline std::optional<CanonicalWitness> find_canonical_basis(const Automorphism& f, int depth = 4,
                                                            std::size_t budget = 200'000) {
  if (!is_involution(f)) return std::nullopt;
  if (auto w = recognize_canonical(f)) return w;
  if (f.rank() < 2) return std::nullopt;
  const auto& gens = whitehead_generators(f.rank());
  const std::size_t inner = inner_type_count(f.rank());
  std::size_t examined = 0;

  Automorphism current = f;
  Automorphism accum = Automorphism::identity(f.rank());  // f = accum o current o accum^-1
  int moves = 0;

  auto finish = [&](const Automorphism& h, const Automorphism& acc, int used) -> std::optional<CanonicalWitness> {
    auto w = recognize_canonical(h);
    if (!w) return std::nullopt;
    w->basis_change = compose(acc, w->basis_change);
    w->search_moves = used;
    return w;
  };

  while (true) {
    // Greedy steepest descent.
    std::size_t best_len = current.forward().total_length();
    std::optional<std::size_t> best;
    Automorphism best_aut = current;
    for (std::size_t i = 0; i < inner; ++i) {
      if (++examined > budget) return std::nullopt;
      Automorphism cand;
      try {
        cand = compose(compose(gens[i].aut.inverse(), current), gens[i].aut);
      } catch (const LengthError&) {
        continue;
      }
      std::size_t len = cand.forward().total_length();
      if (len < best_len) {
        best_len = len;
        best = i;
        best_aut = std::move(cand);
      }
    }
    if (best) {
      current = std::move(best_aut);
      accum = compose(accum, gens[*best].aut);
      ++moves;
      if (auto w = finish(current, accum, moves)) return w;
      continue;
    }

    // Plateau exploration.
    struct Node {
      Automorphism aut;
      Automorphism acc;
      int dist;
    };
    const std::size_t level = current.forward().total_length();
    std::set<std::vector<Word>> visited{current.images()};
    std::deque<Node> queue;
    queue.push_back({current, accum, 0});
    std::optional<Node> escape;
    while (!queue.empty() && !escape) {
      Node node = std::move(queue.front());
      queue.pop_front();
      if (node.dist >= depth) continue;
      for (std::size_t i = 0; i < inner && !escape; ++i) {
        if (++examined > budget) return std::nullopt;
        Automorphism cand;
        try {
          cand = compose(compose(gens[i].aut.inverse(), node.aut), gens[i].aut);
        } catch (const LengthError&) {
          continue;
        }
        std::size_t len = cand.forward().total_length();
        if (len > level) continue;
        if (!visited.insert(cand.images()).second) continue;
        Automorphism acc = compose(node.acc, gens[i].aut);
        if (auto w = finish(cand, acc, moves + node.dist + 1)) return w;
        if (len < level) {
          escape = Node{std::move(cand), std::move(acc), node.dist + 1};
        } else {
          queue.push_back({std::move(cand), std::move(acc), node.dist + 1});
        }
      }
    }
    if (!escape) return std::nullopt;
    current = std::move(escape->aut);
    accum = std::move(escape->acc);
    moves += escape->dist;
  }
}

/// An explicit conjugator s with g = s^-1 o f o s, assembled from canonical
/// witnesses of f and g with equal data.
inline Automorphism conjugator_from_witnesses(const CanonicalWitness& wf, const CanonicalWitness& wg) {
  if (!(wf.data == wg.data)) throw PreconditionError("witnesses have different canonical data");
  return compose(wf.basis_change, wg.basis_change.inverse());
}

// ---------------------------------------------------------------------------
// Invariants and conjugacy

struct InvolutionInvariants {
  int rank = 0;
  bool soft = false;
  int fix_rank = 0;
  bool fix_rank_exact = false;         // otherwise a lower bound
  std::optional<int> block_count;      // soft involutions only
  std::optional<CanonicalData> data;   // when a canonical basis is known
  int fix_search_len = 0;              // word-length bound used for the fixed subgroup
};

/// Exact invariants of a canonically built involution.
inline InvolutionInvariants extract_invariants(const CanonicalInvolution& c) {
  if (c.order != 2) throw NotInvolution("extract_invariants: canonical data describes the identity");
  CanonicalData d = c.data();
  InvolutionInvariants inv;
  inv.rank = c.rank();
  inv.soft = d.is_soft();
  inv.fix_rank = d.fixed;
  inv.fix_rank_exact = true;
  if (inv.soft) inv.block_count = static_cast<int>(d.blocks.size());
  inv.data = d;
  return inv;
}

/// Softness and block count come from the induced matrices. The fixed
/// subgroup rank is exact when the bounded canonical search succeeds and is
/// otherwise a lower bound from fixed_subgroup_approx(., budget).
inline InvolutionInvariants extract_invariants(const Automorphism& f, int budget, int depth = 4) {
  if (!is_involution(f)) throw NotInvolution("extract_invariants: input is not an involution");
  InvolutionInvariants inv;
  inv.rank = f.rank();
  inv.soft = is_soft(f);
  if (inv.soft) inv.block_count = block_count_from_trace(f);
  inv.fix_search_len = budget;
  if (auto w = find_canonical_basis(f, depth)) {
    inv.data = w->data;
    inv.fix_rank = w->data.fixed;
    inv.fix_rank_exact = true;
    return inv;
  }
  inv.fix_rank = graph_rank(fixed_subgroup_approx(f, budget));
  return inv;
}

/// Whether two involutions have the same canonical form. Decided only for
/// soft involutions; yes needs both canonical shapes to be known.
inline Verdict same_canonical_form(const Automorphism& f, const Automorphism& g, int budget, int depth = 4) {
  require_same_rank(f.rank(), g.rank(), "same_canonical_form");
  if (!is_involution(f) || !is_involution(g)) throw NotInvolution("same_canonical_form: inputs must be involutions");
  if (!is_soft(f) || !is_soft(g)) return Verdict::unknown;
  auto a = extract_invariants(f, budget, depth);
  auto b = extract_invariants(g, budget, depth);
  if (a.block_count != b.block_count) return Verdict::no;
  if (a.data && b.data) return *a.data == *b.data ? Verdict::yes : Verdict::no;
  if (a.fix_rank_exact && b.fix_rank > a.fix_rank) return Verdict::no;
  if (b.fix_rank_exact && a.fix_rank > b.fix_rank) return Verdict::no;
  return Verdict::unknown;
}

/// An involution inducing -id on the abelianization.
inline bool is_symmetry(const Automorphism& f) {
  return is_involution(f) && induced_matrix(f).is_minus_identity();
}

/// Soft involution with one block and trivial fixed subgroup.
inline Verdict is_quasi_conjugation(const Automorphism& f, int budget, int depth = 4) {
  if (!is_involution(f)) return Verdict::no;
  if (!is_soft(f)) return Verdict::no;
  if (block_count_from_trace(f) != 1) return Verdict::no;
  auto inv = extract_invariants(f, budget, depth);
  if (inv.fix_rank > 0) return Verdict::no;
  return inv.fix_rank_exact ? Verdict::yes : Verdict::unknown;
}

// ---------------------------------------------------------------------------
// Anti-commutative classes

/// Necessary condition for the conjugacy class of a canonical involution with
/// this shape to be anti-commutative: no pairs, and all blocks of one common
/// size s with |U| < s.
inline bool acc_necessary(const CanonicalData& data) {
  if (data.pairs != 0 || data.blocks.empty()) return false;
  int s = data.blocks.front();
  for (int b : data.blocks)
    if (b != s) return false;
  return data.fixed < s;
}

struct CommutingConjugates {
  Automorphism phi;
  Automorphism psi;         // psi = conjugator^-1 o phi o conjugator
  Automorphism conjugator;
  std::string construction;
};

/// A distinct conjugate of the canonical involution with shape `data` that
/// commutes with it, refuting anti-commutativity. Returns nothing when `data`
/// describes the identity.
inline std::optional<CommutingConjugates> commuting_conjugate_witness(const CanonicalData& data, int rank) {
  if (acc_necessary(data)) throw NotApplicable("commuting_conjugate_witness: data passes acc_necessary");
  if (data.is_identity()) return std::nullopt;
  CanonicalLayout layout = standard_layout(data, rank);
  Automorphism phi = layout.involution();
  const int n = rank;
  auto gen = [n](int g, int s = 1) { return Word::generator(n, g, s); };
  auto identity_images = [n]() {
    std::vector<Word> v;
    for (int i = 1; i <= n; ++i) v.push_back(Word::generator(n, i));
    return v;
  };

  CommutingConjugates out{phi, phi, Automorphism::identity(n), ""};
  if (data.pairs > 0) {
    // z -> z'^-1 instead of z'.
    auto [z, zp] = layout.pairs.front();
    auto img = identity_images();
    img[static_cast<std::size_t>(zp - 1)] = gen(zp, -1);
    out.conjugator = Automorphism::involution(img);
    out.construction = "pair-inversion";
  } else if (data.blocks.front() != data.blocks.back()) {
    // Two blocks of different sizes, exchanged in the x^-1 y x^-1 presentation.
    const Block& big = layout.blocks.front();
    const Block& small = layout.blocks.back();
    const std::size_t m = small.ys.size();  // |B| = |D|
    // beta: y -> X_h y on both blocks (canonical -> x^-1 variant coordinates)
    auto beta_f = identity_images();
    auto beta_b = identity_images();
    for (const Block* b : {&big, &small}) {
      for (int y : b->ys) {
        beta_f[static_cast<std::size_t>(y - 1)] = gen(b->head, -1) * gen(y);
        beta_b[static_cast<std::size_t>(y - 1)] = gen(b->head) * gen(y);
      }
    }
    Automorphism beta = make_automorphism(beta_f, beta_b);
    // The swap x fixed, a <-> c, b_i <-> d_i, e fixed.
    auto swap = identity_images();
    int c = small.head;
    int a = big.ys.front();
    swap[static_cast<std::size_t>(a - 1)] = gen(c);
    swap[static_cast<std::size_t>(c - 1)] = gen(a);
    for (std::size_t i = 0; i < m; ++i) {
      int b = big.ys[i + 1];
      int d = small.ys[i];
      swap[static_cast<std::size_t>(b - 1)] = gen(d);
      swap[static_cast<std::size_t>(d - 1)] = gen(b);
    }
    Automorphism sigma_claim = Automorphism::involution(swap);
    out.conjugator = compose(compose(beta.inverse(), sigma_claim), beta);
    out.construction = "unequal-blocks";
  } else {
    // |U| >= s: exchange one block with s fixed letters.
    const Block& blk = layout.blocks.front();
    auto swap = identity_images();
    std::vector<int> letters{blk.head};
    letters.insert(letters.end(), blk.ys.begin(), blk.ys.end());
    for (std::size_t i = 0; i < letters.size(); ++i) {
      int u = layout.fixed[i];
      swap[static_cast<std::size_t>(u - 1)] = gen(letters[i]);
      swap[static_cast<std::size_t>(letters[i] - 1)] = gen(u);
    }
    out.conjugator = Automorphism::involution(swap);
    out.construction = "fixed-block-exchange";
  }
  out.psi = compose(compose(out.conjugator.inverse(), phi), out.conjugator);
  return out;
}

/// Checks a witness: psi is the stated conjugate, commutes with phi, differs.
inline bool verify_commuting_conjugates(const CommutingConjugates& w) {
  return compose(compose(w.conjugator.inverse(), w.phi), w.conjugator) == w.psi && commute(w.phi, w.psi) &&
         !(w.phi == w.psi);
}

/// Every canonical shape of an involution of F_rank (identity excluded).
inline std::vector<CanonicalData> enumerate_canonical_data(int rank) {
  std::vector<CanonicalData> out;
  std::function<void(int, int, std::vector<int>&, int, int)> parts = [&](int remaining, int max_part,
                                                                         std::vector<int>& cur, int fixed, int pairs) {
    if (remaining == 0) {
      CanonicalData d(fixed, pairs, cur);
      if (!d.is_identity()) out.push_back(d);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      parts(remaining - p, p, cur, fixed, pairs);
      cur.pop_back();
    }
  };
  for (int pairs = 0; 2 * pairs <= rank; ++pairs) {
    for (int fixed = 0; fixed + 2 * pairs <= rank; ++fixed) {
      std::vector<int> cur;
      parts(rank - fixed - 2 * pairs, rank, cur, fixed, pairs);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fgaut
