#pragma once

// Elements inverted by a canonical involution, the centralizer of a
// quasi-conjugation, the family Pi of products of conjugate centralizer
// elements, and recognizers for conjugations by powers of primitive elements.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgaut/abelian.hpp"
#include "fgaut/involution.hpp"
#include "fgaut/random.hpp"
#include "fgaut/stallings.hpp"
#include "fgaut/whitehead.hpp"

namespace fgaut {

/// A subset of the standard generators viewed as the basis of a free factor
/// of rank m; local letter j corresponds to ambient generator letters[j-1].
class SubBasis {
 public:
  SubBasis(int ambient_rank, std::vector<int> letters)
      : rank_(ambient_rank), letters_(std::move(letters)), local_(static_cast<std::size_t>(ambient_rank + 1), 0) {
    for (std::size_t j = 0; j < letters_.size(); ++j) {
      int g = letters_[j];
      if (g < 1 || g > rank_ || local_[static_cast<std::size_t>(g)] != 0) throw RankError("bad sub-basis");
      local_[static_cast<std::size_t>(g)] = static_cast<int>(j + 1);
    }
  }

  int ambient_rank() const { return rank_; }
  int size() const { return static_cast<int>(letters_.size()); }
  const std::vector<int>& letters() const { return letters_; }
  bool contains_letter(int g) const { return g >= 1 && g <= rank_ && local_[static_cast<std::size_t>(g)] != 0; }

  Word lift(const Word& local) const {
    std::vector<letter_t> out;
    out.reserve(local.size());
    for (letter_t c : local.letters()) {
      int g = letters_[static_cast<std::size_t>(std::abs(c) - 1)];
      out.push_back(c > 0 ? g : -g);
    }
    return Word::from_letters(rank_, out);
  }

  /// Nothing when the word leaves the factor.
  std::optional<Word> restrict(const Word& ambient) const {
    std::vector<letter_t> out;
    out.reserve(ambient.size());
    for (letter_t c : ambient.letters()) {
      int j = local_[static_cast<std::size_t>(std::abs(c))];
      if (j == 0) return std::nullopt;
      out.push_back(c > 0 ? j : -j);
    }
    return Word::from_letters(size(), out);
  }

  /// Extension fixing every generator outside the factor.
  Automorphism lift(const Automorphism& theta) const {
    require_same_rank(theta.rank(), size(), "SubBasis::lift");
    std::vector<Word> fwd;
    std::vector<Word> bwd;
    for (int g = 1; g <= rank_; ++g) {
      int j = local_[static_cast<std::size_t>(g)];
      fwd.push_back(j ? lift(theta.image(j)) : Word::generator(rank_, g));
      bwd.push_back(j ? lift(theta.backward().image(j)) : Word::generator(rank_, g));
    }
    return make_automorphism(std::move(fwd), std::move(bwd));
  }

  /// The restriction of f to the factor, if f maps the factor onto itself.
  std::optional<Automorphism> restrict(const Automorphism& f) const {
    std::vector<Word> fwd;
    std::vector<Word> bwd;
    for (int g : letters_) {
      auto a = restrict(f.image(g));
      auto b = restrict(f.backward().image(g));
      if (!a || !b) return std::nullopt;
      fwd.push_back(*a);
      bwd.push_back(*b);
    }
    try {
      return make_automorphism(std::move(fwd), std::move(bwd));
    } catch (const NotInverse&) {
      return std::nullopt;
    }
  }

 private:
  int rank_;
  std::vector<int> letters_;
  std::vector<int> local_;
};

// ---------------------------------------------------------------------------
// Elements inverted by a canonical involution

struct InvertedDecomposition {
  Word w;
  std::optional<int> head;  // generator index of a block head
};

/// a = phi(w) * head * w^-1 (head omitted when absent).
inline Word reassemble(const CanonicalInvolution& phi, const InvertedDecomposition& d) {
  Word mid = d.head ? Word::generator(phi.rank(), *d.head) : Word(phi.rank());
  return apply(phi.aut, d.w) * mid * invert_word(d.w);
}

namespace detail {

// Factor of each generator: 0 for the fixed part, k+1 for block k.
inline std::vector<int> factor_ids(const CanonicalLayout& layout) {
  if (!layout.pairs.empty()) throw PreconditionError("involution has a nonempty pair part");
  std::vector<int> f(static_cast<std::size_t>(layout.rank + 1), 0);
  for (std::size_t k = 0; k < layout.blocks.size(); ++k) {
    f[static_cast<std::size_t>(layout.blocks[k].head)] = static_cast<int>(k + 1);
    for (int y : layout.blocks[k].ys) f[static_cast<std::size_t>(y)] = static_cast<int>(k + 1);
  }
  return f;
}

// k with w = x^k (x > 0), including k = 0.
inline std::optional<long> letter_power(const Word& w, int x) {
  long k = 0;
  for (letter_t c : w.letters()) {
    if (std::abs(c) != x) return std::nullopt;
    k += c > 0 ? 1 : -1;
  }
  return k;
}

inline Word slice(const Word& w, std::size_t from, std::size_t to) {
  std::vector<letter_t> out(w.letters().begin() + static_cast<std::ptrdiff_t>(from),
                            w.letters().begin() + static_cast<std::ptrdiff_t>(to));
  return Word::from_letters(w.rank(), out);
}

}  // namespace detail

/// Writes an element inverted by phi as phi(w) w^-1 or phi(w) x w^-1 with x a
/// block head. First pairs syllable i with syllable n+1-i across the free
/// factors, then peels the middle syllable inside its block subgroup by
/// induction on length.
inline InvertedDecomposition decompose_inverted(const CanonicalInvolution& phi, const Word& a) {
  require_same_rank(phi.rank(), a.rank(), "decompose_inverted");
  std::vector<int> factor = detail::factor_ids(phi.layout);
  if (!(apply(phi.aut, a) == invert_word(a))) throw NotInverted("decompose_inverted: phi(a) != a^-1");
  const int n = phi.rank();

  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == 0 || factor[static_cast<std::size_t>(std::abs(a[i]))] != factor[static_cast<std::size_t>(std::abs(a[i - 1]))]) {
      starts.push_back(i);
    }
  }
  const std::size_t syllables = starts.size();
  starts.push_back(a.size());
  const std::size_t half = syllables / 2;

  InvertedDecomposition out{Word(n), std::nullopt};
  Word v(n);
  std::size_t tail_from = starts[half];
  if (syllables % 2 == 1) {
    v = detail::slice(a, starts[half], starts[half + 1]);
    tail_from = starts[half + 1];
  }
  Word w0 = invert_word(detail::slice(a, tail_from, a.size()));

  if (!v.empty()) {
    int blk = factor[static_cast<std::size_t>(std::abs(v[0]))];
    if (blk == 0) throw std::logic_error("decompose_inverted: middle syllable in the fixed part");
    const int h = phi.layout.blocks[static_cast<std::size_t>(blk - 1)].head;
    Word acc(n);
    Word t = v;
    // Each trailing-power step is followed by a step removing two syllables.
    for (std::size_t guard = 2 * v.size() + 4; guard > 0; --guard) {
      if (auto k = detail::letter_power(t, h)) {
        // x^k = phi(x^j) x x^-j for odd k, phi(x^j) x^-j for even k.
        long j = (*k % 2 != 0) ? (1 - *k) / 2 : -*k / 2;
        acc = acc * power(Word::generator(n, h), j);
        if (*k % 2 != 0) out.head = h;
        t = Word(n);
        break;
      }
      Word step(n);
      if (std::abs(t.back()) != h) {
        // First run of Y letters.
        std::size_t i = 0;
        while (i < t.size() && std::abs(t[i]) == h) ++i;
        std::size_t j = i;
        while (j < t.size() && std::abs(t[j]) != h) ++j;
        step = detail::slice(t, i, j);
      } else {
        // Trailing power of x.
        std::size_t i = t.size();
        while (i > 0 && std::abs(t[i - 1]) == h) --i;
        step = invert_word(detail::slice(t, i, t.size()));
      }
      acc = acc * step;
      t = invert_word(apply(phi.aut, step)) * t * step;
    }
    if (!t.empty()) throw std::logic_error("decompose_inverted: peeling did not terminate");
    w0 = w0 * acc;
  }
  out.w = std::move(w0);
  if (!(reassemble(phi, out) == a)) throw std::logic_error("decompose_inverted: reassembly failed");
  return out;
}

/// Whether phi(c) = x c x^-1 for the block head x.
inline bool conjugation_subgroup_member(const CanonicalInvolution& phi, int x_index, const Word& c) {
  if (!phi.layout.block_of_head(x_index)) throw PreconditionError("x_index is not a block head");
  Word x = Word::generator(phi.rank(), x_index);
  return apply(phi.aut, c) == conjugate(c, x);
}

/// Subgroup graph of <Y_x> for the block headed by x_index.
inline SubgroupGraph block_y_graph(const CanonicalInvolution& phi, int x_index) {
  const Block* b = phi.layout.block_of_head(x_index);
  if (!b) throw PreconditionError("x_index is not a block head");
  std::vector<Word> gens;
  for (int y : b->ys) gens.push_back(Word::generator(phi.rank(), y));
  return fold(phi.rank(), gens);
}

struct PrimitiveInvertedForm {
  Word v;
  int sign = 1;
};

/// For alpha with one block {x} + Y and fixed part U, a primitive element
/// inverted by alpha has the form v x^{+-1} v^-1 with v in <U>.
inline PrimitiveInvertedForm primitive_inverted_form(const CanonicalInvolution& alpha, const Word& a) {
  require_same_rank(alpha.rank(), a.rank(), "primitive_inverted_form");
  if (!alpha.layout.pairs.empty() || alpha.layout.blocks.size() != 1) {
    throw PreconditionError("primitive_inverted_form needs exactly one block and no pairs");
  }
  if (!(apply(alpha.aut, a) == invert_word(a))) throw NotInverted("primitive_inverted_form: alpha(a) != a^-1");
  if (a.empty() || !is_primitive(a)) throw NotPrimitive("primitive_inverted_form: element is not primitive");
  const int h = alpha.layout.blocks.front().head;
  auto cr = cyclic_reduce(a);
  if (cr.core.size() != 1 || std::abs(cr.core[0]) != h) {
    throw std::logic_error("primitive_inverted_form: core is not the block head");
  }
  std::vector<Word> fixed_gens;
  for (int u : alpha.layout.fixed) fixed_gens.push_back(Word::generator(alpha.rank(), u));
  if (!contains(fold(alpha.rank(), fixed_gens), cr.conjugator)) {
    throw std::logic_error("primitive_inverted_form: conjugator outside the fixed subgroup");
  }
  PrimitiveInvertedForm out{cr.conjugator, cr.core[0] > 0 ? 1 : -1};
  if (!(conjugate(Word::generator(alpha.rank(), h, out.sign), out.v) == a)) {
    throw std::logic_error("primitive_inverted_form: reassembly failed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer of a quasi-conjugation

inline void require_quasi_conjugation(const CanonicalInvolution& phi) {
  if (!phi.layout.fixed.empty() || !phi.layout.pairs.empty() || phi.layout.blocks.size() != 1) {
    throw PreconditionError("expected a canonical quasi-conjugation");
  }
}

inline int head_of(const CanonicalInvolution& phi) { return phi.layout.blocks.front().head; }

/// The factor C_x = <Y> of a quasi-conjugation.
inline SubBasis y_factor(const CanonicalInvolution& phi) {
  require_quasi_conjugation(phi);
  return SubBasis(phi.rank(), phi.layout.blocks.front().ys);
}

enum class CentralizerVariant { fixes_x, inverts_x, not_in_centralizer };

inline std::string to_string(CentralizerVariant v) {
  switch (v) {
    case CentralizerVariant::fixes_x: return "fixes_x";
    case CentralizerVariant::inverts_x: return "inverts_x";
    case CentralizerVariant::not_in_centralizer: return "not_in_centralizer";
  }
  return "?";
}

struct CentralizerForm {
  CentralizerVariant variant = CentralizerVariant::not_in_centralizer;
  std::vector<Word> theta_images;  // images of the Y letters, ambient rank
};

/// sigma(x) = x, sigma(y) = theta(y)            (fixes_x)
/// sigma(x) = x^-1, sigma(y) = x theta(y) x^-1  (inverts_x)
/// Throws std::logic_error if sigma commutes with phi but has neither form.
inline CentralizerForm centralizer_form(const CanonicalInvolution& phi, const Automorphism& sigma) {
  require_quasi_conjugation(phi);
  require_same_rank(phi.rank(), sigma.rank(), "centralizer_form");
  CentralizerForm out;
  if (!commute(sigma, phi.aut)) return out;
  const int n = phi.rank();
  const int h = head_of(phi);
  Word x = Word::generator(n, h);
  SubBasis ys = y_factor(phi);
  if (sigma.image(h) == x) {
    out.variant = CentralizerVariant::fixes_x;
  } else if (sigma.image(h) == invert_word(x)) {
    out.variant = CentralizerVariant::inverts_x;
  } else {
    throw std::logic_error("centralizer_form: centralizing automorphism moves x to " + render(sigma.image(h)));
  }
  for (int y : ys.letters()) {
    Word img = sigma.image(y);
    if (out.variant == CentralizerVariant::inverts_x) img = invert_word(x) * img * x;
    if (!ys.restrict(img)) throw std::logic_error("centralizer_form: theta leaves <Y>");
    out.theta_images.push_back(std::move(img));
  }
  return out;
}

/// Restriction theta as an automorphism of C_x (local coordinates).
inline Automorphism theta_of(const CanonicalInvolution& phi, const Automorphism& sigma) {
  CentralizerForm form = centralizer_form(phi, sigma);
  if (form.variant == CentralizerVariant::not_in_centralizer) throw PreconditionError("sigma does not commute with phi");
  SubBasis ys = y_factor(phi);
  const Word x = Word::generator(phi.rank(), head_of(phi));
  std::vector<Word> fwd;
  std::vector<Word> bwd;
  for (std::size_t j = 0; j < form.theta_images.size(); ++j) {
    fwd.push_back(*ys.restrict(form.theta_images[j]));
    // sigma^-1 has the same form with theta^-1.
    Word b = sigma.backward().image(ys.letters()[j]);
    if (form.variant == CentralizerVariant::inverts_x) b = invert_word(x) * b * x;
    auto r = ys.restrict(b);
    if (!r) throw std::logic_error("theta_of: inverse leaves <Y>");
    bwd.push_back(*r);
  }
  return make_automorphism(std::move(fwd), std::move(bwd));
}

/// sigma of the given form with restriction theta (an automorphism of C_x).
inline Automorphism centralizer_element(const CanonicalInvolution& phi, const Automorphism& theta, bool inverts_x) {
  Automorphism s = y_factor(phi).lift(theta);
  return inverts_x ? compose(phi.aut, s) : s;
}

/// Generators of Cen(phi): phi itself and the extensions (fixing x) of the
/// Whitehead generators of Aut(C_x).
inline std::vector<Automorphism> centralizer_generators(const CanonicalInvolution& phi) {
  SubBasis ys = y_factor(phi);
  std::vector<Automorphism> out{phi.aut};
  if (ys.size() == 1) {
    out.push_back(ys.lift(Automorphism::involution({Word::generator(1, 1, -1)})));
  } else {
    for (const auto& g : whitehead_generators(ys.size())) out.push_back(ys.lift(g.aut));
  }
  return out;
}

/// Product of between 1 and max_len random centralizer generators.
inline Automorphism random_centralizer_element(const CanonicalInvolution& phi, Rng& rng, int max_len = 6) {
  static thread_local std::vector<std::pair<std::vector<Word>, std::vector<Automorphism>>> cache;
  const std::vector<Automorphism>* gens = nullptr;
  for (const auto& [key, val] : cache)
    if (key == phi.aut.images()) gens = &val;
  if (!gens) {
    cache.emplace_back(phi.aut.images(), centralizer_generators(phi));
    gens = &cache.back().second;
  }
  Automorphism out = Automorphism::identity(phi.rank());
  long len = rng.between(1, max_len);
  for (long i = 0; i < len; ++i) out = compose(out, (*gens)[rng.below(gens->size())]);
  return out;
}

// ---------------------------------------------------------------------------
// The family Pi and its centralizer

struct PiMember {
  Automorphism pi;
  Automorphism sigma;
  Automorphism sigma_prime;  // sigma_prime = rho o sigma o rho^-1
  Automorphism rho;
  std::string origin;
};

/// Checks the recorded construction: sigma, sigma' in Cen(phi), conjugate
/// via rho, and pi = sigma o sigma'.
inline bool verify_pi_member(const CanonicalInvolution& phi, const PiMember& m) {
  return commute(m.sigma, phi.aut) && commute(m.sigma_prime, phi.aut) &&
         conjugate(m.sigma, m.rho) == m.sigma_prime && compose(m.sigma, m.sigma_prime) == m.pi;
}

/// pi fixes x and maps every Y letter into <Y>.
inline bool fixes_x_preserves_y(const CanonicalInvolution& phi, const Automorphism& pi) {
  SubBasis ys = y_factor(phi);
  const int h = head_of(phi);
  if (!(pi.image(h) == Word::generator(phi.rank(), h))) return false;
  for (int y : ys.letters())
    if (!ys.restrict(pi.image(y))) return false;
  return true;
}

/// Designated members (restriction to C_x is conjugation by a; a member
/// sending a to b) followed by seeded random products of conjugate
/// centralizer elements.
inline std::vector<PiMember> build_pi_sample(const CanonicalInvolution& phi, int trials, std::uint64_t seed) {
  if (phi.rank() < 3) throw RankError("build_pi_sample needs rank >= 3");
  require_quasi_conjugation(phi);
  const int n = phi.rank();
  const auto& ys = phi.layout.blocks.front().ys;
  const int a = ys[0];
  const int b = ys[1];
  auto gen = [n](int g, int s = 1) { return Word::generator(n, g, s); };
  auto identity_images = [n]() {
    std::vector<Word> v;
    for (int i = 1; i <= n; ++i) v.push_back(Word::generator(n, i));
    return v;
  };
  auto at = [](std::vector<Word>& v, int g) -> Word& { return v[static_cast<std::size_t>(g - 1)]; };

  std::vector<PiMember> out;
  auto add = [&](Automorphism s, Automorphism sp, Automorphism rho, std::string origin) {
    PiMember m{compose(s, sp), std::move(s), std::move(sp), std::move(rho), std::move(origin)};
    if (!verify_pi_member(phi, m) || !fixes_x_preserves_y(phi, m.pi)) {
      throw std::logic_error("build_pi_sample: invalid member " + m.origin);
    }
    out.push_back(std::move(m));
  };

  {
    // sigma inverts every Y letter; sigma' inverts a and sends y to a^-1 y^-1 a.
    auto s = identity_images();
    auto sp = identity_images();
    auto rf = identity_images();
    auto rb = identity_images();
    for (int y : ys) {
      at(s, y) = gen(y, -1);
      at(sp, y) = y == a ? gen(a, -1) : gen(a, -1) * gen(y, -1) * gen(a);
      if (y != a) {
        at(rf, y) = gen(y) * gen(a);
        at(rb, y) = gen(y) * gen(a, -1);
      }
    }
    add(Automorphism::involution(s), Automorphism::involution(sp), make_automorphism(rf, rb), "conjugation-by-a");
  }
  {
    // sigma1: a -> b^-1, b -> a^-1; sigma1': a -> ab, b -> b^-1.
    auto s = identity_images();
    auto sp = identity_images();
    at(s, a) = gen(b, -1);
    at(s, b) = gen(a, -1);
    at(sp, a) = gen(a) * gen(b);
    at(sp, b) = gen(b, -1);
    auto rf = identity_images();
    auto rb = identity_images();
    at(rf, b) = gen(b, -1) * gen(a, -1);
    at(rb, b) = gen(a, -1) * gen(b, -1);
    Automorphism s1 = Automorphism::involution(s);
    Automorphism s1p = Automorphism::involution(sp);
    Automorphism rho = make_automorphism(rf, rb);
    add(s1, s1p, rho, "pair-swap");
    // With the right factor acting first, sigma1' o sigma1 is the one sending a to b.
    add(s1p, s1, rho.inverse(), "pair-swap-reversed");
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Automorphism rho = random_centralizer_element(phi, rng, 3);
    if (t % 2 == 0 && out.size() >= 3) {
      // A designated member transported by a centralizer element.
      const PiMember& d = out[static_cast<std::size_t>(t / 2) % 3];
      add(conjugate(d.sigma, rho), conjugate(d.sigma_prime, rho), conjugate(d.rho, rho), "transported-" + d.origin);
    } else {
      Automorphism s = random_centralizer_element(phi, rng, 4);
      add(s, conjugate(s, rho), rho, "random");
    }
  }
  return out;
}

struct PrimitivePowerCertificate {
  Word x;
  long k = 0;
  bool verified = false;
};

inline nlohmann::json to_json(const PrimitivePowerCertificate& c) {
  return {{"x", render(c.x)}, {"k", c.k}, {"verified", c.verified}};
}

namespace detail {

// k with w = x^k, if w is a power of the single letter x (x > 0).
inline std::optional<long> power_of_letter(const Word& w, int x) {
  long k = 0;
  for (letter_t c : w.letters()) {
    if (std::abs(c) != x) return std::nullopt;
    k += c > 0 ? 1 : -1;
  }
  if (static_cast<std::size_t>(std::labs(k)) != w.size()) return std::nullopt;
  return k;
}

inline PrimitivePowerCertificate certify_power(const Automorphism& tau, int x_index, int probe) {
  const int n = tau.rank();
  Word x = Word::generator(n, x_index);
  if (!(tau.image(x_index) == x)) throw SampleInconclusive("tau does not fix x");
  auto cr = cyclic_reduce(tau.image(probe));
  if (!(cr.core == Word::generator(n, probe))) throw SampleInconclusive("tau(a) is not a conjugate of a");
  auto k = power_of_letter(cr.conjugator, x_index);
  if (!k) throw SampleInconclusive("tau(a) is not conjugated by a power of x");
  if (!(inner(power(x, *k)) == tau)) throw SampleInconclusive("tau is not conjugation by x^k");
  return {x, *k, true};
}

}  // namespace detail

/// Certificate that tau is conjugation by x^k, x the head of phi.
///
/// Rank >= 3: tau must commute with every sampled member of Pi and not be an
/// involution. Rank 2: tau must commute with psi (x fixed, y inverted), not
/// be an involution and have determinant +1. Every certificate is checked
/// against conjugation by x^k; SampleInconclusive if that check fails.
inline std::optional<PrimitivePowerCertificate> is_conjugation_by_primitive_power(const Automorphism& tau,
                                                                                   const CanonicalInvolution& phi,
                                                                                   const std::vector<PiMember>& sample) {
  require_quasi_conjugation(phi);
  require_same_rank(tau.rank(), phi.rank(), "is_conjugation_by_primitive_power");
  const int n = phi.rank();
  const int h = head_of(phi);
  const int a = phi.layout.blocks.front().ys.front();
  if (n >= 3) {
    for (const auto& m : sample)
      if (!commute(tau, m.pi)) return std::nullopt;
    if (is_involution(tau)) return std::nullopt;
    return detail::certify_power(tau, h, a);
  }
  std::vector<Word> psi_images(2, Word(2));
  psi_images[static_cast<std::size_t>(h - 1)] = Word::generator(2, h);
  psi_images[static_cast<std::size_t>(a - 1)] = Word::generator(2, a, -1);
  Automorphism psi = Automorphism::involution(psi_images);
  if (!commute(tau, psi)) return std::nullopt;
  if (is_involution(tau)) return std::nullopt;
  if (determinant(induced_matrix(tau)) != 1) return std::nullopt;
  return detail::certify_power(tau, h, a);
}

struct ConjugateSymmetries {
  Automorphism alpha;
  Automorphism alpha_prime;  // alpha_prime = rho o alpha o rho^-1
  Automorphism rho;
};

/// alpha inverts every generator; alpha' inverts x and sends y to
/// x^-k y^-1 x^k. Then alpha o alpha' is conjugation by x^k.
inline ConjugateSymmetries product_of_conjugate_symmetries(int x_index, long k, int rank) {
  if (rank < 2) throw RankError("product_of_conjugate_symmetries needs rank >= 2");
  if (x_index < 1 || x_index > rank) throw RankError("generator index out of range");
  Word x = Word::generator(rank, x_index);
  Word xk = power(x, k);
  Word xmk = invert_word(xk);
  std::vector<Word> al, alp, rf, rb;
  for (int g = 1; g <= rank; ++g) {
    Word y = Word::generator(rank, g);
    al.push_back(invert_word(y));
    if (g == x_index) {
      alp.push_back(invert_word(x));
      rf.push_back(x);
      rb.push_back(x);
    } else {
      alp.push_back(xmk * invert_word(y) * xk);
      rf.push_back(xmk * y);
      rb.push_back(xk * y);
    }
  }
  ConjugateSymmetries out{Automorphism::involution(al), Automorphism::involution(alp), make_automorphism(rf, rb)};
  if (!(conjugate(out.alpha, out.rho) == out.alpha_prime) || !(compose(out.alpha, out.alpha_prime) == inner(xk))) {
    throw std::logic_error("product_of_conjugate_symmetries: verification failed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// The anti-commutativity formula over a finite universe

struct AccEvaluation {
  bool holds = false;
  std::optional<std::size_t> counterexample;  // index into the universe
};

/// ACC(v) = (v != 1 and v^2 = 1) and for all u: (v v^u)^2 = 1 -> v = v^u,
/// with v^u = u v u^-1 and u ranging over the given universe only. `false`
/// comes with a concrete counterexample; `true` is evidence only.
inline AccEvaluation eval_acc_formula_detailed(const Automorphism& v, const std::vector<Automorphism>& universe) {
  AccEvaluation out;
  if (!is_involution(v)) return out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    Automorphism vu = conjugate(v, universe[i]);
    Automorphism p = compose(v, vu);
    if (compose(p, p).is_identity() && !(vu == v)) {
      out.counterexample = i;
      return out;
    }
  }
  out.holds = true;
  return out;
}

inline bool eval_acc_formula(const Automorphism& v, const std::vector<Automorphism>& universe) {
  return eval_acc_formula_detailed(v, universe).holds;
}

/// Seeded random automorphisms (products of up to `max_len` Whitehead
/// generators) followed by the given targeted elements.
inline std::vector<Automorphism> acc_universe(int rank, std::size_t size, std::uint64_t seed, int max_len = 6,
                                              const std::vector<Automorphism>& extra = {}) {
  std::vector<Automorphism> out;
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(random_automorphism(rank, static_cast<int>(rng.between(1, max_len)), rng));
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

// ---------------------------------------------------------------------------
// Symmetries commuting with a canonical involution

/// Inverts the fixed part; on each block x -> x^-1, y -> x y^-1 x^-1.
inline Automorphism natural_symmetry(const CanonicalInvolution& phi) {
  if (!phi.layout.pairs.empty()) throw PreconditionError("natural_symmetry needs an empty pair part");
  const int n = phi.rank();
  std::vector<Word> img(static_cast<std::size_t>(n), Word(n));
  for (int u : phi.layout.fixed) img[static_cast<std::size_t>(u - 1)] = Word::generator(n, u, -1);
  for (const auto& b : phi.layout.blocks) {
    Word x = Word::generator(n, b.head);
    img[static_cast<std::size_t>(b.head - 1)] = invert_word(x);
    for (int y : b.ys) img[static_cast<std::size_t>(y - 1)] = conjugate(Word::generator(n, y, -1), x);
  }
  return Automorphism::involution(std::move(img));
}

/// For phi with one block and nonempty fixed part: like natural_symmetry but
/// x -> u0 x^-1 u0^-1 and y -> u0 x y^-1 x^-1 u0^-1, so that phi o psi has a
/// block of size two.
inline Automorphism fixed_block_symmetry(const CanonicalInvolution& phi) {
  if (!phi.layout.pairs.empty() || phi.layout.blocks.size() != 1 || phi.layout.fixed.empty()) {
    throw PreconditionError("fixed_block_symmetry needs one block and a nonempty fixed part");
  }
  const int n = phi.rank();
  Word u0 = Word::generator(n, phi.layout.fixed.front());
  std::vector<Word> img = natural_symmetry(phi).images();
  const Block& b = phi.layout.blocks.front();
  Word x = Word::generator(n, b.head);
  img[static_cast<std::size_t>(b.head - 1)] = conjugate(invert_word(x), u0);
  for (int y : b.ys) img[static_cast<std::size_t>(y - 1)] = conjugate(conjugate(Word::generator(n, y, -1), x), u0);
  return Automorphism::involution(std::move(img));
}

/// For phi with two blocks {x, y, B} and {z, t, C} (the first two blocks of
/// size >= 2): natural elsewhere, and on their union
/// tx -> (tx)^-1, y -> (tx) y^-1 (tx)^-1, b -> (tx) b^-1 (tx)^-1,
/// z -> z^-1, t -> z t^-1 z^-1, c -> z c^-1 z^-1.
inline Automorphism two_block_symmetry(const CanonicalInvolution& phi) {
  std::vector<const Block*> big;
  for (const auto& b : phi.layout.blocks)
    if (b.size() >= 2) big.push_back(&b);
  if (!phi.layout.pairs.empty() || big.size() < 2) {
    throw PreconditionError("two_block_symmetry needs two blocks of size >= 2");
  }
  const int n = phi.rank();
  std::vector<Word> img = natural_symmetry(phi).images();
  const Block& b1 = *big[0];
  const Block& b2 = *big[1];
  Word x = Word::generator(n, b1.head);
  Word z = Word::generator(n, b2.head);
  Word t = Word::generator(n, b2.ys.front());
  Word tx = t * x;
  Word psi_t = conjugate(invert_word(t), z);
  for (int y : b1.ys) img[static_cast<std::size_t>(y - 1)] = conjugate(Word::generator(n, y, -1), tx);
  for (int c : b2.ys) img[static_cast<std::size_t>(c - 1)] = conjugate(Word::generator(n, c, -1), z);
  img[static_cast<std::size_t>(b2.head - 1)] = invert_word(z);
  // psi(x) = psi(t)^-1 psi(tx) = psi(t)^-1 (tx)^-1
  img[static_cast<std::size_t>(b1.head - 1)] = invert_word(psi_t) * invert_word(tx);
  return Automorphism::involution(std::move(img));
}

// ---------------------------------------------------------------------------
// Conjugacy of products phi psi and phi psi'

struct ProductConjugacy {
  Verdict verdict = Verdict::unknown;
  std::optional<Automorphism> conjugator;  // sigma^-1 (phi psi) sigma = phi psi'
  std::string reason;
};

/// For involutions psi, psi' commuting with phi, decides whether phi psi and
/// phi psi' are conjugate where the available constructions allow.
///
/// For a quasi-conjugation phi the restrictions theta, theta' to C_x are
/// compared; a conjugator pi in Aut(C_x) extends to sigma fixing x. Otherwise
/// canonical bases of the two products are searched for directly.
inline ProductConjugacy kkprime_product_conjugacy_check(const CanonicalInvolution& phi, const Automorphism& psi,
                                                        const Automorphism& psi_prime, int depth = 4) {
  require_same_rank(phi.rank(), psi.rank(), "kkprime_product_conjugacy_check");
  require_same_rank(phi.rank(), psi_prime.rank(), "kkprime_product_conjugacy_check");
  if (!commute(phi.aut, psi) || !commute(phi.aut, psi_prime)) {
    throw PreconditionError("psi and psi' must commute with phi");
  }
  if (!is_involution(psi) || !is_involution(psi_prime)) throw PreconditionError("psi and psi' must be involutions");
  const Automorphism p = compose(phi.aut, psi);
  const Automorphism pp = compose(phi.aut, psi_prime);
  auto certified = [&](const Automorphism& sigma, std::string reason) {
    if (!(compose(compose(sigma.inverse(), p), sigma) == pp)) {
      throw std::logic_error("kkprime_product_conjugacy_check: conjugator failed verification");
    }
    return ProductConjugacy{Verdict::yes, sigma, std::move(reason)};
  };
  if (psi == psi_prime) return certified(Automorphism::identity(phi.rank()), "equal");

  const bool qc = phi.layout.fixed.empty() && phi.layout.pairs.empty() && phi.layout.blocks.size() == 1;
  if (qc) {
    CentralizerForm f1 = centralizer_form(phi, psi);
    CentralizerForm f2 = centralizer_form(phi, psi_prime);
    if (f1.variant == f2.variant) {
      Automorphism th = theta_of(phi, psi);
      Automorphism thp = theta_of(phi, psi_prime);
      SubBasis ys = y_factor(phi);
      if (th.is_identity() != thp.is_identity()) {
        return {Verdict::no, std::nullopt, "one restriction to C_x is trivial"};
      }
      if (ys.size() == 1) {
        if (th == thp) return certified(Automorphism::identity(phi.rank()), "equal restrictions");
      } else {
        auto w1 = find_canonical_basis(th, depth);
        auto w2 = find_canonical_basis(thp, depth);
        if (w1 && w2 && w1->data == w2->data) {
          Automorphism pi = conjugator_from_witnesses(*w1, *w2);
          return certified(ys.lift(pi), "restrictions conjugate in Aut(C_x)");
        }
        if (w1 && w2 && w1->data.is_soft() && w2->data.is_soft()) {
          return {Verdict::no, std::nullopt, "restrictions have different canonical forms"};
        }
      }
    }
  }

  if (p.is_identity() || pp.is_identity()) {
    return {p.is_identity() == pp.is_identity() ? Verdict::yes : Verdict::no, std::nullopt, "identity product"};
  }
  if (induced_matrix(p).trace() != induced_matrix(pp).trace() || is_soft(p) != is_soft(pp)) {
    return {Verdict::no, std::nullopt, "abelian invariants differ"};
  }
  auto w1 = find_canonical_basis(p, depth);
  auto w2 = find_canonical_basis(pp, depth);
  if (w1 && w2) {
    if (w1->data == w2->data) return certified(conjugator_from_witnesses(*w1, *w2), "equal canonical forms");
    if (w1->data.is_soft()) return {Verdict::no, std::nullopt, "products have different canonical forms"};
  }
  return {Verdict::unknown, std::nullopt, "invariants inconclusive"};
}

}  // namespace fgaut
