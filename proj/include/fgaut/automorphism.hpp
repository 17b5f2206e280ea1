#pragma once

// Endomorphisms and automorphisms of a finite-rank free group, stored as the
// images of the basis letters.
//
// Composition convention: compose(f, g) is f after g, i.e. (f o g)(w) = f(g(w));
// the right factor acts first.

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgaut/random.hpp"
#include "fgaut/word.hpp"

namespace fgaut {

namespace detail {
inline std::atomic<std::size_t>& max_image_length_storage() {
  static std::atomic<std::size_t> limit{1'000'000};
  return limit;
}
}  // namespace detail

/// Longest generator image compose() is allowed to produce.
inline std::size_t max_image_length() { return detail::max_image_length_storage().load(); }
inline void set_max_image_length(std::size_t n) { detail::max_image_length_storage().store(n); }

class Endomorphism {
 public:
  explicit Endomorphism(std::vector<Word> images) : images_(std::move(images)) {
    if (images_.empty()) throw RankError("endomorphism needs at least one generator");
    for (const auto& w : images_) require_same_rank(rank(), w.rank(), "endomorphism image");
  }

  static Endomorphism identity(int rank) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(rank));
    for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(rank, i));
    return Endomorphism(std::move(images));
  }

  int rank() const { return static_cast<int>(images_.size()); }
  /// Image of generator `index` (1-based).
  const Word& image(int index) const { return images_.at(static_cast<std::size_t>(index - 1)); }
  const std::vector<Word>& images() const { return images_; }

  std::size_t max_image_length() const {
    std::size_t m = 0;
    for (const auto& w : images_) m = std::max(m, w.size());
    return m;
  }
  std::size_t total_length() const {
    std::size_t s = 0;
    for (const auto& w : images_) s += w.size();
    return s;
  }
  bool is_identity() const {
    for (int i = 1; i <= rank(); ++i) {
      const Word& w = image(i);
      if (w.size() != 1 || w[0] != i) return false;
    }
    return true;
  }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;
  friend auto operator<=>(const Endomorphism& a, const Endomorphism& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<Word> images_;
};

inline Word apply(const Endomorphism& f, const Word& w) {
  require_same_rank(f.rank(), w.rank(), "apply");
  std::vector<letter_t> out;
  for (letter_t c : w.letters()) {
    const Word& img = f.image(std::abs(c));
    if (c > 0) {
      for (letter_t d : img.letters()) {
        if (!out.empty() && out.back() == -d) out.pop_back(); else out.push_back(d);
      }
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        letter_t d = -*it;
        if (!out.empty() && out.back() == -d) out.pop_back(); else out.push_back(d);
      }
    }
    if (out.size() > max_word_length()) throw LengthError("apply: image exceeds word length limit");
  }
  return Word::from_letters(w.rank(), out);
}

/// (f o g)(w) = f(g(w)).
inline Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  require_same_rank(f.rank(), g.rank(), "compose");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(f.rank()));
  for (const auto& w : g.images()) {
    images.push_back(apply(f, w));
    if (images.back().size() > max_image_length()) {
      throw LengthError("compose: image of length " + std::to_string(images.back().size()) +
                        " exceeds limit " + std::to_string(max_image_length()));
    }
  }
  return Endomorphism(std::move(images));
}

inline bool equal(const Endomorphism& f, const Endomorphism& g) {
  require_same_rank(f.rank(), g.rank(), "equal");
  return f == g;
}

/// An endomorphism together with a verified two-sided inverse.
class Automorphism {
 public:
  Automorphism() : Automorphism(identity(1)) {}

  /// Throws NotInverse unless both compositions fix every generator.
  Automorphism(Endomorphism forward, Endomorphism backward)
      : forward_(std::move(forward)), backward_(std::move(backward)) {
    require_same_rank(forward_.rank(), backward_.rank(), "automorphism");
    if (!compose(forward_, backward_).is_identity() || !compose(backward_, forward_).is_identity()) {
      throw NotInverse("supplied inverse images do not invert the map");
    }
  }

  static Automorphism identity(int rank) {
    return Automorphism(Endomorphism::identity(rank), Endomorphism::identity(rank), Trusted{});
  }

  /// Self-inverse map; throws NotInverse unless f o f = id.
  static Automorphism involution(std::vector<Word> images) {
    Endomorphism f(std::move(images));
    return Automorphism(f, f);
  }

  int rank() const { return forward_.rank(); }
  const Endomorphism& forward() const { return forward_; }
  const Endomorphism& backward() const { return backward_; }
  const Word& image(int index) const { return forward_.image(index); }
  const std::vector<Word>& images() const { return forward_.images(); }
  Automorphism inverse() const { return Automorphism(backward_, forward_, Trusted{}); }
  bool is_identity() const { return forward_.is_identity(); }

  /// Re-checks the construction-time invariant.
  bool verify_inverse() const {
    return compose(forward_, backward_).is_identity() && compose(backward_, forward_).is_identity();
  }

  friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.forward_ == b.forward_; }

  friend Automorphism compose(const Automorphism& f, const Automorphism& g) {
    return Automorphism(compose(f.forward_, g.forward_), compose(g.backward_, f.backward_), Trusted{});
  }

 private:
  struct Trusted {};
  Automorphism(Endomorphism forward, Endomorphism backward, Trusted)
      : forward_(std::move(forward)), backward_(std::move(backward)) {}

  Endomorphism forward_;
  Endomorphism backward_;
};

// Makes the friend visible to qualified calls such as fgaut::compose.
Automorphism compose(const Automorphism& f, const Automorphism& g);

inline Automorphism make_automorphism(std::vector<Word> images, std::vector<Word> inverse_images) {
  if (images.size() != inverse_images.size()) {
    throw RankError("images and inverse_images differ in length");
  }
  return Automorphism(Endomorphism(std::move(images)), Endomorphism(std::move(inverse_images)));
}

inline Word apply(const Automorphism& f, const Word& w) { return apply(f.forward(), w); }

inline bool equal(const Automorphism& f, const Automorphism& g) { return equal(f.forward(), g.forward()); }

/// s o f o s^-1.
inline Automorphism conjugate(const Automorphism& f, const Automorphism& s) {
  return compose(compose(s, f), s.inverse());
}

inline bool commute(const Automorphism& f, const Automorphism& g) {
  return compose(f, g) == compose(g, f);
}

inline Automorphism power(const Automorphism& f, long k) {
  Automorphism base = k < 0 ? f.inverse() : f;
  Automorphism out = Automorphism::identity(f.rank());
  for (long i = 0; i < std::labs(k); ++i) out = compose(out, base);
  return out;
}

/// Conjugation of F by t: w -> t w t^-1.
inline Automorphism inner(const Word& t) {
  std::vector<Word> fwd;
  std::vector<Word> bwd;
  Word ti = invert_word(t);
  for (int i = 1; i <= t.rank(); ++i) {
    Word g = Word::generator(t.rank(), i);
    fwd.push_back(conjugate(g, t));
    bwd.push_back(conjugate(g, ti));
  }
  return make_automorphism(std::move(fwd), std::move(bwd));
}

/// Least k <= n with f^k = id.
inline std::optional<int> order_at_most(const Automorphism& f, int n) {
  Endomorphism p = f.forward();
  for (int k = 1; k <= n; ++k) {
    if (p.is_identity()) return k;
    if (k < n) p = compose(f.forward(), p);
  }
  return std::nullopt;
}

inline bool is_involution(const Automorphism& f) {
  return !f.is_identity() && compose(f.forward(), f.forward()).is_identity();
}

/// Basis images rendered as `[w1, w2, ...]`.
inline std::string render(const Endomorphism& f) {
  std::string out = "[";
  for (int i = 1; i <= f.rank(); ++i) {
    if (i > 1) out += ", ";
    out += render(f.image(i));
  }
  return out + "]";
}
inline std::string render(const Automorphism& f) { return render(f.forward()); }

// ---------------------------------------------------------------------------
// Whitehead generators

struct WhiteheadGenerator {
  int id = 0;
  std::string name;
  Automorphism aut;
};

namespace detail {

// Type-2 behaviour of a non-multiplier generator y under multiplier a.
enum class Move { fix = 0, right = 1, left_inverse = 2, conjugate = 3 };

inline Word whitehead_image(int rank, int y, letter_t a, Move m) {
  Word g = Word::generator(rank, y);
  Word am = Word::from_letters(rank, {a});
  Word ai = invert_word(am);
  switch (m) {
    case Move::fix: return g;
    case Move::right: return g * am;
    case Move::left_inverse: return ai * g;
    case Move::conjugate: return ai * g * am;
  }
  return g;
}

inline std::vector<WhiteheadGenerator> build_whitehead_generators(int rank) {
  std::vector<WhiteheadGenerator> out;
  const char* tags = "-RLC";
  // Inner-type generators, by multiplier letter x1, X1, x2, X2, ... and then by
  // the base-4 behaviour code over the remaining generators in index order.
  for (int m = 1; m <= rank; ++m) {
    for (int s : {1, -1}) {
      letter_t a = s > 0 ? m : -m;
      std::size_t others = static_cast<std::size_t>(rank - 1);
      std::size_t combos = 1;
      for (std::size_t i = 0; i < others; ++i) combos *= 4;
      for (std::size_t code = 1; code < combos; ++code) {
        std::vector<Word> fwd;
        std::vector<Word> bwd;
        std::string name = std::string("W(") + (a > 0 ? "x" : "X") + std::to_string(m) + ";";
        std::size_t rest = code;
        std::vector<Move> moves(static_cast<std::size_t>(rank + 1), Move::fix);
        for (int y = rank; y >= 1; --y) {
          if (y == m) continue;
          moves[static_cast<std::size_t>(y)] = static_cast<Move>(rest % 4);
          rest /= 4;
        }
        for (int y = 1; y <= rank; ++y) {
          if (y == m) {
            fwd.push_back(Word::generator(rank, y));
            bwd.push_back(Word::generator(rank, y));
            continue;
          }
          auto mv = moves[static_cast<std::size_t>(y)];
          fwd.push_back(whitehead_image(rank, y, a, mv));
          bwd.push_back(whitehead_image(rank, y, -a, mv));
          name.push_back(tags[static_cast<int>(mv)]);
        }
        name += ")";
        out.push_back({static_cast<int>(out.size()), name,
                       make_automorphism(std::move(fwd), std::move(bwd))});
      }
    }
  }
  // Permutation / inversion maps x_i -> x_{p(i)}^{e_i}, identity excluded.
  std::vector<int> perm(static_cast<std::size_t>(rank));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (unsigned mask = 0; mask < (1U << rank); ++mask) {
      std::vector<Word> fwd(static_cast<std::size_t>(rank), Word(rank));
      std::vector<Word> bwd(static_cast<std::size_t>(rank), Word(rank));
      bool ident = true;
      std::string name = "P(";
      for (int i = 0; i < rank; ++i) {
        int target = perm[static_cast<std::size_t>(i)];
        int sign = (mask >> i) & 1U ? -1 : 1;
        if (target != i + 1 || sign != 1) ident = false;
        fwd[static_cast<std::size_t>(i)] = Word::generator(rank, target, sign);
        bwd[static_cast<std::size_t>(target - 1)] = Word::generator(rank, i + 1, sign);
        if (i) name += ",";
        name += (sign > 0 ? "x" : "X") + std::to_string(target);
      }
      if (ident) continue;
      name += ")";
      out.push_back({static_cast<int>(out.size()), name,
                     make_automorphism(std::move(fwd), std::move(bwd))});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

/// Whitehead generators of Aut(F_rank) in a fixed order: first every
/// inner-type generator (multiplier letter a; each other generator y is fixed,
/// sent to ya, a^-1 y or a^-1 y a; not all fixed), ordered by multiplier
/// x1, X1, x2, ... and then by behaviour code; then every non-identity
/// permutation/inversion of the basis. The result is cached per rank.
inline const std::vector<WhiteheadGenerator>& whitehead_generators(int rank) {
  if (rank < 2) throw RankError("whitehead_generators needs rank >= 2");
  static std::mutex mu;
  static std::map<int, std::vector<WhiteheadGenerator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(rank);
  if (it == cache.end()) it = cache.emplace(rank, detail::build_whitehead_generators(rank)).first;
  return it->second;
}

/// Number of inner-type generators at the front of whitehead_generators(rank).
inline std::size_t inner_type_count(int rank) {
  std::size_t combos = 1;
  for (int i = 1; i < rank; ++i) combos *= 4;
  return static_cast<std::size_t>(2 * rank) * (combos - 1);
}

/// Product of `length` uniformly chosen Whitehead generators.
inline Automorphism random_automorphism(int rank, int length, std::uint64_t seed) {
  if (rank < 2) throw RankError("random_automorphism needs rank >= 2");
  const auto& gens = whitehead_generators(rank);
  Rng rng(seed);
  Automorphism out = Automorphism::identity(rank);
  for (int i = 0; i < length; ++i) out = compose(out, gens[rng.below(gens.size())].aut);
  return out;
}

/// Same as above but drawing from the caller's stream.
inline Automorphism random_automorphism(int rank, int length, Rng& rng) {
  return random_automorphism(rank, length, rng.next());
}

}  // namespace fgaut
