// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fgaut/fgaut.hpp"

using namespace fgaut;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Automorphism conj_inverse(const Automorphism& f, const Automorphism& s) {
  return compose(compose(s.inverse(), f), s);
}

std::vector<CanonicalData> soft_shapes(int rank) {
  std::vector<CanonicalData> out;
  for (const auto& d : enumerate_canonical_data(rank))
    if (d.is_soft()) out.push_back(d);
  return out;
}

Outcome decompose_round_trip() {
  Outcome o;
  long failures = 0;
  for (int n = 2; n <= 4; ++n) {
    auto shapes = soft_shapes(n);
    Rng rng(derive_seed(1001, static_cast<std::uint64_t>(n)));
    for (int i = 0; i < 500; ++i) {
      auto phi = build_canonical(shapes[static_cast<std::size_t>(i) % shapes.size()], n);
      Word w = random_word_upto(rng, n, 8);
      std::optional<int> head;
      if (rng.coin()) head = phi.layout.blocks[rng.below(phi.layout.blocks.size())].head;
      Word a = reassemble(phi, {w, head});
      try {
        if (!(reassemble(phi, decompose_inverted(phi, a)) == a)) ++failures;
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  o.pass = failures == 0;
  o.detail = "1500 inputs, " + std::to_string(failures) + " failures";
  return o;
}

Outcome evenness() {
  Outcome o;
  Rng rng(1002);
  long failures = 0;
  for (int i = 0; i < 1000; ++i) {
    int n = 2 + i % 3;
    auto shapes = soft_shapes(n);
    Automorphism phi = build_canonical(shapes[rng.below(shapes.size())], n).aut;
    phi = conj_inverse(phi, random_automorphism(n, static_cast<int>(rng.between(0, 8)), rng));
    Word w = random_word_upto(rng, n, 10);
    if (!abelianize_word(apply(phi, w) * invert_word(w)).is_even()) ++failures;
  }
  o.pass = failures == 0;
  o.detail = "1000 samples, " + std::to_string(failures) + " odd";
  return o;
}

Outcome centralizer_completeness() {
  Outcome o;
  long wrong = 0;
  for (int n = 2; n <= 4; ++n) {
    auto phi = quasi_conjugation(n);
    Rng rng(derive_seed(1003, static_cast<std::uint64_t>(n)));
    for (int i = 0; i < 500; ++i) {
      Automorphism s = random_centralizer_element(phi, rng, 6);
      try {
        auto f = centralizer_form(phi, s);
        bool inverts = f.variant == CentralizerVariant::inverts_x;
        if (f.variant == CentralizerVariant::not_in_centralizer ||
            !(centralizer_element(phi, theta_of(phi, s), inverts) == s)) {
          ++wrong;
        }
      } catch (const std::exception&) {
        ++wrong;
      }
    }
    int rejected = 0;
    while (rejected < 500) {
      Automorphism s = random_automorphism(n, static_cast<int>(rng.between(1, 8)), rng);
      if (commute(s, phi.aut)) continue;
      ++rejected;
      if (centralizer_form(phi, s).variant != CentralizerVariant::not_in_centralizer) ++wrong;
    }
  }
  o.pass = wrong == 0;
  o.detail = "ranks 2-4, 1000 per rank, " + std::to_string(wrong) + " misclassified";
  return o;
}

Outcome anti_commutativity() {
  Outcome o;
  long violations = 0;
  long commuting = 0;
  for (int n = 2; n <= 3; ++n) {
    Rng rng(derive_seed(1004, static_cast<std::uint64_t>(n)));
    for (const Automorphism& phi : {quasi_conjugation(n).aut, symmetry(n).aut}) {
      for (int i = 0; i < 500; ++i) {
        Automorphism psi = conj_inverse(phi, random_automorphism(n, static_cast<int>(rng.between(1, 10)), rng));
        if (commute(phi, psi)) {
          ++commuting;
          if (!(phi == psi)) ++violations;
        }
      }
    }
  }
  o.pass = violations == 0;
  o.detail = "2000 conjugates, " + std::to_string(commuting) + " commuting, " + std::to_string(violations) +
             " violations";
  return o;
}

Outcome determinants() {
  Outcome o;
  long bad = 0;
  Rng rng(1005);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < 100; ++i) {
      Automorphism q = conj_inverse(quasi_conjugation(n).aut, random_automorphism(n, 10, rng));
      if (determinant(induced_matrix(q)) != -1) ++bad;
    }
  }
  for (int i = 0; i < 100; ++i) {
    int n = 2 + i % 3;
    auto all = enumerate_canonical_data(n);
    Automorphism phi = conj_inverse(build_canonical(all[rng.below(all.size())], n).aut,
                                    random_automorphism(n, 4, rng));
    Automorphism psi = conj_inverse(phi, random_automorphism(n, 6, rng));
    if (determinant(induced_matrix(compose(phi, psi))) != 1) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "300 quasi-conjugations, 100 products, " + std::to_string(bad) + " wrong";
  return o;
}

Outcome symmetry_square() {
  Automorphism psi = make_automorphism({word(2, {-2}), word(2, {1})}, {word(2, {2}), word(2, {-1})});
  Automorphism sq = compose(psi, psi);
  Outcome o;
  o.pass = sq == symmetry(2).aut;
  o.detail = "psi^2 = " + render(sq);
  return o;
}

Outcome pi_recognition() {
  Outcome o;
  long errors = 0;
  std::size_t min_sample = SIZE_MAX;
  for (int n = 3; n <= 4; ++n) {
    auto phi = quasi_conjugation(n);
    auto sample = build_pi_sample(phi, 60, derive_seed(1007, static_cast<std::uint64_t>(n)));
    min_sample = std::min(min_sample, sample.size());
    bool designated_a = false;
    bool designated_b = false;
    for (const auto& m : sample) {
      designated_a |= m.origin == "conjugation-by-a";
      designated_b |= m.origin == "pair-swap";
    }
    if (sample.size() < 50 || !designated_a || !designated_b) ++errors;
    const int h = head_of(phi);
    Word x = Word::generator(n, h);
    for (long k = -3; k <= 3; ++k) {
      try {
        auto c = is_conjugation_by_primitive_power(inner(power(x, k)), phi, sample);
        if (!c || c->k != k || !c->verified || !(inner(power(c->x, c->k)) == inner(power(x, k)))) ++errors;
      } catch (const std::exception&) {
        ++errors;
      }
    }
    if (is_conjugation_by_primitive_power(phi.aut, phi, sample)) ++errors;
    Rng rng(derive_seed(1017, static_cast<std::uint64_t>(n)));
    int tested = 0;
    while (tested < 100) {
      Automorphism tau = random_automorphism(n, static_cast<int>(rng.between(1, 8)), rng);
      if (detail::is_inner_by_letter_power(tau, h)) continue;
      ++tested;
      try {
        if (auto c = is_conjugation_by_primitive_power(tau, phi, sample)) ++errors;
      } catch (const std::exception&) {
        ++errors;
      }
    }
  }
  o.pass = errors == 0;
  o.detail = "ranks 3-4, sample >= " + std::to_string(min_sample) + ", " + std::to_string(errors) + " errors";
  return o;
}

Outcome symmetry_factorization() {
  Outcome o;
  long bad = 0;
  Word x = word(2, {1});
  for (long k = -5; k <= 5; ++k) {
    try {
      auto s = product_of_conjugate_symmetries(1, k, 2);
      if (!(compose(s.alpha, s.alpha_prime) == inner(power(x, k)))) ++bad;
      if (!(conjugate(s.alpha, s.rho) == s.alpha_prime)) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail = "k in -5..5, " + std::to_string(bad) + " mismatches";
  return o;
}

Outcome census() {
  Census c2 = meskin_census(2);
  Census c3 = meskin_census(3);
  Outcome o;
  o.pass = c2.total == 4 && c3.soft == 6;
  o.detail = "rank 2: " + std::to_string(c2.total) + " classes, rank 3: " + std::to_string(c3.soft) + " soft";
  return o;
}

Outcome whitehead_vs_brute() {
  Outcome o;
  auto brute = primitive_census_brute(2, 4);
  long disagree = 0;
  long total = 0;
  long primitive = 0;
  std::vector<Word> frontier{Word(2)};
  for (int len = 0; len <= 4; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      ++total;
      bool p = is_primitive(w);
      primitive += p ? 1 : 0;
      if (p != (brute.count(w) == 1)) ++disagree;
      if (len == 4) continue;
      for (letter_t c : {1, -1, 2, -2}) {
        if (!w.empty() && w.back() == -c) continue;
        next.push_back(w * word(2, {c}));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& w : brute)
    if (w.size() > 4 || !is_primitive(w)) ++disagree;
  o.pass = disagree == 0;
  o.detail = std::to_string(total) + " words, " + std::to_string(primitive) + " primitive, " +
             std::to_string(disagree) + " disagreements";
  return o;
}

Outcome stallings_intersection() {
  SubgroupGraph c = intersect(fold(3, {word(3, {1}), word(3, {2})}), fold(3, {word(3, {1}), word(3, {3})}));
  Outcome o;
  long bad = 0;
  long members = 0;
  std::vector<Word> frontier{Word(3)};
  for (int len = 0; len <= 6; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      bool power_of_x1 = true;
      for (letter_t l : w.letters()) power_of_x1 &= (l == 1 || l == -1);
      bool in = contains(c, w);
      members += in ? 1 : 0;
      if (in != power_of_x1) ++bad;
      if (len == 6) continue;
      for (letter_t l = -3; l <= 3; ++l) {
        if (l == 0 || (!w.empty() && w.back() == -l)) continue;
        next.push_back(w * word(3, {l}));
      }
    }
    frontier = std::move(next);
  }
  o.pass = graph_rank(c) == 1 && bad == 0;
  o.detail = "graph rank " + std::to_string(graph_rank(c)) + ", " + std::to_string(members) + " members, " +
             std::to_string(bad) + " wrong";
  return o;
}

Outcome acc_suite() {
  Outcome o;
  long bad = 0;
  long shapes = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& d : enumerate_canonical_data(n)) {
      if (acc_necessary(d)) continue;
      ++shapes;
      auto w = commuting_conjugate_witness(d, n);
      if (!w || !verify_commuting_conjugates(*w)) ++bad;
    }
    auto universe = acc_universe(n, 200, derive_seed(1012, static_cast<std::uint64_t>(n)));
    if (!eval_acc_formula(quasi_conjugation(n).aut, universe)) ++bad;
    if (!eval_acc_formula(symmetry(n).aut, universe)) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(shapes) + " failing shapes witnessed, " + std::to_string(bad) + " problems";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "inverted-element decomposition round-trip", 5.0, decompose_round_trip},
      {2, "evenness of phi(w) w^-1", 0, evenness},
      {3, "centralizer classification", 0, centralizer_completeness},
      {4, "anti-commutativity of quasi-conjugations and symmetries", 0, anti_commutativity},
      {5, "exact determinant separation", 0, determinants},
      {6, "symmetry square identity", 0, symmetry_square},
      {7, "Pi centralizer recognition", 0, pi_recognition},
      {8, "conjugate-symmetry factorization", 0, symmetry_factorization},
      {9, "involution class census", 0, census},
      {10, "Whitehead primitivity vs brute force", 30.0, whitehead_vs_brute},
      {11, "Stallings intersection", 0, stallings_intersection},
      {12, "commuting-conjugate witnesses and ACC formula", 0, acc_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += ", over time limit";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
