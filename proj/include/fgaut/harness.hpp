#pragma once

// Seeded verification suites. Each suite checks one statement about
// involutions of free groups on randomly generated inputs and reports the
// counterexamples it finds.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgaut/characterization.hpp"
#include "fgaut/involution.hpp"
#include "fgaut/json_io.hpp"
#include "fgaut/random.hpp"

namespace fgaut {

inline constexpr const char* kBoundedDisclaimer =
    "Bounded check: quantifiers range over the sampled inputs only. A pass is evidence; a failure is a "
    "concrete counterexample.";

struct SuiteReport {
  std::string suite;
  std::string statement;
  int rank = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
  long long wall_time_ms = 0;
};

/// Census of canonical shapes at one rank (identity excluded).
struct Census {
  int rank = 0;
  int total = 0;
  int soft = 0;
  int non_soft = 0;
  std::vector<CanonicalData> classes;
};

inline Census meskin_census(int rank) {
  if (rank < 1) throw RankError("census needs a positive rank");
  Census c;
  c.rank = rank;
  c.classes = enumerate_canonical_data(rank);
  c.total = static_cast<int>(c.classes.size());
  for (const auto& d : c.classes) (d.is_soft() ? c.soft : c.non_soft) += 1;
  return c;
}

namespace detail {

using TrialFn = std::function<std::optional<std::string>(std::size_t index, Rng& rng)>;

struct SuiteContext {
  int rank;
  int trials;
  std::uint64_t seed;
  std::vector<std::string> notes;
};

struct SuiteDef {
  std::string name;
  std::string statement;
  int min_rank;
  bool even_rank_only;
  bool single_trial;
  std::function<TrialFn(SuiteContext&)> prepare;
};

inline Automorphism random_conjugator(int rank, Rng& rng, int max_len = 10) {
  return random_automorphism(rank, static_cast<int>(rng.between(1, max_len)), rng);
}

inline Automorphism conj_by_inverse(const Automorphism& f, const Automorphism& s) {
  return compose(compose(s.inverse(), f), s);  // s^-1 f s
}

// Direct check, independent of the recognizer: t is conjugation by a power of x.
inline bool is_inner_by_letter_power(const Automorphism& t, int x) {
  const int n = t.rank();
  if (!(t.image(x) == Word::generator(n, x))) return false;
  int probe = x == 1 ? 2 : 1;
  auto k = letter_power(cyclic_reduce(t.image(probe)).conjugator, x);
  return k && t == inner(power(Word::generator(n, x), *k));
}

// A random non-identity canonical shape at this rank satisfying `keep`.
inline CanonicalData random_data(int rank, Rng& rng, const std::function<bool(const CanonicalData&)>& keep) {
  std::vector<CanonicalData> all;
  for (const auto& d : enumerate_canonical_data(rank))
    if (keep(d)) all.push_back(d);
  if (all.empty()) throw RankError("no canonical shapes of the requested kind");
  return all[rng.below(all.size())];
}

inline TrialFn lemma_inverse(SuiteContext& ctx) {
  const int n = ctx.rank;
  return [n](std::size_t, Rng& rng) -> std::optional<std::string> {
    CanonicalData d = random_data(n, rng, [](const CanonicalData& x) { return x.pairs == 0; });
    CanonicalInvolution phi = build_canonical(d, n);
    Word w = random_word_upto(rng, n, 8);
    std::optional<int> head;
    if (rng.coin()) head = phi.layout.blocks[rng.below(phi.layout.blocks.size())].head;
    Word a = reassemble(phi, {w, head});
    std::string where = "data=" + render(d) + " a=" + render(a);
    if (!abelianize_word(apply(phi.aut, w) * invert_word(w)).is_even()) return where + ": phi(w)w^-1 not even";
    InvertedDecomposition got = decompose_inverted(phi, a);
    if (!(reassemble(phi, got) == a)) return where + ": reassembly differs";
    if (got.head && !phi.layout.block_of_head(*got.head)) return where + ": head is not a block head";
    return std::nullopt;
  };
}

inline TrialFn centralizer(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto phi = std::make_shared<CanonicalInvolution>(quasi_conjugation(n));
  return [n, phi](std::size_t index, Rng& rng) -> std::optional<std::string> {
    if (index % 2 == 0) {
      Automorphism s = random_centralizer_element(*phi, rng, 6);
      CentralizerForm f = centralizer_form(*phi, s);
      if (f.variant == CentralizerVariant::not_in_centralizer) return "centralizer element " + render(s) + " rejected";
      Automorphism rebuilt =
          centralizer_element(*phi, theta_of(*phi, s), f.variant == CentralizerVariant::inverts_x);
      if (!(rebuilt == s)) return "form does not rebuild " + render(s);
      return std::nullopt;
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Automorphism s = random_conjugator(n, rng, 8);
      if (commute(s, phi->aut)) continue;
      if (centralizer_form(*phi, s).variant != CentralizerVariant::not_in_centralizer) {
        return "non-centralizing " + render(s) + " classified into the centralizer";
      }
      return std::nullopt;
    }
    return "rejection sampling found no non-centralizing automorphism";
  };
}

inline TrialFn acc_witness(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto failing = std::make_shared<std::vector<CanonicalData>>();
  for (const auto& d : enumerate_canonical_data(n))
    if (!acc_necessary(d)) failing->push_back(d);
  ctx.notes.push_back("shapes failing the necessary condition: " + std::to_string(failing->size()));
  return [n, failing](std::size_t index, Rng& rng) -> std::optional<std::string> {
    if (failing->empty()) return std::nullopt;
    const CanonicalData& d = (*failing)[index % failing->size()];
    auto w = commuting_conjugate_witness(d, n);
    if (!w) return "no witness for " + render(d);
    if (!verify_commuting_conjugates(*w)) return "witness for " + render(d) + " does not verify";
    // Transport the witness and refute the formula on the transported involution.
    Automorphism t = random_conjugator(n, rng, 6);
    Automorphism v = conjugate(w->phi, t);
    Automorphism u = conjugate(w->conjugator, t).inverse();
    if (eval_acc_formula(v, {u})) return "formula not refuted for " + render(d) + " via " + w->construction;
    return std::nullopt;
  };
}

inline TrialFn qc_anticommute(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto qc = std::make_shared<CanonicalInvolution>(quasi_conjugation(n));
  auto sym = std::make_shared<CanonicalInvolution>(symmetry(n));
  return [n, qc, sym](std::size_t index, Rng& rng) -> std::optional<std::string> {
    const CanonicalInvolution& phi = index % 2 == 0 ? *qc : *sym;
    Automorphism s = random_conjugator(n, rng, 10);
    if (rng.below(4) == 0 && index % 2 == 0) s = compose(random_centralizer_element(phi, rng, 3), s);
    Automorphism psi = conj_by_inverse(phi.aut, s);
    if (commute(phi.aut, psi) && !(psi == phi.aut)) {
      return "conjugate " + render(psi) + " commutes with " + render(phi.aut) + " but differs";
    }
    return std::nullopt;
  };
}

inline TrialFn qc_not_square(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto qc = std::make_shared<CanonicalInvolution>(quasi_conjugation(n));
  return [n, qc](std::size_t, Rng& rng) -> std::optional<std::string> {
    Automorphism s = random_conjugator(n, rng, 10);
    Automorphism f = conj_by_inverse(qc->aut, s);
    if (determinant(induced_matrix(f)) != -1) return "quasi-conjugation " + render(f) + " has determinant != -1";
    Automorphism r = random_conjugator(n, rng, 8);
    if (determinant(induced_matrix(compose(r, r))) != 1) return "square " + render(r) + "^2 has determinant != 1";
    CanonicalData d = random_data(n, rng, [](const CanonicalData&) { return true; });
    Automorphism a = conj_by_inverse(build_canonical(d, n).aut, random_conjugator(n, rng, 6));
    Automorphism ap = conj_by_inverse(a, random_conjugator(n, rng, 6));
    if (determinant(induced_matrix(compose(a, ap))) != 1) return "product of conjugate involutions has determinant != 1";
    return std::nullopt;
  };
}

inline TrialFn symmetry_square(SuiteContext& ctx) {
  const int n = ctx.rank;
  std::vector<Word> img(static_cast<std::size_t>(n), Word(n));
  std::vector<Word> inv(static_cast<std::size_t>(n), Word(n));
  for (int i = 1; i < n; i += 2) {
    // x_i -> x_{i+1}^-1, x_{i+1} -> x_i
    img[static_cast<std::size_t>(i - 1)] = Word::generator(n, i + 1, -1);
    img[static_cast<std::size_t>(i)] = Word::generator(n, i);
    inv[static_cast<std::size_t>(i - 1)] = Word::generator(n, i + 1);
    inv[static_cast<std::size_t>(i)] = Word::generator(n, i, -1);
  }
  auto psi = std::make_shared<Automorphism>(make_automorphism(img, inv));
  auto sym = std::make_shared<Automorphism>(symmetry(n).aut);
  ctx.notes.push_back("psi = " + render(*psi));
  return [n, psi, sym](std::size_t index, Rng& rng) -> std::optional<std::string> {
    if (!(compose(*psi, *psi) == *sym)) return "psi^2 is not the symmetry";
    if (index == 0) return std::nullopt;
    Automorphism s = random_conjugator(n, rng, 8);
    Automorphism p = conjugate(*psi, s);
    if (!is_symmetry(compose(p, p))) return "conjugated square is not a symmetry: " + render(s);
    return std::nullopt;
  };
}

inline TrialFn kk_products(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto phi = std::make_shared<CanonicalInvolution>(quasi_conjugation(n));
  return [n, phi](std::size_t, Rng& rng) -> std::optional<std::string> {
    const int m = n - 1;
    Automorphism theta = Automorphism::involution({Word::generator(1, 1, -1)});
    Automorphism theta_p = theta;
    std::string shape = "{symmetry of C_x}";
    if (m >= 2) {
      CanonicalData d = random_data(m, rng, [](const CanonicalData&) { return true; });
      shape = render(d);
      Automorphism base = build_canonical(d, m).aut;
      theta = conj_by_inverse(base, random_automorphism(m, static_cast<int>(rng.between(0, 5)), rng));
      theta_p = conj_by_inverse(base, random_automorphism(m, static_cast<int>(rng.between(0, 5)), rng));
    }
    bool inverts = rng.coin();
    Automorphism psi = centralizer_element(*phi, theta, inverts);
    Automorphism psi_p = centralizer_element(*phi, theta_p, inverts);
    ProductConjugacy r = kkprime_product_conjugacy_check(*phi, psi, psi_p);
    if (r.verdict != Verdict::yes) {
      return "theta shape " + shape + ": verdict " + to_string(r.verdict) + " (" + r.reason + ") for psi=" +
             render(psi) + " psi'=" + render(psi_p);
    }
    if (!r.conjugator) return "yes without a conjugator";
    return std::nullopt;
  };
}

inline TrialFn pi_centralizer(SuiteContext& ctx) {
  const int n = ctx.rank;
  auto phi = std::make_shared<CanonicalInvolution>(quasi_conjugation(n));
  auto sample = std::make_shared<std::vector<PiMember>>(build_pi_sample(*phi, 60, ctx.seed));
  ctx.notes.push_back("Pi sample size: " + std::to_string(sample->size()));
  const int h = head_of(*phi);
  const auto& ys = phi->layout.blocks.front().ys;
  {
    Word x = Word::generator(n, h);
    SubgroupGraph xa = fold(n, {x, Word::generator(n, ys[0])});
    SubgroupGraph xb = fold(n, {x, Word::generator(n, ys[1])});
    SubgroupGraph meet = intersect(xa, xb);
    ctx.notes.push_back(std::string("<x,a> meet <x,b> = <x>: ") +
                        (meet == fold(n, {x}) ? "yes" : "NO"));
  }
  return [n, phi, sample, h](std::size_t index, Rng& rng) -> std::optional<std::string> {
    for (const auto& m : *sample)
      if (!fixes_x_preserves_y(*phi, m.pi)) return "Pi member " + m.origin + " moves x or leaves C_x";
    switch (index % 3) {
      case 0: {
        long k = rng.between(-3, 3);
        Automorphism tau = inner(power(Word::generator(n, h), k));
        auto c = is_conjugation_by_primitive_power(tau, *phi, *sample);
        if (!c || c->k != k || !c->verified) return "conjugation by x^" + std::to_string(k) + " not certified";
        return std::nullopt;
      }
      case 1: {
        for (int attempt = 0; attempt < 1000; ++attempt) {
          Automorphism tau = random_conjugator(n, rng, 8);
          if (commute(tau, phi->aut) || is_inner_by_letter_power(tau, h)) continue;
          if (is_conjugation_by_primitive_power(tau, *phi, *sample)) return "false certificate for " + render(tau);
          return std::nullopt;
        }
        return "rejection sampling found no non-centralizing automorphism";
      }
      default: {
        Automorphism tau = conjugate(phi->aut, inner(power(Word::generator(n, h), rng.between(-3, 3))));
        if (is_conjugation_by_primitive_power(tau, *phi, *sample)) return "certificate for involution " + render(tau);
        return std::nullopt;
      }
    }
  };
}

inline TrialFn conj_rank2(SuiteContext&) {
  auto phi = std::make_shared<CanonicalInvolution>(quasi_conjugation(2));
  return [phi](std::size_t index, Rng& rng) -> std::optional<std::string> {
    long k = rng.between(-5, 5);
    ConjugateSymmetries cs = product_of_conjugate_symmetries(1, k, 2);
    if (!(compose(cs.alpha, cs.alpha_prime) == inner(power(Word::generator(2, 1), k)))) {
      return "symmetry product is not conjugation by x1^" + std::to_string(k);
    }
    Automorphism tau = compose(cs.alpha, cs.alpha_prime);
    if (index % 2 == 1) {
      // A random automorphism is certified exactly when it is conjugation by a power of x1.
      Automorphism t = random_conjugator(2, rng, 8);
      bool expected = is_inner_by_letter_power(t, 1);
      auto c = is_conjugation_by_primitive_power(t, *phi, {});
      if (c.has_value() != expected) return "recognizer disagrees with direct check on " + render(t);
      return std::nullopt;
    }
    auto c = is_conjugation_by_primitive_power(tau, *phi, {});
    if (!c || c->k != k) return "conjugation by x1^" + std::to_string(k) + " not certified";
    return std::nullopt;
  };
}

inline TrialFn meskin(SuiteContext& ctx) {
  const int n = ctx.rank;
  Census c = meskin_census(n);
  ctx.notes.push_back("classes: " + std::to_string(c.total) + " (soft " + std::to_string(c.soft) + ", non-soft " +
                      std::to_string(c.non_soft) + ")");
  for (const auto& d : c.classes) ctx.notes.push_back("  " + render(d));
  return [n, c](std::size_t, Rng& rng) -> std::optional<std::string> {
    if (n == 2 && c.total != 4) return "rank 2 census is " + std::to_string(c.total) + ", expected 4";
    if (n == 3 && c.soft != 6) return "rank 3 soft census is " + std::to_string(c.soft) + ", expected 6";
    // Each class is recovered from a random conjugate of its canonical form.
    for (const auto& d : c.classes) {
      Automorphism f = conj_by_inverse(build_canonical(d, n).aut, random_conjugator(n, rng, 6));
      auto w = find_canonical_basis(f);
      if (!w || !(w->data == d)) return "class " + render(d) + " not recovered";
    }
    return std::nullopt;
  };
}

inline const std::vector<SuiteDef>& suite_table() {
  static const std::vector<SuiteDef> table = {
      {"lemma-inverse",
       "An element a with phi(a) = a^-1, phi a canonical involution without pairs, is phi(w)w^-1 or "
       "phi(w)xw^-1 with x a block head; phi(w)w^-1 is even in the abelianization.",
       1, false, false, lemma_inverse},
      {"centralizer",
       "The centralizer of a quasi-conjugation phi consists of the maps x -> x, y -> theta(y) and "
       "x -> x^-1, y -> x theta(y) x^-1 with theta in Aut(C_x).",
       2, false, false, centralizer},
      {"acc-witness",
       "A canonical involution with pairs, unequal blocks, or a fixed part at least as large as its blocks "
       "has a distinct commuting conjugate.",
       2, false, false, acc_witness},
      {"qc-anticommute",
       "Quasi-conjugations and symmetries form anti-commutative classes: a conjugate commuting with the "
       "original equals it.",
       2, false, false, qc_anticommute},
      {"qc-not-square",
       "Quasi-conjugations have determinant -1, so they are not squares; products of conjugate involutions "
       "have determinant +1.",
       2, false, false, qc_not_square},
      {"symmetry-square", "Every symmetry is a square: psi(x1) = x2^-1, psi(x2) = x1 squares to the symmetry.", 2,
       true, false, symmetry_square},
      {"kk-products",
       "For involutions psi, psi' in the centralizer of a quasi-conjugation phi with conjugate restrictions "
       "to C_x, the products phi psi and phi psi' are conjugate.",
       2, false, false, kk_products},
      {"pi-centralizer",
       "Conjugations by powers of x centralize the family Pi; other centralizing elements are involutions.", 3,
       false, false, pi_centralizer},
      {"conj-rank2",
       "In rank 2, conjugation by x^k is a product of two conjugate symmetries and is recognized by "
       "commuting with x -> x, y -> y^-1, not being an involution and having determinant +1.",
       2, false, false, conj_rank2},
      {"meskin-census",
       "Rank 2 has exactly four conjugacy classes of involutions; rank 3 has six classes of soft "
       "involutions.",
       2, false, true, meskin},
  };
  return table;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : detail::suite_table()) out.push_back(s.name);
  return out;
}

/// Runs the trials on up to hardware_concurrency threads; trial i uses the
/// seed derive_seed(seed, i), and results are collected in trial order.
inline SuiteReport run_suite(const std::string& name, int rank, int trials, std::uint64_t seed,
                             unsigned threads = 0) {
  const auto& table = detail::suite_table();
  auto it = std::find_if(table.begin(), table.end(), [&](const detail::SuiteDef& s) { return s.name == name; });
  if (it == table.end()) throw UnknownSuite("unknown suite '" + name + "'");
  if (rank < it->min_rank || rank < 1) {
    throw RankError("suite '" + name + "' needs rank >= " + std::to_string(std::max(it->min_rank, 1)));
  }
  if (it->even_rank_only && rank % 2 != 0) throw RankError("suite '" + name + "' needs an even rank");
  if (name == "conj-rank2" && rank != 2) throw RankError("suite 'conj-rank2' is defined for rank 2 only");
  if (trials < 0) throw BudgetError("trial count must be nonnegative");
  if (it->single_trial) trials = 1;

  auto start = std::chrono::steady_clock::now();
  detail::SuiteContext ctx{rank, trials, seed, {}};
  detail::TrialFn fn = it->prepare(ctx);

  std::vector<std::optional<std::string>> results(static_cast<std::size_t>(trials));
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < results.size(); i += stride) {
      Rng rng(derive_seed(seed, i));
      try {
        results[i] = fn(i, rng);
      } catch (const std::exception& e) {
        results[i] = std::string("exception: ") + e.what();
      }
      if (results[i]) *results[i] = "trial " + std::to_string(i) + ": " + *results[i];
    }
  };
  unsigned nthreads = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max(trials, 1)));
  if (nthreads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t, nthreads);
    for (auto& th : pool) th.join();
  }

  SuiteReport r;
  r.suite = name;
  r.statement = it->statement;
  r.rank = rank;
  r.trials = trials;
  r.seed = seed;
  r.notes = std::move(ctx.notes);
  for (auto& res : results) {
    if (res) {
      ++r.failed;
      r.counterexamples.push_back(std::move(*res));
    } else {
      ++r.passed;
    }
  }
  r.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline nlohmann::json to_json(const SuiteReport& r) {
  return {{"suite", r.suite},
          {"statement", r.statement},
          {"disclaimer", kBoundedDisclaimer},
          {"rank", r.rank},
          {"trials", r.trials},
          {"seed", r.seed},
          {"passed", r.passed},
          {"failed", r.failed},
          {"counterexamples", r.counterexamples},
          {"notes", r.notes},
          {"wall_time", r.wall_time_ms}};
}

enum class ReportFormat { text, json };

inline std::string emit_report(const SuiteReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  if (r.failed > 0) {
    out << "COUNTEREXAMPLES (" << r.failed << ")\n";
    for (const auto& c : r.counterexamples) out << "  " << c << "\n";
  }
  out << "suite " << r.suite << " rank " << r.rank << " trials " << r.trials << " seed " << r.seed << "\n";
  out << "  statement: " << r.statement << "\n";
  out << "  " << kBoundedDisclaimer << "\n";
  for (const auto& n : r.notes) out << "  " << n << "\n";
  out << "  passed " << r.passed << ", failed " << r.failed << ", " << r.wall_time_ms << " ms\n";
  return out.str();
}

}  // namespace fgaut
