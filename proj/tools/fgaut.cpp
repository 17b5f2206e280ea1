// fgaut: command-line front end for free group automorphisms.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fgaut/fgaut.hpp"

namespace {

using fgaut::json;

struct Options {
  std::optional<int> rank;
  std::optional<std::uint64_t> seed;
  int trials = 500;
  int max_len = 8;
  int depth = 4;
  bool as_json = false;
  std::string word;
  std::vector<std::string> aut_paths;
  std::vector<std::string> suites;
};

std::uint64_t default_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("FGAUT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw fgaut::SyntaxError(std::string("FGAUT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

// Largest generator index mentioned in a word string, or 1.
int infer_rank(const std::string& text) {
  int best = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((text[i] == 'x' || text[i] == 'X') && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      int v = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && v < 1'000'000) {
        v = v * 10 + (text[j] - '0');
        ++j;
      }
      best = std::max(best, v);
    }
  }
  return best;
}

fgaut::Word read_word(const Options& o, int min_rank = 1) {
  if (o.word.empty()) throw fgaut::SyntaxError("--word is required");
  int rank = o.rank ? *o.rank : std::max(min_rank, infer_rank(o.word));
  return fgaut::parse_word(o.word, rank);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fgaut::SyntaxError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw fgaut::SyntaxError(path + ": " + e.what());
  }
}

fgaut::Automorphism read_aut(const std::string& path) { return fgaut::automorphism_from_json(read_json_file(path)); }

const std::string& single_aut(const Options& o) {
  if (o.aut_paths.size() != 1) throw fgaut::SyntaxError("exactly one --aut is required");
  return o.aut_paths.front();
}

// A canonical involution from either canonical-data JSON or an automorphism
// that is already canonical on the standard basis.
fgaut::CanonicalInvolution read_canonical(const Options& o) {
  json j = read_json_file(single_aut(o));
  if (j.is_object() && !j.contains("images")) {
    fgaut::CanonicalData d = fgaut::canonical_data_from_json(j);
    return fgaut::build_canonical(d, o.rank ? *o.rank : d.total());
  }
  auto c = fgaut::as_canonical(fgaut::automorphism_from_json(j));
  if (!c) throw fgaut::PreconditionError("automorphism is not in canonical form on the standard basis");
  return *c;
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_reduce(const Options& o) {
  fgaut::Word w = read_word(o);
  auto cr = fgaut::cyclic_reduce(w);
  json j = {{"rank", w.rank()},
            {"word", fgaut::render(w)},
            {"length", w.size()},
            {"cyclic_core", fgaut::render(cr.core)},
            {"conjugator", fgaut::render(cr.conjugator)}};
  emit(o, j, fgaut::render(w) + "\n");
  return 0;
}

int cmd_apply(const Options& o) {
  fgaut::Automorphism f = read_aut(single_aut(o));
  if (o.rank && *o.rank != f.rank()) throw fgaut::RankError("--rank disagrees with the automorphism");
  if (o.word.empty()) throw fgaut::SyntaxError("--word is required");
  fgaut::Word w = fgaut::parse_word(o.word, f.rank());
  fgaut::Word img = fgaut::apply(f, w);
  emit(o, {{"word", fgaut::render(w)}, {"image", fgaut::render(img)}}, fgaut::render(img) + "\n");
  return 0;
}

int cmd_compose(const Options& o) {
  if (o.aut_paths.size() < 2) throw fgaut::SyntaxError("compose needs at least two --aut files");
  // --aut f --aut g gives f o g (g acts first).
  fgaut::Automorphism out = read_aut(o.aut_paths.front());
  for (std::size_t i = 1; i < o.aut_paths.size(); ++i) out = fgaut::compose(out, read_aut(o.aut_paths[i]));
  emit(o, fgaut::to_json(out), fgaut::render(out) + "\n");
  return 0;
}

int cmd_classify(const Options& o) {
  fgaut::Automorphism f = read_aut(single_aut(o));
  if (!fgaut::is_involution(f)) throw fgaut::NotInvolution("input is not an involution");
  auto inv = fgaut::extract_invariants(f, o.max_len, o.depth);
  fgaut::Verdict qc = fgaut::is_quasi_conjugation(f, o.max_len, o.depth);
  bool sym = fgaut::is_symmetry(f);
  json j = {{"rank", inv.rank},
            {"soft", inv.soft},
            {"fix_rank", inv.fix_rank},
            {"fix_rank_exact", inv.fix_rank_exact},
            {"block_count", inv.block_count ? json(*inv.block_count) : json(nullptr)},
            {"canonical", inv.data ? fgaut::to_json(*inv.data) : json(nullptr)},
            {"symmetry", sym},
            {"quasi_conjugation", fgaut::to_string(qc)}};
  std::ostringstream text;
  text << "rank " << inv.rank << "\n";
  text << "soft " << (inv.soft ? "yes" : "no") << "\n";
  text << "fix rank " << (inv.fix_rank_exact ? "" : ">= ") << inv.fix_rank << "\n";
  if (inv.block_count) text << "blocks " << *inv.block_count << "\n";
  if (inv.data) text << "canonical form " << fgaut::render(*inv.data) << "\n";
  else text << "canonical form not found within depth " << o.depth << "\n";
  text << "symmetry " << (sym ? "yes" : "no") << "\n";
  text << "quasi-conjugation " << fgaut::to_string(qc) << "\n";
  emit(o, j, text.str());
  return 0;
}

int cmd_is_primitive(const Options& o) {
  fgaut::Word w = read_word(o, 2);
  auto trace = fgaut::whitehead_minimize(w);
  bool prim = trace.end.size() == 1;
  json moves = json::array();
  for (const auto& m : trace.moves) moves.push_back({{"generator", m.generator_name}, {"cyclic_length", m.cyclic_length}});
  json j = {{"word", fgaut::render(w)}, {"primitive", prim}, {"minimal", fgaut::render(trace.end)}, {"moves", moves}};
  emit(o, j, std::string(prim ? "primitive" : "not primitive") + " (minimal " + fgaut::render(trace.end) + ")\n");
  return 0;
}

int cmd_fix_subgroup(const Options& o) {
  fgaut::Automorphism f = read_aut(single_aut(o));
  fgaut::SubgroupGraph g = fgaut::fixed_subgroup_approx(f, o.max_len);
  json basis = json::array();
  std::ostringstream text;
  text << "fixed subgroup from words of length <= " << o.max_len << ": rank >= " << fgaut::graph_rank(g) << "\n";
  for (const auto& w : fgaut::subgroup_basis(g)) {
    basis.push_back(fgaut::render(w));
    text << "  " << fgaut::render(w) << "\n";
  }
  json j = {{"max_len", o.max_len}, {"rank_lower_bound", fgaut::graph_rank(g)}, {"basis", basis}};
  emit(o, j, text.str());
  return 0;
}

int cmd_decompose(const Options& o) {
  fgaut::CanonicalInvolution phi = read_canonical(o);
  if (o.word.empty()) throw fgaut::SyntaxError("--word is required");
  fgaut::Word a = fgaut::parse_word(o.word, phi.rank());
  auto d = fgaut::decompose_inverted(phi, a);
  std::string head = d.head ? fgaut::render(fgaut::Word::generator(phi.rank(), *d.head)) : "";
  json j = {{"w", fgaut::render(d.w)}, {"head", d.head ? json(head) : json(nullptr)}};
  std::string text = "a = phi(w) " + (d.head ? head + " " : std::string()) + "w^-1 with w = " + fgaut::render(d.w) + "\n";
  emit(o, j, text);
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names = o.suites;
  if (names.size() == 1 && names.front() == "all") names = fgaut::suite_names();
  if (names.empty()) throw fgaut::UnknownSuite("verify needs a suite name");
  const std::uint64_t seed = default_seed(o);
  bool ok = true;
  json all = json::array();
  for (const auto& name : names) {
    int rank = o.rank ? *o.rank : (name == "pi-centralizer" ? 3 : 2);
    fgaut::SuiteReport r = fgaut::run_suite(name, rank, o.trials, seed);
    ok = ok && r.failed == 0;
    if (o.as_json) {
      all.push_back(fgaut::to_json(r));
    } else {
      std::cout << fgaut::emit_report(r, fgaut::ReportFormat::text);
    }
  }
  if (o.as_json) std::cout << (all.size() == 1 ? all.front() : all).dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_census(const Options& o) {
  int rank = o.rank ? *o.rank : 2;
  fgaut::Census c = fgaut::meskin_census(rank);
  json classes = json::array();
  std::ostringstream text;
  text << "rank " << rank << ": " << c.total << " classes of involutions (" << c.soft << " soft, " << c.non_soft
       << " non-soft)\n";
  for (const auto& d : c.classes) {
    classes.push_back(fgaut::to_json(d));
    text << "  " << fgaut::render(d) << (d.is_soft() ? "" : "  non-soft") << "\n";
  }
  json j = {{"rank", rank}, {"total", c.total}, {"soft", c.soft}, {"non_soft", c.non_soft}, {"classes", classes}};
  emit(o, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Involutions and automorphisms of free groups"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rank", o.rank, "rank of the free group")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed (default: $FGAUT_SEED or 0)");
    sub->add_option("--trials", o.trials, "trials per suite")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-len", o.max_len, "word length budget")->check(CLI::NonNegativeNumber);
    sub->add_option("--depth", o.depth, "basis search depth")->check(CLI::NonNegativeNumber);
    sub->add_flag("--json", o.as_json, "machine-readable output");
    sub->add_option("--word", o.word, "word such as \"x1 X2 x1\"");
    sub->add_option("--aut", o.aut_paths, "automorphism JSON file");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const std::vector<Command> commands = {
      {"reduce", "freely reduce a word", cmd_reduce},
      {"apply", "apply an automorphism to a word", cmd_apply},
      {"compose", "compose automorphisms (the last acts first)", cmd_compose},
      {"classify-involution", "invariants and class of an involution", cmd_classify},
      {"is-primitive", "Whitehead primitivity test", cmd_is_primitive},
      {"fix-subgroup", "fixed subgroup from bounded enumeration", cmd_fix_subgroup},
      {"decompose-inverted", "write an inverted element as phi(w)[x]w^-1", cmd_decompose},
      {"verify", "run verification suites", cmd_verify},
      {"census", "canonical classes of involutions", cmd_census},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    if (std::string(c.name) == "verify") sub->add_option("suite", o.suites, "suite names, or 'all'")->required();
    subs.emplace_back(sub, c.run);
  }

  CLI11_PARSE(app, argc, argv);
  try {
    for (auto& [sub, run] : subs)
      if (sub->parsed()) return run(o);
  } catch (const fgaut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
