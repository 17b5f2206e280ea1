#pragma once

// Whitehead's algorithm: greedy cyclic-length descent and primitivity.

#include <deque>
#include <set>
#include <string>
#include <vector>

#include "fgaut/automorphism.hpp"

namespace fgaut {

struct WhiteheadMove {
  int generator_id = 0;
  std::string generator_name;
  std::size_t cyclic_length = 0;  // after the move
};

struct MinimizationTrace {
  Word start;
  Word end;
  std::vector<WhiteheadMove> moves;
};

/// Repeatedly applies the first (lowest id) Whitehead generator that strictly
/// lowers the cyclic length, until none does. The result is the cyclically
/// reduced core of the last image.
inline MinimizationTrace whitehead_minimize(const Word& w) {
  if (w.rank() < 2) throw RankError("whitehead_minimize needs rank >= 2");
  const auto& gens = whitehead_generators(w.rank());
  // Permutations never change length, so only inner-type generators are tried.
  const std::size_t inner = inner_type_count(w.rank());
  MinimizationTrace trace{w, cyclic_reduce(w).core, {}};
  Word cur = trace.end;
  bool improved = true;
  while (improved && cur.size() > 1) {
    improved = false;
    for (std::size_t i = 0; i < inner; ++i) {
      Word next = cyclic_reduce(apply(gens[i].aut, cur)).core;
      if (next.size() < cur.size()) {
        trace.moves.push_back({gens[i].id, gens[i].name, next.size()});
        cur = std::move(next);
        improved = true;
        break;
      }
    }
  }
  trace.end = cur;
  return trace;
}

inline bool is_primitive(const Word& w) { return whitehead_minimize(w).end.size() == 1; }

/// Independent oracle: breadth-first orbit of x1 under the Whitehead
/// generators, up to `3 * max_len` moves. Intermediate images are kept only
/// while their length stays within `2 * max_len + 2`; any primitive of length
/// at most max_len is reachable from a basis letter by moves that never exceed
/// that bound. Returns the orbit words of length <= max_len.
inline std::set<Word> primitive_census_brute(int rank, int max_len, std::size_t node_limit = 2'000'000) {
  if (rank != 2) throw RankError("primitive_census_brute is restricted to rank 2");
  if (max_len < 0 || max_len > 6) throw BudgetError("primitive_census_brute supports max_len <= 6");
  const auto& gens = whitehead_generators(rank);
  const std::size_t cap = static_cast<std::size_t>(2 * max_len + 2);
  const int radius = 3 * max_len;
  std::set<Word> seen{Word::generator(rank, 1)};
  std::vector<Word> frontier{Word::generator(rank, 1)};
  for (int depth = 0; depth < radius && !frontier.empty(); ++depth) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        Word img = apply(g.aut, w);
        if (img.size() > cap) continue;
        if (seen.insert(img).second) {
          next.push_back(img);
          if (seen.size() > node_limit) throw BudgetError("primitive_census_brute exceeded node limit");
        }
      }
    }
    frontier = std::move(next);
  }
  std::set<Word> out;
  for (const auto& w : seen)
    if (w.size() <= static_cast<std::size_t>(max_len)) out.insert(w);
  return out;
}

}  // namespace fgaut
