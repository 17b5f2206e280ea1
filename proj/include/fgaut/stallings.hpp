#pragma once

// Folded (Stallings) core graphs of finitely generated subgroups.

#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fgaut/automorphism.hpp"

namespace fgaut {

struct Edge {
  int source = 0;
  int label = 1;  // positive generator index
  int target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable folded core graph with base vertex 0. Vertices are numbered in
/// breadth-first order from the base (letters visited X_n..X_1, x1..x_n), so
/// two graphs of the same subgroup compare equal.
class SubgroupGraph {
 public:
  explicit SubgroupGraph(int rank) : rank_(rank), out_(1, std::vector<int>(slots(rank), -1)) {}

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(out_.size()); }
  int base() const { return 0; }

  /// Target of the `code`-labelled edge leaving `v` (negative codes follow
  /// edges backwards), or -1.
  int follow(int v, letter_t code) const { return out_[static_cast<std::size_t>(v)][slot(code)]; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int v = 0; v < vertex_count(); ++v)
      for (int i = 1; i <= rank_; ++i)
        if (int t = follow(v, i); t >= 0) out.push_back({v, i, t});
    return out;
  }
  int edge_count() const {
    int n = 0;
    for (int v = 0; v < vertex_count(); ++v)
      for (int i = 1; i <= rank_; ++i) n += follow(v, i) >= 0;
    return n;
  }

  friend bool operator==(const SubgroupGraph&, const SubgroupGraph&) = default;

  static std::size_t slots(int rank) { return static_cast<std::size_t>(2 * rank + 1); }
  std::size_t slot(letter_t code) const { return static_cast<std::size_t>(code + rank_); }

 private:
  friend class FoldingBuilder;
  friend SubgroupGraph intersect(const SubgroupGraph&, const SubgroupGraph&);
  friend SubgroupGraph normalize_core(int rank, const std::vector<std::vector<int>>& out, int base);

  int rank_;
  std::vector<std::vector<int>> out_;
};

/// Prunes hanging trees (keeping the base), then renumbers vertices in BFS
/// order from the base. `out` uses SubgroupGraph slot layout.
inline SubgroupGraph normalize_core(int rank, const std::vector<std::vector<int>>& out, int base) {
  const std::size_t n = out.size();
  const std::size_t width = SubgroupGraph::slots(rank);
  std::vector<int> degree(n, 0);
  std::vector<char> alive(n, 0);
  // Only the component of the base matters.
  {
    std::deque<int> queue{base};
    alive[static_cast<std::size_t>(base)] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < width; ++s) {
        int t = out[static_cast<std::size_t>(v)][s];
        if (t >= 0 && !alive[static_cast<std::size_t>(t)]) {
          alive[static_cast<std::size_t>(t)] = 1;
          queue.push_back(t);
        }
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (std::size_t s = 0; s < width; ++s) degree[v] += out[v][s] >= 0;
  }
  std::deque<int> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v] && static_cast<int>(v) != base && degree[v] <= 1) leaves.push_back(static_cast<int>(v));
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop_front();
    auto V = static_cast<std::size_t>(v);
    if (!alive[V]) continue;
    alive[V] = 0;
    for (std::size_t s = 0; s < width; ++s) {
      int t = out[V][s];
      if (t >= 0 && alive[static_cast<std::size_t>(t)] && t != v) {
        auto T = static_cast<std::size_t>(t);
        --degree[T];
        if (t != base && degree[T] <= 1) leaves.push_back(t);
      }
    }
  }
  // BFS renumbering.
  std::vector<int> index(n, -1);
  std::vector<int> order;
  index[static_cast<std::size_t>(base)] = 0;
  order.push_back(base);
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto v = static_cast<std::size_t>(order[head]);
    for (std::size_t s = 0; s < width; ++s) {
      int t = out[v][s];
      if (t >= 0 && alive[static_cast<std::size_t>(t)] && index[static_cast<std::size_t>(t)] < 0) {
        index[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  SubgroupGraph g(rank);
  g.out_.assign(order.size(), std::vector<int>(width, -1));
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto v = static_cast<std::size_t>(order[i]);
    for (std::size_t s = 0; s < width; ++s) {
      int t = out[v][s];
      if (t >= 0 && alive[static_cast<std::size_t>(t)]) g.out_[i][s] = index[static_cast<std::size_t>(t)];
    }
  }
  return g;
}

/// Incremental Stallings folding over a union-find of vertices.
class FoldingBuilder {
 public:
  explicit FoldingBuilder(int rank) : rank_(rank) { new_vertex(); }

  int rank() const { return rank_; }

  void add(const Word& w) {
    require_same_rank(rank_, w.rank(), "fold");
    if (w.empty()) return;
    int cur = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int next = target(cur, w[i]);
      if (next < 0) {
        next = new_vertex();
        link(cur, w[i], next);
      }
      cur = next;
    }
    link(cur, w.back(), 0);
    drain();
  }

  bool contains(const Word& w) const {
    int cur = find(0);
    for (letter_t c : w.letters()) {
      cur = target(cur, c);
      if (cur < 0) return false;
    }
    return cur == find(0);
  }

  SubgroupGraph graph() const {
    // Compact representatives, then hand off to the core normalizer.
    std::vector<int> rep_index(parent_.size(), -1);
    std::vector<int> reps;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      if (find(static_cast<int>(v)) == static_cast<int>(v)) {
        rep_index[v] = static_cast<int>(reps.size());
        reps.push_back(static_cast<int>(v));
      }
    }
    const std::size_t width = SubgroupGraph::slots(rank_);
    std::vector<std::vector<int>> out(reps.size(), std::vector<int>(width, -1));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t s = 0; s < width; ++s) {
        int t = out_[static_cast<std::size_t>(reps[i])][s];
        if (t >= 0) out[i][s] = rep_index[static_cast<std::size_t>(find(t))];
      }
    }
    return normalize_core(rank_, out, rep_index[static_cast<std::size_t>(find(0))]);
  }

 private:
  std::size_t slot(letter_t c) const { return static_cast<std::size_t>(c + rank_); }

  int new_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    out_.emplace_back(SubgroupGraph::slots(rank_), -1);
    return parent_.back();
  }

  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }
  int find_compress(int v) {
    int root = find(v);
    while (parent_[static_cast<std::size_t>(v)] != root) {
      int next = parent_[static_cast<std::size_t>(v)];
      parent_[static_cast<std::size_t>(v)] = root;
      v = next;
    }
    return root;
  }

  int target(int v, letter_t c) const {
    int t = out_[static_cast<std::size_t>(find(v))][slot(c)];
    return t < 0 ? -1 : find(t);
  }

  void set_half(int v, letter_t c, int t) {
    v = find_compress(v);
    int& cell = out_[static_cast<std::size_t>(v)][slot(c)];
    if (cell < 0) {
      cell = t;
    } else if (find_compress(cell) != find_compress(t)) {
      pending_.emplace_back(cell, t);
    }
  }

  void link(int u, letter_t c, int v) {
    set_half(u, c, v);
    set_half(v, -c, u);
  }

  void drain() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.front();
      pending_.pop_front();
      int a = find_compress(x);
      int b = find_compress(y);
      if (a == b) continue;
      if (b < a) std::swap(a, b);  // keep the smaller id (base stays root)
      parent_[static_cast<std::size_t>(b)] = a;
      auto& from = out_[static_cast<std::size_t>(b)];
      for (std::size_t s = 0; s < from.size(); ++s) {
        int t = from[s];
        if (t < 0) continue;
        from[s] = -1;
        int& cell = out_[static_cast<std::size_t>(a)][s];
        if (cell < 0) {
          cell = t;
        } else if (find_compress(cell) != find_compress(t)) {
          pending_.emplace_back(cell, t);
        }
      }
    }
  }

  int rank_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> out_;
  std::deque<std::pair<int, int>> pending_;
};

/// Folded core graph of the subgroup generated by `generators`.
inline SubgroupGraph fold(int rank, const std::vector<Word>& generators) {
  FoldingBuilder b(rank);
  for (const auto& w : generators) b.add(w);
  return b.graph();
}
inline SubgroupGraph fold(const std::vector<Word>& generators) {
  if (generators.empty()) throw RankError("fold: pass the rank explicitly for an empty generator list");
  return fold(generators.front().rank(), generators);
}

inline bool contains(const SubgroupGraph& g, const Word& w) {
  require_same_rank(g.rank(), w.rank(), "contains");
  int cur = g.base();
  for (letter_t c : w.letters()) {
    cur = g.follow(cur, c);
    if (cur < 0) return false;
  }
  return cur == g.base();
}

/// First Betti number of the core: |E| - |V| + 1.
inline int graph_rank(const SubgroupGraph& g) { return g.edge_count() - g.vertex_count() + 1; }

/// Core of the base component of the fibre product.
inline SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2) {
  require_same_rank(g1.rank(), g2.rank(), "intersect");
  const int rank = g1.rank();
  const std::size_t width = SubgroupGraph::slots(rank);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> out;
  auto id_of = [&](std::pair<int, int> p) {
    auto [it, inserted] = ids.emplace(p, static_cast<int>(pairs.size()));
    if (inserted) {
      pairs.push_back(p);
      out.emplace_back(width, -1);
    }
    return it->second;
  };
  id_of({g1.base(), g2.base()});
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [a, b] = pairs[head];
    for (letter_t c = -rank; c <= rank; ++c) {
      if (c == 0) continue;
      int ta = g1.follow(a, c);
      int tb = g2.follow(b, c);
      if (ta < 0 || tb < 0) continue;
      int t = id_of({ta, tb});
      out[head][static_cast<std::size_t>(c + rank)] = t;
    }
  }
  return normalize_core(rank, out, 0);
}

/// Free basis read off a BFS spanning tree: one generator per non-tree edge.
inline std::vector<Word> subgroup_basis(const SubgroupGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<letter_t> via(static_cast<std::size_t>(n), 0);
  std::vector<int> order{g.base()};
  parent[0] = -1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (letter_t c = -g.rank(); c <= g.rank(); ++c) {
      if (c == 0) continue;
      int t = g.follow(v, c);
      if (t >= 0 && parent[static_cast<std::size_t>(t)] == -2) {
        parent[static_cast<std::size_t>(t)] = v;
        via[static_cast<std::size_t>(t)] = c;
        order.push_back(t);
      }
    }
  }
  auto path_to = [&](int v) {
    std::vector<letter_t> rev;
    while (v != g.base()) {
      rev.push_back(via[static_cast<std::size_t>(v)]);
      v = parent[static_cast<std::size_t>(v)];
    }
    std::vector<letter_t> p(rev.rbegin(), rev.rend());
    return Word::from_letters(g.rank(), p);
  };
  std::vector<Word> basis;
  for (const auto& e : g.edges()) {
    bool tree = (parent[static_cast<std::size_t>(e.target)] == e.source && via[static_cast<std::size_t>(e.target)] == e.label) ||
                (parent[static_cast<std::size_t>(e.source)] == e.target && via[static_cast<std::size_t>(e.source)] == -e.label);
    if (tree) continue;
    basis.push_back(path_to(e.source) * Word::generator(g.rank(), e.label) * invert_word(path_to(e.target)));
  }
  return basis;
}

namespace detail {
inline std::size_t common_prefix(std::span<const letter_t> a, std::span<const letter_t> b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}
}  // namespace detail

/// Folds every reduced word w with |w| <= max_len and f(w) = w. The result is a
/// subgroup of Fix(f), nondecreasing in max_len. A prefix p is abandoned once
/// no suffix of the remaining length can cancel enough of f(p) to agree with p.
inline SubgroupGraph fixed_subgroup_approx(const Automorphism& f, int max_len,
                                           std::size_t node_limit = 20'000'000) {
  const int rank = f.rank();
  const std::size_t reach = f.forward().max_image_length();
  FoldingBuilder builder(rank);
  std::vector<Word> letter_images;
  for (letter_t c = -rank; c <= rank; ++c) {
    letter_images.push_back(c == 0 ? Word(rank) : apply(f, Word::from_letters(rank, {c})));
  }
  struct Frame {
    Word prefix;
    Word image;
  };
  std::vector<Frame> stack;
  stack.push_back({Word(rank), Word(rank)});
  std::size_t nodes = 0;
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    if (++nodes > node_limit) throw BudgetError("fixed_subgroup_approx exceeded node limit");
    if (!fr.prefix.empty() && fr.prefix == fr.image && !builder.contains(fr.prefix)) {
      builder.add(fr.prefix);
    }
    if (fr.prefix.size() >= static_cast<std::size_t>(max_len)) continue;
    for (letter_t c = rank; c >= -rank; --c) {
      if (c == 0 || (!fr.prefix.empty() && fr.prefix.back() == -c)) continue;
      Word p = fr.prefix * Word::from_letters(rank, {c});
      Word img = fr.image * letter_images[static_cast<std::size_t>(c + rank)];
      std::size_t remaining = static_cast<std::size_t>(max_len) - p.size();
      std::size_t cancel = remaining * reach;
      std::size_t agree = detail::common_prefix(img.letters(), p.letters());
      std::size_t need = img.size() > cancel ? std::min(img.size() - cancel, p.size()) : 0;
      if (agree < need) continue;
      stack.push_back({std::move(p), std::move(img)});
    }
  }
  return builder.graph();
}

/// Diagnostic edge list, one `source x<i> target` line per edge.
inline std::string render(const SubgroupGraph& g) {
  std::ostringstream os;
  for (const auto& e : g.edges()) os << e.source << " x" << e.label << " " << e.target << "\n";
  return os.str();
}

}  // namespace fgaut
