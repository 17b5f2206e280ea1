#pragma once

// Induced action on the abelianization A = F/[F,F] and on A/2A.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "fgaut/automorphism.hpp"

namespace fgaut {

using BigInt = boost::multiprecision::cpp_int;

struct IntVector {
  std::vector<std::int64_t> entries;

  int rank() const { return static_cast<int>(entries.size()); }
  std::int64_t operator[](std::size_t i) const { return entries[i]; }
  bool is_even() const {
    for (auto e : entries) if (e % 2 != 0) return false;
    return true;
  }
  friend bool operator==(const IntVector&, const IntVector&) = default;
};

/// Square integer matrix; column j is the image of generator j+1.
class IntMatrix {
 public:
  explicit IntMatrix(int rank) : rank_(rank), cells_(static_cast<std::size_t>(rank * rank), 0) {}

  static IntMatrix identity(int rank) {
    IntMatrix m(rank);
    for (int i = 0; i < rank; ++i) m(i, i) = 1;
    return m;
  }
  static IntMatrix from_columns(const std::vector<IntVector>& columns) {
    IntMatrix m(static_cast<int>(columns.size()));
    for (int j = 0; j < m.rank_; ++j) {
      require_same_rank(columns[static_cast<std::size_t>(j)].rank(), m.rank_, "matrix column");
      for (int i = 0; i < m.rank_; ++i) m(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    return m;
  }

  int rank() const { return rank_; }
  std::int64_t& operator()(int row, int col) { return cells_[static_cast<std::size_t>(row * rank_ + col)]; }
  std::int64_t operator()(int row, int col) const { return cells_[static_cast<std::size_t>(row * rank_ + col)]; }

  IntVector column(int col) const {
    IntVector v{std::vector<std::int64_t>(static_cast<std::size_t>(rank_))};
    for (int i = 0; i < rank_; ++i) v.entries[static_cast<std::size_t>(i)] = (*this)(i, col);
    return v;
  }

  std::int64_t trace() const {
    std::int64_t t = 0;
    for (int i = 0; i < rank_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_identity_mod2() const {
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if ((((*this)(i, j) - (i == j ? 1 : 0)) % 2) != 0) return false;
    return true;
  }

  bool is_minus_identity() const {
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if ((*this)(i, j) != (i == j ? -1 : 0)) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    require_same_rank(a.rank_, b.rank_, "matrix product");
    IntMatrix c(a.rank_);
    for (int i = 0; i < a.rank_; ++i)
      for (int k = 0; k < a.rank_; ++k)
        for (int j = 0; j < a.rank_; ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rank_;
  std::vector<std::int64_t> cells_;
};

inline IntVector abelianize_word(const Word& w) {
  IntVector v{std::vector<std::int64_t>(static_cast<std::size_t>(w.rank()), 0)};
  for (letter_t c : w.letters()) v.entries[static_cast<std::size_t>(std::abs(c) - 1)] += c > 0 ? 1 : -1;
  return v;
}

inline IntMatrix induced_matrix(const Endomorphism& f) {
  std::vector<IntVector> cols;
  cols.reserve(static_cast<std::size_t>(f.rank()));
  for (const auto& w : f.images()) cols.push_back(abelianize_word(w));
  return IntMatrix::from_columns(cols);
}
inline IntMatrix induced_matrix(const Automorphism& f) { return induced_matrix(f.forward()); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(const IntMatrix& m) {
  const int n = m.rank();
  std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  BigInt sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    auto K = static_cast<std::size_t>(k);
    if (a[K][K] == 0) {
      std::size_t swap_row = K + 1;
      while (swap_row < static_cast<std::size_t>(n) && a[swap_row][K] == 0) ++swap_row;
      if (swap_row == static_cast<std::size_t>(n)) return 0;
      std::swap(a[K], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = K + 1; i < static_cast<std::size_t>(n); ++i) {
      for (std::size_t j = K + 1; j < static_cast<std::size_t>(n); ++j) {
        a[i][j] = (a[i][j] * a[K][K] - a[i][K] * a[K][j]) / prev;
      }
    }
    prev = a[K][K];
  }
  return sign * a[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

/// True iff the induced map on A/2A is the identity. Requires an involution.
inline bool is_soft(const Automorphism& f) {
  if (!is_involution(f)) throw NotInvolution("is_soft: input is not an involution");
  return induced_matrix(f).is_identity_mod2();
}

/// Number of blocks in any canonical basis of a soft involution:
/// (rank - trace) / 2.
inline int block_count_from_trace(const Automorphism& f) {
  if (!is_involution(f)) throw NotSoftInvolution("block_count_from_trace: not an involution");
  IntMatrix m = induced_matrix(f);
  if (!m.is_identity_mod2()) throw NotSoftInvolution("block_count_from_trace: involution is not soft");
  std::int64_t diff = f.rank() - m.trace();
  if (diff % 2 != 0 || diff < 0) throw ParityError("rank - trace is not a nonnegative even number");
  return static_cast<int>(diff / 2);
}

/// Rows as JSON-style nested arrays, e.g. [[-1,0],[0,1]].
inline std::string render(const IntMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rank(); ++i) {
    if (i) out += ",";
    out += "[";
    for (int j = 0; j < m.rank(); ++j) {
      if (j) out += ",";
      out += std::to_string(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace fgaut
