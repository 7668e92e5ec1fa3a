#pragma once

// Sparse operators in compressed-row form over an exact (checked int64) or
// double scalar. Storage is canonical: rows sorted by column, no duplicate
// positions, no stored zeros. Two operators are entrywise equal iff their
// storage compares equal.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockcheck/numkit/scalar.hpp"

namespace fockcheck::numkit {

template <Scalar T>
struct Triplet {
  Index row;
  Index col;
  T value;
};

template <Scalar T>
class LinOp {
 public:
  using value_type = T;

  LinOp() : row_ptr_(1, 0) {}
  LinOp(Index rows, Index cols) : rows_(rows), cols_(cols), row_ptr_(static_cast<std::size_t>(rows) + 1, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("LinOp: negative dimension");
  }

  static LinOp identity(Index n) {
    LinOp out(n, n);
    out.col_.resize(n);
    out.val_.assign(n, T{1});
    for (Index i = 0; i < n; ++i) {
      out.col_[i] = i;
      out.row_ptr_[i + 1] = static_cast<std::size_t>(i) + 1;
    }
    return out;
  }

  static LinOp diagonal(std::span<const T> diag) {
    std::vector<Triplet<T>> t;
    for (std::size_t i = 0; i < diag.size(); ++i) t.push_back({static_cast<Index>(i), static_cast<Index>(i), diag[i]});
    const auto n = static_cast<Index>(diag.size());
    return from_triplets(n, n, std::move(t));
  }

  /// Duplicate positions are summed (checked); zero results are dropped.
  static LinOp from_triplets(Index rows, Index cols, std::vector<Triplet<T>> entries) {
    LinOp out(rows, cols);
    for (const auto& e : entries) {
      if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
        throw std::out_of_range("LinOp::from_triplets: entry outside " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet<T>& a, const Triplet<T>& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    std::size_t i = 0;
    while (i < entries.size()) {
      const Index r = entries[i].row;
      const Index c = entries[i].col;
      T sum = entries[i].value;
      std::size_t j = i + 1;
      for (; j < entries.size() && entries[j].row == r && entries[j].col == c; ++j) sum = Arith<T>::add(sum, entries[j].value);
      if (sum != T{0}) {
        out.col_.push_back(c);
        out.val_.push_back(sum);
        ++out.row_ptr_[static_cast<std::size_t>(r) + 1];
      }
      i = j;
    }
    for (Index r = 0; r < rows; ++r) out.row_ptr_[r + 1] += out.row_ptr_[r];
    return out;
  }

  /// Takes already-canonical CSR arrays. Used by the kernels below.
  static LinOp from_csr(Index rows, Index cols, std::vector<std::size_t> rowPtr, std::vector<Index> col,
                        std::vector<T> val) {
    LinOp out(rows, cols);
    out.row_ptr_ = std::move(rowPtr);
    out.col_ = std::move(col);
    out.val_ = std::move(val);
    return out;
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t nnz() const { return val_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const Index> col_index() const { return col_; }
  std::span<const T> values() const { return val_; }

  std::span<const Index> row_cols(Index r) const {
    return std::span<const Index>(col_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
  }
  std::span<const T> row_values(Index r) const {
    return std::span<const T>(val_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
  }

  T at(Index r, Index c) const {
    const auto cols = row_cols(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return T{0};
    return val_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
  }

  std::vector<Triplet<T>> triplets() const {
    std::vector<Triplet<T>> out;
    out.reserve(nnz());
    for (Index r = 0; r < rows_; ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, col_[k], val_[k]});
    return out;
  }

  LinOp transpose() const {
    LinOp out(cols_, rows_);
    out.col_.resize(nnz());
    out.val_.resize(nnz());
    for (const Index c : col_) ++out.row_ptr_[static_cast<std::size_t>(c) + 1];
    for (Index c = 0; c < cols_; ++c) out.row_ptr_[c + 1] += out.row_ptr_[c];
    std::vector<std::size_t> next(out.row_ptr_.begin(), out.row_ptr_.end() - 1);
    for (Index r = 0; r < rows_; ++r) {
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        const std::size_t dst = next[col_[k]]++;
        out.col_[dst] = r;
        out.val_[dst] = val_[k];
      }
    }
    return out;
  }

  template <Scalar U>
  LinOp<U> cast() const {
    std::vector<U> v(val_.begin(), val_.end());
    return LinOp<U>::from_csr(rows_, cols_, row_ptr_, col_, std::move(v));
  }

  friend bool operator==(const LinOp&, const LinOp&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<Index> col_;
  std::vector<T> val_;
};

using ExactOp = LinOp<Exact>;
using RealOp = LinOp<Real>;

namespace detail {

inline void require_same_shape(Index ar, Index ac, Index br, Index bc, const char* what) {
  if (ar != br || ac != bc)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch " + std::to_string(ar) + "x" +
                                std::to_string(ac) + " vs " + std::to_string(br) + "x" + std::to_string(bc));
}

// alpha*A + beta*B, row-wise merge.
template <Scalar T>
LinOp<T> combine(const LinOp<T>& a, T alpha, const LinOp<T>& b, T beta) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "add");
  std::vector<std::size_t> rp(static_cast<std::size_t>(a.rows()) + 1, 0);
  std::vector<Index> col;
  std::vector<T> val;
  col.reserve(a.nnz() + b.nnz());
  val.reserve(a.nnz() + b.nnz());
  for (Index r = 0; r < a.rows(); ++r) {
    const auto ac = a.row_cols(r);
    const auto av = a.row_values(r);
    const auto bc = b.row_cols(r);
    const auto bv = b.row_values(r);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ac.size() || j < bc.size()) {
      Index c;
      T v;
      if (j == bc.size() || (i < ac.size() && ac[i] < bc[j])) {
        c = ac[i];
        v = Arith<T>::mul(alpha, av[i++]);
      } else if (i == ac.size() || bc[j] < ac[i]) {
        c = bc[j];
        v = Arith<T>::mul(beta, bv[j++]);
      } else {
        c = ac[i];
        v = Arith<T>::add(Arith<T>::mul(alpha, av[i++]), Arith<T>::mul(beta, bv[j++]));
      }
      if (v != T{0}) {
        col.push_back(c);
        val.push_back(v);
      }
    }
    rp[r + 1] = col.size();
  }
  return LinOp<T>::from_csr(a.rows(), a.cols(), std::move(rp), std::move(col), std::move(val));
}

}  // namespace detail

template <Scalar T>
LinOp<T> add(const LinOp<T>& a, const LinOp<T>& b) {
  return detail::combine(a, T{1}, b, T{1});
}

template <Scalar T>
LinOp<T> subtract(const LinOp<T>& a, const LinOp<T>& b) {
  return detail::combine(a, T{1}, b, T{-1});
}

/// alpha*A + beta*B
template <Scalar T>
LinOp<T> axpby(T alpha, const LinOp<T>& a, T beta, const LinOp<T>& b) {
  return detail::combine(a, alpha, b, beta);
}

template <Scalar T>
LinOp<T> scale(const LinOp<T>& a, T s) {
  if (s == T{0}) return LinOp<T>(a.rows(), a.cols());
  std::vector<T> v(a.values().begin(), a.values().end());
  for (auto& x : v) x = Arith<T>::mul(x, s);
  return LinOp<T>::from_csr(a.rows(), a.cols(), {a.row_ptr().begin(), a.row_ptr().end()},
                            {a.col_index().begin(), a.col_index().end()}, std::move(v));
}

/// Gustavson product with a dense accumulator per row.
template <Scalar T>
LinOp<T> multiply(const LinOp<T>& a, const LinOp<T>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()));
  std::vector<std::size_t> rp(static_cast<std::size_t>(a.rows()) + 1, 0);
  std::vector<Index> col;
  std::vector<T> val;
  std::vector<T> acc(static_cast<std::size_t>(b.cols()), T{0});
  std::vector<char> seen(static_cast<std::size_t>(b.cols()), 0);
  std::vector<Index> touched;
  for (Index r = 0; r < a.rows(); ++r) {
    touched.clear();
    const auto ac = a.row_cols(r);
    const auto av = a.row_values(r);
    for (std::size_t i = 0; i < ac.size(); ++i) {
      const auto bc = b.row_cols(ac[i]);
      const auto bv = b.row_values(ac[i]);
      for (std::size_t j = 0; j < bc.size(); ++j) {
        const Index c = bc[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        acc[c] = Arith<T>::add(acc[c], Arith<T>::mul(av[i], bv[j]));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const Index c : touched) {
      if (acc[c] != T{0}) {
        col.push_back(c);
        val.push_back(acc[c]);
      }
      acc[c] = T{0};
      seen[c] = 0;
    }
    rp[r + 1] = col.size();
  }
  return LinOp<T>::from_csr(a.rows(), b.cols(), std::move(rp), std::move(col), std::move(val));
}

/// First-leg-major: entry (a*rows(B)+c, b*cols(B)+d) = A(a,b)*B(c,d).
template <Scalar T>
LinOp<T> kron(const LinOp<T>& a, const LinOp<T>& b) {
  const long long rows = static_cast<long long>(a.rows()) * b.rows();
  const long long cols = static_cast<long long>(a.cols()) * b.cols();
  if (rows > INT32_MAX || cols > INT32_MAX) throw std::length_error("kron: result dimension exceeds index range");
  std::vector<std::size_t> rp(static_cast<std::size_t>(rows) + 1, 0);
  std::vector<Index> col;
  std::vector<T> val;
  col.reserve(a.nnz() * b.nnz());
  val.reserve(a.nnz() * b.nnz());
  std::size_t r = 0;
  for (Index ra = 0; ra < a.rows(); ++ra) {
    const auto ac = a.row_cols(ra);
    const auto av = a.row_values(ra);
    for (Index rb = 0; rb < b.rows(); ++rb) {
      const auto bc = b.row_cols(rb);
      const auto bv = b.row_values(rb);
      for (std::size_t i = 0; i < ac.size(); ++i) {
        const Index base = ac[i] * b.cols();
        for (std::size_t j = 0; j < bc.size(); ++j) {
          col.push_back(base + bc[j]);
          val.push_back(Arith<T>::mul(av[i], bv[j]));
        }
      }
      rp[++r] = col.size();
    }
  }
  return LinOp<T>::from_csr(static_cast<Index>(rows), static_cast<Index>(cols), std::move(rp), std::move(col),
                            std::move(val));
}

/// AB - BA
template <Scalar T>
LinOp<T> commutator(const LinOp<T>& a, const LinOp<T>& b) {
  if (!a.is_square() || !b.is_square()) throw std::invalid_argument("commutator: operands must be square");
  detail::require_same_shape(a.rows(), a.cols(), b.rows(), b.cols(), "commutator");
  return subtract(multiply(a, b), multiply(b, a));
}

namespace detail {

// Keeps positions whose index maps to a non-negative slot; the map must be
// monotone on kept indices so row order is preserved.
template <Scalar T, typename Map>
LinOp<T> restrict_square(const LinOp<T>& a, Index newDim, Map&& map) {
  std::vector<std::size_t> rp(static_cast<std::size_t>(newDim) + 1, 0);
  std::vector<Index> col;
  std::vector<T> val;
  Index out = 0;
  for (Index r = 0; r < a.rows(); ++r) {
    if (map(r) < 0) continue;
    const auto cs = a.row_cols(r);
    const auto vs = a.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Index c = map(cs[k]);
      if (c < 0) continue;
      col.push_back(c);
      val.push_back(vs[k]);
    }
    rp[++out] = col.size();
  }
  return LinOp<T>::from_csr(newDim, newDim, std::move(rp), std::move(col), std::move(val));
}

}  // namespace detail

/// Upper-left keep x keep block, i.e. Q A Q on the leading coordinates.
template <Scalar T>
LinOp<T> compress(const LinOp<T>& a, Index keep) {
  if (!a.is_square()) throw std::invalid_argument("compress: operator must be square");
  if (keep < 0 || keep > a.rows()) throw std::invalid_argument("compress: kept dimension out of range");
  return detail::restrict_square(a, keep, [keep](Index i) { return i < keep ? i : Index{-1}; });
}

/// Compression of an operator on (V (x) V)^blocks, keeping the leading
/// `keep` coordinates of each leg of each block.
template <Scalar T>
LinOp<T> compress_tensor(const LinOp<T>& a, Index legDim, Index keep, Index blocks = 1) {
  const long long sq = static_cast<long long>(legDim) * legDim;
  if (!a.is_square() || sq * blocks != a.rows())
    throw std::invalid_argument("compress_tensor: operator is not a block tensor square of dimension " +
                                std::to_string(legDim));
  if (keep < 0 || keep > legDim) throw std::invalid_argument("compress_tensor: kept dimension out of range");
  const Index sqi = static_cast<Index>(sq);
  const Index ksq = keep * keep;
  return detail::restrict_square(a, ksq * blocks, [=](Index i) {
    const Index blk = i / sqi;
    const Index rem = i % sqi;
    const Index v = rem / legDim;
    const Index w = rem % legDim;
    return (v < keep && w < keep) ? blk * ksq + v * keep + w : Index{-1};
  });
}

template <Scalar T>
struct Block {
  Index row;
  Index col;
  const LinOp<T>* op;
};

/// Grid of equally sized blocks; absent blocks are zero.
template <Scalar T>
LinOp<T> assemble_blocks(Index gridRows, Index gridCols, Index blockRows, Index blockCols,
                         std::span<const Block<T>> blocks) {
  std::vector<Triplet<T>> t;
  for (const auto& b : blocks) {
    if (b.row < 0 || b.row >= gridRows || b.col < 0 || b.col >= gridCols)
      throw std::out_of_range("assemble_blocks: block position outside grid");
    detail::require_same_shape(b.op->rows(), b.op->cols(), blockRows, blockCols, "assemble_blocks");
    for (const auto& e : b.op->triplets()) t.push_back({b.row * blockRows + e.row, b.col * blockCols + e.col, e.value});
  }
  return LinOp<T>::from_triplets(gridRows * blockRows, gridCols * blockCols, std::move(t));
}

/// Entrywise identity of two exact operators.
template <Scalar T>
  requires std::same_as<T, Exact>
bool exact_eq(const LinOp<T>& a, const LinOp<T>& b) {
  return a == b;
}

template <Scalar T>
bool is_zero(const LinOp<T>& a) {
  return a.nnz() == 0;
}

template <Scalar T>
double max_abs(const LinOp<T>& a) {
  double m = 0.0;
  for (const T v : a.values()) m = std::max(m, v < T{0} ? -static_cast<double>(v) : static_cast<double>(v));
  return m;
}

template <Scalar T>
double max_abs_diff(const LinOp<T>& a, const LinOp<T>& b) {
  return max_abs(detail::combine(a.template cast<Real>(), 1.0, b.template cast<Real>(), -1.0));
}

template <Scalar T>
bool is_diagonal(const LinOp<T>& a) {
  for (Index r = 0; r < a.rows(); ++r)
    for (const Index c : a.row_cols(r))
      if (c != r) return false;
  return true;
}

template <Scalar T>
T trace(const LinOp<T>& a) {
  T s{0};
  for (Index r = 0; r < std::min(a.rows(), a.cols()); ++r) s = Arith<T>::add(s, a.at(r, r));
  return s;
}

template <Scalar T>
std::vector<T> apply(const LinOp<T>& a, std::span<const T> x) {
  if (static_cast<Index>(x.size()) != a.cols()) throw std::invalid_argument("apply: vector length mismatch");
  std::vector<T> y(static_cast<std::size_t>(a.rows()), T{0});
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cs = a.row_cols(r);
    const auto vs = a.row_values(r);
    T s{0};
    for (std::size_t k = 0; k < cs.size(); ++k) s = Arith<T>::add(s, Arith<T>::mul(vs[k], x[cs[k]]));
    y[r] = s;
  }
  return y;
}

}  // namespace fockcheck::numkit
