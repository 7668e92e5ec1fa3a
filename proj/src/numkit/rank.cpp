#include "fockcheck/numkit/rank.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fockcheck::numkit {
namespace {

using Entry = std::pair<long long, Exact>;  // flattened position, value
using SparseRow = std::vector<Entry>;

void make_primitive(SparseRow& row) {
  Exact g = 0;
  for (const auto& [pos, v] : row) g = std::gcd(g, v < 0 ? Arith<Exact>::neg(v) : v);
  if (g > 1)
    for (auto& e : row) e.second /= g;
  if (!row.empty() && row.front().second < 0)
    for (auto& e : row) e.second = Arith<Exact>::neg(e.second);
}

// lead(pivot) * row - lead(row) * pivot; kills row's leading entry.
SparseRow eliminate(const SparseRow& row, const SparseRow& pivot) {
  const Exact a = pivot.front().second;
  const Exact b = row.front().second;
  SparseRow out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < pivot.size()) {
    long long pos;
    Exact v;
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      pos = row[i].first;
      v = Arith<Exact>::mul(a, row[i++].second);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      pos = pivot[j].first;
      v = Arith<Exact>::neg(Arith<Exact>::mul(b, pivot[j++].second));
    } else {
      pos = row[i].first;
      v = Arith<Exact>::sub(Arith<Exact>::mul(a, row[i++].second), Arith<Exact>::mul(b, pivot[j++].second));
    }
    if (v != 0) out.emplace_back(pos, v);
  }
  return out;
}

}  // namespace

std::size_t rank_of_span(std::span<const ExactOp> ops) {
  if (ops.empty()) return 0;
  const Index rows = ops.front().rows();
  const Index cols = ops.front().cols();
  std::map<long long, SparseRow> pivots;  // keyed by leading position
  for (const auto& op : ops) {
    if (op.rows() != rows || op.cols() != cols) throw std::invalid_argument("rank_of_span: operators differ in shape");
    SparseRow row;
    row.reserve(op.nnz());
    for (const auto& t : op.triplets()) row.emplace_back(static_cast<long long>(t.row) * cols + t.col, t.value);
    make_primitive(row);
    while (!row.empty()) {
      const auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const long long lead = row.front().first;
        pivots.emplace(lead, std::move(row));
        break;
      }
      row = eliminate(row, it->second);
      make_primitive(row);
    }
  }
  return pivots.size();
}

std::size_t matrix_rank(const ExactOp& a) {
  std::vector<ExactOp> rows;
  rows.reserve(static_cast<std::size_t>(a.rows()));
  for (Index r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    if (cols.empty()) continue;
    const auto vals = a.row_values(r);
    std::vector<Triplet<Exact>> t;
    for (std::size_t i = 0; i < cols.size(); ++i) t.push_back({0, cols[i], vals[i]});
    rows.push_back(ExactOp::from_triplets(1, a.cols(), std::move(t)));
  }
  return rank_of_span(rows);
}

}  // namespace fockcheck::numkit
