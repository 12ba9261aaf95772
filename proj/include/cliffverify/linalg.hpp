#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cliffverify/polynomial.hpp"

namespace cliffverify {

/// Sparse rational vector: (index, value) pairs sorted by index, no zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

namespace detail {

inline const Rational* find_entry(const SparseVector& v, std::size_t idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& e, std::size_t key) { return e.first < key; });
  return it != v.end() && it->first == idx ? &it->second : nullptr;
}

/// target -= factor * source
inline void axpy(SparseVector& target, const Rational& factor, const SparseVector& source) {
  SparseVector out;
  out.reserve(target.size() + source.size());
  auto a = target.begin();
  auto b = source.begin();
  while (a != target.end() || b != source.end()) {
    if (b == source.end() || (a != target.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == target.end() || b->first < a->first) {
      out.emplace_back(b->first, Rational(-factor * b->second));
      ++b;
    } else {
      Rational v = a->second - factor * b->second;
      if (!is_zero(v)) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  target = std::move(out);
}

}  // namespace detail

/// Reduced row echelon form of the matrix whose columns are given. Pivot
/// columns are chosen left to right and, within a column, the first
/// eligible row wins, so the result depends only on the input order.
struct EchelonForm {
  std::size_t column_count = 0;
  std::vector<SparseVector> rows;                         // pivot rows only
  std::vector<std::size_t> pivot_columns;                 // parallel to rows
};

inline EchelonForm row_reduce(const std::vector<SparseVector>& columns) {
  EchelonForm ef;
  ef.column_count = columns.size();
  std::map<std::size_t, SparseVector> by_row;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c]) by_row[r].emplace_back(c, v);
  std::vector<SparseVector> pending;
  pending.reserve(by_row.size());
  for (auto& [r, row] : by_row) pending.push_back(std::move(row));

  std::vector<SparseVector>& pivots = ef.rows;
  for (std::size_t col = 0; col < ef.column_count; ++col) {
    std::size_t chosen = pending.size();
    for (std::size_t r = 0; r < pending.size(); ++r) {
      if (!pending[r].empty() && detail::find_entry(pending[r], col) != nullptr) {
        chosen = r;
        break;
      }
    }
    if (chosen == pending.size()) continue;
    SparseVector pivot = std::move(pending[chosen]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(chosen));
    const Rational inv = 1 / *detail::find_entry(pivot, col);
    for (auto& e : pivot) e.second *= inv;
    for (auto& row : pending)
      if (const Rational* v = detail::find_entry(row, col)) {
        Rational f = *v;
        detail::axpy(row, f, pivot);
      }
    for (auto& row : pivots)
      if (const Rational* v = detail::find_entry(row, col)) {
        Rational f = *v;
        detail::axpy(row, f, pivot);
      }
    pivots.push_back(std::move(pivot));
    ef.pivot_columns.push_back(col);
  }
  return ef;
}

inline std::size_t rank(const std::vector<SparseVector>& columns) {
  return row_reduce(columns).rows.size();
}

/// Basis of {v : sum_j v_j columns[j] = 0}; one vector per free column,
/// with that column's entry equal to 1.
inline std::vector<SparseVector> nullspace(const std::vector<SparseVector>& columns) {
  EchelonForm ef = row_reduce(columns);
  std::vector<bool> is_pivot(ef.column_count, false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<SparseVector> out;
  for (std::size_t f = 0; f < ef.column_count; ++f) {
    if (is_pivot[f]) continue;
    SparseVector v;
    for (std::size_t r = 0; r < ef.rows.size(); ++r)
      if (const Rational* e = detail::find_entry(ef.rows[r], f)) v.emplace_back(ef.pivot_columns[r], Rational(-*e));
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

/// Assigns stable row indices to (monomial, blade) coordinates as they are
/// first encountered.
class CoordinateSystem {
 public:
  SparseVector coordinates(const MVPolynomial& p) {
    SparseVector v;
    for (const auto& [mono, c] : p.terms())
      for (const auto& [b, val] : c.terms()) {
        auto [it, inserted] = index_.try_emplace({mono, b}, index_.size());
        v.emplace_back(it->second, val);
      }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::map<std::pair<Monomial, Blade>, std::size_t> index_;
};

inline MVPolynomial combine(const std::vector<MVPolynomial>& inputs, const SparseVector& weights) {
  if (inputs.empty()) throw std::invalid_argument("combine: empty input list");
  MVPolynomial out(inputs.front().dimension());
  for (const auto& [j, c] : weights) out += inputs[j] * c;
  return out;
}

/// Kernel of a linear operator restricted to span(inputs), expressed as
/// combinations of the inputs.
template <class Op>
std::vector<MVPolynomial> kernel_of(const std::vector<MVPolynomial>& inputs, Op&& op) {
  CoordinateSystem coords;
  std::vector<SparseVector> columns;
  columns.reserve(inputs.size());
  for (const auto& in : inputs) columns.push_back(coords.coordinates(op(in)));
  std::vector<MVPolynomial> out;
  for (const auto& v : nullspace(columns)) out.push_back(combine(inputs, v));
  return out;
}

inline std::size_t span_rank(const std::vector<MVPolynomial>& polys) {
  CoordinateSystem coords;
  std::vector<SparseVector> columns;
  columns.reserve(polys.size());
  for (const auto& p : polys) columns.push_back(coords.coordinates(p));
  return rank(columns);
}

inline bool in_span(const std::vector<MVPolynomial>& basis, const MVPolynomial& p) {
  std::vector<MVPolynomial> extended = basis;
  extended.push_back(p);
  return span_rank(extended) == span_rank(basis);
}

}  // namespace cliffverify
