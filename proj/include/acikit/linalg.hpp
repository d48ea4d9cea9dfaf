#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acikit/polynomial.hpp"

namespace acikit {

/// Sparse row: (column, nonzero value), columns strictly increasing.
template <CoefficientField F>
using SparseRow = std::vector<std::pair<std::uint32_t, typename F::Elem>>;

namespace linalg {

/// a - c*b for sparse rows.
template <CoefficientField F>
SparseRow<F> axpy(const SparseRow<F>& a, const typename F::Elem& c, const SparseRow<F>& b, const F& k) {
  SparseRow<F> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = k.neg(k.mul(c, b[j].second));
      if (!k.is_zero(v)) r.push_back({b[j].first, v});
      ++j;
    } else {
      auto v = k.sub(a[i].second, k.mul(c, b[j].second));
      if (!k.is_zero(v)) r.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return r;
}

/// Incrementally built row echelon form. Pivot rows are monic at their
/// first column.
template <CoefficientField F>
class Echelon {
 public:
  explicit Echelon(F k) : k_(std::move(k)) {}

  /// Leading-entry reduction; returns the residue.
  SparseRow<F> reduce(SparseRow<F> row) const {
    while (!row.empty()) {
      auto it = pivot_.find(row[0].first);
      if (it == pivot_.end()) break;
      auto c = row[0].second;
      row = axpy(row, c, rows_[it->second], k_);
    }
    return row;
  }

  /// Adds a row; true if it increased the rank.
  bool add(SparseRow<F> row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    auto inv = k_.inv(row[0].second);
    for (auto& e : row) e.second = k_.mul(e.second, inv);
    pivot_.emplace(row[0].first, rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  /// Reduces every entry that sits in a pivot column.
  SparseRow<F> reduce_full(SparseRow<F> row) const {
    std::size_t pos = 0;
    while (pos < row.size()) {
      auto it = pivot_.find(row[pos].first);
      if (it == pivot_.end()) {
        ++pos;
        continue;
      }
      auto c = row[pos].second;
      row = axpy(row, c, rows_[it->second], k_);
    }
    return row;
  }

  /// Pivot columns, in insertion order.
  std::vector<std::uint32_t> pivots() const {
    std::vector<std::uint32_t> p;
    for (const auto& r : rows_) p.push_back(r[0].first);
    return p;
  }

  bool in_span(const SparseRow<F>& row) const { return reduce(row).empty(); }
  std::size_t rank() const { return rows_.size(); }

 private:
  F k_;
  std::vector<SparseRow<F>> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
};

/// Rank of a sparse matrix given by rows. Rows are fed shortest first to
/// limit fill-in.
template <CoefficientField F>
std::size_t rank(const F& k, std::vector<SparseRow<F>> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  Echelon<F> e(k);
  for (auto& r : rows) e.add(std::move(r));
  return e.rank();
}

/// Dense matrix over F, row major.
template <CoefficientField F>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<typename F::Elem> a;
  Dense(std::size_t r, std::size_t c, const F& k) : rows(r), cols(c), a(r * c, k.zero()) {}
  typename F::Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const typename F::Elem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Reduced row echelon form in place; returns the pivot columns.
template <CoefficientField F>
std::vector<std::size_t> rref(Dense<F>& M, const F& k) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
    std::size_t p = r;
    while (p < M.rows && k.is_zero(M(p, c))) ++p;
    if (p == M.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
    auto inv = k.inv(M(r, c));
    for (std::size_t j = c; j < M.cols; ++j) M(r, j) = k.mul(M(r, j), inv);
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r || k.is_zero(M(i, c))) continue;
      auto f = M(i, c);
      for (std::size_t j = c; j < M.cols; ++j) M(i, j) = k.sub(M(i, j), k.mul(f, M(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

/// Basis of {x : M x = 0}.
template <CoefficientField F>
std::vector<std::vector<typename F::Elem>> nullspace(Dense<F> M, const F& k) {
  auto piv = rref(M, k);
  std::vector<bool> is_piv(M.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<typename F::Elem>> out;
  for (std::size_t f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<typename F::Elem> x(M.cols, k.zero());
    x[f] = k.one();
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = k.neg(M(r, f));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace linalg

/// All monomials of a given sort degree, in increasing ring order.
template <CoefficientField F>
std::vector<Monomial> monomials_of_degree(const Ring<F>& R, int d) {
  std::vector<Monomial> out;
  const std::size_t n = R.nvars();
  std::vector<int> ex(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      if (left == 0) out.push_back(R.monomial(ex));
      return;
    }
    const int w = R.weight(i);
    for (int e = 0; e * w <= left; ++e) {
      ex[i] = e;
      self(self, i + 1, left - e * w);
    }
    ex[i] = 0;
  };
  if (d >= 0) rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return R.compare(a, b) < 0; });
  return out;
}

/// Monomial-to-column index for a fixed list of monomials.
class MonomialIndex {
 public:
  explicit MonomialIndex(const std::vector<Monomial>& ms) {
    for (std::uint32_t i = 0; i < ms.size(); ++i) idx_.emplace(ms[i], i);
  }
  std::uint32_t at(const Monomial& m) const { return idx_.at(m); }
  bool has(const Monomial& m) const { return idx_.count(m) != 0; }
  std::size_t size() const { return idx_.size(); }

 private:
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> idx_;
};

template <CoefficientField F>
SparseRow<F> to_row(const Polynomial<F>& f, const MonomialIndex& idx) {
  SparseRow<F> r;
  for (const auto& t : f.terms()) r.push_back({idx.at(t.mono), t.coef});
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

/// Degree-d Macaulay matrix membership: f lies in the span of all m*g with
/// deg m + deg g = d. Independent of any Groebner basis computation.
template <CoefficientField F>
bool macaulay_member(const Polynomial<F>& f, const std::vector<Polynomial<F>>& gens) {
  if (f.is_zero()) return true;
  const auto& R = *f.ring();
  const int d = f.sort_degree();
  auto mons = monomials_of_degree(R, d);
  MonomialIndex idx(mons);
  linalg::Echelon<F> E(R.field());
  for (const auto& g : gens) {
    if (g.is_zero() || g.sort_degree() > d) continue;
    for (const auto& m : monomials_of_degree(R, d - g.sort_degree()))
      E.add(to_row(g.mul_term(m, R.field().one()), idx));
  }
  return E.in_span(to_row(f, idx));
}

/// Dimension of the degree-d part of the ideal generated by `gens`.
template <CoefficientField F>
std::size_t macaulay_dimension(const RingPtr<F>& R, const std::vector<Polynomial<F>>& gens, int d) {
  auto mons = monomials_of_degree(*R, d);
  MonomialIndex idx(mons);
  std::vector<SparseRow<F>> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.sort_degree() > d) continue;
    for (const auto& m : monomials_of_degree(*R, d - g.sort_degree()))
      rows.push_back(to_row(g.mul_term(m, R->field().one()), idx));
  }
  return linalg::rank(R->field(), std::move(rows));
}

}  // namespace acikit
