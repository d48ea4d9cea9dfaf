#pragma once

#include <algorithm>
#include <climits>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "acikit/hilbert.hpp"
#include "acikit/homology.hpp"
#include "acikit/linalg.hpp"

namespace acikit {

/// Graded Betti numbers: (homological degree, shift) -> multiplicity.
class BettiTable {
 public:
  using Key = std::pair<int, Degree>;

  BettiTable() = default;
  explicit BettiTable(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<Key, long>& entries() const { return entries_; }

  void add(int i, const Degree& shift, long m = 1) {
    if (static_cast<int>(shift.size()) != arity_) throw GradeMismatch("shift has the wrong arity");
    if (m == 0) return;
    auto& e = entries_[{i, shift}];
    e += m;
    if (e == 0) entries_.erase({i, shift});
    else if (e < 0) throw Error("negative Betti number");
  }

  long get(int i, const Degree& shift) const {
    auto it = entries_.find({i, shift});
    return it == entries_.end() ? 0 : it->second;
  }

  /// beta_{i,j} for a singly graded table.
  long get(int i, int j) const { return get(i, Degree{j}); }

  /// Total rank of step i.
  long rank(int i) const {
    long r = 0;
    for (const auto& [k, m] : entries_)
      if (k.first == i) r += m;
    return r;
  }

  /// Largest i with a nonzero entry (projective dimension for a resolution).
  int length() const {
    int n = -1;
    for (const auto& [k, m] : entries_) n = std::max(n, k.first);
    return n;
  }

  bool empty() const { return entries_.empty(); }

  /// Shift multiset of step i, sorted.
  std::vector<std::pair<Degree, long>> step(int i) const {
    std::vector<std::pair<Degree, long>> out;
    for (const auto& [k, m] : entries_)
      if (k.first == i) out.push_back({k.second, m});
    return out;
  }

  /// Projection of the shifts to one integer per entry.
  template <class Proj>
  BettiTable collapse(Proj&& p) const {
    BettiTable t(1);
    for (const auto& [k, m] : entries_) t.add(k.first, Degree{p(k.second)}, m);
    return t;
  }
  BettiTable component(std::size_t c) const {
    return collapse([c](const Degree& d) { return d.at(c); });
  }

  /// sup of the shifts in step i per coordinate c; INT_MIN when F_i = 0.
  int t(int i, std::size_t c = 0) const {
    int best = INT_MIN;
    for (const auto& [k, m] : entries_)
      if (k.first == i) best = std::max(best, k.second.at(c));
    return best;
  }

  /// max over entries of (shift[c] - i).
  int regularity(std::size_t c = 0) const {
    int r = INT_MIN;
    for (const auto& [k, m] : entries_) r = std::max(r, k.second.at(c) - k.first);
    return r;
  }

  friend bool operator==(const BettiTable& a, const BettiTable& b) {
    return a.arity_ == b.arity_ && a.entries_ == b.entries_;
  }

  /// First entry where the tables differ, described in words; empty if equal.
  std::string first_difference(const BettiTable& o) const {
    std::set<Key> keys;
    for (const auto& [k, m] : entries_) keys.insert(k);
    for (const auto& [k, m] : o.entries_) keys.insert(k);
    for (const auto& k : keys) {
      auto a = get(k.first, k.second), b = o.get(k.first, k.second);
      if (a != b)
        return "step " + std::to_string(k.first) + " shift " + shift_string(k.second) + ": " +
               std::to_string(a) + " vs " + std::to_string(b);
    }
    return {};
  }

  static std::string shift_string(const Degree& d) {
    if (d.size() == 1) return std::to_string(d[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
  }

  /// Resolution display such as "S <- S(-3,-1)^5 <- ...".
  std::string resolution_string(const std::string& ring = "R") const {
    std::string s;
    for (int i = 0; i <= length(); ++i) {
      if (i) s += " <- ";
      std::string part;
      for (const auto& [d, m] : step(i)) {
        if (!part.empty()) part += " + ";
        bool zero = std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
        std::string tw;
        if (!zero) {
          tw = "(";
          for (std::size_t k = 0; k < d.size(); ++k) tw += (k ? "," : "") + std::to_string(-d[k]);
          tw += ")";
        }
        part += ring + tw + (m > 1 ? "^" + std::to_string(m) : "");
      }
      s += part.empty() ? "0" : part;
    }
    return s;
  }

  /// Macaulay-style grid: row r, column i holds beta_{i, i + r}. Bigraded
  /// tables are printed through their first coordinate.
  std::string grid() const {
    const BettiTable t1 = arity_ == 1 ? *this : component(0);
    if (t1.empty()) return "(zero)\n";
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& [k, m] : t1.entries_) {
      lo = std::min(lo, k.second[0] - k.first);
      hi = std::max(hi, k.second[0] - k.first);
    }
    const int n = t1.length();
    std::ostringstream os;
    os << "       ";
    for (int i = 0; i <= n; ++i) os << std::setw(6) << i;
    os << "\n";
    os << "total: ";
    for (int i = 0; i <= n; ++i) os << std::setw(6) << t1.rank(i);
    os << "\n";
    for (int r = lo; r <= hi; ++r) {
      os << std::setw(5) << r << ": ";
      for (int i = 0; i <= n; ++i) {
        auto m = t1.get(i, r + i);
        if (m) os << std::setw(6) << m;
        else os << std::setw(6) << "-";
      }
      os << "\n";
    }
    return os.str();
  }

 private:
  int arity_ = 1;
  std::map<Key, long> entries_;
};

/// Betti table of a complex read off its module shifts (meaningful when minimal).
template <CoefficientField F>
BettiTable betti_of(const ChainComplex<F>& C) {
  BettiTable t(C.ring()->arity());
  for (std::size_t i = 0; i < C.modules.size(); ++i)
    for (const auto& s : C.modules[i].shifts) t.add(static_cast<int>(i), s);
  return t;
}

// ---------------------------------------------------------------------------
// Schreyer frame resolution

/// One step of a Schreyer resolution: generators of F_k as vectors of
/// F_{k-1}, together with the induced order used on F_k.
template <CoefficientField F>
struct SchreyerLevel {
  std::vector<Vec<F>> elems;       // in F_{k-1}, monic leads
  std::vector<Degree> shifts;      // multidegrees of the basis of F_k
  std::vector<int> sort_shifts;
  ModuleOrder order;               // Schreyer order on F_k
  std::vector<std::vector<std::uint32_t>> chains;
};

/// Non-minimal free resolution of coker(F_0 <- N) by Schreyer's algorithm.
/// Level 1 is a Groebner basis of N; level k+1 is the syzygy basis of level
/// k induced by the lead-term colon ideals, reductions recorded as tails.
template <CoefficientField F>
class SchreyerResolution {
 public:
  SchreyerResolution(FreeModule<F> F0, const std::vector<Vec<F>>& gens, int degree_cap = default_degree_cap.load())
      : F0_(std::move(F0)) {
    const auto& R = F0_.ring;
    const std::size_t r0 = F0_.rank();
    O0_ = ModuleOrder::term_over_position(r0);
    ModuleGB<F> gb(R, O0_, F0_.sort_shifts(), degree_cap);
    for (auto v : gens) {
      vec_normalize(v, *R, O0_);
      gb.add_generator(std::move(v));
    }
    std::vector<std::vector<std::uint32_t>> chains0;
    for (std::uint32_t c = 0; c < r0; ++c) chains0.push_back({c});
    SchreyerLevel<F> L1;
    L1.elems = gb.basis();
    order_level(L1.elems, 0);
    finish_level(L1, F0_.shifts, F0_.sort_shifts(), std::vector<Monomial>(r0), chains0);
    levels_.push_back(std::move(L1));
    const std::size_t max_levels = R->nvars() + 1;
    while (!levels_.back().elems.empty()) {
      if (levels_.size() > max_levels) throw Error("internal: Schreyer frame longer than the number of variables");
      auto next = syzygies(levels_.size() - 1, degree_cap);
      levels_.push_back(std::move(next));
    }
    levels_.pop_back();
  }

  const FreeModule<F>& F0() const { return F0_; }
  /// Levels 1..n stored at indices 0..n-1.
  const std::vector<SchreyerLevel<F>>& levels() const { return levels_; }
  std::size_t length() const { return levels_.size(); }

  /// Ambient order of the vectors at level k (1-based): the order on F_{k-1}.
  const ModuleOrder& ambient_order(std::size_t k) const { return k == 1 ? O0_ : levels_[k - 2].order; }
  const std::vector<Degree>& ambient_shifts(std::size_t k) const {
    return k == 1 ? F0_.shifts : levels_[k - 2].shifts;
  }

  /// Minimal graded Betti numbers from ranks of the constant parts of the
  /// differentials, without building the minimal complex.
  BettiTable betti() const {
    const auto& R = *F0_.ring;
    BettiTable t(R.arity());
    // rank of the degree-preserving constant part of d_k, by multidegree
    std::vector<std::map<Degree, long>> cr(levels_.size() + 2);
    for (std::size_t k = 1; k <= levels_.size(); ++k) {
      const auto& L = levels_[k - 1];
      std::map<Degree, std::vector<SparseRow<F>>> rows;  // one sparse row per column of d_k
      for (std::size_t a = 0; a < L.elems.size(); ++a) {
        SparseRow<F> row;
        for (const auto& term : L.elems[a])
          if (term.mono.is_one()) row.push_back({term.comp, term.coef});
        if (row.empty()) continue;
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        rows[L.shifts[a]].push_back(std::move(row));
      }
      for (auto& [d, rs] : rows) cr[k][d] = static_cast<long>(linalg::rank(R.field(), std::move(rs)));
    }
    auto count = [&](std::size_t k, std::map<Degree, long>& out) {
      const auto& sh = k == 0 ? F0_.shifts : levels_[k - 1].shifts;
      for (const auto& s : sh) ++out[s];
    };
    for (std::size_t k = 0; k <= levels_.size(); ++k) {
      std::map<Degree, long> n;
      count(k, n);
      for (const auto& [d, m] : n) {
        long b = m;
        if (auto it = cr[k].find(d); k >= 1 && it != cr[k].end()) b -= it->second;
        if (auto it = cr[k + 1].find(d); it != cr[k + 1].end()) b -= it->second;
        t.add(static_cast<int>(k), d, b);
      }
    }
    return t;
  }

  /// The frame as an explicit (non-minimal) chain complex.
  ChainComplex<F> complex() const {
    std::vector<ModuleMap<F>> ds;
    FreeModule<F> prev = F0_;
    const auto& R = F0_.ring;
    for (const auto& L : levels_) {
      FreeModule<F> cur{R, L.shifts};
      ModuleMap<F> d(cur, prev);
      for (std::size_t a = 0; a < L.elems.size(); ++a) {
        std::map<std::uint32_t, std::vector<Term<F>>> by_row;
        for (const auto& t : L.elems[a]) by_row[t.comp].push_back({t.mono, t.coef});
        for (auto& [r, ts] : by_row) d.matrix.set(r, a, Polynomial<F>::from_terms(R, std::move(ts)));
      }
      ds.push_back(std::move(d));
      prev = std::move(cur);
    }
    if (ds.empty()) ds.push_back(ModuleMap<F>(FreeModule<F>{R, {}}, F0_));
    return ChainComplex<F>(std::move(ds), false);
  }

 private:
  /// Orders elements by component, then by the exponent of variable `var`
  /// in the lead term (ascending), which keeps the frame length <= nvars.
  void order_level(std::vector<Vec<F>>& elems, std::size_t var) const {
    const std::size_t n = F0_.ring->nvars();
    std::stable_sort(elems.begin(), elems.end(), [&](const Vec<F>& a, const Vec<F>& b) {
      if (a[0].comp != b[0].comp) return a[0].comp < b[0].comp;
      if (var < n && a[0].mono[var] != b[0].mono[var]) return a[0].mono[var] < b[0].mono[var];
      return false;
    });
  }

  void finish_level(SchreyerLevel<F>& L, const std::vector<Degree>& prev_shifts, const std::vector<int>& prev_sort,
                    const std::vector<Monomial>& prev_totals,
                    const std::vector<std::vector<std::uint32_t>>& prev_chains) {
    const auto& R = *F0_.ring;
    std::vector<Monomial> totals;
    for (std::uint32_t a = 0; a < L.elems.size(); ++a) {
      const auto& lt = L.elems[a][0];
      L.shifts.push_back(degree_add(R.multidegree(lt.mono), prev_shifts[lt.comp]));
      L.sort_shifts.push_back(lt.mono.degree() + prev_sort[lt.comp]);
      totals.push_back(lt.mono * prev_totals[lt.comp]);
      auto ch = prev_chains[lt.comp];
      ch.push_back(a);
      L.chains.push_back(std::move(ch));
    }
    L.order = ModuleOrder::schreyer(totals, L.chains);
    totals_.push_back(std::move(totals));
  }

  SchreyerLevel<F> syzygies(std::size_t idx, int degree_cap) {
    const auto& R = *F0_.ring;
    const F& k = R.field();
    const auto& L = levels_[idx];
    const ModuleOrder& amb = idx == 0 ? O0_ : levels_[idx - 1].order;
    ReducerSet<F> rs;
    for (const auto& v : L.elems) rs.add(v);
    std::vector<Vec<F>> out;
    auto w = R.weights();
    // group indices by lead component
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_comp;
    for (std::uint32_t a = 0; a < L.elems.size(); ++a) by_comp[L.elems[a][0].comp].push_back(a);
    Accumulator<F> acc(R, amb);
    for (std::uint32_t a = 0; a < L.elems.size(); ++a) {
      const auto& ga = L.elems[a];
      const Monomial& lta = ga[0].mono;
      // minimal generators of (lt_i : i < a) : lt_a, remembering a witness i
      std::vector<std::pair<Monomial, std::uint32_t>> cands;
      for (auto i : by_comp[ga[0].comp]) {
        if (i >= a) break;
        cands.push_back({quotient(lcm(L.elems[i][0].mono, lta, w), lta), i});
      }
      std::vector<Monomial> mons;
      for (const auto& c : cands) mons.push_back(c.first);
      auto gens = hilbert::minimalize(std::move(mons));
      std::sort(gens.begin(), gens.end(), [&](const Monomial& x, const Monomial& y) { return R.compare(x, y) < 0; });
      for (const auto& mu : gens) {
        if (mu.degree() + L.sort_shifts[a] > degree_cap)
          throw Overflow("resolution exceeds degree cap " + std::to_string(degree_cap));
        std::uint32_t wit = 0;
        for (const auto& c : cands)
          if (c.first == mu) {
            wit = c.second;
            break;
          }
        const auto& gi = L.elems[wit];
        Monomial q = quotient(mu * lta, gi[0].mono);
        Vec<F> syz{{mu, a, k.one()}, {q, wit, k.neg(k.one())}};
        acc.clear();
        acc.add(ga, mu, k.one(), 1);
        acc.add(gi, q, k.neg(k.one()), 1);
        auto rem = reduce_accumulator(acc, rs, k, true, [&](std::uint32_t id, const Monomial& m, const auto& c) {
          syz.push_back({m, id, k.neg(c)});
        });
        if (!rem.empty()) throw Error("internal: Schreyer syzygy did not reduce to zero");
        vec_normalize(syz, R, L.order);
        out.push_back(std::move(syz));
      }
    }
    SchreyerLevel<F> next;
    next.elems = std::move(out);
    order_level(next.elems, idx + 1);
    finish_level(next, L.shifts, L.sort_shifts, totals_[idx], L.chains);
    return next;
  }

  FreeModule<F> F0_;
  ModuleOrder O0_;
  std::vector<SchreyerLevel<F>> levels_;
  std::vector<std::vector<Monomial>> totals_;
};

// ---------------------------------------------------------------------------
// Minimalization

/// Removes unit entries by exact row and column operations. Pivots are
/// taken smallest (row, col) first within each differential.
template <CoefficientField F>
ChainComplex<F> minimize(const ChainComplex<F>& C) {
  const auto& R = C.ring();
  const F& k = R->field();
  const std::size_t n = C.maps.size();
  std::vector<Matrix<F>> M;
  for (const auto& d : C.maps) M.push_back(d.matrix);
  // alive[i][b]: basis element b of module i survives
  std::vector<std::vector<bool>> alive;
  for (const auto& m : C.modules) alive.emplace_back(m.rank(), true);

  for (std::size_t lvl = 0; lvl < n; ++lvl) {
    auto& A = M[lvl];  // d_{lvl+1}: modules[lvl+1] -> modules[lvl]
    auto& rows_alive = alive[lvl];
    auto& cols_alive = alive[lvl + 1];
    std::vector<std::vector<std::uint32_t>> row_cols(A.rows());
    std::set<std::pair<std::uint32_t, std::uint32_t>> units;
    for (std::uint32_t c = 0; c < A.cols(); ++c)
      for (const auto& [r, p] : A.column(c)) {
        row_cols[r].push_back(c);
        if (p.is_constant()) units.insert({r, c});
      }
    while (!units.empty()) {
      auto [r, c] = *units.begin();
      units.erase(units.begin());
      if (!rows_alive[r] || !cols_alive[c]) continue;
      auto u = A.entry(r, c);
      if (!u || !u->is_constant()) continue;
      const auto uinv = k.inv(u->lead_coefficient());
      const auto pivot_col = A.column(c);
      for (auto c2 : row_cols[r]) {
        if (c2 == c || !cols_alive[c2]) continue;
        auto a = A.entry(r, c2);
        if (!a) continue;
        auto lambda = a->scale(k.neg(uinv));
        for (const auto& [r2, p] : pivot_col) {
          bool had = A.entry(r2, c2).has_value();
          A.add_to(r2, c2, lambda * p);
          auto e = A.entry(r2, c2);
          if (e && !had) row_cols[r2].push_back(c2);
          if (e && e->is_constant() && rows_alive[r2]) units.insert({r2, c2});
        }
      }
      rows_alive[r] = false;
      cols_alive[c] = false;
    }
  }
  // Rebuild with surviving bases.
  std::vector<FreeModule<F>> mods;
  std::vector<std::vector<std::int64_t>> newidx;
  for (std::size_t i = 0; i < C.modules.size(); ++i) {
    FreeModule<F> m{R, {}};
    std::vector<std::int64_t> idx(C.modules[i].rank(), -1);
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (alive[i][b]) {
        idx[b] = static_cast<std::int64_t>(m.rank());
        m.shifts.push_back(C.modules[i].shifts[b]);
      }
    mods.push_back(std::move(m));
    newidx.push_back(std::move(idx));
  }
  std::vector<ModuleMap<F>> ds;
  for (std::size_t lvl = 0; lvl < n; ++lvl) {
    ModuleMap<F> d(mods[lvl + 1], mods[lvl]);
    for (std::size_t c = 0; c < M[lvl].cols(); ++c) {
      if (newidx[lvl + 1][c] < 0) continue;
      for (const auto& [r, p] : M[lvl].column(c))
        if (newidx[lvl][r] >= 0)
          d.matrix.set(static_cast<std::size_t>(newidx[lvl][r]), static_cast<std::size_t>(newidx[lvl + 1][c]), p);
    }
    ds.push_back(std::move(d));
  }
  while (ds.size() > 1 && ds.back().source.rank() == 0) ds.pop_back();
  return ChainComplex<F>(std::move(ds), false);
}

// ---------------------------------------------------------------------------
// Front ends

template <CoefficientField F>
struct Resolution {
  ChainComplex<F> complex;  // minimal
  BettiTable betti;
};

/// Minimal free resolution of coker(F0 <- columns).
template <CoefficientField F>
Resolution<F> minimal_resolution(const FreeModule<F>& F0, const std::vector<Vec<F>>& columns) {
  SchreyerResolution<F> S(F0, columns);
  auto C = minimize(S.complex());
  auto b = betti_of(C);
  if (!(b == S.betti())) throw Error("internal: minimalization disagrees with constant-part ranks");
  return {std::move(C), std::move(b)};
}

template <CoefficientField F>
FreeModule<F> cyclic_module(const RingPtr<F>& R) {
  return FreeModule<F>{R, {Degree(static_cast<std::size_t>(R->arity()), 0)}};
}

/// Minimal free resolution of R/I.
template <CoefficientField F>
Resolution<F> minimal_resolution(const Ideal<F>& I) {
  std::vector<Vec<F>> cols;
  for (const auto& g : I.gens()) cols.push_back(to_vec(g, 0));
  return minimal_resolution(cyclic_module(I.ring()), cols);
}

/// Minimal free resolution of the cokernel of a map.
template <CoefficientField F>
Resolution<F> minimal_resolution(const ModuleMap<F>& phi) {
  auto O = ModuleOrder::term_over_position(phi.target.rank());
  std::vector<Vec<F>> cols;
  for (std::size_t j = 0; j < phi.source.rank(); ++j) cols.push_back(phi.column_vec(j, O));
  return minimal_resolution(phi.target, cols);
}

/// Betti numbers of R/I only (no explicit minimal complex).
template <CoefficientField F>
BettiTable betti_numbers(const Ideal<F>& I) {
  std::vector<Vec<F>> cols;
  for (const auto& g : I.gens()) cols.push_back(to_vec(g, 0));
  return SchreyerResolution<F>(cyclic_module(I.ring()), cols).betti();
}

struct RegularityReport {
  int reg = 0;
  int reg_x = 0;
  int reg_y = 0;
  int pd = 0;
  int depth = 0;
  int dim = 0;
};

/// Krull dimension of R/I from the lead terms, for any grading.
template <CoefficientField F>
int krull_dimension(const Ideal<F>& I) {
  std::vector<Monomial> leads;
  for (const auto& g : I.groebner()) leads.push_back(g.lead_monomial());
  leads = hilbert::minimalize(std::move(leads));
  const int n = static_cast<int>(I.ring()->nvars());
  if (!leads.empty() && leads[0].is_one()) return -1;
  std::vector<std::uint32_t> sup;
  for (const auto& m : leads) sup.push_back(m.support());
  return n - hilbert::min_cover(sup, n);
}

/// Regularity data from a Betti table. For one grading reg_x = reg and
/// reg_y = 0; for two gradings reg is taken on total degree a + b.
inline RegularityReport regularity_from(const BettiTable& b, int nvars, int dim) {
  RegularityReport r;
  if (b.arity() == 1) {
    r.reg = b.regularity(0);
    r.reg_x = r.reg;
    r.reg_y = 0;
  } else {
    r.reg_x = b.regularity(0);
    r.reg_y = b.regularity(1);
    r.reg = b.collapse([](const Degree& d) { return d[0] + d[1]; }).regularity(0);
  }
  r.pd = b.length();
  r.depth = nvars - r.pd;
  r.dim = dim;
  return r;
}

template <CoefficientField F>
RegularityReport regularity(const Ideal<F>& I) {
  return regularity_from(betti_numbers(I), static_cast<int>(I.ring()->nvars()), krull_dimension(I));
}

/// Lower bound min_i(depth F_i - i) = nvars - (last nonzero index); INT_MAX
/// for the zero complex.
template <CoefficientField F>
int depth_check(const ChainComplex<F>& C) {
  int last = -1;
  for (std::size_t i = 0; i < C.modules.size(); ++i)
    if (C.modules[i].rank() > 0) last = static_cast<int>(i);
  if (last < 0) return INT_MAX;
  return static_cast<int>(C.ring()->nvars()) - last;
}

// ---------------------------------------------------------------------------
// Independent Betti oracle: Koszul homology of the variables on R/I.

namespace detail {

/// Degree-d piece of R/I by linear algebra: a basis of standard monomials
/// and a normal-form map.
template <CoefficientField F>
class QuotientPiece {
 public:
  QuotientPiece(const RingPtr<F>& R, const std::vector<Polynomial<F>>& gens, int d)
      : R_(R), mons_(monomials_of_degree(*R, d)), idx_(reversed(mons_)), E_(R->field()) {
    std::reverse(mons_.begin(), mons_.end());  // largest first: pivots on big monomials
    for (const auto& g : gens) {
      if (g.sort_degree() > d) continue;
      for (const auto& m : monomials_of_degree(*R, d - g.sort_degree()))
        E_.add(to_row(g.mul_term(m, R->field().one()), idx_));
    }
    std::vector<bool> is_piv(mons_.size(), false);
    for (const auto& row : rows_of(E_)) is_piv[row] = true;
    for (std::uint32_t c = 0; c < mons_.size(); ++c)
      if (!is_piv[c]) {
        basis_pos_[c] = static_cast<std::uint32_t>(basis_.size());
        basis_.push_back(c);
      }
  }

  std::size_t dim() const { return basis_.size(); }

  /// Coordinates of c*m in the standard-monomial basis.
  SparseRow<F> coords(const Monomial& m, const typename F::Elem& c) const {
    SparseRow<F> row{{idx_.at(m), c}};
    row = E_.reduce_full(std::move(row));
    SparseRow<F> out;
    for (const auto& [col, v] : row) out.push_back({basis_pos_.at(col), v});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  const Monomial& basis_monomial(std::size_t i) const { return mons_[basis_[i]]; }

 private:
  static MonomialIndex reversed(std::vector<Monomial> ms) {
    std::reverse(ms.begin(), ms.end());
    return MonomialIndex(ms);
  }
  static std::vector<std::uint32_t> rows_of(const linalg::Echelon<F>& E) { return E.pivots(); }

  RingPtr<F> R_;
  std::vector<Monomial> mons_;
  MonomialIndex idx_;
  linalg::Echelon<F> E_;
  std::vector<std::uint32_t> basis_;
  std::unordered_map<std::uint32_t, std::uint32_t> basis_pos_;
};

}  // namespace detail

/// beta_{i,j}(R/I) = dim H_i(K(x_1..x_n) ⊗ R/I)_j, by exact linear algebra
/// only. Needs the standard grading. `max_cells` bounds the rows and columns of each matrix.
template <CoefficientField F>
long tor_oracle(const Ideal<F>& I, int i, int j, std::size_t max_cells = 2'000'000) {
  const auto& R = I.ring();
  if (R->arity() != 1) throw InvalidArgument("Tor oracle needs a singly graded ring");
  for (std::size_t v = 0; v < R->nvars(); ++v)
    if (R->weight(v) != 1) throw InvalidArgument("Tor oracle needs the standard grading");
  const int n = static_cast<int>(R->nvars());
  if (i < 0 || i > n || j < i) return 0;
  auto rank_of_map = [&](int hi) -> std::pair<long, long> {
    // d: K_hi ⊗ (R/I)_{j-hi} -> K_{hi-1} ⊗ (R/I)_{j-hi+1}; returns (dim source, rank)
    if (hi < 0 || hi > n || j - hi < 0) return {0, 0};
    auto subs = subsets(n, hi);
    detail::QuotientPiece<F> src(R, I.gens(), j - hi);
    const long dsrc = static_cast<long>(subs.size() * src.dim());
    if (hi == 0) return {dsrc, 0};
    detail::QuotientPiece<F> tgt(R, I.gens(), j - hi + 1);
    auto tsubs = subsets(n, hi - 1);
    const std::size_t cols = tsubs.size() * tgt.dim();
    if (static_cast<std::size_t>(dsrc) > max_cells || cols > max_cells || cols > UINT32_MAX)
      throw Overflow("Tor oracle matrix too large");
    const auto& k = R->field();
    std::vector<SparseRow<F>> rows;
    for (std::size_t s = 0; s < subs.size(); ++s)
      for (std::size_t b = 0; b < src.dim(); ++b) {
        std::map<std::uint32_t, typename F::Elem> acc;
        const auto& S = subs[s];
        for (std::size_t r = 0; r < S.size(); ++r) {
          auto ts = subset_index(tsubs, without(S, r));
          auto m = src.basis_monomial(b) * R->variable(static_cast<std::size_t>(S[r]));
          auto c = r % 2 ? k.neg(k.one()) : k.one();
          for (const auto& [col, v] : tgt.coords(m, c)) {
            auto key = static_cast<std::uint32_t>(ts * tgt.dim() + col);
            auto it = acc.find(key);
            if (it == acc.end()) acc.emplace(key, v);
            else it->second = k.add(it->second, v);
          }
        }
        SparseRow<F> row;
        for (auto& [key, v] : acc)
          if (!k.is_zero(v)) row.push_back({key, v});
        rows.push_back(std::move(row));
      }
    return {dsrc, static_cast<long>(linalg::rank(k, std::move(rows)))};
  };
  auto [dim_i, rank_i] = rank_of_map(i);
  auto [dim_up, rank_up] = rank_of_map(i + 1);
  (void)dim_up;
  return dim_i - rank_i - rank_up;
}

/// Full Betti table of R/I from the oracle for all j <= jmax.
template <CoefficientField F>
BettiTable tor_oracle_table(const Ideal<F>& I, int jmax) {
  BettiTable t(1);
  const int n = static_cast<int>(I.ring()->nvars());
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= jmax; ++j) t.add(i, Degree{j}, tor_oracle(I, i, j));
  return t;
}

}  // namespace acikit
