#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acikit/groebner.hpp"

namespace acikit {

/// A graded free module: basis element k has degree shifts[k], i.e. the
/// module is the sum of R(-shifts[k]).
template <CoefficientField F>
struct FreeModule {
  RingPtr<F> ring;
  std::vector<Degree> shifts;

  std::size_t rank() const { return shifts.size(); }
  int sort_shift(std::size_t k) const { return ring->sort_weight(shifts[k]); }
  std::vector<int> sort_shifts() const {
    std::vector<int> s;
    for (std::size_t k = 0; k < rank(); ++k) s.push_back(sort_shift(k));
    return s;
  }
  bool operator==(const FreeModule& o) const {
    return ring->same_as(*o.ring) && shifts == o.shifts;
  }
};

inline Degree degree_sub(const Degree& a, const Degree& b) {
  Degree r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Degree degree_add(const Degree& a, const Degree& b) {
  Degree r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Sparse polynomial matrix stored by columns, rows increasing.
template <CoefficientField F>
class Matrix {
 public:
  using Poly = Polynomial<F>;
  using Column = std::vector<std::pair<std::uint32_t, Poly>>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  const Column& column(std::size_t j) const { return cols_[j]; }
  Column& column(std::size_t j) { return cols_[j]; }

  std::optional<Poly> entry(std::size_t i, std::size_t j) const {
    for (const auto& [r, p] : cols_[j])
      if (r == i) return p;
    return std::nullopt;
  }

  /// Sets an entry; a zero polynomial erases it.
  void set(std::size_t i, std::size_t j, Poly p) {
    auto& c = cols_[j];
    auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != c.end() && it->first == i) {
      if (p.is_zero()) c.erase(it);
      else it->second = std::move(p);
    } else if (!p.is_zero()) {
      c.insert(it, {static_cast<std::uint32_t>(i), std::move(p)});
    }
  }

  void add_to(std::size_t i, std::size_t j, const Poly& p) {
    if (p.is_zero()) return;
    if (auto e = entry(i, j)) set(i, j, *e + p);
    else set(i, j, p);
  }

  void push_column(Column c) { cols_.push_back(std::move(c)); }

  bool is_zero() const {
    for (const auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> cols_;
};

/// A homogeneous map of free modules.
template <CoefficientField F>
struct ModuleMap {
  FreeModule<F> source;
  FreeModule<F> target;
  Matrix<F> matrix;

  ModuleMap() = default;
  ModuleMap(FreeModule<F> src, FreeModule<F> tgt)
      : source(std::move(src)), target(std::move(tgt)), matrix(target.rank(), source.rank()) {}

  /// Entry (i, j) must have degree source[j] - target[i].
  void validate() const {
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      for (const auto& [i, p] : matrix.column(j)) {
        auto want = degree_sub(source.shifts[j], target.shifts[i]);
        if (p.multidegree() != want)
          throw NotHomogeneous("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                               ") = " + p.to_string() + " has the wrong degree");
      }
  }

  bool is_zero() const { return matrix.is_zero(); }

  /// True when some entry is a nonzero constant.
  bool has_unit_entry() const {
    for (std::size_t j = 0; j < matrix.cols(); ++j)
      for (const auto& [i, p] : matrix.column(j))
        if (p.is_constant()) return true;
    return false;
  }

  /// Image of basis column j as a module vector in the given order.
  Vec<F> column_vec(std::size_t j, const ModuleOrder& O, std::uint32_t offset = 0) const {
    Vec<F> v;
    for (const auto& [i, p] : matrix.column(j))
      for (const auto& t : p.terms()) v.push_back({t.mono, static_cast<std::uint32_t>(i + offset), t.coef});
    vec_normalize(v, *target.ring, O);
    return v;
  }
};

/// this ∘ B: first B, then A.
template <CoefficientField F>
ModuleMap<F> compose(const ModuleMap<F>& A, const ModuleMap<F>& B) {
  if (A.source.rank() != B.target.rank()) throw InvalidArgument("maps do not compose");
  ModuleMap<F> C(B.source, A.target);
  const auto& R = A.target.ring;
  for (std::size_t j = 0; j < B.matrix.cols(); ++j) {
    std::vector<Polynomial<F>> acc(A.target.rank(), Polynomial<F>(R));
    for (const auto& [k, b] : B.matrix.column(j))
      for (const auto& [i, a] : A.matrix.column(k)) acc[i] += a * b;
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (!acc[i].is_zero()) C.matrix.set(i, j, std::move(acc[i]));
  }
  return C;
}

template <CoefficientField F>
ModuleMap<F> negate(ModuleMap<F> A) {
  for (std::size_t j = 0; j < A.matrix.cols(); ++j)
    for (auto& [i, p] : A.matrix.column(j)) p = -p;
  return A;
}

/// A - B for maps with equal shapes.
template <CoefficientField F>
ModuleMap<F> subtract(const ModuleMap<F>& A, const ModuleMap<F>& B) {
  ModuleMap<F> C = A;
  for (std::size_t j = 0; j < B.matrix.cols(); ++j)
    for (const auto& [i, p] : B.matrix.column(j)) C.matrix.add_to(i, j, -p);
  return C;
}

/// Sequence of maps d_i: modules[i] -> modules[i-1], stored as maps[i-1].
template <CoefficientField F>
struct ChainComplex {
  std::vector<FreeModule<F>> modules;
  std::vector<ModuleMap<F>> maps;

  ChainComplex() = default;
  /// Builds from maps d_1, d_2, ...; checks composability and d∘d = 0
  /// unless `check` is false.
  explicit ChainComplex(std::vector<ModuleMap<F>> ds, bool check = true) : maps(std::move(ds)) {
    if (maps.empty()) throw InvalidArgument("complex needs at least one map");
    modules.push_back(maps[0].target);
    for (const auto& d : maps) modules.push_back(d.source);
    for (std::size_t i = 1; i < maps.size(); ++i)
      if (maps[i].target.rank() != maps[i - 1].source.rank())
        throw InvalidArgument("consecutive maps do not compose");
    if (check && !is_complex()) throw Error("d∘d is not zero");
  }

  const RingPtr<F>& ring() const { return modules[0].ring; }
  /// Largest index with a nonzero module.
  std::size_t length() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < modules.size(); ++i)
      if (modules[i].rank() > 0) n = i;
    return n;
  }
  const ModuleMap<F>& d(std::size_t i) const { return maps.at(i - 1); }

  bool is_complex() const {
    for (std::size_t i = 1; i < maps.size(); ++i)
      if (!compose(maps[i - 1], maps[i]).is_zero()) return false;
    return true;
  }

  void validate() const {
    for (const auto& d : maps) d.validate();
  }

  bool is_minimal() const {
    for (const auto& d : maps)
      if (d.has_unit_entry()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Exterior algebra bases

/// Increasing k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

inline std::size_t subset_index(const std::vector<std::vector<int>>& basis, const std::vector<int>& s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  if (it == basis.end() || *it != s) throw InvalidArgument("subset not in basis");
  return static_cast<std::size_t>(it - basis.begin());
}

inline std::vector<int> without(const std::vector<int>& s, std::size_t r) {
  std::vector<int> t = s;
  t.erase(t.begin() + static_cast<long>(r));
  return t;
}

/// Koszul complex on fs: step k has basis e_S for increasing k-subsets S,
/// with d(e_S) = sum_r (-1)^r f_{s_r} e_{S - s_r}.
template <CoefficientField F>
ChainComplex<F> koszul_complex(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw InvalidArgument("Koszul complex of an empty sequence");
  const auto& R = fs[0].ring();
  const int n = static_cast<int>(fs.size());
  std::vector<Degree> deg;
  for (const auto& f : fs) {
    if (f.is_zero()) throw ZeroPolynomial("Koszul complex needs nonzero elements");
    deg.push_back(f.multidegree());
  }
  const Degree zero(static_cast<std::size_t>(R->arity()), 0);
  std::vector<FreeModule<F>> mods;
  std::vector<std::vector<std::vector<int>>> bases;
  for (int k = 0; k <= n; ++k) {
    bases.push_back(subsets(n, k));
    FreeModule<F> M{R, {}};
    for (const auto& s : bases.back()) {
      Degree d = zero;
      for (int i : s) d = degree_add(d, deg[static_cast<std::size_t>(i)]);
      M.shifts.push_back(d);
    }
    mods.push_back(std::move(M));
  }
  std::vector<ModuleMap<F>> ds;
  for (int k = 1; k <= n; ++k) {
    ModuleMap<F> d(mods[k], mods[k - 1]);
    for (std::size_t j = 0; j < bases[k].size(); ++j) {
      const auto& S = bases[k][j];
      for (std::size_t r = 0; r < S.size(); ++r) {
        auto row = subset_index(bases[k - 1], without(S, r));
        d.matrix.set(row, j, r % 2 ? -fs[S[r]] : fs[S[r]]);
      }
    }
    ds.push_back(std::move(d));
  }
  return ChainComplex<F>(std::move(ds));
}

// ---------------------------------------------------------------------------
// Buchsbaum-Rim complex of the 2 x l matrix [f; y]

/// Basis element (K, j) of C'_i: K an (i+2)-subset, j = 0..i-1.
struct BRBasis {
  std::vector<int> K;
  int j;
};

/// C'_i basis, K-major.
inline std::vector<BRBasis> br_basis(int l, int i) {
  std::vector<BRBasis> out;
  for (const auto& K : subsets(l, i + 2))
    for (int j = 0; j < i; ++j) out.push_back({K, j});
  return out;
}

inline std::size_t br_index(int l, int i, const std::vector<int>& K, int j) {
  auto ks = subsets(l, i + 2);
  return subset_index(ks, K) * static_cast<std::size_t>(i) + static_cast<std::size_t>(j);
}

/// Data of the Buchsbaum-Rim complex: G <- F <- C'_1 <- ... <- C'_{l-2}.
template <CoefficientField F>
struct BuchsbaumRim {
  ChainComplex<F> complex;  // modules: G, F, C'_1, ..., C'_{l-2}
  int l = 0;
  const FreeModule<F>& C(int i) const { return complex.modules.at(static_cast<std::size_t>(i) + 1); }
  const ModuleMap<F>& sigma(int i) const { return complex.d(static_cast<std::size_t>(i) + 1); }
  const ModuleMap<F>& epsilon() const { return complex.d(2); }
  const ModuleMap<F>& psi() const { return complex.d(1); }
};

/// Buchsbaum-Rim complex of psi = [f_1..f_l; y_1..y_l] over a bigraded ring
/// where deg f_j = (d_j, 0) and deg y_j = (d_j, 1). C'_i has shifts
/// (sum_K d, j + 2).
template <CoefficientField F>
BuchsbaumRim<F> buchsbaum_rim(const std::vector<Polynomial<F>>& fs, const std::vector<Polynomial<F>>& ys) {
  const int l = static_cast<int>(fs.size());
  if (l < 3) throw InvalidArgument("Buchsbaum-Rim complex needs l >= 3");
  if (ys.size() != fs.size()) throw InvalidArgument("need one Rees variable per generator");
  const auto& R = fs[0].ring();
  if (R->arity() != 2) throw InvalidArgument("Buchsbaum-Rim complex lives over a bigraded ring");
  std::vector<int> d;
  for (int j = 0; j < l; ++j) {
    auto df = fs[j].multidegree();
    auto dy = ys[j].multidegree();
    if (df[1] != 0 || dy != Degree{df[0], 1})
      throw InvalidArgument("need deg f_j = (d_j, 0) and deg y_j = (d_j, 1)");
    d.push_back(df[0]);
  }
  FreeModule<F> G{R, {{0, 1}, {0, 0}}};
  FreeModule<F> Fm{R, {}};
  for (int j = 0; j < l; ++j) Fm.shifts.push_back({d[j], 1});
  std::vector<FreeModule<F>> C(static_cast<std::size_t>(l - 1));
  for (int i = 1; i <= l - 2; ++i) {
    C[i] = FreeModule<F>{R, {}};
    for (const auto& b : br_basis(l, i)) {
      int s = 0;
      for (int k : b.K) s += d[k];
      C[i].shifts.push_back({s, b.j + 2});
    }
  }
  std::vector<ModuleMap<F>> ds;
  ModuleMap<F> psi(Fm, G);
  for (int j = 0; j < l; ++j) {
    psi.matrix.set(0, j, fs[j]);
    psi.matrix.set(1, j, ys[j]);
  }
  ds.push_back(std::move(psi));
  // epsilon(e_K) = sum over 2-subsets m of K: sgn(m, K - m) det(psi_m) e_{K - m}
  ModuleMap<F> eps(C[1], Fm);
  auto triples = subsets(l, 3);
  for (std::size_t c = 0; c < triples.size(); ++c) {
    const auto& K = triples[c];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int rest = 3 - a - b;
        int sign = ((a + b - 1) % 2) ? -1 : 1;
        auto det = fs[K[a]] * ys[K[b]] - fs[K[b]] * ys[K[a]];
        eps.matrix.add_to(static_cast<std::size_t>(K[rest]), c, sign > 0 ? det : -det);
      }
  }
  ds.push_back(std::move(eps));
  for (int i = 2; i <= l - 2; ++i) {
    ModuleMap<F> s(C[i], C[i - 1]);
    auto basis = br_basis(l, i);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& [K, j] = basis[c];
      for (std::size_t r = 0; r < K.size(); ++r) {
        auto Kr = without(K, r);
        const bool neg = r % 2;
        if (i - 1 - j >= 1) {
          auto row = br_index(l, i - 1, Kr, j);
          s.matrix.add_to(row, c, neg ? -fs[K[r]] : fs[K[r]]);
        }
        if (j >= 1) {
          auto row = br_index(l, i - 1, Kr, j - 1);
          s.matrix.add_to(row, c, neg ? -ys[K[r]] : ys[K[r]]);
        }
      }
    }
    ds.push_back(std::move(s));
  }
  return BuchsbaumRim<F>{ChainComplex<F>(std::move(ds)), l};
}

// ---------------------------------------------------------------------------
// Lifting through a map

/// Solves phi(x) = w for columns w, using a Groebner basis of the graph
/// module generated by (phi(e_j); e_j) with the target block eliminated.
template <CoefficientField F>
class Lifter {
 public:
  explicit Lifter(const ModuleMap<F>& phi)
      : phi_(phi),
        nt_(static_cast<std::uint32_t>(phi.target.rank())),
        order_(make_order(phi)),
        gb_(phi.target.ring, order_, shifts(phi), std::numeric_limits<int>::max()) {
    for (std::size_t j = 0; j < phi.source.rank(); ++j) {
      auto v = phi.column_vec(j, order_);
      v.push_back({Monomial{}, nt_ + static_cast<std::uint32_t>(j), phi.target.ring->field().one()});
      gb_.add_generator(std::move(v));
    }
  }

  /// A preimage of w (a target vector), or nullopt if w is not in the image.
  std::optional<Vec<F>> try_lift(const Vec<F>& w) {
    const auto& R = *phi_.target.ring;
    if (w.empty()) return Vec<F>{};
    const int d = w[0].mono.degree() + gb_.shifts()[w[0].comp];
    auto rem = reduce_vec(w, gb_.compute_to(d), R, order_, true);
    Vec<F> x;
    for (const auto& t : rem) {
      if (t.comp < nt_) return std::nullopt;
      x.push_back({t.mono, t.comp - nt_, R.field().neg(t.coef)});
    }
    return x;
  }

  /// Lifts a column given as polynomials indexed by target rows.
  std::vector<Polynomial<F>> lift(const std::vector<Polynomial<F>>& column) {
    Vec<F> w;
    for (std::size_t i = 0; i < column.size(); ++i)
      for (const auto& t : column[i].terms()) w.push_back({t.mono, static_cast<std::uint32_t>(i), t.coef});
    vec_normalize(w, *phi_.target.ring, order_);
    auto x = try_lift(w);
    if (!x) throw LiftFailed("column is not in the image of the map");
    std::vector<Polynomial<F>> out(phi_.source.rank(), Polynomial<F>(phi_.target.ring));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = vec_component(*x, static_cast<std::uint32_t>(j), phi_.target.ring);
    return out;
  }

 private:
  static ModuleOrder make_order(const ModuleMap<F>& phi) {
    std::vector<std::uint32_t> blocks(phi.target.rank(), 0);
    blocks.resize(phi.target.rank() + phi.source.rank(), 1);
    return ModuleOrder::blocks(std::move(blocks));
  }
  static std::vector<int> shifts(const ModuleMap<F>& phi) {
    auto s = phi.target.sort_shifts();
    auto t = phi.source.sort_shifts();
    s.insert(s.end(), t.begin(), t.end());
    return s;
  }

  const ModuleMap<F>& phi_;
  std::uint32_t nt_;
  ModuleOrder order_;
  ModuleGB<F> gb_;
};

/// Lifts the identity in degrees 0 and 1 to a chain map nu: K -> Fres
/// with Fres.d(i) ∘ nu_i = nu_{i-1} ∘ K.d(i). Returns nu_0, nu_1, ...
template <CoefficientField F>
std::vector<ModuleMap<F>> lift_chain_map(const ChainComplex<F>& K, const ChainComplex<F>& Fres) {
  if (K.modules[1].rank() != Fres.modules[1].rank() || K.modules[0].rank() != Fres.modules[0].rank())
    throw InvalidArgument("complexes differ in degrees 0 and 1");
  std::vector<ModuleMap<F>> nu;
  for (std::size_t i = 0; i < 2; ++i) {
    ModuleMap<F> id(K.modules[i], Fres.modules[i]);
    for (std::size_t j = 0; j < K.modules[i].rank(); ++j)
      id.matrix.set(j, j, Polynomial<F>::constant(K.ring(), 1L));
    nu.push_back(std::move(id));
  }
  for (std::size_t i = 2; i < K.modules.size(); ++i) {
    ModuleMap<F> n(K.modules[i], i < Fres.modules.size() ? Fres.modules[i] : FreeModule<F>{K.ring(), {}});
    auto target = compose(nu[i - 1], K.d(i));  // columns to lift through Fres.d(i)
    if (i >= Fres.modules.size() || Fres.modules[i].rank() == 0) {
      if (!target.is_zero()) throw LiftFailed("resolution ends before the Koszul complex does");
      nu.push_back(std::move(n));
      continue;
    }
    Lifter<F> L(Fres.d(i));
    for (std::size_t j = 0; j < target.matrix.cols(); ++j) {
      std::vector<Polynomial<F>> col(target.target.rank(), Polynomial<F>(K.ring()));
      for (const auto& [r, p] : target.matrix.column(j)) col[r] = p;
      auto x = L.lift(col);
      for (std::size_t r = 0; r < x.size(); ++r)
        if (!x[r].is_zero()) n.matrix.set(r, j, std::move(x[r]));
    }
    nu.push_back(std::move(n));
  }
  return nu;
}

/// alpha_i: C'_i -> F'_{i+1} for i = 1..l-2, with
/// alpha_i(K, 0) = (-1)^{i-1} sum_r (-1)^r y_{K_r} nu'_{i+1}(e_{K - K_r}) and
/// alpha_i(K, j) = 0 for j >= 1. `nu` is already base changed to S and
/// `Fp[i]` is the module F'_i.
template <CoefficientField F>
std::vector<ModuleMap<F>> alpha_maps(const BuchsbaumRim<F>& br, const std::vector<ModuleMap<F>>& nu,
                                     const std::vector<FreeModule<F>>& Fp,
                                     const std::vector<Polynomial<F>>& ys) {
  const int l = br.l;
  std::vector<ModuleMap<F>> alpha(1);  // index 0 unused
  for (int i = 1; i <= l - 2; ++i) {
    const auto& target = static_cast<std::size_t>(i + 1) < Fp.size() ? Fp[i + 1] : FreeModule<F>{br.complex.ring(), {}};
    ModuleMap<F> a(br.C(i), target);
    if (target.rank() > 0) {
      const auto& nui = nu.at(static_cast<std::size_t>(i + 1));
      auto sets = subsets(l, i + 1);
      auto basis = br_basis(l, i);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& [K, j] = basis[c];
        if (j != 0) continue;
        for (std::size_t r = 0; r < K.size(); ++r) {
          auto src = subset_index(sets, without(K, r));
          bool neg = ((r + static_cast<std::size_t>(i) - 1) % 2) == 1;
          for (const auto& [row, p] : nui.matrix.column(src)) {
            auto term = ys[K[r]] * p;
            a.matrix.add_to(row, c, neg ? -term : term);
          }
        }
      }
    }
    alpha.push_back(std::move(a));
  }
  return alpha;
}

/// Mapping cone of alpha: C' -> F' resolving the Rees algebra:
/// position 1 is F'_2 with delta_1 = [y] ∘ phi'_2, position k >= 2 is
/// F'_{k+1} + C'_{k-1} with delta_k = [[phi'_{k+1}, alpha_{k-1}], [0, -sigma_{k-1}]].
/// `Fres` is the base-changed resolution of B/I with shifts already twisted.
template <CoefficientField F>
ChainComplex<F> mapping_cone(const ChainComplex<F>& Fres, const BuchsbaumRim<F>& br,
                             const std::vector<ModuleMap<F>>& alpha, const std::vector<Polynomial<F>>& ys) {
  const auto& S = br.complex.ring();
  const int l = br.l;
  auto Fmod = [&](std::size_t i) {
    return i < Fres.modules.size() ? Fres.modules[i] : FreeModule<F>{S, {}};
  };
  auto Cmod = [&](int i) { return (i >= 1 && i <= l - 2) ? br.C(i) : FreeModule<F>{S, {}}; };
  auto Fd = [&](std::size_t i) -> std::optional<ModuleMap<F>> {
    if (i >= 1 && i <= Fres.maps.size()) return Fres.d(i);
    return std::nullopt;
  };
  auto cone = [&](std::size_t k) {
    FreeModule<F> M = Fmod(k + 1);
    if (k >= 2) {
      auto c = Cmod(static_cast<int>(k) - 1);
      M.shifts.insert(M.shifts.end(), c.shifts.begin(), c.shifts.end());
    }
    return M;
  };
  const std::size_t top = std::max(Fres.modules.size(), static_cast<std::size_t>(l));
  std::vector<ModuleMap<F>> ds;
  // delta_1 = [y_1..y_l] phi'_2
  FreeModule<F> S0{S, {Degree(2, 0)}};
  ModuleMap<F> d1(cone(1), S0);
  if (auto phi2 = Fd(2)) {
    for (std::size_t j = 0; j < phi2->matrix.cols(); ++j) {
      Polynomial<F> acc(S);
      for (const auto& [r, p] : phi2->matrix.column(j)) acc += ys[r] * p;
      if (!acc.is_zero()) d1.matrix.set(0, j, std::move(acc));
    }
  }
  ds.push_back(std::move(d1));
  for (std::size_t k = 2; k <= top; ++k) {
    auto src = cone(k), tgt = cone(k - 1);
    if (src.rank() == 0) break;
    ModuleMap<F> d(src, tgt);
    const std::size_t nF = Fmod(k + 1).rank(), nFt = Fmod(k).rank();
    if (auto phi = Fd(k + 1))
      for (std::size_t j = 0; j < phi->matrix.cols(); ++j)
        for (const auto& [r, p] : phi->matrix.column(j)) d.matrix.set(r, j, p);
    const int ci = static_cast<int>(k) - 1;
    if (ci >= 1 && ci <= l - 2) {
      const auto& a = alpha.at(static_cast<std::size_t>(ci));
      for (std::size_t j = 0; j < a.matrix.cols(); ++j)
        for (const auto& [r, p] : a.matrix.column(j)) d.matrix.set(r, nF + j, p);
      if (ci >= 2) {
        const auto& s = br.sigma(ci);
        for (std::size_t j = 0; j < s.matrix.cols(); ++j)
          for (const auto& [r, p] : s.matrix.column(j)) d.matrix.set(nFt + r, nF + j, -p);
      }
    }
    ds.push_back(std::move(d));
  }
  return ChainComplex<F>(std::move(ds));
}

// ---------------------------------------------------------------------------
// Base change

/// Maps polynomials of B into S, matching variables by name.
template <CoefficientField F>
class Embedding {
 public:
  Embedding(RingPtr<F> B, RingPtr<F> S) : B_(std::move(B)), S_(std::move(S)) {
    for (std::size_t i = 0; i < B_->nvars(); ++i) {
      auto j = S_->index_of(B_->var(i));
      if (!j) throw RingMismatch("variable " + B_->var(i) + " missing in target ring");
      map_.push_back(*j);
    }
  }
  Polynomial<F> operator()(const Polynomial<F>& f) const {
    std::vector<Term<F>> ts;
    std::vector<int> ex(S_->nvars());
    for (const auto& t : f.terms()) {
      std::fill(ex.begin(), ex.end(), 0);
      for (std::size_t i = 0; i < map_.size(); ++i) ex[map_[i]] = t.mono[i];
      ts.push_back({S_->monomial(ex), t.coef});
    }
    return Polynomial<F>::from_terms(S_, std::move(ts));
  }
  const RingPtr<F>& target() const { return S_; }

 private:
  RingPtr<F> B_, S_;
  std::vector<std::size_t> map_;
};

/// Base change of a map; shifts are transformed by `regrade`.
template <CoefficientField F>
ModuleMap<F> base_change(const ModuleMap<F>& A, const Embedding<F>& E,
                         const std::function<Degree(const Degree&)>& src_shift,
                         const std::function<Degree(const Degree&)>& tgt_shift) {
  FreeModule<F> s{E.target(), {}}, t{E.target(), {}};
  for (const auto& d : A.source.shifts) s.shifts.push_back(src_shift(d));
  for (const auto& d : A.target.shifts) t.shifts.push_back(tgt_shift(d));
  ModuleMap<F> B(s, t);
  for (std::size_t j = 0; j < A.matrix.cols(); ++j)
    for (const auto& [i, p] : A.matrix.column(j)) B.matrix.set(i, j, E(p));
  return B;
}

}  // namespace acikit
