#pragma once

#include <map>
#include <string>
#include <vector>

#include "acikit/resolve.hpp"

namespace acikit {

/// An ordered generator sequence f_1..f_n with its degrees.
template <CoefficientField F>
struct GeneratorSequence {
  RingPtr<F> ring;
  std::vector<Polynomial<F>> fs;
  std::string name;

  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& f : fs) d.push_back(f.sort_degree());
    return d;
  }
  Ideal<F> ideal() const { return Ideal<F>(ring, fs); }
};

/// The t x t skew-symmetric matrix with a zero 3 x 3 upper-left block and
/// generic entries x_ij elsewhere (i < j, 1-based names).
template <CoefficientField F>
class SkewMatrix {
 public:
  SkewMatrix(int t, F field = F{}) : t_(t) {
    if (t < 4) throw InvalidArgument("skew matrix needs order >= 4");
    std::vector<std::string> vars;
    for (int i = 1; i <= t; ++i)
      for (int j = i + 1; j <= t; ++j)
        if (j > 3) vars.push_back(name(i, j));
    ring_ = Ring<F>::make(std::move(field), vars);
  }

  int order() const { return t_; }
  const RingPtr<F>& ring() const { return ring_; }

  static std::string name(int i, int j) {
    // two-digit indices get an underscore so names stay unambiguous
    if (i < 10 && j < 10) return "x" + std::to_string(i) + std::to_string(j);
    return "x" + std::to_string(i) + "_" + std::to_string(j);
  }

  /// Entry (i, j), 0-based.
  Polynomial<F> entry(int i, int j) const {
    if (i == j || (i < 3 && j < 3)) return Polynomial<F>(ring_);
    if (i > j) return -entry(j, i);
    return Polynomial<F>::variable(ring_, *ring_->index_of(name(i + 1, j + 1)));
  }

  /// Pfaffian of the principal submatrix on `rows` (0-based, increasing),
  /// expanded along the first row with sign (-1)^j.
  Polynomial<F> pfaffian(const std::vector<int>& rows) const {
    if (rows.size() % 2) throw InvalidArgument("Pfaffian of an odd-order matrix");
    std::uint32_t mask = 0;
    for (int r : rows) mask |= 1u << r;
    return pf(mask);
  }

  /// Pfaffian with the listed rows and columns (1-based) removed.
  Polynomial<F> pfaffian_without(const std::vector<int>& removed) const {
    std::vector<int> rows;
    for (int i = 0; i < t_; ++i)
      if (std::find(removed.begin(), removed.end(), i + 1) == removed.end()) rows.push_back(i);
    return pfaffian(rows);
  }

  /// Determinant of the principal submatrix on `rows`, by Laplace expansion.
  Polynomial<F> determinant(const std::vector<int>& rows) const {
    std::map<std::uint32_t, Polynomial<F>> memo;
    std::vector<int> cols = rows;
    // expand along successive rows; the mask records used columns
    auto rec = [&](auto&& self, std::size_t r, std::uint32_t used) -> Polynomial<F> {
      if (r == rows.size()) return Polynomial<F>::constant(ring_, 1L);
      if (auto it = memo.find(used); it != memo.end()) return it->second;
      Polynomial<F> acc(ring_);
      int sign = 1;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (used & (1u << c)) continue;
        auto e = entry(rows[r], cols[c]);
        if (!e.is_zero()) {
          auto sub = self(self, r + 1, used | (1u << c));
          acc += sign > 0 ? e * sub : -(e * sub);
        }
        sign = -sign;
      }
      memo.emplace(used, acc);
      return acc;
    };
    return rec(rec, 0, 0);
  }

 private:
  Polynomial<F> pf(std::uint32_t mask) const {
    if (mask == 0) return Polynomial<F>::constant(ring_, 1L);
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    int first = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1u << first);
    Polynomial<F> acc(ring_);
    int pos = 0;  // position of j among the remaining rows, so sign (-1)^pos
    for (std::uint32_t b = rest; b; b &= b - 1, ++pos) {
      int j = __builtin_ctz(b);
      auto e = entry(first, j);
      if (e.is_zero()) continue;
      auto sub = pf(rest & ~(1u << j));
      acc += pos % 2 ? -(e * sub) : e * sub;
    }
    memo_.emplace(mask, acc);
    return acc;
  }

  int t_;
  RingPtr<F> ring_;
  mutable std::map<std::uint32_t, Polynomial<F>> memo_;
};

/// Grade-3 almost complete intersection of type t-3 generated by Pfaffians
/// of the zero-block skew matrix, in d-sequence order: odd t gives
/// (pf_123, pf_1, pf_2, pf_3) and even t gives (pf_12, pf_13, pf_23, pf),
/// where the subscript lists the removed rows.
template <CoefficientField F>
GeneratorSequence<F> aci_grade3_ideal(int t, F field = F{}) {
  if (t < 5) throw InvalidArgument("Pfaffian ACI family needs t >= 5");
  SkewMatrix<F> X(t, std::move(field));
  GeneratorSequence<F> g{X.ring(), {}, "pfaffian-aci t=" + std::to_string(t)};
  if (t % 2) {
    g.fs = {X.pfaffian_without({1, 2, 3}), X.pfaffian_without({1}), X.pfaffian_without({2}),
            X.pfaffian_without({3})};
  } else {
    g.fs = {X.pfaffian_without({1, 2}), X.pfaffian_without({1, 3}), X.pfaffian_without({2, 3}),
            X.pfaffian_without({})};
  }
  return g;
}

/// The t = 6 ideal in the order where the cubic is third:
/// (pf_13, pf_23, pf, pf_12).
template <CoefficientField F>
GeneratorSequence<F> cubic_third_ideal(F field = F{}) {
  SkewMatrix<F> X(6, std::move(field));
  return {X.ring(),
          {X.pfaffian_without({1, 3}), X.pfaffian_without({2, 3}), X.pfaffian_without({}), X.pfaffian_without({1, 2})},
          "pfaffian-aci t=6 cubic third"};
}

/// Height of the ideal generated by fs (any grading).
template <CoefficientField F>
int height(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) return 0;
  const auto& R = fs[0].ring();
  int dim = krull_dimension(Ideal<F>(R, fs));
  return dim < 0 ? static_cast<int>(R->nvars()) : static_cast<int>(R->nvars()) - dim;
}

/// 3 x 2 matrix entries Z[i][j] (0-based) and a multiplier z give
/// f_1 = -z(z21 z32 - z22 z31), f_2 = z(z11 z32 - z12 z31), f_3 = -z(z11 z22 - z12 z21).
/// The columns of Z are then syzygies of (f_1, f_2, f_3).
template <CoefficientField F>
GeneratorSequence<F> hilbert_burch_ideal(const std::vector<std::vector<Polynomial<F>>>& Z, const Polynomial<F>& z) {
  if (Z.size() != 3 || Z[0].size() != 2 || Z[1].size() != 2 || Z[2].size() != 2)
    throw InvalidArgument("Hilbert-Burch matrix must be 3 x 2");
  if (z.is_zero()) throw ZeroPolynomial("multiplier must be nonzero");
  const auto& R = z.ring();
  auto minor = [&](int a, int b) { return Z[a][0] * Z[b][1] - Z[a][1] * Z[b][0]; };
  std::vector<Polynomial<F>> minors{minor(1, 2), minor(0, 2), minor(0, 1)};
  for (const auto& m : minors)
    if (m.is_zero()) throw GradeMismatch("a maximal minor vanishes");
  if (height(minors) < 2) throw GradeMismatch("maximal minors do not have grade 2");
  GeneratorSequence<F> g{R, {-(z * minors[0]), z * minors[1], -(z * minors[2])}, "hilbert-burch"};
  for (const auto& f : g.fs)
    if (!f.is_homogeneous()) throw NotHomogeneous("Hilbert-Burch generators are not homogeneous");
  return g;
}

/// J + <g> for a regular sequence J_gens, with g not in J.
template <CoefficientField F>
GeneratorSequence<F> ci_plus_one(const std::vector<Polynomial<F>>& J_gens, const Polynomial<F>& g) {
  if (J_gens.empty()) throw InvalidArgument("empty complete intersection");
  const auto& R = J_gens[0].ring();
  require_same_ring(R, g.ring());
  if (height(J_gens) != static_cast<int>(J_gens.size()))
    throw GradeMismatch("the given generators are not a regular sequence");
  Ideal<F> J(R, J_gens);
  if (J.contains(g)) throw InvalidArgument("the added element lies in J, so the ideal is not an ACI");
  auto fs = J_gens;
  fs.push_back(g);
  return {R, fs, "ci-plus-one"};
}

/// Betti shapes printed for the two families of the CI-plus-one section:
/// the mapping-cone resolution of B/I and the bigraded Rees resolution.
/// `gorenstein` selects the grade-3 Gorenstein colon case, otherwise the
/// grade-2 perfect colon case; n is the height, d the common degree, dp
/// the generator degree of J' = J : f_{n+1} and mu its number of generators.
struct DisplayShapes {
  BettiTable base{1};
  BettiTable rees{2};
};

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline DisplayShapes ci_plus_one_display(int n, int d, int dp, int mu, bool gorenstein) {
  if (n < 2 || d < 1 || dp < 1 || mu < 2) throw InvalidArgument("display parameters out of range");
  DisplayShapes s;
  s.base.add(0, {0});
  s.base.add(1, {d}, n + 1);
  // Koszul part of B/J shifted by one step plus the colon resolution.
  for (int i = 2; i <= n; ++i) s.base.add(i, {i * d}, binomial(n, i));
  s.base.add(2, {dp + d}, mu);
  if (gorenstein) {
    s.base.add(3, {dp + d + 1}, mu);
    s.base.add(4, {2 * dp + d + 1}, 1);
  } else {
    s.base.add(3, {dp + d + 1}, mu - 1);
  }
  // Rees: F' part S(-a, -1) from steps >= 2 of the base, plus C'_{i-1}.
  s.rees.add(0, {0, 0});
  for (const auto& [k, m] : s.base.entries())
    if (k.first >= 2) s.rees.add(k.first - 1, {k.second[0], 1}, m);
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 0; j < i; ++j) s.rees.add(i + 1, {(i + 2) * d, j + 2}, binomial(n + 1, i + 2));
  return s;
}

}  // namespace acikit
