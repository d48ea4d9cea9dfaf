#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "acikit/rees.hpp"
#include "acikit/seqcheck.hpp"

namespace acikit {

using Rational = mpq_class;

inline std::string rational_string(const Rational& q) {
  Rational r(q);
  r.canonicalize();
  return r.get_str();
}

struct DiagonalSpec {
  int c = 0;
  int e = 0;

  DiagonalSpec(int c_, int e_) : c(c_), e(e_) {
    if (c < 0 || e < 0) throw InvalidArgument("diagonal needs c, e >= 0");
    if (c == 0 && e == 0) throw InvalidArgument("diagonal (0,0) is not allowed");
  }
};

/// Families with a closed-form Koszul constant.
enum class DiagonalFamily {
  Unrecognized,
  Aci,            // mu = ht + 1 with a d-sequence and regular prefix, nothing more
  Grade2,         // perfect of grade 2, three generators
  Grade2Linear,   // ... equigenerated in degree d > 1 and linearly presented
  Grade2Degree1,  // ... generated in degree 1
  Pfaffian,       // the grade 3 Pfaffian family of order t
  CiPlusOneA,     // (J : f_{n+1}) perfect of grade 2, equigenerated, linearly presented
  CiPlusOneB,     // (J : f_{n+1}) Gorenstein of grade 3, equigenerated, linearly presented
};

inline const char* to_string(DiagonalFamily f) {
  switch (f) {
    case DiagonalFamily::Unrecognized:
      return "unrecognized";
    case DiagonalFamily::Aci:
      return "aci";
    case DiagonalFamily::Grade2:
      return "grade2-perfect";
    case DiagonalFamily::Grade2Linear:
      return "grade2-linear";
    case DiagonalFamily::Grade2Degree1:
      return "grade2-degree1";
    case DiagonalFamily::Pfaffian:
      return "pfaffian-grade3";
    case DiagonalFamily::CiPlusOneA:
      return "ci-plus-one-grade2";
    case DiagonalFamily::CiPlusOneB:
      return "ci-plus-one-gorenstein3";
  }
  return "?";
}

struct KoszulBound {
  int d = 0;
  int pd = 0;
  Rational gamma;      // max (t_{i+1} - d)/(i+1)
  Rational gamma_alt;  // max (t_{i+1} + d)/(i+1)
  Rational case1;      // d
  Rational generic;    // max(gamma, d)
  Rational c_min;      // family constant when one applies, else generic
  bool family_constant = false;
};

/// Koszul bound on c from the Betti table of B/I for an ideal generated in
/// degree d. `n` is the height, used by the CI-plus-one families.
inline KoszulBound koszul_bound(const BettiTable& b, int d, DiagonalFamily family = DiagonalFamily::Unrecognized,
                                int n = 0) {
  if (b.arity() != 1) throw GradeMismatch("koszul bound needs the singly graded table of B/I");
  if (d < 1) throw InvalidArgument("generator degree must be positive");
  for (const auto& [s, m] : b.step(1))
    if (s[0] != d) throw InvalidArgument("koszul bound needs an equigenerated ideal; found degree " +
                                         std::to_string(s[0]) + " besides " + std::to_string(d));
  KoszulBound k;
  k.d = d;
  k.pd = b.length();
  bool any = false;
  for (int i = 1; i + 1 <= k.pd; ++i) {
    const int t = b.t(i + 1);
    Rational g(t - d, i + 1), ga(t + d, i + 1);
    g.canonicalize();
    ga.canonicalize();
    if (!any || g > k.gamma) k.gamma = g;
    if (!any || ga > k.gamma_alt) k.gamma_alt = ga;
    any = true;
  }
  k.case1 = d;
  k.generic = any ? std::max(k.gamma, k.case1) : k.case1;
  k.c_min = k.generic;
  switch (family) {
    case DiagonalFamily::Grade2Linear:
      k.c_min = Rational(d, 3);
      k.family_constant = true;
      break;
    case DiagonalFamily::Grade2Degree1:
      k.c_min = 0;
      k.family_constant = true;
      break;
    case DiagonalFamily::CiPlusOneA:
    case DiagonalFamily::CiPlusOneB:
      if (n < 1) throw InvalidArgument("height needed for the CI-plus-one constant");
      k.c_min = Rational((n - 1) * d, n);
      k.family_constant = true;
      break;
    default:
      break;
  }
  k.c_min.canonicalize();
  return k;
}

struct CmBound {
  int d = 0, u = 0, m = 0, d1 = 0, e = 0;
  int alpha = 0, beta = 0, de = 0;
  int threshold = 0;  // clears when c > threshold
};

/// alpha = min{(e-1)d + u - m, e(u - m)}, beta = min{(e-1)d + u - d_1, e(u - d_1)},
/// threshold max{alpha, beta, de} with d the largest and d_1 the first degree.
inline CmBound cm_bound(const std::vector<int>& degrees, int m, int e) {
  if (degrees.empty()) throw InvalidArgument("no generator degrees");
  if (e <= 0) throw InvalidArgument("cm bound needs e > 0");
  CmBound r;
  r.m = m;
  r.e = e;
  r.d1 = degrees.front();
  for (int x : degrees) {
    r.d = std::max(r.d, x);
    r.u += x;
  }
  r.alpha = std::min((e - 1) * r.d + r.u - m, e * (r.u - m));
  r.beta = std::min((e - 1) * r.d + r.u - r.d1, e * (r.u - r.d1));
  r.de = r.d * e;
  r.threshold = std::max({r.alpha, r.beta, r.de});
  return r;
}

/// Shifts (a, b) of the y-weighted bigrading (deg y_j = (d,1)) moved to the
/// standard bigrading (deg y_j = (0,1)).
inline BettiTable standard_shifts(const BettiTable& natural, int d) {
  if (natural.arity() != 2) throw GradeMismatch("standard shifts need a bigraded table");
  BettiTable out(2);
  for (const auto& [k, m] : natural.entries()) out.add(k.first, Degree{k.second[0] - d * k.second[1], k.second[1]}, m);
  return out;
}

/// The Rees ideal re-graded with deg x_i = (1,0), deg y_j = (0,1). Throws
/// NotHomogeneous when a generator is not bihomogeneous there, which happens
/// as soon as the ideal is not equigenerated.
template <CoefficientField F>
Ideal<F> standard_bigraded(const ReesData<F>& data) {
  const auto& S = data.big;
  std::vector<Degree> degs;
  const std::size_t m = data.base->nvars();
  for (std::size_t i = 0; i < S->nvars(); ++i) degs.push_back(i < m ? Degree{1, 0} : Degree{0, 1});
  auto T = Ring<F>::make(S->field(), S->variables(), degs, S->order());
  std::vector<Polynomial<F>> gens;
  for (const auto& g : data.rees.gens()) {
    auto h = detail::rename_into(g, T);
    if (!h.is_homogeneous())
      throw NotHomogeneous("Rees generator is not bihomogeneous in the standard bigrading: " + h.to_string());
    gens.push_back(std::move(h));
  }
  return Ideal<F>(T, std::move(gens));
}

/// First shift (step i, (a, b)) breaking max{a/c, b/e} <= i + 1, if any.
/// With c = 0 (or e = 0) the coordinate must vanish.
struct ShiftViolation {
  int step = 0;
  Degree shift;
};

inline std::optional<ShiftViolation> shift_criterion(const BettiTable& b, const DiagonalSpec& D) {
  if (b.arity() != 2) throw GradeMismatch("shift criterion needs a bigraded table");
  for (const auto& [k, m] : b.entries()) {
    const int i = k.first;
    if (i < 1) continue;
    const int a = k.second[0], bb = k.second[1];
    bool ok_a = D.c == 0 ? a <= 0 : a <= (i + 1) * D.c;
    bool ok_b = D.e == 0 ? bb <= 0 : bb <= (i + 1) * D.e;
    if (!ok_a || !ok_b) return ShiftViolation{i, k.second};
  }
  return std::nullopt;
}

/// Smallest c with a/c <= i + 1 at every shift of the table.
inline Rational shift_c_min(const BettiTable& b) {
  Rational best = 0;
  for (const auto& [k, m] : b.entries()) {
    if (k.first < 1) continue;
    Rational q(k.second[0], k.first + 1);
    q.canonicalize();
    best = std::max(best, q);
  }
  return best;
}

/// Largest y-shift per step.
inline std::vector<int> b_max(const BettiTable& b) {
  std::vector<int> out(static_cast<std::size_t>(b.length()) + 1, 0);
  for (int i = 0; i <= b.length(); ++i) out[i] = b.step(i).empty() ? 0 : b.t(i, 1);
  return out;
}

template <CoefficientField F>
struct FamilyInfo {
  DiagonalFamily family = DiagonalFamily::Unrecognized;
  int height = 0;
  int mu = 0;
  std::optional<int> common_degree;
  BettiTable betti{1};
};

namespace detail {

inline std::optional<int> common_degree(const std::vector<int>& d) {
  for (int x : d)
    if (x != d.front()) return std::nullopt;
  return d.front();
}

inline bool linearly_presented(const BettiTable& b, int d) {
  for (const auto& [s, m] : b.step(2))
    if (s[0] != d + 1) return false;
  return true;
}

template <CoefficientField F>
bool is_pfaffian_family(const std::vector<Polynomial<F>>& fs) {
  const auto& R = fs[0].ring();
  const int nv = static_cast<int>(R->nvars());
  for (int t = 5; 3 * (t - 3) + (t - 3) * (t - 4) / 2 <= nv; ++t) {
    if (3 * (t - 3) + (t - 3) * (t - 4) / 2 != nv) continue;
    auto g = aci_grade3_ideal<F>(t, R->field());
    if (g.ring->variables() != R->variables()) return false;
    std::vector<Polynomial<F>> mine;
    for (const auto& f : fs) mine.push_back(rename_into(f, g.ring));
    return Ideal<F>(g.ring, mine) == g.ideal();
  }
  return false;
}

}  // namespace detail

/// Structural recognition of the in-scope families; each test is computed.
template <CoefficientField F>
FamilyInfo<F> classify(const std::vector<Polynomial<F>>& fs) {
  detail::require_homogeneous_sequence(fs);
  FamilyInfo<F> info;
  const auto& R = fs[0].ring();
  auto I = Ideal<F>(R, fs);
  info.betti = betti_numbers(I);
  info.height = height(fs);
  info.mu = static_cast<int>(info.betti.rank(1));
  std::vector<int> d;
  for (const auto& f : fs) d.push_back(f.sort_degree());
  info.common_degree = detail::common_degree(d);
  const int n = info.height;
  if (info.mu != static_cast<int>(fs.size()) || info.mu != n + 1) return info;
  if (n == 2 && info.betti.length() == 2) {
    info.family = DiagonalFamily::Grade2;
    if (info.common_degree == 1)
      info.family = DiagonalFamily::Grade2Degree1;
    else if (info.common_degree && detail::linearly_presented(info.betti, *info.common_degree))
      info.family = DiagonalFamily::Grade2Linear;
    return info;
  }
  if (n == 3 && detail::is_pfaffian_family(fs)) {
    info.family = DiagonalFamily::Pfaffian;
    return info;
  }
  std::vector<Polynomial<F>> head(fs.begin(), fs.end() - 1);
  if (!is_regular_sequence(head)) return info;
  if (info.common_degree) {
    auto Jp = gb::colon(Ideal<F>(R, head), fs.back());
    auto gens = gb::minimal_generators(Jp);
    std::vector<int> dp;
    for (const auto& g : gens) dp.push_back(g.sort_degree());
    auto cd = detail::common_degree(dp);
    if (cd) {
      auto bp = betti_numbers(Jp);
      const int hp = height(gens);
      if (detail::linearly_presented(bp, *cd)) {
        if (hp == 2 && bp.length() == 2) {
          info.family = DiagonalFamily::CiPlusOneA;
          return info;
        }
        if (hp == 3 && bp.length() == 3 && bp.rank(3) == 1) {
          info.family = DiagonalFamily::CiPlusOneB;
          return info;
        }
      }
    }
  }
  if (is_d_sequence(fs)) info.family = DiagonalFamily::Aci;
  return info;
}

struct DiagonalReport {
  std::string family;
  bool verified_hypotheses = false;  // false means UNVERIFIED_HYPOTHESES
  bool cm_rees = false;
  int rees_depth = 0;
  int rees_dim = 0;
  std::optional<KoszulBound> koszul;
  std::string koszul_note;
  CmBound cm;
  int c = 0, e = 0;
  bool clears_koszul = false;
  bool clears_cm = false;
};

/// Both bounds for fs along D, with the Cohen-Macaulayness of the Rees
/// algebra computed from the depth of its minimal resolution.
template <CoefficientField F>
DiagonalReport diagonal_report(const std::vector<Polynomial<F>>& fs, const DiagonalSpec& D) {
  auto info = classify(fs);
  DiagonalReport r;
  r.family = to_string(info.family);
  r.verified_hypotheses = info.family != DiagonalFamily::Unrecognized;
  r.c = D.c;
  r.e = D.e;

  auto data = rees_data(fs);
  auto res = betti_numbers(data.rees);
  r.rees_depth = static_cast<int>(data.big->nvars()) - res.length();
  r.rees_dim = krull_dimension(data.rees);
  r.cm_rees = r.rees_depth == r.rees_dim;

  if (info.common_degree) {
    r.koszul = koszul_bound(info.betti, *info.common_degree, info.family, info.height);
    r.clears_koszul = info.family == DiagonalFamily::Grade2Degree1 || (D.e > 0 && Rational(D.c) >= r.koszul->c_min);
  } else {
    r.koszul_note = "not equigenerated; no Koszul bound";
  }
  std::vector<int> d;
  for (const auto& f : fs) d.push_back(f.sort_degree());
  const int m = static_cast<int>(fs[0].ring()->nvars());
  if (D.e > 0) {
    r.cm = cm_bound(d, m, D.e);
    r.clears_cm = D.c > r.cm.threshold;
  }
  return r;
}

}  // namespace acikit
