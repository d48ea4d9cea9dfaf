#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "acikit/gallery.hpp"
#include "acikit/resolve.hpp"

namespace acikit {

/// Outcome of a sequence test. On failure `index` is the 1-based position
/// where the defining identity breaks and `witness` lies in the larger side
/// but not in <f_1..f_{index-1}>.
template <CoefficientField F>
struct SequenceCheck {
  bool holds = true;
  std::size_t index = 0;
  std::optional<Polynomial<F>> witness;

  explicit operator bool() const { return holds; }
};

namespace detail {

template <CoefficientField F>
void require_homogeneous_sequence(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw InvalidArgument("empty sequence");
  for (const auto& f : fs) {
    require_same_ring(fs[0].ring(), f.ring());
    if (f.is_zero()) throw ZeroPolynomial("sequence contains zero");
    if (!f.is_homogeneous()) throw NotHomogeneous("sequence element is not homogeneous: " + f.to_string());
  }
}

template <CoefficientField F>
Ideal<F> prefix(const std::vector<Polynomial<F>>& fs, std::size_t k) {
  return Ideal<F>(fs[0].ring(), std::vector<Polynomial<F>>(fs.begin(), fs.begin() + static_cast<long>(k)));
}

template <CoefficientField F>
SequenceCheck<F> first_outside(const Ideal<F>& big, const Ideal<F>& small, std::size_t i) {
  for (const auto& g : big.gens())
    if (!small.contains(g)) return {false, i, g};
  return {};
}

}  // namespace detail

/// (<f_1..f_{i-1}> : f_i) = <f_1..f_{i-1}> for every i.
template <CoefficientField F>
SequenceCheck<F> is_regular_sequence(const std::vector<Polynomial<F>>& fs) {
  detail::require_homogeneous_sequence(fs);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto J = detail::prefix(fs, i);
    auto r = detail::first_outside(gb::colon(J, fs[i]), J, i + 1);
    if (!r) return r;
  }
  return {};
}

/// (I_{i-1} : f_i) ∩ I = I_{i-1} for every i, with M = A.
template <CoefficientField F>
SequenceCheck<F> is_d_sequence(const std::vector<Polynomial<F>>& fs) {
  detail::require_homogeneous_sequence(fs);
  auto I = detail::prefix(fs, fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto J = detail::prefix(fs, i);
    auto r = detail::first_outside(gb::intersect(gb::colon(J, fs[i]), I), J, i + 1);
    if (!r) return r;
  }
  return {};
}

/// depth(A/I) as the length of a maximal regular sequence of random linear
/// forms on A/I, for a standard graded A. Independent of any resolution; a
/// form that is a zero divisor only by bad luck would make this too small.
template <CoefficientField F>
int generic_depth(const Ideal<F>& I, std::uint32_t seed = 12345) {
  const auto& R = I.ring();
  if (R->arity() != 1) throw GradeMismatch("generic depth needs a standard graded ring");
  for (std::size_t v = 0; v < R->nvars(); ++v)
    if (R->degree(v)[0] != 1) throw GradeMismatch("generic depth needs a standard graded ring");
  if (I.is_unit()) throw InvalidArgument("depth of the zero ring");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> coef(-20, 20);
  Ideal<F> J = I;
  int depth = 0;
  while (depth < static_cast<int>(R->nvars())) {
    Polynomial<F> l(R);
    for (std::size_t v = 0; v < R->nvars(); ++v) l += Polynomial<F>::variable(R, v) * Polynomial<F>::constant(R, coef(rng));
    if (l.is_zero()) continue;
    if (!J.contains(gb::colon(J, l))) break;
    J = gb::sum(J, Ideal<F>(R, {l}));
    ++depth;
  }
  return depth;
}

struct IdentityCheck {
  int identity = 0;  // 1 or 2
  int i = 0;
  int s = 0;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

/// Identity (1): (<f_1..f_{n-1}> : f_n^s') = (<f_1..f_{n-1}> : f_n), and
/// identity (2): (<f_1..f_{i-1}> + I^s' : f_i) = (<f_1..f_{i-1}> : f_i) + I^{s'-1},
/// for 1 <= s' <= s and every i.
template <CoefficientField F>
IdentityReport dseq_identities(const std::vector<Polynomial<F>>& fs, int s) {
  detail::require_homogeneous_sequence(fs);
  if (s < 1) throw InvalidArgument("dseq_identities needs s >= 1");
  const auto& R = fs[0].ring();
  const std::size_t n = fs.size();
  auto I = detail::prefix(fs, n);
  IdentityReport rep;

  auto Jn = detail::prefix(fs, n - 1);
  auto base = gb::colon(Jn, fs[n - 1]);
  for (int k = 1; k <= s; ++k)
    rep.checks.push_back({1, static_cast<int>(n), k, gb::colon(Jn, fs[n - 1].pow(static_cast<unsigned>(k))) == base});

  std::vector<Ideal<F>> powers{Ideal<F>(R, {Polynomial<F>::constant(R, 1L)})};
  for (int k = 1; k <= s; ++k) powers.push_back(gb::power(I, k));
  for (std::size_t i = 0; i < n; ++i) {
    auto J = detail::prefix(fs, i);
    auto cJ = gb::colon(J, fs[i]);
    for (int k = 1; k <= s; ++k) {
      auto lhs = gb::colon(gb::sum(J, powers[k]), fs[i]);
      auto rhs = gb::sum(cJ, powers[k - 1]);
      rep.checks.push_back({2, static_cast<int>(i + 1), k, lhs == rhs});
    }
  }
  return rep;
}

/// sum d_l - n + (s - 2) d_n. Throws HypothesisViolated when d_n is not a
/// maximal degree unless `strict` is false.
inline int powers_formula(const std::vector<int>& d, int s, int i, bool strict = true) {
  const int n = static_cast<int>(d.size());
  if (n == 0) throw InvalidArgument("no degrees");
  if (s < 2) throw InvalidArgument("powers formula needs s >= 2");
  if (i < 0 || i > n - 1) throw InvalidArgument("powers formula needs 0 <= i <= n - 1");
  int sum = 0, mx = 0;
  for (int x : d) {
    sum += x;
    mx = std::max(mx, x);
  }
  if (strict && d.back() != mx) throw HypothesisViolated("last degree is not maximal");
  return sum - n + (s - 2) * d.back();
}

/// Closed form for the Pfaffian families of order t at power m.
inline int pfaffian_powers_closed_form(int t, int m) {
  if (t < 5) throw InvalidArgument("Pfaffian family needs t >= 5");
  return t % 2 ? ((t - 1) / 2) * (m + 2) - 5 : (t / 2) * (m + 2) - 7;
}

enum class CellStatus { Match, Mismatch, Skipped, HypothesisViolated };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Match:
      return "MATCH";
    case CellStatus::Mismatch:
      return "MISMATCH";
    case CellStatus::Skipped:
      return "SKIPPED";
    case CellStatus::HypothesisViolated:
      return "HYPOTHESIS_VIOLATED";
  }
  return "?";
}

struct PowersCell {
  int s = 0;
  int i = 0;  // -1 for the colon ideal of the second lemma
  int formula = 0;
  std::optional<int> computed;
  CellStatus status = CellStatus::Skipped;
  std::string note;
};

/// Hypotheses of the regularity-of-powers setup, each verified.
struct PowersSetup {
  bool d_sequence = false;
  bool regular_prefix = false;
  bool max_last = false;
  bool reg_inequality = false;
  int reg_quotient = 0;  // reg(A/I)
  int reg_bound = 0;     // sum_{l<n} d_l - n + 1
  std::vector<int> degrees;

  bool holds() const { return d_sequence && regular_prefix && max_last && reg_inequality; }
};

struct PowersReport {
  PowersSetup setup;
  std::vector<PowersCell> cells;
  std::vector<PowersCell> lemma;  // reg(A/((J : f_n) + <f_n^s>))

  bool clean() const {
    for (const auto* v : {&cells, &lemma})
      for (const auto& c : *v)
        if (c.status == CellStatus::Mismatch || c.status == CellStatus::HypothesisViolated) return false;
    return true;
  }
};

template <CoefficientField F>
PowersSetup powers_setup(const std::vector<Polynomial<F>>& fs) {
  detail::require_homogeneous_sequence(fs);
  if (fs[0].ring()->arity() != 1) throw GradeMismatch("powers formula needs a standard-graded ring");
  PowersSetup st;
  for (const auto& f : fs) st.degrees.push_back(f.sort_degree());
  const int n = static_cast<int>(fs.size());
  st.d_sequence = static_cast<bool>(is_d_sequence(fs));
  st.regular_prefix = n == 1 || static_cast<bool>(is_regular_sequence(std::vector<Polynomial<F>>(fs.begin(), fs.end() - 1)));
  st.max_last = *std::max_element(st.degrees.begin(), st.degrees.end()) == st.degrees.back();
  st.reg_quotient = regularity(detail::prefix(fs, fs.size())).reg;
  st.reg_bound = -n + 1;
  for (int l = 0; l + 1 < n; ++l) st.reg_bound += st.degrees[l];
  st.reg_inequality = st.reg_quotient < st.reg_bound;
  return st;
}

namespace detail {

template <CoefficientField F>
void fill_cell(PowersCell& c, const Ideal<F>& Q, bool hypotheses, int slack) {
  try {
    ScopedDegreeCap cap(c.formula + slack);
    c.computed = betti_numbers(Q).regularity();
  } catch (const Overflow& e) {
    c.status = CellStatus::Skipped;
    c.note = e.what();
    return;
  }
  if (*c.computed == c.formula)
    c.status = CellStatus::Match;
  else
    c.status = hypotheses ? CellStatus::Mismatch : CellStatus::HypothesisViolated;
}

}  // namespace detail

/// Compares reg(A/(<f_1..f_i> + I^s)) computed from minimal resolutions with
/// the formula for 2 <= s <= s_max and 0 <= i <= i_max (default n - 1), and
/// checks the colon-ideal lemma for the same s. Resolutions are capped at
/// formula + cap_slack (default nvars + 2); a cell hitting the cap is SKIPPED.
template <CoefficientField F>
PowersReport verify_powers(const std::vector<Polynomial<F>>& fs, int s_max = 3, int i_max = -1, int cap_slack = -1) {
  PowersReport rep;
  rep.setup = powers_setup(fs);
  const int n = static_cast<int>(fs.size());
  if (i_max < 0 || i_max > n - 1) i_max = n - 1;
  if (s_max < 2) throw InvalidArgument("verify_powers needs s_max >= 2");
  const auto& R = fs[0].ring();
  const int slack = cap_slack >= 0 ? cap_slack : static_cast<int>(R->nvars()) + 2;
  const bool hyp = rep.setup.holds();
  auto I = detail::prefix(fs, fs.size());

  auto J = detail::prefix(fs, fs.size() - 1);
  auto cJ = gb::colon(J, fs.back());
  for (int s = 2; s <= s_max; ++s) {
    auto Is = gb::power(I, s);
    for (int i = 0; i <= i_max; ++i) {
      PowersCell c{s, i, powers_formula(rep.setup.degrees, s, i, false), std::nullopt, CellStatus::Skipped, {}};
      detail::fill_cell(c, gb::sum(detail::prefix(fs, static_cast<std::size_t>(i)), Is), hyp, slack);
      rep.cells.push_back(std::move(c));
    }
    PowersCell c{s, -1, powers_formula(rep.setup.degrees, s, 0, false), std::nullopt, CellStatus::Skipped, {}};
    Ideal<F> L(R, {fs.back().pow(static_cast<unsigned>(s))});
    detail::fill_cell(c, gb::sum(cJ, L), hyp, slack);
    rep.lemma.push_back(std::move(c));
  }
  return rep;
}

}  // namespace acikit
