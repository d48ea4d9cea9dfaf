// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "acikit/diagonal.hpp"
#include "acikit/parse.hpp"
#include "acikit/seqcheck.hpp"

using namespace acikit;
using Q = Polynomial<Rationals>;
using P = Polynomial<PrimeField>;
using IdealQ = Ideal<Rationals>;

namespace {

const PrimeField kFp(32003);

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed checks; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) {
      ++passed_;
      return;
    }
    ++failed_;
    if (failed_ <= 3) fails_ += (fails_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome outcome() const {
    std::ostringstream os;
    os << passed_ << "/" << passed_ + failed_ << " checks";
    if (!notes_.empty()) os << "; " << notes_;
    if (failed_) os << "; failed: " << fails_;
    return {failed_ == 0, os.str()};
  }

 private:
  int passed_ = 0, failed_ = 0;
  std::string fails_, notes_;
};

RingPtr<Rationals> ring(std::vector<std::string> vars, std::vector<Degree> degs = {}) {
  return Ring<Rationals>::make({}, std::move(vars), std::move(degs));
}

std::vector<Q> polys(const RingPtr<Rationals>& R, std::initializer_list<const char*> ss) {
  std::vector<Q> out;
  for (auto s : ss) out.push_back(parse_polynomial(R, s));
  return out;
}

std::vector<Q> twisted_cubic() {
  auto R = ring({"a", "b", "c", "d"});
  std::vector<std::vector<Q>> Z = {{parse_polynomial(R, "a"), parse_polynomial(R, "b")},
                                   {parse_polynomial(R, "b"), parse_polynomial(R, "c")},
                                   {parse_polynomial(R, "c"), parse_polynomial(R, "d")}};
  return hilbert_burch_ideal(Z, Q::constant(R, 1L)).fs;
}

std::vector<Q> monomial_example() { return polys(ring({"x1", "x2", "x3", "x4"}), {"x1*x2", "x3*x4", "x2*x3"}); }

std::vector<Q> ci_colon_example() { return polys(ring({"a", "b", "c", "d"}), {"a*c - b^2", "b*d - c^2", "b*c"}); }

BettiTable pfaffian_shape(int t) {
  BettiTable want(1);
  want.add(0, {0});
  const int r = t / 2;
  if (t % 2) {
    want.add(1, {r}, 3);
    want.add(1, {r - 1});
    want.add(2, {2 * r - 1}, t);
    want.add(3, {2 * r}, t - 3);
  } else {
    want.add(1, {r});
    want.add(1, {r - 1}, 3);
    want.add(2, {2 * r - 2}, t);
    want.add(3, {2 * r - 1}, t - 3);
  }
  return want;
}

int top_degree(const BettiTable& b) {
  int j = 0;
  for (const auto& [k, m] : b.entries()) j = std::max(j, k.second[0]);
  return j;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string str(int t) { return "t=" + std::to_string(t); }

Outcome crit_pfaffian_resolutions() {
  Checker c;
  for (int t = 5; t <= 7; ++t) {
    auto g = aci_grade3_ideal<Rationals>(t);
    auto r = minimal_resolution(g.ideal());
    c.expect(r.betti == pfaffian_shape(t), str(t) + " " + r.betti.first_difference(pfaffian_shape(t)));
    c.expect(r.betti.length() == 3, str(t) + " pd");
  }
  return c.outcome();
}

Outcome crit_pfaffian_regularity() {
  Checker c;
  for (int t = 5; t <= 7; ++t) {
    auto rep = regularity(aci_grade3_ideal<Rationals>(t).ideal());
    c.expect(rep.reg == t - 4, str(t) + " reg " + std::to_string(rep.reg));
  }
  return c.outcome();
}

Outcome crit_powers_t5() {
  Checker c;
  auto g = aci_grade3_ideal<Rationals>(5);
  auto rep = verify_powers(g.fs, 3, 2);
  c.expect(rep.setup.holds(), "setup hypotheses");
  int cells = 0;
  for (const auto& cell : rep.cells) {
    if (cell.s < 2) continue;
    ++cells;
    const int want = 2 * (cell.s + 2) - 5;
    c.expect(cell.status == CellStatus::Match, "s=" + std::to_string(cell.s) + " i=" + std::to_string(cell.i) +
                                                   " " + to_string(cell.status));
    c.expect(cell.formula == want && cell.computed == want, "s=" + std::to_string(cell.s) + " value");
  }
  c.expect(cells == 6, "expected 6 cells, got " + std::to_string(cells));
  return c.outcome();
}

Outcome crit_cubic_third_cube() {
  Checker c;
  auto g = cubic_third_ideal<Rationals>();
  auto rep = verify_powers(g.fs, 3, 0);
  const PowersCell* cell = nullptr;
  for (const auto& x : rep.cells)
    if (x.s == 3 && x.i == 0) cell = &x;
  c.expect(cell != nullptr, "no s=3 cell");
  if (cell) {
    c.expect(cell->formula == 7, "formula " + std::to_string(cell->formula));
    c.expect(cell->computed == 8, "computed");
    c.expect(cell->status == CellStatus::HypothesisViolated, to_string(cell->status));
    c.note("computed " + std::to_string(cell->computed.value_or(-1)) + " vs formula " + std::to_string(cell->formula));
  }
  c.expect(!rep.setup.max_last, "max degree is not last");
  return c.outcome();
}

Outcome crit_theorem_vs_direct() {
  Checker c;
  std::vector<std::pair<std::string, std::vector<Q>>> cases = {{"t=5", aci_grade3_ideal<Rationals>(5).fs},
                                                               {"t=6", aci_grade3_ideal<Rationals>(6).fs},
                                                               {"twisted cubic", twisted_cubic()}};
  for (const auto& [name, fs] : cases) {
    auto cmp = compare_resolutions(fs);
    c.expect(cmp.equal, name + " " + cmp.first_difference);
  }
  return c.outcome();
}

Outcome crit_rees_regularity() {
  Checker c;
  for (int t = 5; t <= 6; ++t) {
    auto g = aci_grade3_ideal<Rationals>(t);
    auto th = theorem_resolution(g.fs, true);
    auto rep = regularity_from(th.betti, static_cast<int>(th.ring->nvars()), 0);
    const int r = t / 2;
    const int want_x = t % 2 ? 4 * r - 4 : 4 * r - 6;
    c.expect(rep.reg_y == 0, str(t) + " reg_y " + std::to_string(rep.reg_y));
    c.expect(rep.reg_x == want_x, str(t) + " reg_x " + std::to_string(rep.reg_x));
    c.note(str(t) + " reg_x " + std::to_string(rep.reg_x));
  }
  return c.outcome();
}

Outcome crit_linear_type() {
  Checker c;
  std::vector<std::pair<std::string, std::vector<Q>>> cases = {{"t=5", aci_grade3_ideal<Rationals>(5).fs},
                                                               {"t=6", aci_grade3_ideal<Rationals>(6).fs},
                                                               {"monomial", monomial_example()}};
  for (const auto& [name, fs] : cases) {
    auto data = rees_data(fs);
    c.expect(data.rees.contains(data.sym), name + " Sym in Rees");
    c.expect(data.sym.contains(data.rees), name + " Rees in Sym");
  }
  return c.outcome();
}

template <CoefficientField F>
void check_dsequence(Checker& c, const std::vector<Polynomial<F>>& fs, const std::string& name) {
  c.expect(is_d_sequence(fs).holds, name + " d-sequence");
  c.expect(is_regular_sequence(std::vector<Polynomial<F>>(fs.begin(), fs.end() - 1)).holds, name + " regular prefix");
  auto ids = dseq_identities(fs, 3);
  for (const auto& x : ids.checks)
    c.expect(x.holds, name + " identity " + std::to_string(x.identity) + " i=" + std::to_string(x.i) +
                          " s=" + std::to_string(x.s));
}

Outcome crit_dsequences() {
  Checker c;
  check_dsequence(c, aci_grade3_ideal<Rationals>(5).fs, "t=5");
  check_dsequence(c, aci_grade3_ideal<PrimeField>(6, kFp).fs, "t=6");
  check_dsequence(c, aci_grade3_ideal<PrimeField>(7, kFp).fs, "t=7");
  c.note("t=6,7 over GF(32003)");
  return c.outcome();
}

Outcome crit_tor_oracle() {
  Checker c;
  std::vector<std::pair<std::string, IdealQ>> cases;
  for (int t = 5; t <= 7; ++t) cases.emplace_back(str(t), aci_grade3_ideal<Rationals>(t).ideal());
  auto note = cubic_third_ideal<Rationals>();
  cases.emplace_back("cubic third", note.ideal());
  auto tc = twisted_cubic();
  cases.emplace_back("twisted cubic", IdealQ(tc[0].ring(), tc));
  auto mono = monomial_example();
  cases.emplace_back("monomial", IdealQ(mono[0].ring(), mono));
  for (const auto& [name, I] : cases) {
    auto b = betti_numbers(I);
    c.expect(tor_oracle_table(I, top_degree(b)) == b, name);
  }
  return c.outcome();
}

// C'_1: one S(-sum_K d, -2) per triple; C'_i: S(-sum_K d, -j-2), j < i, per (i+2)-subset.
std::map<Degree, long> br_expected(const std::vector<int>& d, int i) {
  std::map<Degree, long> out;
  const int l = static_cast<int>(d.size());
  for (unsigned mask = 0; mask < (1u << l); ++mask) {
    if (std::popcount(mask) != i + 2) continue;
    int sum = 0;
    for (int k = 0; k < l; ++k)
      if (mask & (1u << k)) sum += d[k];
    for (int j = 0; j < i; ++j) ++out[Degree{sum, j + 2}];
  }
  return out;
}

Outcome crit_structural() {
  Checker c;
  // minimal resolutions of every acceptance ideal
  std::vector<std::pair<std::string, IdealQ>> ideals;
  for (int t = 5; t <= 7; ++t) ideals.emplace_back(str(t), aci_grade3_ideal<Rationals>(t).ideal());
  auto note = cubic_third_ideal<Rationals>();
  ideals.emplace_back("cubic third", note.ideal());
  auto tc = twisted_cubic();
  ideals.emplace_back("twisted cubic", IdealQ(tc[0].ring(), tc));
  auto mono = monomial_example();
  ideals.emplace_back("monomial", IdealQ(mono[0].ring(), mono));
  for (const auto& [name, I] : ideals) {
    auto r = minimal_resolution(I);
    c.expect(r.complex.is_complex(), name + " d^2 = 0");
    c.expect(r.complex.is_minimal(), name + " minimal");
    const int m = static_cast<int>(I.ring()->nvars());
    const int depth = generic_depth(I);
    c.expect(depth + r.betti.length() == m, name + " depth + pd = " + std::to_string(depth + r.betti.length()));
    c.expect(depth_check(r.complex) == depth, name + " depth bound");
  }
  // theorem complexes and direct Rees resolutions
  for (auto fs : {aci_grade3_ideal<Rationals>(5).fs, aci_grade3_ideal<Rationals>(6).fs, tc}) {
    auto th = theorem_resolution(fs, true);
    c.expect(th.complex.is_complex(), "theorem complex d^2 = 0");
    c.expect(th.complex.is_minimal(), "theorem complex minimal");
    auto direct = minimal_resolution(rees_data(fs).rees);
    c.expect(direct.complex.is_complex() && direct.complex.is_minimal(), "direct Rees resolution");
  }
  // Buchsbaum-Rim ranks and shifts, f_j of degree (j, 0) and y_j of degree (j, 1)
  for (int l = 3; l <= 6; ++l) {
    std::vector<std::string> v;
    std::vector<Degree> dg;
    std::vector<int> d;
    for (int j = 1; j <= l; ++j) {
      v.push_back("f" + std::to_string(j));
      dg.push_back({j, 0});
      d.push_back(j);
    }
    for (int j = 1; j <= l; ++j) {
      v.push_back("y" + std::to_string(j));
      dg.push_back({j, 1});
    }
    auto S = ring(v, dg);
    std::vector<Q> f, y;
    for (int j = 0; j < l; ++j) {
      f.push_back(Q::variable(S, static_cast<std::size_t>(j)));
      y.push_back(Q::variable(S, static_cast<std::size_t>(l + j)));
    }
    auto br = buchsbaum_rim(f, y);
    c.expect(br.complex.is_complex(), "BR l=" + std::to_string(l) + " d^2 = 0");
    for (int i = 1; i <= l - 2; ++i) {
      const auto& Ci = br.C(i);
      c.expect(static_cast<long>(Ci.rank()) == i * binom(l, i + 2),
               "BR l=" + std::to_string(l) + " rank C'_" + std::to_string(i));
      std::map<Degree, long> got;
      for (const auto& s : Ci.shifts) ++got[s];
      c.expect(got == br_expected(d, i), "BR l=" + std::to_string(l) + " shifts C'_" + std::to_string(i));
    }
  }
  // pf^2 = det
  for (int t = 4; t <= 7; ++t) {
    SkewMatrix<Rationals> X(t);
    for (int a = 0; a < t; ++a) {
      std::vector<int> rows;
      for (int i = 0; i < t; ++i)
        if (t % 2 == 0 || i != a) rows.push_back(i);
      auto p = X.pfaffian(rows);
      c.expect(p * p == X.determinant(rows), "pf^2 = det t=" + std::to_string(t));
      if (t % 2 == 0) break;
    }
  }
  return c.outcome();
}

Outcome crit_diagonal() {
  Checker c;
  // family constants
  auto tc = twisted_cubic();
  auto info = classify(tc);
  c.expect(info.family == DiagonalFamily::Grade2Linear, "twisted cubic family");
  c.expect(koszul_bound(info.betti, 2, info.family, info.height).c_min == Rational(2, 3), "d/3 at d=2");
  BettiTable cubics(1);
  cubics.add(0, {0});
  cubics.add(1, {3}, 3);
  cubics.add(2, {4}, 2);
  c.expect(koszul_bound(cubics, 3, DiagonalFamily::Grade2Linear).c_min == Rational(1), "d/3 at d=3");
  auto ci = ci_colon_example();
  auto cinfo = classify(ci);
  c.expect(cinfo.family == DiagonalFamily::CiPlusOneA, "ci-plus-one family");
  c.expect(koszul_bound(cinfo.betti, 2, cinfo.family, cinfo.height).c_min == Rational(1), "(n-1)d/n n=2 d=2");
  c.expect(koszul_bound(cubics, 3, DiagonalFamily::CiPlusOneB, 3).c_min == Rational(2), "(n-1)d/n n=3 d=3");
  // CM threshold, hand-evaluated
  struct CmCase {
    std::vector<int> degs;
    int m, e, want;
  };
  for (const auto& x : std::vector<CmCase>{{{1, 2, 2, 2}, 7, 1, 6},
                                           {{1, 2, 2, 2}, 7, 2, 8},
                                           {{2, 2, 2, 3}, 12, 1, 7},
                                           {{2, 2, 2}, 4, 3, 8},
                                           {{1, 1, 1}, 3, 1, 2}})
    c.expect(cm_bound(x.degs, x.m, x.e).threshold == x.want, "cm threshold m=" + std::to_string(x.m));
  // shift inequality on equigenerated standard-bigraded Rees resolutions
  for (const auto& [name, fs, want] : std::vector<std::tuple<std::string, std::vector<Q>, Rational>>{
           {"twisted cubic", tc, Rational(2, 3)}, {"monomial", monomial_example(), Rational(2, 3)},
           {"ci-plus-one", ci, Rational(1)}}) {
    auto st = minimal_resolution(standard_bigraded(rees_data(fs))).betti;
    c.expect(shift_c_min(st) == want, name + " shift c_min " + rational_string(shift_c_min(st)));
    auto bm = b_max(st);
    for (std::size_t h = 1; h < bm.size(); ++h) c.expect(bm[h] <= static_cast<int>(h), name + " b_max");
    c.expect(!shift_criterion(st, DiagonalSpec(1, 1)).has_value(), name + " Delta(1,1)");
  }
  // the t = 5 Pfaffian standard bigraded resolution
  auto g5 = aci_grade3_ideal<Rationals>(5);
  try {
    auto st = minimal_resolution(standard_bigraded(rees_data(g5.fs))).betti;
    c.expect(!shift_criterion(st, DiagonalSpec(2, 1)).has_value(), "t=5 shift inequality");
  } catch (const Error& e) {
    c.expect(false, std::string("t=5 standard bigrading: ") + e.what() + " (generator degrees 1,2,2,2)");
  }
  return c.outcome();
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pfaffian Betti shapes t=5,6,7", crit_pfaffian_resolutions},
      {"pfaffian regularity t-4", crit_pfaffian_regularity},
      {"powers t=5 s=2..3 i=0..2", crit_powers_t5},
      {"cubic third ideal at s=3", crit_cubic_third_cube},
      {"theorem resolution equals direct", crit_theorem_vs_direct},
      {"Rees regularity reg_x and reg_y", crit_rees_regularity},
      {"linear type Sym = Rees", crit_linear_type},
      {"d-sequences and identities s<=3", crit_dsequences},
      {"Tor oracle equals Betti tables", crit_tor_oracle},
      {"structural invariants", crit_structural},
      {"diagonal bounds", crit_diagonal},
  };
  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[n].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", n + 1, criteria[n].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
