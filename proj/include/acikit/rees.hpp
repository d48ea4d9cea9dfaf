#pragma once

#include <string>
#include <vector>

#include "acikit/gallery.hpp"
#include "acikit/homology.hpp"
#include "acikit/resolve.hpp"

namespace acikit {

/// Syzygies of (f_1..f_l) as columns of a map into F_1 = sum R(-deg f_j),
/// read off a Groebner basis of the graph module with the f-block eliminated.
template <CoefficientField F>
ModuleMap<F> syzygy_map(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw InvalidArgument("no generators");
  const auto& R = fs[0].ring();
  const auto l = static_cast<std::uint32_t>(fs.size());
  FreeModule<F> F1{R, {}};
  std::vector<int> shifts{0};
  std::vector<std::uint32_t> block{0};
  for (const auto& f : fs) {
    require_same_ring(R, f.ring());
    if (f.is_zero()) throw ZeroPolynomial("zero generator");
    if (!f.is_homogeneous()) throw NotHomogeneous("generator is not homogeneous");
    F1.shifts.push_back(f.multidegree());
    shifts.push_back(f.sort_degree());
    block.push_back(1);
  }
  auto O = ModuleOrder::blocks(block);
  ModuleGB<F> gb(R, O, shifts, default_degree_cap.load());
  for (std::uint32_t j = 0; j < l; ++j) {
    auto v = to_vec(fs[j], 0);
    v.push_back({Monomial{}, j + 1, R->field().one()});
    vec_normalize(v, *R, O);
    gb.add_generator(std::move(v));
  }
  FreeModule<F> G{R, {}};
  std::vector<std::vector<Polynomial<F>>> cols;
  for (const auto& b : gb.basis()) {
    if (b[0].comp == 0) continue;
    std::vector<Polynomial<F>> col;
    for (std::uint32_t j = 0; j < l; ++j) col.push_back(vec_component(b, j + 1, R));
    G.shifts.push_back(degree_add(R->multidegree(b[0].mono), F1.shifts[b[0].comp - 1]));
    cols.push_back(std::move(col));
  }
  ModuleMap<F> Z(G, F1);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r)
      if (!cols[c][r].is_zero()) Z.matrix.set(r, c, cols[c][r]);
  return Z;
}

/// Minimal free resolution of B/I whose first map is exactly [f_1 .. f_l].
/// The f_j must minimally generate I.
template <CoefficientField F>
ChainComplex<F> resolution_with_generators(const std::vector<Polynomial<F>>& fs) {
  const auto& R = fs.at(0).ring();
  auto Z = syzygy_map(fs);
  ModuleMap<F> phi1(Z.target, cyclic_module(R));
  for (std::size_t j = 0; j < fs.size(); ++j) phi1.matrix.set(0, j, fs[j]);
  std::vector<ModuleMap<F>> maps{phi1};
  if (Z.source.rank() > 0) {
    auto r = minimal_resolution(Z);
    if (!(r.complex.modules[0] == Z.target))
      throw InvalidArgument("generators are not minimal");
    for (auto& m : r.complex.maps) maps.push_back(m);
  }
  ChainComplex<F> C(std::move(maps));
  if (!C.is_minimal()) throw InvalidArgument("generators are not minimal");
  return C;
}

/// B[y_1..y_l] with deg x_i = (1,0) and deg y_j = (d_j,1).
template <CoefficientField F>
RingPtr<F> rees_ring(const RingPtr<F>& B, const std::vector<int>& degrees) {
  if (B->arity() != 1) throw GradeMismatch("base ring must be singly graded");
  for (std::size_t i = 0; i < B->nvars(); ++i)
    if (B->degree(i)[0] != 1) throw GradeMismatch("base ring must be standard graded");
  std::string prefix = "y";
  auto clashes = [&](const std::string& p) {
    for (std::size_t j = 1; j <= degrees.size(); ++j)
      if (B->index_of(p + std::to_string(j))) return true;
    return false;
  };
  while (clashes(prefix)) prefix += "y";
  auto vars = B->variables();
  std::vector<Degree> degs(vars.size(), Degree{1, 0});
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    vars.push_back(prefix + std::to_string(j + 1));
    degs.push_back({degrees[j], 1});
  }
  return Ring<F>::make(B->field(), vars, degs, B->order());
}

namespace detail {

/// Re-expresses f in the ring T by variable name; f must not use variables
/// missing from T.
template <CoefficientField F>
Polynomial<F> rename_into(const Polynomial<F>& f, const RingPtr<F>& T) {
  const auto& R = f.ring();
  std::vector<std::optional<std::size_t>> map;
  for (std::size_t i = 0; i < R->nvars(); ++i) map.push_back(T->index_of(R->var(i)));
  std::vector<Term<F>> ts;
  std::vector<int> ex(T->nvars());
  for (const auto& t : f.terms()) {
    std::fill(ex.begin(), ex.end(), 0);
    for (std::size_t i = 0; i < R->nvars(); ++i) {
      if (!t.mono[i]) continue;
      if (!map[i]) throw RingMismatch("variable " + R->var(i) + " missing in target ring");
      ex[*map[i]] = t.mono[i];
    }
    ts.push_back({T->monomial(ex), t.coef});
  }
  return Polynomial<F>::from_terms(T, std::move(ts));
}

}  // namespace detail

/// Defining ideal of Sym(I) in S: [y_1..y_l] times the syzygies of f.
template <CoefficientField F>
Ideal<F> sym_ideal(const std::vector<Polynomial<F>>& fs, const RingPtr<F>& S) {
  auto Z = syzygy_map(fs);
  Embedding<F> E(fs[0].ring(), S);
  const std::size_t y0 = S->nvars() - fs.size();
  std::vector<Polynomial<F>> gens;
  for (std::size_t c = 0; c < Z.matrix.cols(); ++c) {
    Polynomial<F> g(S);
    for (const auto& [r, p] : Z.matrix.column(c)) g += Polynomial<F>::variable(S, y0 + r) * E(p);
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return Ideal<F>(S, std::move(gens));
}

/// Kernel of S -> B[t], y_j -> t f_j. The elimination runs in
/// K[t, x, y] with deg t = (0,1), deg x = (1,0), deg y_j = (d_j,1), so each
/// y_j - t f_j is bihomogeneous of degree (d_j,1).
template <CoefficientField F>
Ideal<F> rees_ideal(const std::vector<Polynomial<F>>& fs, const RingPtr<F>& S) {
  std::string tname = "t";
  while (S->index_of(tname)) tname += "t";
  std::vector<std::string> vars{tname};
  std::vector<Degree> degs{{0, 1}};
  for (std::size_t i = 0; i < S->nvars(); ++i) {
    vars.push_back(S->var(i));
    degs.push_back(S->degree(i));
  }
  auto T = Ring<F>::make(S->field(), vars, degs, S->order());
  const std::size_t y0 = 1 + S->nvars() - fs.size();
  auto t = Polynomial<F>::variable(T, 0);
  std::vector<Polynomial<F>> gens;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    auto g = Polynomial<F>::variable(T, y0 + j) - t * detail::rename_into(fs[j], T);
    if (!g.is_homogeneous()) throw NotHomogeneous("elimination generator is not bihomogeneous");
    gens.push_back(std::move(g));
  }
  auto K = gb::eliminate(Ideal<F>(T, std::move(gens)), {0});
  std::vector<Polynomial<F>> out;
  for (const auto& g : K.gens()) out.push_back(detail::rename_into(g, S));
  return Ideal<F>(S, std::move(out));
}

/// Rees and symmetric algebra data of an ideal given by ordered generators.
template <CoefficientField F>
struct ReesData {
  RingPtr<F> base;
  RingPtr<F> big;
  std::vector<Polynomial<F>> gens;
  Ideal<F> rees;
  Ideal<F> sym;
  bool linear_type = false;
};

template <CoefficientField F>
ReesData<F> rees_data(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw InvalidArgument("no generators");
  const auto& B = fs[0].ring();
  std::vector<int> d;
  for (const auto& f : fs) d.push_back(f.sort_degree());
  auto S = rees_ring(B, d);
  auto sym = sym_ideal(fs, S);
  auto rees = rees_ideal(fs, S);
  if (!rees.contains(sym)) throw Error("internal: symmetric ideal not contained in the Rees ideal");
  bool lt = sym.contains(rees);
  return {B, S, fs, std::move(rees), std::move(sym), lt};
}

/// Output of the mapping-cone construction.
template <CoefficientField F>
struct TheoremResolution {
  ChainComplex<F> complex;
  BettiTable betti{2};
  RingPtr<F> ring;
  ChainComplex<F> base;  // resolution of B/I with first map [f]
  int pd_base = 0;
  int pd_predicted = 0;  // n if pd(B/I) = n, else pd(B/I) - 1
  std::string label;     // "Rees" or "Sym" depending on linear type
};

/// Mapping cone of alpha: C' -> F' for an ideal with mu = grade + 1.
/// `linear_type` only selects the label; without it the cone resolves Sym(I).
template <CoefficientField F>
TheoremResolution<F> theorem_resolution(const std::vector<Polynomial<F>>& fs, bool linear_type) {
  if (fs.size() < 3) throw InvalidArgument("the construction needs at least three generators");
  const auto& B = fs[0].ring();
  const int l = static_cast<int>(fs.size());
  const int n = l - 1;
  const int ht = height(fs);
  if (ht != n)
    throw GradeMismatch("grade is " + std::to_string(ht) + " but " + std::to_string(l) + " generators need grade " +
                        std::to_string(n));
  auto Fres = resolution_with_generators(fs);
  std::vector<int> d;
  for (const auto& f : fs) d.push_back(f.sort_degree());
  auto S = rees_ring(B, d);
  Embedding<F> E(B, S);
  auto lift1 = [](const Degree& a) { return Degree{a[0], 1}; };
  std::vector<ModuleMap<F>> maps;
  for (const auto& m : Fres.maps) maps.push_back(base_change(m, E, lift1, lift1));
  ChainComplex<F> Fp(maps);
  std::vector<Polynomial<F>> fS, ys;
  for (int j = 0; j < l; ++j) {
    fS.push_back(E(fs[j]));
    ys.push_back(Polynomial<F>::variable(S, S->nvars() - static_cast<std::size_t>(l - j)));
  }
  auto K = koszul_complex(fs);
  auto nu = lift_chain_map(K, Fres);
  std::vector<ModuleMap<F>> nuS;
  auto keep = [](const Degree& a) { return Degree{a[0], 0}; };
  for (const auto& m : nu) nuS.push_back(base_change(m, E, keep, keep));
  auto br = buchsbaum_rim(fS, ys);
  auto alpha = alpha_maps(br, nuS, Fp.modules, ys);
  auto cone = mapping_cone(Fp, br, alpha, ys);
  cone.validate();
  if (!cone.is_minimal()) throw Error("internal: mapping cone has a unit entry");
  const int pdB = static_cast<int>(Fres.length());
  TheoremResolution<F> out{cone, betti_of(cone), S, Fres, pdB, pdB == n ? n : pdB - 1,
                           linear_type ? "Rees" : "Sym"};
  return out;
}

/// Result of comparing the mapping cone with a direct resolution.
struct ResolutionComparison {
  bool equal = false;
  std::string first_difference;
  BettiTable theorem{2};
  BettiTable direct{2};
  bool linear_type = false;
};

/// Compares the Betti table of the mapping cone with the minimal resolution
/// of the elimination Rees ideal.
template <CoefficientField F>
ResolutionComparison compare_resolutions(const std::vector<Polynomial<F>>& fs) {
  auto data = rees_data(fs);
  auto thm = theorem_resolution(fs, data.linear_type);
  ResolutionComparison c;
  c.linear_type = data.linear_type;
  c.theorem = thm.betti;
  c.direct = minimal_resolution(data.rees).betti;
  c.first_difference = c.theorem.first_difference(c.direct);
  c.equal = c.first_difference.empty();
  return c;
}

}  // namespace acikit
