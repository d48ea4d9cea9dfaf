#pragma once

#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "acikit/groebner.hpp"

namespace acikit {

template <CoefficientField F>
class Ideal;

namespace detail {

template <CoefficientField F>
struct GBCache {
  std::once_flag once;
  std::vector<Polynomial<F>> basis;
  ReducerSet<F> reducers;
  ModuleOrder order = ModuleOrder::term_over_position(1);
};

template <CoefficientField F>
std::vector<Polynomial<F>> vecs_to_polys(const std::vector<Vec<F>>& vs, const RingPtr<F>& R,
                                         std::uint32_t comp = 0) {
  std::vector<Polynomial<F>> out;
  for (const auto& v : vs) {
    std::vector<Term<F>> ts;
    for (const auto& t : v)
      if (t.comp == comp) ts.push_back({t.mono, t.coef});
    out.push_back(Polynomial<F>::from_sorted_terms(R, std::move(ts)));
  }
  return out;
}

}  // namespace detail

/// A homogeneous ideal given by generators, with its reduced Groebner basis
/// for the ring's own order computed once on demand.
template <CoefficientField F>
class Ideal {
 public:
  using Poly = Polynomial<F>;

  explicit Ideal(RingPtr<F> ring, std::vector<Poly> gens = {})
      : ring_(std::move(ring)), cache_(std::make_shared<detail::GBCache<F>>()) {
    for (auto& g : gens) {
      require_same_ring(g.ring(), ring_);
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) throw NotHomogeneous("ideal generator is not homogeneous: " + g.to_string());
      gens_.push_back(std::move(g));
    }
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }

  /// Reduced, monic Groebner basis in the ring order, increasing leads.
  const std::vector<Poly>& groebner() const {
    ensure();
    return cache_->basis;
  }

  Poly normal_form(const Poly& f) const {
    require_same_ring(f.ring(), ring_);
    ensure();
    auto r = reduce_vec(to_vec(f, 0), cache_->reducers, *ring_, cache_->order, true);
    return std::move(detail::vecs_to_polys<F>({r}, ring_)[0]);
  }

  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  bool contains(const Ideal& J) const {
    for (const auto& g : J.gens())
      if (!contains(g)) return false;
    return true;
  }
  friend bool operator==(const Ideal& a, const Ideal& b) {
    require_same_ring(a.ring_, b.ring_);
    const auto& ga = a.groebner();
    const auto& gb = b.groebner();
    return ga.size() == gb.size() && std::equal(ga.begin(), ga.end(), gb.begin());
  }

  bool is_unit() const {
    for (const auto& g : groebner())
      if (g.is_constant()) return true;
    return false;
  }

  /// Installs an already known reduced Groebner basis.
  void seed_groebner(std::vector<Poly> basis) const {
    std::call_once(cache_->once, [&] {
      cache_->basis = std::move(basis);
      for (const auto& g : cache_->basis) cache_->reducers.add(to_vec(g, 0));
    });
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ">";
  }

 private:
  void ensure() const {
    std::call_once(cache_->once, [&] {
      ModuleGB<F> gb(ring_, cache_->order, {0}, default_degree_cap.load());
      for (const auto& g : gens_) gb.add_generator(to_vec(g, 0));
      cache_->basis = detail::vecs_to_polys(gb.basis(), ring_);
      cache_->reducers = gb.reducers();
    });
  }

  RingPtr<F> ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<detail::GBCache<F>> cache_;
};

namespace gb {

/// Reduced Groebner basis for an arbitrary order on the same variables.
template <CoefficientField F>
std::vector<Polynomial<F>> groebner(const Ideal<F>& I, const MonomialOrder& order) {
  if (order == I.ring()->order()) return I.groebner();
  auto R = I.ring()->with_order(order);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.gens()) gens.push_back(g.in_ring(R));
  return Ideal<F>(R, std::move(gens)).groebner();
}

template <CoefficientField F>
Polynomial<F> normal_form(const Polynomial<F>& f, const Ideal<F>& I) {
  return I.normal_form(f);
}

template <CoefficientField F>
Ideal<F> sum(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(I.ring(), J.ring());
  auto g = I.gens();
  g.insert(g.end(), J.gens().begin(), J.gens().end());
  return Ideal<F>(I.ring(), std::move(g));
}

template <CoefficientField F>
Ideal<F> product(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(I.ring(), J.ring());
  std::vector<Polynomial<F>> g;
  for (const auto& a : I.gens())
    for (const auto& b : J.gens()) g.push_back(a * b);
  return Ideal<F>(I.ring(), std::move(g));
}

/// I^s from all s-fold products of generators, with repetition.
template <CoefficientField F>
Ideal<F> power(const Ideal<F>& I, int s) {
  if (s < 1) throw InvalidArgument("ideal power needs s >= 1");
  const auto& g = I.gens();
  std::vector<Polynomial<F>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  if (g.empty()) return Ideal<F>(I.ring());
  for (;;) {
    auto p = g[idx[0]];
    for (std::size_t k = 1; k < idx.size(); ++k) p *= g[idx[k]];
    out.push_back(std::move(p));
    // next nondecreasing index tuple
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] == g.size() - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t m = k; m < idx.size(); ++m) idx[m] = idx[k - 1];
  }
  return Ideal<F>(I.ring(), std::move(out));
}

/// (I : f), from a Groebner basis of the module generated by (f, 1) and
/// (g, 0) in R + R(-deg f) with the first block eliminated.
template <CoefficientField F>
Ideal<F> colon(const Ideal<F>& I, const Polynomial<F>& f) {
  require_same_ring(I.ring(), f.ring());
  if (f.is_zero()) throw ZeroPolynomial("colon by the zero polynomial");
  const auto& R = I.ring();
  const int df = f.multidegree().empty() ? 0 : f.sort_degree();
  ModuleGB<F> gb(R, ModuleOrder::blocks({0, 1}), {0, df}, default_degree_cap.load());
  auto v = to_vec(f, 0);
  v.push_back({Monomial{}, 1, R->field().one()});
  gb.add_generator(std::move(v));
  for (const auto& g : I.gens()) gb.add_generator(to_vec(g, 0));
  std::vector<Vec<F>> keep;
  for (const auto& b : gb.basis())
    if (b[0].comp == 1) keep.push_back(b);
  auto polys = detail::vecs_to_polys(keep, R, 1);
  Ideal<F> out(R, polys);
  out.seed_groebner(std::move(polys));
  return out;
}

/// I ∩ J via the module generated by (g, g) for g in I and (h, 0) for h in J.
template <CoefficientField F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(I.ring(), J.ring());
  const auto& R = I.ring();
  ModuleGB<F> gb(R, ModuleOrder::blocks({0, 1}), {0, 0}, default_degree_cap.load());
  for (const auto& g : I.gens()) {
    auto v = to_vec(g, 0);
    auto w = to_vec(g, 1);
    v.insert(v.end(), w.begin(), w.end());
    gb.add_generator(std::move(v));
  }
  for (const auto& h : J.gens()) gb.add_generator(to_vec(h, 0));
  std::vector<Vec<F>> keep;
  for (const auto& b : gb.basis())
    if (b[0].comp == 1) keep.push_back(b);
  auto polys = detail::vecs_to_polys(keep, R, 1);
  Ideal<F> out(R, polys);
  out.seed_groebner(std::move(polys));
  return out;
}

/// I ∩ K[variables not in `vars`], returned as an ideal of the same ring.
template <CoefficientField F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<std::size_t>& vars) {
  const auto& R = I.ring();
  const std::size_t n = R->nvars();
  std::vector<bool> gone(n, false);
  for (auto v : vars) {
    if (v >= n) throw InvalidArgument("variable index out of range");
    gone[v] = true;
  }
  // Eliminated variables go first, then an elimination order.
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i)
    if (gone[i]) perm.push_back(i);
  const int k = static_cast<int>(perm.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!gone[i]) perm.push_back(i);
  std::vector<std::string> names;
  std::vector<Degree> degs;
  for (auto i : perm) {
    names.push_back(R->var(i));
    degs.push_back(R->degree(i));
  }
  auto E = Ring<F>::make(R->field(), names, degs, MonomialOrder::elimination(k));
  auto to_E = [&](const Polynomial<F>& f) {
    std::vector<Term<F>> ts;
    for (const auto& t : f.terms()) {
      std::vector<int> ex(n);
      for (std::size_t j = 0; j < n; ++j) ex[j] = t.mono[perm[j]];
      ts.push_back({E->monomial(ex), t.coef});
    }
    return Polynomial<F>::from_terms(E, std::move(ts));
  };
  auto from_E = [&](const Polynomial<F>& f) {
    std::vector<Term<F>> ts;
    for (const auto& t : f.terms()) {
      std::vector<int> ex(n);
      for (std::size_t j = 0; j < n; ++j) ex[perm[j]] = t.mono[j];
      ts.push_back({R->monomial(ex), t.coef});
    }
    return Polynomial<F>::from_terms(R, std::move(ts));
  };
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.gens()) gens.push_back(to_E(g));
  Ideal<F> IE(E, std::move(gens));
  std::vector<Polynomial<F>> out;
  for (const auto& g : IE.groebner()) {
    bool clean = true;
    for (int j = 0; j < k && clean; ++j) clean = !g.uses_variable(static_cast<std::size_t>(j));
    if (clean) out.push_back(from_E(g));
  }
  return Ideal<F>(R, std::move(out));
}

/// A minimal generating set, picked greedily by increasing degree.
template <CoefficientField F>
std::vector<Polynomial<F>> minimal_generators(const Ideal<F>& I) {
  auto gens = I.gens();
  std::stable_sort(gens.begin(), gens.end(),
                   [](const auto& a, const auto& b) { return a.sort_degree() < b.sort_degree(); });
  std::vector<Polynomial<F>> kept;
  for (const auto& g : gens) {
    Ideal<F> K(I.ring(), kept);
    if (!K.contains(g)) kept.push_back(g);
  }
  return kept;
}

/// Checks that every S-polynomial of the basis reduces to zero.
template <CoefficientField F>
bool is_groebner_basis(const std::vector<Polynomial<F>>& G) {
  if (G.empty()) return true;
  const auto& R = G[0].ring();
  auto O = ModuleOrder::term_over_position(1);
  ReducerSet<F> rs;
  for (const auto& g : G) rs.add(to_vec(g, 0));
  const F& k = R->field();
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      auto L = R->lcm(G[i].lead_monomial(), G[j].lead_monomial());
      auto s = G[i].mul_term(quotient(L, G[i].lead_monomial()), k.inv(G[i].lead_coefficient())) -
               G[j].mul_term(quotient(L, G[j].lead_monomial()), k.inv(G[j].lead_coefficient()));
      if (!reduce_vec(to_vec(s, 0), rs, *R, O, true).empty()) return false;
    }
  return true;
}

}  // namespace gb
}  // namespace acikit
