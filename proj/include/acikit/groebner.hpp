#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acikit/polynomial.hpp"

namespace acikit {

/// Degree cap used when a caller does not pass one explicitly.
inline std::atomic<int> default_degree_cap{30};

/// Sets default_degree_cap for the lifetime of the object.
class ScopedDegreeCap {
 public:
  explicit ScopedDegreeCap(int cap) : saved_(default_degree_cap.exchange(cap)) {}
  ~ScopedDegreeCap() { default_degree_cap.store(saved_); }
  ScopedDegreeCap(const ScopedDegreeCap&) = delete;
  ScopedDegreeCap& operator=(const ScopedDegreeCap&) = delete;

 private:
  int saved_;
};

/// A term c * m * e_comp of a free module.
template <CoefficientField F>
struct VTerm {
  Monomial mono;
  std::uint32_t comp;
  typename F::Elem coef;
};

/// Module element: terms strictly decreasing in a ModuleOrder, no zeros.
template <CoefficientField F>
using Vec = std::vector<VTerm<F>>;

/// A term order on a free module with basis e_0..e_{r-1}.
///
/// Components are grouped into blocks; a smaller block number is bigger.
/// Within a block, m e_a is compared with n e_b through m*T_a against n*T_b
/// in the ring order, then by a per-component tie rank (higher is bigger).
/// Term-over-position has T = 1 and one block; position-over-term gives each
/// component its own block; Schreyer orders carry the induced T and ranks.
class ModuleOrder {
 public:
  ModuleOrder() = default;

  static ModuleOrder term_over_position(std::size_t rank) {
    ModuleOrder o;
    o.block_.assign(rank, 0);
    o.totals_.assign(rank, Monomial{});
    for (std::size_t i = 0; i < rank; ++i) o.tie_.push_back(static_cast<std::uint32_t>(i));
    return o;
  }

  static ModuleOrder position_over_term(std::size_t rank) {
    auto o = term_over_position(rank);
    for (std::size_t i = 0; i < rank; ++i) o.block_[i] = static_cast<std::uint32_t>(i);
    return o;
  }

  /// Term-over-position inside each block, blocks compared first.
  static ModuleOrder blocks(std::vector<std::uint32_t> block_of) {
    auto o = term_over_position(block_of.size());
    o.block_ = std::move(block_of);
    return o;
  }

  /// Schreyer-type order: totals T_c and lexicographically compared chains.
  static ModuleOrder schreyer(std::vector<Monomial> totals,
                              const std::vector<std::vector<std::uint32_t>>& chains) {
    if (totals.size() != chains.size()) throw InvalidArgument("totals and chains differ in length");
    ModuleOrder o;
    o.block_.assign(totals.size(), 0);
    o.totals_ = std::move(totals);
    o.trivial_ = std::all_of(o.totals_.begin(), o.totals_.end(),
                             [](const Monomial& m) { return m.is_one(); });
    std::vector<std::uint32_t> idx(chains.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return chains[a] < chains[b]; });
    o.tie_.assign(chains.size(), 0);
    for (std::uint32_t r = 0; r < idx.size(); ++r) o.tie_[idx[r]] = r;
    return o;
  }

  std::size_t rank() const { return block_.size(); }
  const Monomial& total(std::uint32_t c) const { return totals_[c]; }
  std::uint32_t block(std::uint32_t c) const { return block_[c]; }

  /// m * T_c, the monomial actually compared by the ring order.
  Monomial key(const Monomial& m, std::uint32_t c) const { return trivial_ ? m : m * totals_[c]; }

  template <class R>
  int compare_keys(const R& ring, const Monomial& ka, std::uint32_t a, const Monomial& kb,
                   std::uint32_t b) const {
    if (block_[a] != block_[b]) return block_[a] < block_[b] ? 1 : -1;
    if (int c = ring.compare(ka, kb)) return c;
    if (tie_[a] != tie_[b]) return tie_[a] > tie_[b] ? 1 : -1;
    return 0;
  }

  template <class R>
  int compare(const R& ring, const Monomial& m, std::uint32_t a, const Monomial& n,
              std::uint32_t b) const {
    if (block_[a] != block_[b]) return block_[a] < block_[b] ? 1 : -1;
    return compare_keys(ring, key(m, a), a, key(n, b), b);
  }

 private:
  std::vector<std::uint32_t> block_;
  std::vector<Monomial> totals_;
  std::vector<std::uint32_t> tie_;
  bool trivial_ = true;
};

// ---------------------------------------------------------------------------
// Vector helpers

template <CoefficientField F>
void vec_normalize(Vec<F>& v, const Ring<F>& R, const ModuleOrder& O) {
  std::sort(v.begin(), v.end(), [&](const VTerm<F>& x, const VTerm<F>& y) {
    return O.compare(R, x.mono, x.comp, y.mono, y.comp) > 0;
  });
  const F& k = R.field();
  Vec<F> out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coef = k.add(out.back().coef, t.coef);
      if (k.is_zero(out.back().coef)) out.pop_back();
    } else if (!k.is_zero(t.coef)) {
      out.push_back(std::move(t));
    }
  }
  v = std::move(out);
}

/// a + c*b, both sorted in O.
template <CoefficientField F>
Vec<F> vec_axpy(const Vec<F>& a, const typename F::Elem& c, const Vec<F>& b, const Ring<F>& R,
                const ModuleOrder& O) {
  const F& k = R.field();
  Vec<F> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int s = i == a.size() ? -1
            : j == b.size() ? 1
                            : O.compare(R, a[i].mono, a[i].comp, b[j].mono, b[j].comp);
    if (s > 0) {
      r.push_back(a[i++]);
    } else if (s < 0) {
      auto t = b[j++];
      t.coef = k.mul(t.coef, c);
      if (!k.is_zero(t.coef)) r.push_back(std::move(t));
    } else {
      auto v = k.add(a[i].coef, k.mul(c, b[j].coef));
      if (!k.is_zero(v)) r.push_back({a[i].mono, a[i].comp, v});
      ++i, ++j;
    }
  }
  return r;
}

/// c*m*v; module orders are multiplicative, so the result stays sorted.
template <CoefficientField F>
Vec<F> vec_mul_term(const Vec<F>& v, const Monomial& m, const typename F::Elem& c, const F& k) {
  Vec<F> r;
  if (k.is_zero(c)) return r;
  r.reserve(v.size());
  for (const auto& t : v) r.push_back({t.mono * m, t.comp, k.mul(t.coef, c)});
  return r;
}

template <CoefficientField F>
void vec_make_monic(Vec<F>& v, const F& k) {
  if (v.empty() || k.is_one(v[0].coef)) return;
  auto inv = k.inv(v[0].coef);
  for (auto& t : v) t.coef = k.mul(t.coef, inv);
}

template <CoefficientField F>
std::string vec_to_string(const Vec<F>& v, const RingPtr<F>& R) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& t : v) {
    auto p = Polynomial<F>::monomial(R, t.mono, t.coef);
    if (!s.empty()) s += " + ";
    s += "(" + p.to_string() + ")*e" + std::to_string(t.comp);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Accumulator: a sparse vector under construction, popped from the top.

template <CoefficientField F>
class Accumulator {
 public:
  using Elem = typename F::Elem;

  Accumulator(const Ring<F>& R, const ModuleOrder& O) : R_(R), O_(O), k_(R.field()) {}

  void clear() {
    slots_.clear();
    index_.clear();
    heap_.clear();
  }

  bool empty_hint() const { return heap_.empty(); }

  void add_term(const Monomial& m, std::uint32_t comp, const Elem& c) {
    if (k_.is_zero(c)) return;
    Key key{m, comp};
    auto [it, fresh] = index_.try_emplace(key, static_cast<std::uint32_t>(slots_.size()));
    if (fresh) {
      slots_.push_back({m, O_.key(m, comp), comp, c});
      heap_.push_back(it->second);
      std::push_heap(heap_.begin(), heap_.end(), Less{this});
    } else {
      k_.addto(slots_[it->second].coef, c);
    }
  }

  /// Adds c*m*v, skipping the first `skip` terms of v.
  void add(const Vec<F>& v, const Monomial& m, const Elem& c, std::size_t skip = 0) {
    for (std::size_t i = skip; i < v.size(); ++i) add_term(v[i].mono * m, v[i].comp, k_.mul(v[i].coef, c));
  }

  /// Removes and returns the largest term with a nonzero coefficient.
  bool pop(VTerm<F>& out) {
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), Less{this});
      auto s = heap_.back();
      heap_.pop_back();
      auto& slot = slots_[s];
      index_.erase(Key{slot.mono, slot.comp});
      if (k_.is_zero(slot.coef)) continue;
      out = {slot.mono, slot.comp, std::move(slot.coef)};
      return true;
    }
    return false;
  }

 private:
  struct Key {
    Monomial mono;
    std::uint32_t comp;
    bool operator==(const Key& o) const { return comp == o.comp && mono == o.mono; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.mono.hash() ^ (k.comp * 0x9e3779b97f4a7c15ull); }
  };
  struct Slot {
    Monomial mono;
    Monomial key;
    std::uint32_t comp;
    Elem coef;
  };
  struct Less {
    const Accumulator* a;
    bool operator()(std::uint32_t x, std::uint32_t y) const {
      const auto& s = a->slots_[x];
      const auto& t = a->slots_[y];
      return a->O_.compare_keys(a->R_, s.key, s.comp, t.key, t.comp) < 0;
    }
  };

  const Ring<F>& R_;
  const ModuleOrder& O_;
  const F& k_;
  std::vector<Slot> slots_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
  std::vector<std::uint32_t> heap_;
};

// ---------------------------------------------------------------------------
// Reducers

template <CoefficientField F>
struct Reducer {
  Vec<F> vec;
  Monomial lead;
  std::uint32_t comp = 0;
  std::uint32_t mask = 0;
  bool active = true;
};

/// A list of module elements usable as reducers, indexed by lead component.
template <CoefficientField F>
class ReducerSet {
 public:
  std::uint32_t add(Vec<F> v) {
    if (v.empty()) throw ZeroPolynomial("zero vector cannot reduce");
    Reducer<F> r;
    r.lead = v[0].mono;
    r.comp = v[0].comp;
    r.mask = r.lead.support();
    r.vec = std::move(v);
    auto id = static_cast<std::uint32_t>(items_.size());
    if (by_comp_.size() <= r.comp) by_comp_.resize(r.comp + 1);
    by_comp_[r.comp].push_back(id);
    items_.push_back(std::move(r));
    return id;
  }

  void deactivate(std::uint32_t id) {
    items_[id].active = false;
    auto& l = by_comp_[items_[id].comp];
    l.erase(std::remove(l.begin(), l.end(), id), l.end());
  }

  std::optional<std::uint32_t> find(const Monomial& m, std::uint32_t comp) const {
    if (comp >= by_comp_.size()) return std::nullopt;
    const std::uint32_t mm = m.support();
    for (auto id : by_comp_[comp]) {
      const auto& r = items_[id];
      if ((r.mask & ~mm) == 0 && divides(r.lead, m)) return id;
    }
    return std::nullopt;
  }

  const Reducer<F>& operator[](std::uint32_t id) const { return items_[id]; }
  Reducer<F>& at(std::uint32_t id) { return items_[id]; }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::uint32_t>& active_in(std::uint32_t comp) const {
    static const std::vector<std::uint32_t> none;
    return comp < by_comp_.size() ? by_comp_[comp] : none;
  }
  std::size_t ncomps() const { return by_comp_.size(); }

 private:
  std::vector<Reducer<F>> items_;
  std::vector<std::vector<std::uint32_t>> by_comp_;
};

/// Reduces the accumulator content by `G`. Each reduction step reports
/// (reducer id, multiplier monomial, coefficient) to `step`, meaning the
/// content had c*m*G[id] subtracted. With `full` false, stops at the first
/// irreducible lead and returns everything that is left.
template <CoefficientField F, class Step>
Vec<F> reduce_accumulator(Accumulator<F>& acc, const ReducerSet<F>& G, const F& k, bool full,
                          Step&& step) {
  Vec<F> rem;
  VTerm<F> t;
  bool stuck = false;
  while (acc.pop(t)) {
    if (!stuck) {
      if (auto id = G.find(t.mono, t.comp)) {
        const auto& g = G[*id];
        Monomial q = quotient(t.mono, g.lead);
        auto c = k.is_one(g.vec[0].coef) ? t.coef : k.mul(t.coef, k.inv(g.vec[0].coef));
        step(*id, q, c);
        acc.add(g.vec, q, k.neg(c), 1);
        continue;
      }
      if (!full) stuck = true;
    }
    rem.push_back(std::move(t));
  }
  return rem;
}

template <CoefficientField F>
Vec<F> reduce_vec(const Vec<F>& v, const ReducerSet<F>& G, const Ring<F>& R, const ModuleOrder& O,
                  bool full = true) {
  Accumulator<F> acc(R, O);
  acc.add(v, Monomial{}, R.field().one());
  return reduce_accumulator(acc, G, R.field(), full, [](auto, const auto&, const auto&) {});
}

// ---------------------------------------------------------------------------
// Buchberger

struct GBStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  int max_degree = 0;
};

/// Homogeneous Buchberger algorithm on submodules of a free module.
///
/// Each basis component c carries an integer sort shift; a term m e_c has
/// sort degree deg(m) + shift[c]. Inputs must be homogeneous for it.
template <CoefficientField F>
class ModuleGB {
 public:
  using Elem = typename F::Elem;

  ModuleGB(RingPtr<F> ring, ModuleOrder order, std::vector<int> sort_shift, int degree_cap = 30,
           std::size_t step_cap = 50'000'000)
      : ring_(std::move(ring)),
        order_(std::move(order)),
        shift_(std::move(sort_shift)),
        cap_(degree_cap),
        step_cap_(step_cap) {
    if (shift_.size() != order_.rank()) throw InvalidArgument("one shift per component needed");
  }

  const RingPtr<F>& ring() const { return ring_; }
  const ModuleOrder& order() const { return order_; }
  const std::vector<int>& shifts() const { return shift_; }

  int sort_degree(const VTerm<F>& t) const { return t.mono.degree() + shift_[t.comp]; }

  void add_generator(Vec<F> v) {
    vec_normalize(v, *ring_, order_);
    if (v.empty()) return;
    const int d = sort_degree(v[0]);
    for (const auto& t : v) {
      if (t.comp >= order_.rank()) throw InvalidArgument("component index out of range");
      if (sort_degree(t) != d) throw NotHomogeneous("module generator is not homogeneous");
    }
    pending_.push_back({std::move(v), d});
    done_ = false;
  }

  void compute() {
    if (done_) return;
    run(std::numeric_limits<int>::max());
    finalize();
    done_ = true;
  }

  /// Runs Buchberger only through sort degree `limit`. The working set then
  /// reduces every homogeneous element of degree <= limit correctly.
  const ReducerSet<F>& compute_to(int limit) {
    if (done_) return final_set_;
    run(limit);
    return G_;
  }

  /// Reduced, monic basis sorted increasingly in the module order.
  const std::vector<Vec<F>>& basis() {
    compute();
    return final_;
  }

  /// Reducer set built from the final basis (same order as basis()).
  const ReducerSet<F>& reducers() {
    compute();
    return final_set_;
  }

  Vec<F> normal_form(const Vec<F>& v) {
    compute();
    return reduce_vec(v, final_set_, *ring_, order_, true);
  }

  const GBStats& stats() const { return stats_; }

 private:
  void run(int limit) {
    const F& k = ring_->field();
    Accumulator<F> acc(*ring_, order_);
    while (!pending_.empty() || !pairs_.empty()) {
      int d = std::numeric_limits<int>::max();
      for (const auto& g : pending_) d = std::min(d, g.second);
      for (const auto& p : pairs_) d = std::min(d, p.sdeg);
      if (d > limit) return;
      if (d > cap_)
        throw Overflow("Groebner basis computation exceeds degree cap " + std::to_string(cap_));
      stats_.max_degree = std::max(stats_.max_degree, d);

      std::vector<Vec<F>> todo;
      for (auto it = pending_.begin(); it != pending_.end();) {
        if (it->second == d) {
          todo.push_back(std::move(it->first));
          it = pending_.erase(it);
        } else {
          ++it;
        }
      }
      std::vector<Pair> batch;
      std::vector<Pair> rest;
      for (auto& p : pairs_) (p.sdeg == d ? batch : rest).push_back(std::move(p));
      pairs_ = std::move(rest);
      std::sort(batch.begin(), batch.end(), [&](const Pair& a, const Pair& b) {
        int c = order_.compare(*ring_, a.lcm, a.comp, b.lcm, b.comp);
        return c != 0 ? c < 0 : std::pair(a.i, a.j) < std::pair(b.i, b.j);
      });

      auto process = [&](Accumulator<F>& a) {
        if (++stats_.pairs_reduced > step_cap_) throw Overflow("Groebner basis step cap exceeded");
        auto r = reduce_accumulator(a, G_, k, true, [](auto, const auto&, const auto&) {});
        if (r.empty()) {
          ++stats_.zero_reductions;
          return;
        }
        vec_make_monic(r, k);
        insert(std::move(r), d);
      };
      for (auto& v : todo) {
        acc.clear();
        acc.add(v, Monomial{}, k.one());
        process(acc);
      }
      for (const auto& p : batch) {
        ++stats_.pairs_considered;
        const auto& gi = G_[p.i];
        const auto& gj = G_[p.j];
        acc.clear();
        // S = (lcm/lt_j) g_j - (c_j/c_i)(lcm/lt_i) g_i; the leads cancel.
        auto ci = gi.vec[0].coef, cj = gj.vec[0].coef;
        acc.add(gj.vec, quotient(p.lcm, gj.lead), k.one(), 1);
        acc.add(gi.vec, quotient(p.lcm, gi.lead), k.neg(k.mul(cj, k.inv(ci))), 1);
        process(acc);
      }
    }
  }

  struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
    std::uint32_t comp;
    int sdeg;
  };

  void insert(Vec<F> h, int d) {
    const auto hid = G_.add(std::move(h));
    const auto& H = G_[hid];
    const std::uint32_t comp = H.comp;
    const bool ideal_case = order_.rank() == 1;
    auto w = ring_->weights();

    // New pairs with every active element in the same component.
    struct Cand {
      std::uint32_t g;
      Monomial lcm;
      bool coprime;
      bool dead = false;
    };
    std::vector<Cand> C;
    for (auto g : G_.active_in(comp)) {
      if (g == hid) continue;
      const auto& Gg = G_[g];
      C.push_back({g, lcm(Gg.lead, H.lead, w), ideal_case && coprime(Gg.lead, H.lead)});
    }
    // Criterion M: drop (g,h) when some other lcm properly divides it.
    for (auto& a : C)
      for (const auto& b : C)
        if (&a != &b && !(b.lcm == a.lcm) && divides(b.lcm, a.lcm)) {
          a.dead = true;
          break;
        }
    // Criterion F: one pair per lcm class; the class dies with any coprime member.
    for (std::size_t i = 0; i < C.size(); ++i) {
      if (C[i].dead) continue;
      bool any_coprime = C[i].coprime;
      for (std::size_t j = i + 1; j < C.size(); ++j)
        if (!C[j].dead && C[j].lcm == C[i].lcm) {
          any_coprime = any_coprime || C[j].coprime;
          C[j].dead = true;
        }
      if (any_coprime) C[i].dead = true;
    }
    // Criterion B on existing pairs.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.comp != comp || !divides(H.lead, p.lcm)) return false;
      auto lih = lcm(G_[p.i].lead, H.lead, w);
      auto ljh = lcm(G_[p.j].lead, H.lead, w);
      return !(lih == p.lcm) && !(ljh == p.lcm);
    });
    for (const auto& c : C)
      if (!c.dead) pairs_.push_back({c.g, hid, c.lcm, comp, c.lcm.degree() + shift_[comp]});
    // Elements whose lead h divides leave the basis.
    std::vector<std::uint32_t> drop;
    for (auto g : G_.active_in(comp))
      if (g != hid && divides(H.lead, G_[g].lead)) drop.push_back(g);
    for (auto g : drop) G_.deactivate(g);
    (void)d;
  }

  void finalize() {
    const F& k = ring_->field();
    std::vector<std::uint32_t> ids;
    for (std::uint32_t c = 0; c < G_.ncomps(); ++c)
      for (auto id : G_.active_in(c)) ids.push_back(id);
    // Tail-reduce each element by the others.
    std::vector<Vec<F>> out;
    for (auto id : ids) {
      Accumulator<F> acc(*ring_, order_);
      const auto& v = G_[id].vec;
      acc.add(v, Monomial{}, k.one(), 1);
      Vec<F> r{v[0]};
      auto tail = reduce_accumulator(acc, G_, k, true, [](auto, const auto&, const auto&) {});
      r.insert(r.end(), tail.begin(), tail.end());
      vec_make_monic(r, k);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const Vec<F>& a, const Vec<F>& b) {
      return order_.compare(*ring_, a[0].mono, a[0].comp, b[0].mono, b[0].comp) < 0;
    });
    final_ = std::move(out);
    final_set_ = ReducerSet<F>();
    for (const auto& v : final_) final_set_.add(v);
  }

  RingPtr<F> ring_;
  ModuleOrder order_;
  std::vector<int> shift_;
  int cap_;
  std::size_t step_cap_;
  std::vector<std::pair<Vec<F>, int>> pending_;
  std::vector<Pair> pairs_;
  ReducerSet<F> G_;
  std::vector<Vec<F>> final_;
  ReducerSet<F> final_set_;
  GBStats stats_;
  bool done_ = false;
};

// ---------------------------------------------------------------------------
// Polynomial <-> vector conversion

template <CoefficientField F>
Vec<F> to_vec(const Polynomial<F>& f, std::uint32_t comp) {
  Vec<F> v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.mono, comp, t.coef});
  return v;
}

/// Terms of v lying in component `comp`, as a polynomial.
template <CoefficientField F>
Polynomial<F> vec_component(const Vec<F>& v, std::uint32_t comp, const RingPtr<F>& R) {
  std::vector<Term<F>> ts;
  for (const auto& t : v)
    if (t.comp == comp) ts.push_back({t.mono, t.coef});
  return Polynomial<F>::from_terms(R, std::move(ts));
}

}  // namespace acikit
