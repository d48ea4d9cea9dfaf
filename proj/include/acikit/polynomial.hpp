#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "acikit/ring.hpp"

namespace acikit {

template <CoefficientField F>
struct Term {
  Monomial mono;
  typename F::Elem coef;
};

/// A polynomial as a list of terms sorted strictly decreasing in the ring
/// order, with no zero coefficients.
template <CoefficientField F>
class Polynomial {
 public:
  using Elem = typename F::Elem;
  using TermT = Term<F>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr<F> ring, const Elem& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial constant(RingPtr<F> ring, long c) {
    auto e = ring->field().from_int(c);
    return constant(std::move(ring), e);
  }
  static Polynomial variable(RingPtr<F> ring, std::size_t i) {
    Polynomial p(ring);
    p.terms_.push_back({ring->variable(i), ring->field().one()});
    return p;
  }
  static Polynomial monomial(RingPtr<F> ring, const Monomial& m, const Elem& c) {
    Polynomial p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Sorts and combines arbitrary terms.
  static Polynomial from_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }
  /// Takes terms already sorted decreasing, distinct and nonzero.
  static Polynomial from_sorted_terms(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const TermT& lead() const {
    if (terms_.empty()) throw ZeroPolynomial();
    return terms_.front();
  }
  const Monomial& lead_monomial() const { return lead().mono; }
  const Elem& lead_coefficient() const { return lead().coef; }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = field().neg(t.coef);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.combine(b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.combine(b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
    const F& k = a.field();
    std::unordered_map<Monomial, Elem, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.mono * t.mono, k.zero());
        it->second = k.add(it->second, k.mul(s.coef, t.coef));
      }
    std::vector<TermT> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!k.is_zero(c)) out.push_back({m, c});
    return from_terms_presummed(a.ring_, std::move(out));
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scale(const Elem& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coef = field().mul(t.coef, c);
    return r;
  }

  /// Multiplies by c*m; the order is multiplicative so the terms stay sorted.
  Polynomial mul_term(const Monomial& m, const Elem& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coef, c)});
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1L), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scale(field().inv(lead_coefficient()));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ && b.ring_) require_same_ring(a.ring_, b.ring_);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coef == b.terms_[i].coef))
        return false;
    return true;
  }

  /// Homogeneous in the full multigrading; zero counts as homogeneous.
  bool is_homogeneous() const {
    if (terms_.size() <= 1) return true;
    auto d = ring_->multidegree(terms_[0].mono);
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (ring_->multidegree(terms_[i].mono) != d) return false;
    return true;
  }

  /// Multidegree of a nonzero homogeneous polynomial.
  Degree multidegree() const {
    if (is_zero()) throw ZeroPolynomial();
    if (!is_homogeneous()) throw NotHomogeneous("polynomial is not homogeneous: " + to_string());
    return ring_->multidegree(terms_[0].mono);
  }

  /// Sort degree of the lead term; equals that of every term when homogeneous.
  int sort_degree() const { return lead_monomial().degree(); }

  /// Highest sort degree over all terms.
  int max_sort_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool uses_variable(std::size_t i) const {
    for (const auto& t : terms_)
      if (t.mono[i]) return true;
    return false;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const F& k = field();
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
      bool neg = k.is_negative_display(t.coef);
      Elem mag = neg ? k.neg(t.coef) : t.coef;
      if (first) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_string(t.mono);
      if (mono.empty()) {
        s += k.to_string(mag);
      } else {
        if (!k.is_one(mag)) s += k.to_string(mag) + "*";
        s += mono;
      }
    }
    return s;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      int e = m[i];
      if (!e) continue;
      if (!s.empty()) s += "*";
      s += ring_->var(i);
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

  /// Reinterprets this polynomial in a ring with the same variables but
  /// possibly another order or grading.
  Polynomial in_ring(RingPtr<F> target) const {
    if (target->nvars() != ring_->nvars() || !(target->field() == ring_->field()))
      throw RingMismatch("target ring has a different shape");
    std::vector<TermT> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({target->monomial(t.mono.exponents(ring_->nvars())), t.coef});
    return from_terms(target, std::move(ts));
  }

  std::vector<TermT>& mutable_terms() { return terms_; }

 private:
  static Polynomial from_terms_presummed(RingPtr<F> ring, std::vector<TermT> terms) {
    Polynomial p(std::move(ring));
    const Ring<F>& R = *p.ring_;
    std::sort(terms.begin(), terms.end(),
              [&](const TermT& x, const TermT& y) { return R.compare(x.mono, y.mono) > 0; });
    p.terms_ = std::move(terms);
    return p;
  }

  void normalize() {
    const Ring<F>& R = *ring_;
    const F& k = R.field();
    std::sort(terms_.begin(), terms_.end(),
              [&](const TermT& x, const TermT& y) { return R.compare(x.mono, y.mono) > 0; });
    std::vector<TermT> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coef = k.add(out.back().coef, t.coef);
      else
        out.push_back(std::move(t));
      if (k.is_zero(out.back().coef)) out.pop_back();
    }
    // A zero sum can expose an equal monomial underneath; rerun once in that case.
    terms_ = std::move(out);
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (terms_[i].mono == terms_[i - 1].mono) return normalize();
  }

  Polynomial combine(const Polynomial& b, bool subtract) const {
    require_same_ring(ring_, b.ring_);
    const F& k = field();
    const Ring<F>& R = *ring_;
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      int c = i == terms_.size() ? -1
              : j == b.terms_.size() ? 1
                                     : R.compare(terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? k.neg(t.coef) : t.coef});
      } else {
        Elem s = subtract ? k.sub(terms_[i].coef, b.terms_[j].coef) : k.add(terms_[i].coef, b.terms_[j].coef);
        if (!k.is_zero(s)) r.terms_.push_back({terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

/// Ring homomorphism: x_i maps to images[i] in the target ring.
template <CoefficientField F>
Polynomial<F> substitute(const Polynomial<F>& f, const RingPtr<F>& target,
                         const std::vector<Polynomial<F>>& images) {
  const auto n = f.ring()->nvars();
  if (images.size() != n) throw InvalidArgument("need one image per variable");
  for (const auto& g : images) require_same_ring(g.ring(), target);
  std::vector<std::vector<Polynomial<F>>> powers(n);
  auto power = [&](std::size_t i, int e) -> const Polynomial<F>& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Polynomial<F>::constant(target, 1L));
    while (static_cast<int>(p.size()) <= e) p.push_back(p.back() * images[i]);
    return p[static_cast<std::size_t>(e)];
  };
  Polynomial<F> out(target);
  for (const auto& t : f.terms()) {
    auto term = Polynomial<F>::constant(target, t.coef);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
      if (int e = t.mono[i]) term *= power(i, e);
    out += term;
  }
  return out;
}

}  // namespace acikit
