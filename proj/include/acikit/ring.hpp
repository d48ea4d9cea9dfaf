#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acikit/error.hpp"
#include "acikit/field.hpp"
#include "acikit/monomial.hpp"

namespace acikit {

/// A multidegree in Z^g.
using Degree = std::vector<int>;

/// A graded polynomial ring K[x_0..x_{n-1}] with a monomial order.
///
/// Degrees live in Z^g for g = 1 or 2. Every variable also carries a
/// positive integer sort weight used by degree-compatible orders and by
/// the homogeneous Buchberger strategy. For g = 1 the weight is the degree;
/// for g = 2 it is the sum of both entries.
template <CoefficientField F>
class Ring {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  static std::shared_ptr<const Ring> make(F field, std::vector<std::string> vars,
                                          std::vector<Degree> degrees = {},
                                          MonomialOrder order = MonomialOrder::grevlex()) {
    return std::shared_ptr<const Ring>(
        new Ring(std::move(field), std::move(vars), std::move(degrees), order));
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& var(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  /// Number of grading coordinates.
  int arity() const { return arity_; }
  const Degree& degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<Degree>& degrees() const { return degrees_; }
  int weight(std::size_t i) const { return weights_.at(i); }
  std::span<const int> weights() const { return weights_; }
  const MonomialOrder& order() const { return order_; }

  int compare(const Monomial& a, const Monomial& b) const {
    return compare_monomials(a, b, order_, vars_.size(), weights_);
  }

  Monomial monomial(std::span<const int> exps) const {
    if (exps.size() != vars_.size())
      throw InvalidArgument("exponent vector has length " + std::to_string(exps.size()) +
                            ", ring has " + std::to_string(vars_.size()) + " variables");
    return Monomial::from_exponents(exps, weights_);
  }

  Monomial variable(std::size_t i, int power = 1) const {
    if (i >= vars_.size()) throw InvalidArgument("variable index out of range");
    if (power < 0 || power > kMaxExponent) throw Overflow("exponent out of range");
    Monomial m;
    m.set_exponent(i, power, weights_[i]);
    return m;
  }

  Monomial lcm(const Monomial& a, const Monomial& b) const { return acikit::lcm(a, b, weights_); }

  Degree multidegree(const Monomial& m) const {
    Degree d(static_cast<std::size_t>(arity_), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (int e = m[i])
        for (int k = 0; k < arity_; ++k) d[k] += e * degrees_[i][k];
    return d;
  }

  /// Sort weight of a multidegree in this ring's grading.
  int sort_weight(const Degree& d) const {
    int s = 0;
    for (int v : d) s += v;
    return s;
  }

  /// Structural equality: same field, variables, grading and order.
  bool same_as(const Ring& o) const {
    return this == &o || (field_ == o.field_ && vars_ == o.vars_ && degrees_ == o.degrees_ &&
                          order_ == o.order_);
  }

  /// Same ring except for the monomial order.
  std::shared_ptr<const Ring> with_order(MonomialOrder order) const {
    return make(field_, vars_, degrees_, order);
  }

  std::shared_ptr<const Ring> with_degrees(std::vector<Degree> degrees) const {
    return make(field_, vars_, std::move(degrees), order_);
  }

  std::string describe() const {
    std::string s = field_.name() + "[";
    for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
    return s + "] " + order_.name();
  }

 private:
  Ring(F field, std::vector<std::string> vars, std::vector<Degree> degrees, MonomialOrder order)
      : field_(std::move(field)), vars_(std::move(vars)), degrees_(std::move(degrees)), order_(order) {
    if (vars_.size() > kMaxVars)
      throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables are supported");
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].empty()) throw InvalidArgument("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[i] == vars_[j]) throw InvalidArgument("duplicate variable " + vars_[i]);
    }
    if (degrees_.empty()) degrees_.assign(vars_.size(), Degree{1});
    if (degrees_.size() != vars_.size())
      throw InvalidArgument("need one degree per variable");
    arity_ = static_cast<int>(degrees_.front().size());
    if (arity_ < 1 || arity_ > 2) throw InvalidArgument("grading must have 1 or 2 coordinates");
    for (const auto& d : degrees_) {
      if (static_cast<int>(d.size()) != arity_) throw InvalidArgument("mixed degree lengths");
      for (int v : d)
        if (v < 0) throw InvalidArgument("degrees must be nonnegative");
      int w = sort_weight(d);
      if (w <= 0) throw InvalidArgument("every variable needs positive total degree");
      weights_.push_back(w);
    }
    if (order_.kind == MonomialOrder::Kind::SchreyerInduced)
      throw InvalidArgument("Schreyer orders live on free modules, not rings");
    if (order_.kind == MonomialOrder::Kind::Elimination &&
        (order_.block < 0 || order_.block > static_cast<int>(vars_.size())))
      throw InvalidArgument("elimination block out of range");
  }

  F field_;
  std::vector<std::string> vars_;
  std::vector<Degree> degrees_;
  std::vector<int> weights_;
  MonomialOrder order_;
  int arity_ = 1;
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <CoefficientField F>
void require_same_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
  if (a.get() != b.get() && !a->same_as(*b)) throw RingMismatch();
}

}  // namespace acikit
