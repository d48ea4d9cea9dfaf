#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "acikit/error.hpp"

namespace acikit {

/// Largest number of ring variables supported by the packed monomial layout.
inline constexpr std::size_t kMaxVars = 32;
/// Exponents are stored in one byte each.
inline constexpr int kMaxExponent = 255;

/// A packed exponent vector together with its weighted (sort) degree.
///
/// Exponents past the ring's variable count are always zero, so two
/// monomials of the same ring compare equal exactly when their bytes do.
class Monomial {
 public:
  Monomial() = default;

  /// Builds a monomial from exponents; `weights` give each variable's
  /// positive sort degree.
  static Monomial from_exponents(std::span<const int> exps,
                                 std::span<const int> weights) {
    if (exps.size() > kMaxVars) throw InvalidArgument("too many variables");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > kMaxExponent)
        throw Overflow("exponent out of range: " + std::to_string(exps[i]));
      m.e_[i] = static_cast<std::uint8_t>(exps[i]);
      m.deg_ += exps[i] * weights[i];
    }
    return m;
  }

  int operator[](std::size_t i) const { return e_[i]; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0 && e_ == std::array<std::uint8_t, kMaxVars>{}; }

  std::vector<int> exponents(std::size_t nvars) const {
    return std::vector<int>(e_.begin(), e_.begin() + static_cast<long>(nvars));
  }

  /// Bitmask of variables with positive exponent.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i]) s |= (1u << i);
    return s;
  }

  int total_exponent() const {
    int s = 0;
    for (auto v : e_) s += v;
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned over = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.e_[i]) + unsigned(b.e_[i]);
      over |= s;
      r.e_[i] = static_cast<std::uint8_t>(s);
    }
    if (over > unsigned(kMaxExponent)) throw Overflow("exponent overflow in monomial product");
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  /// True when `a` divides `b`.
  friend bool divides(const Monomial& a, const Monomial& b) {
    if (a.deg_ > b.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e_[i] > b.e_[i]) return false;
    return true;
  }

  /// b / a; requires divides(a, b).
  friend Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint8_t>(b.e_[i] - a.e_[i]);
    r.deg_ = b.deg_ - a.deg_;
    return r;
  }

  /// lcm needs the weights to recompute the degree.
  friend Monomial lcm(const Monomial& a, const Monomial& b, std::span<const int> weights) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e_[i] = std::max(a.e_[i], b.e_[i]);
      if (i < weights.size()) r.deg_ += r.e_[i] * weights[i];
    }
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e_[i] && b.e_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

  std::size_t hash() const {
    std::uint64_t w[kMaxVars / 8];
    std::memcpy(w, e_.data(), sizeof(w));
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

  /// Raw byte order; only for canonical container keys, not a monomial order.
  friend bool bytes_less(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

  // Used by Ring to build variable monomials without a weight span.
  void set_exponent(std::size_t i, int e, int weight) {
    deg_ += (e - e_[i]) * weight;
    e_[i] = static_cast<std::uint8_t>(e);
  }

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  std::int32_t deg_ = 0;
};

// Namespace-scope declarations so qualified calls find the friends.
Monomial lcm(const Monomial& a, const Monomial& b, std::span<const int> weights);
bool divides(const Monomial& a, const Monomial& b);
Monomial quotient(const Monomial& b, const Monomial& a);
bool coprime(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Orders on monomials of a polynomial ring. SchreyerInduced exists only on
/// free modules (see ModuleOrder) and is rejected by rings.
struct MonomialOrder {
  enum class Kind { GrevLex, Lex, Elimination, SchreyerInduced };

  Kind kind = Kind::GrevLex;
  // Elimination: number of leading variables in the first block.
  int block = 0;

  static MonomialOrder grevlex() { return {Kind::GrevLex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(int k) { return {Kind::Elimination, k}; }

  std::string name() const {
    switch (kind) {
      case Kind::GrevLex: return "grevlex";
      case Kind::Lex: return "lex";
      case Kind::Elimination: return "elim(" + std::to_string(block) + ")";
      case Kind::SchreyerInduced: return "schreyer";
    }
    return "?";
  }

  bool operator==(const MonomialOrder&) const = default;
};

namespace detail {

// Weighted degree compare followed by reverse lex on [lo, hi).
inline int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                         std::span<const int> weights) {
  int da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i] * weights[i];
    db += b[i] * weights[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

}  // namespace detail

/// Compares two monomials; returns +1 if a > b, -1 if a < b, 0 if equal.
/// GrevLex is degree-compatible for the given weights.
inline int compare_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& order,
                             std::size_t nvars, std::span<const int> weights) {
  switch (order.kind) {
    case MonomialOrder::Kind::GrevLex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      for (std::size_t i = nvars; i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    case MonomialOrder::Kind::Lex:
      for (std::size_t i = 0; i < nvars; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case MonomialOrder::Kind::Elimination: {
      const auto k = static_cast<std::size_t>(order.block);
      if (int c = detail::grevlex_range(a, b, 0, k, weights)) return c;
      return detail::grevlex_range(a, b, k, nvars, weights);
    }
    case MonomialOrder::Kind::SchreyerInduced:
      break;
  }
  throw InvalidArgument("Schreyer orders compare module terms, not ring monomials");
}

/// Exponent-vector front end of compare_monomials, with unit weights unless
/// given. Errors on length mismatch.
inline int mono_cmp(std::span<const int> a, std::span<const int> b, const MonomialOrder& order,
                    std::span<const int> weights = {}) {
  if (a.size() != b.size()) throw InvalidArgument("monomials have different lengths");
  std::vector<int> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(a.size(), 1);
  if (w.size() != a.size()) throw InvalidArgument("weight vector has the wrong length");
  auto ma = Monomial::from_exponents(a, w);
  auto mb = Monomial::from_exponents(b, w);
  return compare_monomials(ma, mb, order, a.size(), w);
}

}  // namespace acikit
