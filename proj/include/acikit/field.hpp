#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "acikit/error.hpp"

namespace acikit {

// A coefficient field: exact arithmetic on Elem, plus conversion from
// integer fractions. Fields are small value objects passed by reference.
template <class F>
concept CoefficientField = requires(const F& f, typename F::Elem a,
                                    const mpz_class& z) {
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.add(a, a) } -> std::same_as<typename F::Elem>;
  { f.sub(a, a) } -> std::same_as<typename F::Elem>;
  { f.mul(a, a) } -> std::same_as<typename F::Elem>;
  { f.neg(a) } -> std::same_as<typename F::Elem>;
  { f.inv(a) } -> std::same_as<typename F::Elem>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_fraction(z, z) } -> std::same_as<typename F::Elem>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.name() } -> std::same_as<std::string>;
};

/// The rationals, with arbitrary-precision numerators and denominators.
struct Rationals {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw InvalidArgument("zero denominator");
    Elem q(num, den);
    q.canonicalize();
    return q;
  }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw InvalidArgument("division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // In-place a -= b*c, the hot path of every reduction.
  void submul(Elem& a, const Elem& b, const Elem& c) const { a -= b * c; }
  void addto(Elem& a, const Elem& b) const { a += b; }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool is_negative_display(const Elem& a) const { return sgn(a) < 0; }

  std::string to_string(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  std::uint32_t characteristic() const { return 0; }

  bool operator==(const Rationals&) const = default;
};

/// Z/p for a prime p < 2^31.
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 32003) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p))
      throw InvalidArgument("characteristic must be a prime below 2^31: " +
                            std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const {
    Elem d = reduce(den);
    if (d == 0)
      throw InvalidArgument("denominator vanishes modulo " + std::to_string(p_));
    return mul(reduce(num), inv(d));
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw InvalidArgument("division by zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  void submul(Elem& a, Elem b, Elem c) const { a = sub(a, mul(b, c)); }
  void addto(Elem& a, Elem b) const { a = add(a, b); }

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  // Elements above p/2 print as negatives.
  bool is_negative_display(Elem a) const { return a > p_ / 2; }

  std::string to_string(Elem a) const {
    if (is_negative_display(a)) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }
  std::string name() const { return "Fp:" + std::to_string(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  static bool is_prime(std::uint32_t n) {
    if (n < 4) return n >= 2;
    if (n % 2 == 0) return false;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  Elem reduce(const mpz_class& z) const {
    mpz_class r = z % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r.get_ui());
  }

  std::uint32_t p_;
};

static_assert(CoefficientField<Rationals>);
static_assert(CoefficientField<PrimeField>);

}  // namespace acikit
