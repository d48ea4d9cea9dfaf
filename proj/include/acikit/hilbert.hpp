#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "acikit/ideal.hpp"

namespace acikit {

/// Hilbert series data of R/I: HS(t) = numerator(t) / prod_i (1 - t^{w_i}).
struct HilbertData {
  std::vector<std::int64_t> numerator;  // coefficient of t^k at index k
  int dim = 0;
  int height = 0;

  std::string numerator_string() const {
    std::string s;
    for (std::size_t k = 0; k < numerator.size(); ++k) {
      auto c = numerator[k];
      if (c == 0) continue;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      auto a = c < 0 ? -c : c;
      if (k == 0 || a != 1) s += std::to_string(a);
      if (k > 0) s += (k == 0 || a != 1 ? "*" : "") + std::string("t") + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s.empty() ? "0" : s;
  }
};

namespace hilbert {

using Poly1 = std::vector<std::int64_t>;

inline void trim(Poly1& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly1 add(const Poly1& a, const Poly1& b, std::size_t shift_b = 0) {
  Poly1 r(std::max(a.size(), b.size() + shift_b), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i + shift_b] += b[i];
  trim(r);
  return r;
}

inline Poly1 mul(const Poly1& a, const Poly1& b) {
  if (a.empty() || b.empty()) return {};
  Poly1 r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Keeps the monomials not divisible by another one in the list.
inline std::vector<Monomial> minimalize(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_exponent() != b.total_exponent()) return a.total_exponent() < b.total_exponent();
    return bytes_less(a, b);
  });
  std::vector<Monomial> out;
  for (const auto& m : ms) {
    bool redundant = false;
    for (const auto& k : out)
      if (divides(k, m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

/// Numerator of the Hilbert series of R/M for a monomial ideal M with the
/// given minimal generators, by the pivot recursion
/// N(M) = N(M + (x)) + t^{w(x)} N(M : x).
inline Poly1 numerator(const std::vector<Monomial>& gens, std::span<const int> weights,
                       std::size_t nvars) {
  if (gens.empty()) return {1};
  // Pairwise coprime generators give a product of (1 - t^deg).
  std::vector<int> count(nvars, 0);
  bool coprime_all = true;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < nvars; ++i)
      if (g[i] && ++count[i] > 1) coprime_all = false;
  if (coprime_all) {
    Poly1 r{1};
    for (const auto& g : gens) {
      Poly1 f(static_cast<std::size_t>(g.degree()) + 1, 0);
      f[0] = 1;
      f.back() -= 1;
      r = mul(r, f);
    }
    return r;
  }
  std::size_t piv = 0;
  for (std::size_t i = 1; i < nvars; ++i)
    if (count[i] > count[piv]) piv = i;
  Monomial x;
  x.set_exponent(piv, 1, weights[piv]);
  std::vector<Monomial> plus{x}, colon;
  for (const auto& g : gens) {
    if (!g[piv]) plus.push_back(g);
    colon.push_back(g[piv] ? quotient(g, x) : g);
  }
  auto a = numerator(minimalize(std::move(plus)), weights, nvars);
  auto b = numerator(minimalize(std::move(colon)), weights, nvars);
  return add(a, b, static_cast<std::size_t>(weights[piv]));
}

/// Smallest number of variables meeting every support; the height of a
/// monomial ideal with these minimal generators.
inline int min_cover(const std::vector<std::uint32_t>& supports, int budget) {
  struct Search {
    const std::vector<std::uint32_t>& s;
    int best;
    void go(std::uint32_t chosen, int size) {
      if (size >= best) return;
      const std::uint32_t* open = nullptr;
      for (const auto& g : s)
        if (!(g & chosen)) {
          open = &g;
          break;
        }
      if (!open) {
        best = size;
        return;
      }
      for (std::uint32_t b = *open; b; b &= b - 1) go(chosen | (b & (~b + 1u)), size + 1);
    }
  } search{supports, budget + 1};
  search.go(0, 0);
  return search.best;
}

}  // namespace hilbert

namespace gb {

/// Hilbert series of R/I, Krull dimension and height, from the lead terms.
/// The dimension is the combinatorial height of the lead-term ideal; for
/// the standard grading it is cross-checked against the pole order at t = 1.
template <CoefficientField F>
HilbertData hilbert(const Ideal<F>& I) {
  const auto& R = I.ring();
  if (R->arity() != 1)
    throw InvalidArgument("Hilbert series needs a singly graded ring; regrade explicitly");
  std::vector<Monomial> leads;
  for (const auto& g : I.groebner()) leads.push_back(g.lead_monomial());
  leads = hilbert::minimalize(std::move(leads));
  HilbertData h;
  const auto n = static_cast<int>(R->nvars());
  h.numerator = hilbert::numerator(leads, R->weights(), R->nvars());
  std::vector<std::uint32_t> sup;
  for (const auto& m : leads) sup.push_back(m.support());
  if (!leads.empty() && leads[0].is_one()) {
    h.height = n;  // unit ideal; dimension reported as -1
    h.dim = -1;
    return h;
  }
  h.height = hilbert::min_cover(sup, n);
  h.dim = n - h.height;
  bool standard = std::all_of(R->weights().begin(), R->weights().end(), [](int w) { return w == 1; });
  if (standard) {
    // Divide out (1 - t) as often as possible.
    auto p = h.numerator;
    int k = 0;
    while (p.size() > 1) {
      std::int64_t at1 = 0;
      for (auto c : p) at1 += c;
      if (at1 != 0) break;
      // synthetic division by (1 - t): q_i = sum_{j<=i} p_j
      std::int64_t acc = 0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) p[i] = (acc += p[i]);
      p.pop_back();
      ++k;
    }
    if (k != h.height) throw Error("internal: Hilbert pole order disagrees with lead-term height");
  }
  return h;
}

}  // namespace gb
}  // namespace acikit
