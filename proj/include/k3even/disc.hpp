#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace k3even {

struct DiscriminantGroup {
  IntVector invariant_factors;   // all > 1, each dividing the next
  std::vector<FrameVector> lifts;
  std::vector<RatVector> lift_coordinates;  // lifts in the lattice basis
  Integer order = 1;

  // number of cyclic factors of even order
  std::size_t two_rank() const {
    std::size_t r = 0;
    for (const auto& f : invariant_factors)
      if (f % 2 == 0) ++r;
    return r;
  }

  std::string str() const {
    if (invariant_factors.empty()) return "0";
    std::string s;
    std::size_t i = 0;
    const auto& f = invariant_factors;
    while (i < f.size()) {
      std::size_t j = i;
      while (j < f.size() && f[j] == f[i]) ++j;
      if (!s.empty()) s += " + ";
      s += j - i == 1 ? "Z/" + f[i].str() : "(Z/" + f[i].str() + ")^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& l) {
  const IntMatrix& g = l.gram();
  if (det(g) == 0) throw std::invalid_argument("discriminant_group: " + l.name() + " is degenerate");
  SNFResult s = smith_normal_form(g);
  DiscriminantGroup out;
  for (std::size_t k = 0; k < s.diag.size(); ++k) {
    const Integer& dk = s.diag[k];
    out.order *= dk;
    if (dk == 1) continue;
    // lift of the k-th generator: V e_k / d_k, numerators reduced into [0, d_k)
    RatVector c(l.rank());
    for (std::size_t i = 0; i < l.rank(); ++i) c[i] = Rational(mod_pos(s.right(i, k), dk), dk);
    out.invariant_factors.push_back(dk);
    out.lifts.push_back(l.vector(c));
    out.lift_coordinates.push_back(std::move(c));
  }
  return out;
}

inline bool groups_isomorphic(const DiscriminantGroup& a, const DiscriminantGroup& b) {
  return a.invariant_factors == b.invariant_factors;
}

// Invariant factors (> 1) of a direct sum of cyclic groups Z/m_i.
inline IntVector invariant_factors_of(const IntVector& cyclic_orders) {
  IntVector out;
  for (const auto& d : smith_normal_form(IntMatrix::diagonal(cyclic_orders)).diag)
    if (d != 1) out.push_back(d);
  return out;
}

inline bool in_dual(const IntegerLattice& l, const FrameVector& x) {
  l.check_frame(x);
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (boost::multiprecision::denominator(inner(x, l.basis_vector(i))) != 1) return false;
  return true;
}

// x.x reduced into [0, 2).
inline Rational discriminant_form(const IntegerLattice& l, const FrameVector& x) {
  if (!l.rational_coordinates(x)) throw std::invalid_argument("discriminant_form: vector outside the rational span of " + l.name());
  if (!in_dual(l, x)) throw std::invalid_argument("discriminant_form: " + x.str() + " is not in the dual of " + l.name());
  Rational q = square(x);
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer two_den = 2 * denominator(q);
  return Rational(mod_pos(numerator(q), two_den), denominator(q));
}

}  // namespace k3even
