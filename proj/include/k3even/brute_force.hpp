#pragma once
// Wide-bound root scan for L-type lattices in plain 64-bit arithmetic. Shares no code with
// the positivity engine beyond reading the lattice basis: membership is decided by residues
// of 2x mod 2, certified by a covolume identity.

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace k3even::brute {

using Half = std::array<std::int64_t, 9>;  // 2x in frame coordinates

inline std::int64_t to_i64(const Integer& x) {
  if (x > INT64_MAX / 4 || x < INT64_MIN / 4) throw std::overflow_error("brute force: coefficient out of range");
  return static_cast<std::int64_t>(x);
}

class HalfLattice {
 public:
  // ns must satisfy Z^9 <= ns <= (1/2) Z^9 in its frame; checked via |det B| * |R| == 1
  explicit HalfLattice(const IntegerLattice& ns) {
    const std::size_t n = ns.rank();
    if (n != 9) throw std::invalid_argument("brute force: rank-9 lattices only");
    std::vector<std::array<std::int64_t, 9>> twice(n);
    for (std::size_t j = 0; j < n; ++j) {
      FrameVector b = ns.basis_vector(j);
      if (2 % b.denominator() != 0) throw std::invalid_argument("brute force: basis leaves (1/2)Z^9");
      for (std::size_t i = 0; i < 9; ++i) twice[j][i] = to_i64(b.numerators()[i] * (2 / b.denominator()));
    }
    // residue subgroup R of (Z/2)^9 spanned by 2b mod 2
    residues_.insert(0);
    for (const auto& t : twice) {
      unsigned m = mask(t);
      std::set<unsigned> next = residues_;
      for (unsigned r : residues_) next.insert(r ^ m);
      residues_ = next;
    }
    // |det(2B)| = 2^9 |det B|
    std::int64_t d2 = det(twice);
    if (d2 < 0) d2 = -d2;
    if (d2 * static_cast<std::int64_t>(residues_.size()) != 512)
      throw std::invalid_argument("brute force: lattice is not sandwiched between Z^9 and (1/2)Z^9");
  }

  bool contains(const Half& x) const { return residues_.count(mask(x)) != 0; }
  std::size_t residue_count() const { return residues_.size(); }

 private:
  static unsigned mask(const std::array<std::int64_t, 9>& x) {
    unsigned m = 0;
    for (std::size_t i = 0; i < 9; ++i)
      if (x[i] % 2 != 0) m |= 1u << i;
    return m;
  }

  // fraction-free elimination over int64 with exact division
  static std::int64_t det(std::vector<std::array<std::int64_t, 9>> a) {
    const std::size_t n = a.size();
    std::int64_t prev = 1, sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      if (p != k) {
        std::swap(a[p], a[k]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          __int128 v = static_cast<__int128>(a[i][j]) * a[k][k] - static_cast<__int128>(a[i][k]) * a[k][j];
          a[i][j] = static_cast<std::int64_t>(v / prev);
        }
      prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
  }

  std::set<unsigned> residues_;
};

struct ScanResult {
  std::vector<FrameVector> obstructing;  // sorted
  std::size_t roots_seen = 0;
  std::int64_t a_box_halves = 0;
};

// All effective-model roots C = (A/2) L - sum (B_i/2) N_i with 1 <= A <= a_box_halves, B_i >= 0,
// plus the N_i, with D.C <= 0 (or < 0 when strict).
inline ScanResult scan_roots(const IntegerLattice& ns, const FrameVector& D, std::int64_t a_box_halves, bool strict) {
  const IntMatrix& g = ns.frame()->gram;
  const std::int64_t d = to_i64(g(0, 0)) / 2;
  HalfLattice lat(ns);
  std::array<std::int64_t, 9> q{};
  for (std::size_t i = 0; i < 9; ++i) q[i] = to_i64(D.numerators()[i]);
  ScanResult out;
  out.a_box_halves = a_box_halves;
  // den(D) * D.C = d q0 A + sum q_i B_i for C = (A, -B)/2
  auto bad = [&](std::int64_t v) { return strict ? v < 0 : v <= 0; };
  auto emit = [&](const Half& x) {
    IntVector num(9);
    for (std::size_t i = 0; i < 9; ++i) num[i] = x[i];
    out.obstructing.emplace_back(ns.frame(), num, 2);
  };
  for (std::int64_t A = 1; A <= a_box_halves; ++A) {
    const std::int64_t target = d * A * A + 4;  // sum B_i^2
    Half x{};
    x[0] = A;
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
      if (i == 8) {
        std::int64_t b = 0;
        while ((b + 1) * (b + 1) <= left) ++b;
        if (b * b != left) return;
        x[8] = -b;
        if (!lat.contains(x)) return;
        ++out.roots_seen;
        std::int64_t v = d * q[0] * A;
        for (std::size_t k = 1; k < 9; ++k) v += q[k] * -x[k];
        if (bad(v)) emit(x);
        return;
      }
      for (std::int64_t b = 0; b * b <= left; ++b) {
        x[i] = -b;
        rec(i + 1, left - b * b);
      }
    };
    rec(1, target);
  }
  for (std::size_t i = 1; i < 9; ++i) {
    // D.N_i = -2 q_i / den(D)
    if (bad(-q[i])) {
      Half x{};
      x[i] = 2;
      emit(x);
    }
  }
  std::sort(out.obstructing.begin(), out.obstructing.end());
  return out;
}

}  // namespace k3even::brute
