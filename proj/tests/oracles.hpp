#pragma once
// Independent reference computations for the test suites. Deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "k3even/exactlin.hpp"

namespace oracle {

using k3even::IntMatrix;
using k3even::Integer;
using k3even::IntVector;

inline IntMatrix e8_cartan() {
  return IntMatrix{{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                   {0, 0, -1, 2, -1, 0, 0, 0},  {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                   {0, 0, 0, 0, 0, -1, 2, 0},   {0, 0, -1, 0, 0, 0, 0, 2}};
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound, bool low_rank = false) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  if (low_rank && r > 1) {
    // duplicate a combination of rows to force a dependency
    for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2 - m(r > 2 ? 1 : 0, j);
  }
  return m;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, int bound, bool degenerate = false) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  if (degenerate && n > 1) {
    // zero diagonal forces the hyperbolic step
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
  }
  return m;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int k = 0; k < ops; ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    u.add_row(i, j, Integer(static_cast<long long>(rng() % 5) - 2));
    if (rng() % 4 == 0) u.swap_rows(i, j);
  }
  return u;
}

// Permutation expansion.
inline Integer leibniz_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    Integer t = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && t != 0; ++i) t *= m(i, p[i]);
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Cofactor expansion, used for minors.
inline Integer cofactor_det(const IntMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) sub(i - 1, kk++) = m(i, k);
    Integer c = m(0, j) * cofactor_det(sub);
    s += (j % 2 ? -c : c);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<bool> sel(n);
  std::fill(sel.begin(), sel.begin() + k, true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (sel[i]) idx.push_back(i);
    f(idx);
  } while (std::prev_permutation(sel.begin(), sel.end()));
}

// Invariant factors via determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k-minors.
inline IntVector determinantal_divisor_factors(const IntMatrix& m) {
  std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);
  IntVector out;
  Integer prev = 1;
  bool zero = false;
  for (std::size_t k = 1; k <= n; ++k) {
    if (zero) {
      out.push_back(0);
      continue;
    }
    Integer g = 0;
    subsets(r, k, [&](const std::vector<std::size_t>& rs) {
      if (g == 1) return;
      subsets(c, k, [&](const std::vector<std::size_t>& cs) {
        if (g == 1) return;
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        g = k3even::gcd(g, k3even::abs(cofactor_det(sub)));
      });
    });
    if (g == 0) {
      zero = true;
      out.push_back(0);
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Signature from the characteristic polynomial (small n only).
inline k3even::Signature signature_by_eigen_sign_count(const IntMatrix& g) {
  // Descartes' rule is exact for real-rooted polynomials: the number of positive
  // roots of det(tI - G) equals the sign changes of its coefficients.
  std::size_t n = g.rows();
  // characteristic polynomial via Faddeev-LeVerrier over rationals
  using k3even::Rational;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(g(i, j));
  std::vector<Rational> coef(n + 1);
  coef[n] = 1;
  std::vector<std::vector<Rational>> prev(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A*M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * prev[l][j];
        m[i][j] = s + (i == j ? coef[n - k + 1] : Rational(0));
      }
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    coef[n - k] = -tr / Rational(k);
    prev = m;
  }
  std::size_t zero = 0;
  while (zero <= n && coef[zero] == 0) ++zero;
  auto changes = [](const std::vector<Rational>& c) {
    std::size_t ch = 0;
    int last = 0;
    for (const auto& x : c) {
      if (x == 0) continue;
      int s = x > 0 ? 1 : -1;
      if (last && s != last) ++ch;
      last = s;
    }
    return ch;
  };
  std::vector<Rational> neg = coef;
  for (std::size_t i = 0; i <= n; ++i)
    if (i % 2) neg[i] = -neg[i];
  return {changes(coef), changes(neg), zero};
}

inline bool has_small_integer_solution(const IntMatrix& a, const IntVector& b, int box) {
  std::size_t c = a.cols();
  std::vector<long long> x(c, -box);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < a.rows() && ok; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < c; ++j) s += a(i, j) * x[j];
      ok = s == b[i];
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < c && x[k] == box) x[k++] = -box;
    if (k == c) return false;
    ++x[k];
  }
}

inline bool cramer_integral(const IntMatrix& a, const IntVector& b) {
  Integer d = leibniz_det(a);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    IntMatrix aj = a;
    for (std::size_t i = 0; i < a.rows(); ++i) aj(i, j) = b[i];
    if (leibniz_det(aj) % d != 0) return false;
  }
  return true;
}

}  // namespace oracle
