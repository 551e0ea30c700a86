#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3even {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// floor division / nonnegative remainder for positive m
inline Integer floor_div(const Integer& a, const Integer& m) {
  Integer q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

inline Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long x : row) a_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("IntMatrix: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  IntVector col(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  // row i += f * row k
  void add_row(std::size_t i, std::size_t k, const Integer& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
  }
  void add_col(std::size_t j, std::size_t k, const Integer& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("IntMatrix: vector dimension mismatch");
    IntVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  IntMatrix& operator*=(const Integer& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> a_;
};

// Fraction-free Gaussian elimination (Bareiss).
inline Integer det(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

struct SNFResult {
  IntVector diag;        // min(rows, cols) entries, zeros last
  IntMatrix left;        // U
  IntMatrix right;       // V, with U*M*V = diag
  IntMatrix left_inverse;

  std::size_t rank() const {
    return static_cast<std::size_t>(std::count_if(diag.begin(), diag.end(), [](const Integer& x) { return x != 0; }));
  }
};

namespace detail {

struct SnfState {
  IntMatrix a, u, uinv, v;

  void swap_rows(std::size_t i, std::size_t k) {
    a.swap_rows(i, k);
    u.swap_rows(i, k);
    uinv.swap_cols(i, k);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    a.swap_cols(j, k);
    v.swap_cols(j, k);
  }
  void add_row(std::size_t i, std::size_t k, const Integer& f) {
    a.add_row(i, k, f);
    u.add_row(i, k, f);
    uinv.add_col(k, i, -f);
  }
  void add_col(std::size_t j, std::size_t k, const Integer& f) {
    a.add_col(j, k, f);
    v.add_col(j, k, f);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
  }
};

}  // namespace detail

inline SNFResult smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  detail::SnfState s{m, IntMatrix::identity(R), IntMatrix::identity(R), IntMatrix::identity(C)};
  IntMatrix& a = s.a;
  const std::size_t steps = std::min(R, C);

  for (std::size_t t = 0; t < steps; ++t) {
    // smallest nonzero |entry| in the trailing block
    std::size_t pi = R, pj = C;
    Integer best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a(i, j) != 0 && (pi == R || abs(a(i, j)) < best)) {
          best = abs(a(i, j));
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        s.add_row(i, t, -(a(i, t) / a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        s.add_col(j, t, -(a(t, j) / a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remainder of row/col t into the pivot
        std::size_t bi = t, bj = t;
        Integer b = abs(a(t, t));
        for (std::size_t i = t + 1; i < R; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < b) b = abs(a(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < b) b = abs(a(t, j)), bi = t, bj = j;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == R) break;
      s.add_row(t, bad, 1);
    }
    if (a(t, t) < 0) s.negate_row(t);
  }

  SNFResult res;
  res.diag.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) res.diag[i] = a(i, i);
  res.left = std::move(s.u);
  res.right = std::move(s.v);
  res.left_inverse = std::move(s.uinv);
  return res;
}

struct Signature {
  std::size_t positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const IntMatrix& g) {
  if (!g.symmetric()) throw std::invalid_argument("signature: matrix is not symmetric");
  const std::size_t n = g.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(g(i, j));

  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  Signature sig;

  auto remove = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    auto piv = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return a[i][i] != 0; });
    if (piv != active.end()) {
      std::size_t p = *piv;
      for (std::size_t j : active) {
        if (j == p || a[j][p] == 0) continue;
        Rational f = a[j][p] / a[p][p];
        for (std::size_t k : active) a[j][k] -= f * a[p][k];
        for (std::size_t k : active) a[k][j] = a[j][k];
      }
      (a[p][p] > 0 ? sig.positive : sig.negative)++;
      remove(p);
      continue;
    }
    // zero diagonal: look for a hyperbolic pair and replace e_i by e_i + e_j
    std::size_t hi = n, hj = n;
    for (std::size_t i : active) {
      for (std::size_t j : active)
        if (i != j && a[i][j] != 0) {
          hi = i;
          hj = j;
          break;
        }
      if (hi != n) break;
    }
    if (hi == n) {
      sig.zero += active.size();
      break;
    }
    for (std::size_t k : active) a[hi][k] += a[hj][k];
    for (std::size_t k : active) a[k][hi] = a[hi][k];
    a[hi][hi] = a[hi][hi] + a[hj][hi];  // (e_i+e_j)^2 = 2 a_ij after the row update
  }
  return sig;
}

// Precomputed SNF of A for repeated integral solves A x = b.
class IntegralSolver {
 public:
  explicit IntegralSolver(IntMatrix a) : a_(std::move(a)), snf_(smith_normal_form(a_)) {}

  const IntMatrix& matrix() const { return a_; }
  const SNFResult& snf() const { return snf_; }

  std::optional<IntVector> solve(const IntVector& b) const {
    if (b.size() != a_.rows()) throw std::invalid_argument("solve_integral: dimension mismatch");
    IntVector c = snf_.left * b;
    IntVector y(a_.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Integer di = i < snf_.diag.size() ? snf_.diag[i] : Integer(0);
      if (di == 0) {
        if (c[i] != 0) return std::nullopt;
      } else {
        if (c[i] % di != 0) return std::nullopt;
        y[i] = c[i] / di;
      }
    }
    return snf_.right * y;
  }

  std::optional<RatVector> solve_rational(const IntVector& b) const {
    if (b.size() != a_.rows()) throw std::invalid_argument("solve_rational: dimension mismatch");
    IntVector c = snf_.left * b;
    RatVector y(a_.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Integer di = i < snf_.diag.size() ? snf_.diag[i] : Integer(0);
      if (di == 0) {
        if (c[i] != 0) return std::nullopt;
      } else {
        y[i] = Rational(c[i], di);
      }
    }
    RatVector x(a_.cols());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) x[i] += Rational(snf_.right(i, j)) * y[j];
    return x;
  }

 private:
  IntMatrix a_;
  SNFResult snf_;
};

inline std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integral: dimension mismatch");
  return IntegralSolver(a).solve(b);
}

// Matrix with rational entries stored as integer numerators over one positive denominator.
struct RationalMatrix {
  IntMatrix num;
  Integer den = 1;

  RationalMatrix() = default;
  RationalMatrix(IntMatrix n, Integer d = 1) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("RationalMatrix: zero denominator");
    if (den < 0) {
      den = -den;
      num *= Integer(-1);
    }
    Integer g = den;
    for (std::size_t i = 0; i < num.rows(); ++i)
      for (std::size_t j = 0; j < num.cols(); ++j) g = gcd(g, num(i, j));
    if (g > 1) {
      for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j) num(i, j) /= g;
      den /= g;
    }
  }

  std::size_t rows() const { return num.rows(); }
  std::size_t cols() const { return num.cols(); }
  Rational at(std::size_t i, std::size_t j) const { return Rational(num(i, j), den); }
  bool integral() const { return den == 1; }

  static RationalMatrix from_rationals(const std::vector<std::vector<Rational>>& rows) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Integer d = 1;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("RationalMatrix: ragged rows");
      for (const auto& q : row) d = lcm(d, denominator(q));
    }
    IntMatrix n(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) n(i, j) = numerator(rows[i][j]) * (d / denominator(rows[i][j]));
    return RationalMatrix(std::move(n), d);
  }

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.den == b.den && a.num == b.num;
  }
};

// Inverse over Q by Gauss-Jordan; nullopt when singular.
inline std::optional<RationalMatrix> rational_inverse(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("rational_inverse: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[k], a[p]);
    Rational inv = 1 / a[k][k];
    for (auto& x : a[k]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k];
      for (std::size_t j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
  return RationalMatrix::from_rationals(out);
}

inline std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

}  // namespace k3even
