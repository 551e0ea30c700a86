#pragma once

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "disc.hpp"
#include "families.hpp"

namespace k3even {

struct PositivityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---- frame shapes -------------------------------------------------------------

// (H, K) with H the first frame vector and K its orthogonal complement:
// L-type: diag(2d, -2 x 8); M-type: diag(2d', E8(-2)).
struct PolarizedFrame {
  enum Kind { L, M } kind;
  Integer h;  // H^2
  Integer d() const { return h / 2; }
};

inline std::optional<PolarizedFrame> polarized_frame(const FramePtr& f) {
  const IntMatrix& g = f->gram;
  if (g.rows() != 9 || g(0, 0) <= 0 || g(0, 0) % 2 != 0) return std::nullopt;
  for (std::size_t j = 1; j < 9; ++j)
    if (g(0, j) != 0) return std::nullopt;
  bool diag = true;
  for (std::size_t i = 1; i < 9; ++i)
    for (std::size_t j = 1; j < 9; ++j)
      if (g(i, j) != (i == j ? -2 : 0)) diag = false;
  if (diag) return PolarizedFrame{PolarizedFrame::L, g(0, 0)};
  IntMatrix e = scaled(e8_cartan(), -2);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (g(i + 1, j + 1) != e(i, j)) return std::nullopt;
  return PolarizedFrame{PolarizedFrame::M, g(0, 0)};
}

inline PolarizedFrame require_frame(const IntegerLattice& ns, const char* op) {
  auto p = polarized_frame(ns.frame());
  if (!p) throw PositivityError(std::string(op) + ": unsupported lattice " + ns.name() + " (bounds exist only for the rank-9 L and M families)");
  return *p;
}

inline Integer require_integer(const Rational& q, const std::string& what) {
  if (boost::multiprecision::denominator(q) != 1) throw PositivityError(what + " = " + to_string(q) + " is not an integer");
  return boost::multiprecision::numerator(q);
}

inline Rational rational_gcd(const Rational& x, const Rational& y) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer q = lcm(denominator(x), denominator(y));
  Integer a = numerator(x) * (q / denominator(x)), b = numerator(y) * (q / denominator(y));
  return Rational(gcd(abs(a), abs(b)), q);
}

// ---- exact short vectors --------------------------------------------------------

// Integer y with (y + c)^T Q (y + c) <= bound for Q positive definite (Fincke-Pohst, exact).
inline std::vector<IntVector> short_vectors(const IntMatrix& q, const Rational& bound, const RatVector& center = {}) {
  const std::size_t n = q.rows();
  if (!q.symmetric()) throw std::invalid_argument("short_vectors: form is not symmetric");
  RatVector c = center.empty() ? RatVector(n) : center;
  // Q(z) = sum_i diag_i (z_i + sum_{j>i} mu_ij z_j)^2
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(q(i, j));
  std::vector<Rational> diag(n);
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] <= 0) throw std::invalid_argument("short_vectors: form is not positive definite");
    diag[i] = a[i][i];
    for (std::size_t j = i + 1; j < n; ++j) mu[i][j] = a[i][j] / a[i][i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i + 1; k < n; ++k) a[j][k] -= mu[i][j] * a[i][k];
  }
  std::vector<IntVector> out;
  IntVector y(n);
  std::vector<Rational> z(n);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t k, const Rational& left) {
    // level k = n-1 ... 0
    Rational u = c[k];
    for (std::size_t j = k + 1; j < n; ++j) u += mu[k][j] * z[j];
    // |y_k + u| <= sqrt(left / diag_k) <= isqrt(floor(left / diag_k)) + 1
    Rational room = left / diag[k];
    Integer s = boost::multiprecision::sqrt(boost::multiprecision::numerator(room) / boost::multiprecision::denominator(room)) + 1;
    Rational neg = -u;
    Integer mid = boost::multiprecision::numerator(neg) / boost::multiprecision::denominator(neg);
    for (Integer yk = mid - s - 1; yk <= mid + s + 1; ++yk) {
      Rational t = Rational(yk) + u;
      Rational used = diag[k] * t * t;
      if (used > left) continue;
      y[k] = yk;
      z[k] = Rational(yk) + c[k];
      if (k == 0) {
        out.push_back(y);
      } else {
        rec(k - 1, left - used);
      }
    }
  };
  if (n == 0) return out;
  rec(n - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- vectors of L-type frames ----------------------------------------------------

// Coefficient granularity of NS in its frame: gcd of the L- (resp. N-) coefficients of the basis.
struct CoefficientSteps {
  Rational a_step, b_step;
};

inline CoefficientSteps coefficient_steps(const IntegerLattice& ns) {
  Rational a = 0, b = 0;
  for (std::size_t j = 0; j < ns.rank(); ++j) {
    FrameVector v = ns.basis_vector(j);
    a = rational_gcd(a, v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) b = rational_gcd(b, v[i]);
  }
  return {a, b};
}

// All nonnegative integer 8-vectors with the given sum of squares.
inline void nonnegative_representations(const Integer& total, std::size_t len, const std::function<void(const std::vector<Integer>&)>& f) {
  std::vector<Integer> v(len);
  std::function<void(std::size_t, const Integer&)> rec = [&](std::size_t i, const Integer& left) {
    if (i + 1 == len) {
      Integer s = boost::multiprecision::sqrt(left);
      if (s * s == left) {
        v[i] = s;
        f(v);
      }
      return;
    }
    for (Integer x = 0; x * x <= left; ++x) {
      v[i] = x;
      rec(i + 1, left - x * x);
    }
  };
  if (len == 0) {
    if (total == 0) f(v);
    return;
  }
  rec(0, total);
}

// a*L - step * sum beta_i N_i
inline FrameVector l_frame_vector(const FramePtr& f, const Rational& a, const Rational& step, const std::vector<Integer>& beta) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer den = lcm(denominator(a), denominator(step));
  IntVector num(9);
  num[0] = numerator(a) * (den / denominator(a));
  Integer s = numerator(step) * (den / denominator(step));
  for (std::size_t i = 0; i < 8; ++i) num[i + 1] = -s * beta[i];
  return FrameVector(f, num, den);
}

// D = p L - sum w_i N_i
struct LDivisorShape {
  Integer d;
  Rational p;
  std::vector<Rational> w;
  Rational W() const {  // sum of w_i^2 over w_i > 0
    Rational s = 0;
    for (const auto& x : w)
      if (x > 0) s += x * x;
    return s;
  }
  Rational S() const {
    Rational s = 0;
    for (const auto& x : w) s += x * x;
    return s;
  }
};

inline LDivisorShape l_shape(const PolarizedFrame& pf, const FrameVector& D) {
  LDivisorShape s{pf.d(), D[0], {}};
  for (std::size_t i = 1; i < 9; ++i) s.w.push_back(-D[i]);
  return s;
}

// ---- root constraint profile ------------------------------------------------------

struct RootConstraintProfile {
  Rational a_step = 1, b_step = 1;  // allowed denominators, read off the lattice basis
  bool strict = false;              // D.C < 0 (nef test) instead of D.C <= 0
  bool include_exceptional = true;  // the N_i are admitted separately
  // candidates: C = a L + sum b_i N_i with a > 0 and every b_i <= 0

  static RootConstraintProfile of(const IntegerLattice& ns, bool strict) {
    auto s = coefficient_steps(ns);
    return {s.a_step, s.b_step, strict, true};
  }
};

inline void require_divisor(const IntegerLattice& ns, const FrameVector& D, const char* op) {
  ns.check_frame(D);
  if (!ns.contains(D)) throw PositivityError(std::string(op) + ": " + D.str() + " is not in " + ns.name());
  if (square(D) < 0) throw PositivityError(std::string(op) + ": D^2 = " + to_string(square(D)) + " < 0 rejected");
}

// Largest a = j*step (j >= 0) with alpha a^2 + beta a + gamma <= 0; 0 when only a = 0 qualifies.
inline Rational largest_admissible(const Rational& alpha, const Rational& beta, const Rational& gamma, const Rational& step) {
  if (alpha < 0 || (alpha == 0 && beta <= 0)) throw PositivityError("search bound is unbounded for this divisor");
  Rational best = 0;
  for (Rational a = step;; a += step) {
    if (alpha * a * a + beta * a + gamma > 0) break;
    best = a;
  }
  return best;
}

// Proven a-range for candidate roots against D (L-type frames).
inline Rational root_search_bound(const LDivisorShape& s, bool strict, const Rational& a_step) {
  Rational d(s.d), W = s.W();
  if (s.p <= 0) throw PositivityError("divisor with nonpositive L-coefficient is outside the supported shapes");
  Rational lead = d * (d * s.p * s.p - W);
  // ample test:  (d p a)^2 <= W (d a^2 + 1)
  // nef test:    (d p a + 1/2)^2 <= W (d a^2 + 1)
  if (!strict) return largest_admissible(lead, 0, -W, a_step);
  return largest_admissible(lead, d * s.p, Rational(1, 4) - W, a_step);
}

struct RootEnumeration {
  std::vector<FrameVector> roots;  // sorted
  Rational a_max;
  bool exhaustive = true;
};

inline RootEnumeration enumerate_roots(const IntegerLattice& ns, const FrameVector& D, const RootConstraintProfile& prof, unsigned jobs = 1) {
  require_divisor(ns, D, "enumerate_obstructing_roots");
  PolarizedFrame pf = require_frame(ns, "enumerate_obstructing_roots");
  RootEnumeration out;
  const FramePtr& f = ns.frame();
  auto obstructs = [&](const FrameVector& c) {
    Rational x = inner(D, c);
    return prof.strict ? x < 0 : x <= 0;
  };
  if (pf.kind == PolarizedFrame::M) {
    // only multiples of M: an effective root C has M.C > 0, so none obstructs; roots
    // orthogonal to M would lie in NS cap E8(-2)
    for (std::size_t i = 1; i < 9; ++i)
      if (D[i] != 0) throw PositivityError("enumerate_obstructing_roots: only multiples of M are supported on " + ns.name());
    if (D[0] <= 0) throw PositivityError("enumerate_obstructing_roots: divisor with nonpositive M-coefficient");
    IntMatrix q = scaled(e8_cartan(), 2);
    for (const auto& y : short_vectors(q, 2)) {
      IntVector v(9);
      for (std::size_t i = 0; i < 8; ++i) v[i + 1] = y[i];
      FrameVector c(f, v);
      if (!c.is_zero() && square(c) == -2 && ns.contains(c)) out.roots.push_back(c);
    }
    out.a_max = 0;
    return out;
  }
  LDivisorShape s = l_shape(pf, D);
  out.a_max = root_search_bound(s, prof.strict, prof.a_step);
  const Integer d = s.d;
  std::vector<Rational> as;
  for (Rational a = prof.a_step; a <= out.a_max; a += prof.a_step) as.push_back(a);
  std::mutex mu;
  auto work = [&](unsigned w, unsigned nw) {
    std::vector<FrameVector> local;
    for (std::size_t k = w; k < as.size(); k += nw) {
      const Rational& a = as[k];
      Rational t = (Rational(d) * a * a + 1) / (prof.b_step * prof.b_step);
      if (boost::multiprecision::denominator(t) != 1) continue;
      nonnegative_representations(boost::multiprecision::numerator(t), 8, [&](const std::vector<Integer>& beta) {
        FrameVector c = l_frame_vector(f, a, prof.b_step, beta);
        if (obstructs(c) && ns.contains(c)) local.push_back(c);
      });
    }
    std::lock_guard<std::mutex> lock(mu);
    out.roots.insert(out.roots.end(), local.begin(), local.end());
  };
  unsigned nw = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, as.size()))));
  if (nw == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> ts;
    for (unsigned w = 0; w < nw; ++w) ts.emplace_back(work, w, nw);
    for (auto& t : ts) t.join();
  }
  if (prof.include_exceptional)
    for (int i = 1; i <= 8; ++i) {
      FrameVector n = FrameVector::unit(f, i);
      if (obstructs(n)) out.roots.push_back(n);
    }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

inline std::vector<FrameVector> enumerate_obstructing_roots(const IntegerLattice& ns, const FrameVector& D, const RootConstraintProfile& prof, unsigned jobs = 1) {
  return enumerate_roots(ns, D, prof, jobs).roots;
}

// ---- classification -------------------------------------------------------------

enum class Positivity { ample, pseudo_ample, nef, not_nef };

inline const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::ample: return "ample";
    case Positivity::pseudo_ample: return "pseudo_ample";
    case Positivity::nef: return "nef";
    case Positivity::not_nef: return "not_nef";
  }
  return "?";
}

struct PositivityReport {
  FrameVector divisor;
  Integer self_intersection;
  Positivity status = Positivity::not_nef;
  std::optional<FrameVector> witness;
  std::vector<FrameVector> roots;  // every candidate root meeting the test inequality
  Rational search_bound;           // a_max
  bool exhaustive = true;
  std::vector<std::string> assumptions;

  bool nef() const { return status != Positivity::not_nef; }
  bool big_and_nef() const { return status == Positivity::ample || status == Positivity::pseudo_ample; }
};

inline std::vector<std::string> effectivity_assumptions(const PolarizedFrame& pf) {
  if (pf.kind == PolarizedFrame::L)
    return {"effective irreducible roots other than N_i have a > 0 and b_i <= 0 (L pseudo-ample, C.N_i >= 0)"};
  return {"M lies in the ample chamber: effective roots have M.C > 0"};
}

inline PositivityReport classify_positivity(const IntegerLattice& ns, const FrameVector& D, unsigned jobs = 1) {
  require_divisor(ns, D, "classify_positivity");
  PolarizedFrame pf = require_frame(ns, "classify_positivity");
  PositivityReport r;
  r.divisor = D;
  r.self_intersection = require_integer(square(D), "D^2");
  r.assumptions = effectivity_assumptions(pf);
  const bool isotropic = r.self_intersection == 0;
  auto e = enumerate_roots(ns, D, RootConstraintProfile::of(ns, isotropic), jobs);
  r.roots = e.roots;
  r.search_bound = e.a_max;
  r.exhaustive = e.exhaustive;
  std::optional<FrameVector> negative, zero;
  for (const auto& c : r.roots) {
    Rational x = inner(D, c);
    if (x < 0 && !negative) negative = c;
    if (x == 0 && !zero) zero = c;
  }
  if (negative) {
    r.status = Positivity::not_nef;
    r.witness = negative;
  } else if (isotropic) {
    r.status = Positivity::nef;
  } else if (zero) {
    r.status = Positivity::pseudo_ample;
    r.witness = zero;
  } else {
    r.status = Positivity::ample;
  }
  return r;
}

// ---- even sets ----------------------------------------------------------------

struct EvenSetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_even_set(const IntegerLattice& ns, const std::vector<FrameVector>& octet) {
  if (octet.size() != 8) throw EvenSetError("is_even_set: expected 8 classes, got " + std::to_string(octet.size()));
  for (std::size_t i = 0; i < 8; ++i) {
    ns.check_frame(octet[i]);
    if (!ns.contains(octet[i])) throw EvenSetError("is_even_set: class " + std::to_string(i + 1) + " " + octet[i].str() + " is not in " + ns.name());
    if (square(octet[i]) != -2)
      throw EvenSetError("is_even_set: class " + std::to_string(i + 1) + " has square " + to_string(square(octet[i])) + ", not -2");
  }
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      if (inner(octet[i], octet[j]) != 0)
        throw EvenSetError("is_even_set: classes " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not orthogonal (product " +
                           to_string(inner(octet[i], octet[j])) + ")");
  FrameVector s = FrameVector::zero(ns.frame());
  for (const auto& c : octet) s = s + c;
  return ns.contains(s / 2);
}

// Whether NS could contain an even octet at all, with the certificate used.
struct EvenSetFeasibility {
  bool possible = true;
  std::string certificate;
};

inline EvenSetFeasibility even_set_feasibility(const IntegerLattice& ns) {
  const IntMatrix& g = ns.gram();
  bool div4 = true;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) % (i == j ? 4 : 2) != 0) div4 = false;
  if (div4) return {false, "no roots: every square in " + ns.name() + " is divisible by 4"};
  // an even octet spans a copy of N, so NS is an overlattice of ZH + N' with N' the saturation of N;
  // its discriminant group is then a subquotient of Z/H^2 + A_{N'} and has 2-rank at most 7
  auto a = discriminant_group(ns);
  if (a.two_rank() > 7)
    return {false, "discriminant group " + a.str() + " has 2-rank " + std::to_string(a.two_rank()) + " > 7, the maximum for a lattice containing an even octet"};
  return {true, "no obstruction found"};
}

// ---- vectors of M-type frames -----------------------------------------------------

// x in NS with x.M = m and x^2 = s (M-type frames).
inline std::vector<FrameVector> m_frame_vectors(const IntegerLattice& ns, const Rational& m, const Rational& s) {
  PolarizedFrame pf = require_frame(ns, "m_frame_vectors");
  if (pf.kind != PolarizedFrame::M) throw PositivityError("m_frame_vectors: " + ns.name() + " is not an M-type lattice");
  for (std::size_t j = 1; j < ns.rank(); ++j)
    if (ns.basis_vector(j)[0] != 0) throw PositivityError("m_frame_vectors: basis of " + ns.name() + " is not adapted to ZM + E8(-2)");
  Rational a = m / Rational(pf.h);
  Rational k = a / ns.basis_vector(0)[0];
  if (boost::multiprecision::denominator(k) != 1) return {};
  FrameVector x0 = ns.basis_vector(0) * boost::multiprecision::numerator(k);
  // K-part lattice spanned by basis 1..8
  IntMatrix bk(8, 8);
  Integer den = 1;
  for (std::size_t j = 1; j < 9; ++j) den = lcm(den, ns.basis_vector(j).denominator());
  for (std::size_t j = 1; j < 9; ++j) {
    FrameVector b = ns.basis_vector(j);
    for (std::size_t i = 0; i < 8; ++i) bk(i, j - 1) = b.numerators()[i + 1] * (den / b.denominator());
  }
  IntMatrix qk = bk.transpose() * scaled(e8_cartan(), 2) * bk;  // den^2 * (-form)
  auto inv = rational_inverse(bk);
  if (!inv) throw PositivityError("m_frame_vectors: degenerate E8 part");
  RatVector c(8);
  for (std::size_t i = 0; i < 8; ++i) {
    Rational t = 0;
    for (std::size_t l = 0; l < 8; ++l) t += Rational(inv->num(i, l), inv->den) * x0[l + 1] * Rational(den);
    c[i] = t;
  }
  Rational target = (Rational(pf.h) * a * a - s) * Rational(den * den);
  std::vector<FrameVector> out;
  if (target < 0) return out;
  for (const auto& y : short_vectors(qk, target, c)) {
    FrameVector x = x0;
    for (std::size_t j = 0; j < 8; ++j)
      if (y[j] != 0) x = x + ns.basis_vector(j + 1) * y[j];
    if (square(x) == s) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Search for an even octet among roots R with 0 < M.R <= degree_bound (M-type frames).
inline std::optional<std::vector<FrameVector>> find_even_octet(const IntegerLattice& ns, int degree_bound) {
  std::vector<FrameVector> roots;
  for (int r = 1; r <= degree_bound; ++r) {
    auto v = m_frame_vectors(ns, Rational(r), -2);
    roots.insert(roots.end(), v.begin(), v.end());
  }
  const std::size_t n = roots.size();
  std::vector<std::vector<char>> orth(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) orth[i][j] = orth[j][i] = inner(roots[i], roots[j]) == 0;
  std::vector<std::size_t> cur;
  std::optional<std::vector<FrameVector>> hit;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (hit) return;
    if (cur.size() == 8) {
      std::vector<FrameVector> oct;
      for (auto i : cur) oct.push_back(roots[i]);
      if (is_even_set(ns, oct)) hit = oct;
      return;
    }
    for (std::size_t i = start; i < n && !hit; ++i) {
      if (!std::all_of(cur.begin(), cur.end(), [&](std::size_t j) { return orth[i][j]; })) continue;
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return hit;
}

// ---- free pencils -------------------------------------------------------------

struct PencilDecomposition {
  std::string kind;  // isotropic, kollar, cone
  Integer a;
  FrameVector E;
  std::vector<FrameVector> gammas;
};

inline Integer divisibility(const IntegerLattice& ns, const FrameVector& D) {
  auto c = ns.coordinates(D);
  if (!c) throw PositivityError(D.str() + " is not in " + ns.name());
  Integer g = 0;
  for (const auto& x : *c) g = gcd(g, abs(x));
  return g;
}

inline bool is_nef(const IntegerLattice& ns, const FrameVector& x) { return classify_positivity(ns, x).nef(); }

inline std::optional<PencilDecomposition> pencil_decomposition(const IntegerLattice& ns, const FrameVector& D) {
  auto rep = classify_positivity(ns, D);
  if (!rep.nef()) throw PositivityError("pencil_decomposition: " + D.str() + " is not nef (witness " + rep.witness->str() + ")");
  const FramePtr& f = ns.frame();
  if (rep.self_intersection == 0) {
    Integer k = divisibility(ns, D);
    return PencilDecomposition{"isotropic", k, D / k, {}};
  }
  PolarizedFrame pf = require_frame(ns, "pencil_decomposition");
  Integer a = rep.self_intersection / 2 + 1;
  Integer m = rep.self_intersection / 2 - 1;  // D.Gamma
  auto try_gamma = [&](const FrameVector& g) -> std::optional<PencilDecomposition> {
    if (inner(D, g) != Rational(m)) return std::nullopt;
    FrameVector e = (D - g) / a;
    if (!ns.contains(e) || !is_nef(ns, e)) return std::nullopt;
    return PencilDecomposition{"kollar", a, e, {g}};
  };
  std::vector<PencilDecomposition> found;
  if (pf.kind == PolarizedFrame::L) {
    auto steps = coefficient_steps(ns);
    for (int i = 1; i <= 8; ++i)
      if (auto p = try_gamma(FrameVector::unit(f, i))) found.push_back(*p);
    // Gamma = c L + sum beta_i N_i:  4d(dp^2 - S) c^2 - 4 d p m c + m^2 - 4S <= 0
    LDivisorShape s = l_shape(pf, D);
    Rational d(s.d), S = s.S();
    Rational cmax = largest_admissible(4 * d * (d * s.p * s.p - S), -4 * d * s.p * Rational(m), Rational(m * m) - 4 * S, steps.a_step);
    for (Rational c = steps.a_step; c <= cmax; c += steps.a_step) {
      Rational t = (d * c * c + 1) / (steps.b_step * steps.b_step);
      if (boost::multiprecision::denominator(t) != 1) continue;
      nonnegative_representations(boost::multiprecision::numerator(t), 8, [&](const std::vector<Integer>& beta) {
        FrameVector g = l_frame_vector(f, c, steps.b_step, beta);
        if (ns.contains(g))
          if (auto p = try_gamma(g)) found.push_back(*p);
      });
    }
  } else {
    for (const auto& g : m_frame_vectors(ns, Rational(m), -2))
      if (auto p = try_gamma(g)) found.push_back(*p);
  }
  if (!found.empty()) {
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.gammas < y.gammas; });
    return found.front();
  }
  if (rep.self_intersection == 4) {
    // D = 2E + Gamma0 + Gamma1 with disjoint roots orthogonal to D
    std::vector<FrameVector> perp;
    for (const auto& c : rep.roots)
      if (inner(D, c) == 0) perp.push_back(c);
    for (std::size_t i = 0; i < perp.size(); ++i)
      for (std::size_t j = i + 1; j < perp.size(); ++j) {
        if (inner(perp[i], perp[j]) != 0) continue;
        FrameVector e = (D - perp[i] - perp[j]) / 2;
        if (ns.contains(e) && is_nef(ns, e)) return PencilDecomposition{"cone", 2, e, {perp[i], perp[j]}};
      }
  }
  return std::nullopt;
}

// ---- hyperelliptic polarizations ------------------------------------------------

struct HyperellipticVerdict {
  bool double_cover = false;
  std::string target;  // P2, quadric, cone, scroll, veronese; empty when birational
  std::string reason;
  std::optional<FrameVector> witness;  // E with E.D = 2, or B with D = 2B
};

// nef isotropic E with E.D = 2, lexicographically smallest
inline std::optional<FrameVector> find_degree_two_pencil(const IntegerLattice& ns, const FrameVector& D) {
  PolarizedFrame pf = require_frame(ns, "hyperelliptic_test");
  const FramePtr& f = ns.frame();
  std::vector<FrameVector> found;
  if (pf.kind == PolarizedFrame::L) {
    auto steps = coefficient_steps(ns);
    LDivisorShape s = l_shape(pf, D);
    Rational d(s.d), S = s.S();
    // E = a L + sum q_i N_i, q_i <= 0 (E nef): (d p a - 1)^2 <= S d a^2
    Rational amax = largest_admissible(d * (d * s.p * s.p - S), -2 * d * s.p, 1, steps.a_step);
    for (Rational a = steps.a_step; a <= amax; a += steps.a_step) {
      Rational t = d * a * a / (steps.b_step * steps.b_step);
      if (boost::multiprecision::denominator(t) != 1) continue;
      nonnegative_representations(boost::multiprecision::numerator(t), 8, [&](const std::vector<Integer>& beta) {
        FrameVector e = l_frame_vector(f, a, steps.b_step, beta);
        if (inner(e, D) == 2 && ns.contains(e)) found.push_back(e);
      });
    }
  } else {
    // D = k M, so E.M = 2/k
    for (const auto& e : m_frame_vectors(ns, Rational(2) / D[0], 0))
      if (inner(e, D) == 2) found.push_back(e);
  }
  std::sort(found.begin(), found.end());
  for (const auto& e : found) {
    if (pf.kind == PolarizedFrame::L) {
      if (is_nef(ns, e)) return e;
      continue;
    }
    // roots R with M.R = r > 0 and E.R <= -1 need r <= 2 - M^2/4 (Cauchy-Schwarz on E8(-2))
    bool nef = true;
    for (Integer r = 1; Rational(r) <= 2 - Rational(pf.h, 4) && nef; ++r)
      for (const auto& root : m_frame_vectors(ns, Rational(r), -2))
        if (inner(e, root) < 0) nef = false;
    if (nef) return e;
  }
  return std::nullopt;
}

inline HyperellipticVerdict hyperelliptic_test(const IntegerLattice& ns, const FrameVector& D) {
  auto rep = classify_positivity(ns, D);
  if (!rep.big_and_nef())
    throw PositivityError("hyperelliptic_test: " + D.str() + " is " + to_string(rep.status) + ", expected ample or pseudo-ample");
  PolarizedFrame pf = require_frame(ns, "hyperelliptic_test");
  if (pf.kind == PolarizedFrame::M)
    for (std::size_t i = 1; i < 9; ++i)
      if (D[i] != 0) throw PositivityError("hyperelliptic_test: only multiples of M are supported on " + ns.name());
  HyperellipticVerdict v;
  if (rep.self_intersection == 2) {
    v.double_cover = true;
    v.target = "P2";
    v.reason = "D^2 = 2";
    return v;
  }
  if (auto e = find_degree_two_pencil(ns, D)) {
    v.double_cover = true;
    v.witness = e;
    v.reason = "elliptic pencil E with E.D = 2";
    if (rep.self_intersection == 4) {
      FrameVector rest = D - *e * Integer(2);
      // cone when D - 2E splits as two disjoint roots orthogonal to D
      bool cone = false;
      for (const auto& c : rep.roots)
        if (inner(D, c) == 0 && square(rest - c) == -2 && inner(rest - c, c) == 0 && inner(D, rest - c) == 0 && ns.contains(rest - c))
          cone = true;
      v.target = cone ? "cone" : "quadric";
    } else {
      v.target = "scroll";
    }
    return v;
  }
  FrameVector b = D / 2;
  if (ns.contains(b) && square(b) == 2) {
    v.double_cover = true;
    v.witness = b;
    v.target = "veronese";
    v.reason = "D = 2B with B^2 = 2";
    return v;
  }
  v.reason = "no elliptic E with E.D = 2 and D/2 is not a genus-2 class";
  return v;
}

// ---- Riemann-Roch ---------------------------------------------------------------

struct SectionCount {
  Integer h0;
  std::string assumption;
};

inline SectionCount riemann_roch_h0(const IntegerLattice& ns, const FrameVector& D) {
  ns.check_frame(D);
  if (!ns.contains(D)) throw PositivityError("riemann_roch_h0: " + D.str() + " is not in " + ns.name());
  Integer d2 = require_integer(square(D), "D^2");
  if (d2 < 0) throw PositivityError("riemann_roch_h0: D^2 = " + d2.str() + " < 0 rejected");
  if (d2 > 0) return {d2 / 2 + 2, "valid under nef+big with no fixed part"};
  // D = kE with E a free elliptic pencil: h0 = k + 1
  return {divisibility(ns, D) + 1, "free elliptic pencil assumption"};
}

// ---- curves ---------------------------------------------------------------------

struct CurveData {
  Integer degree, genus;
};

inline CurveData curve_data(const IntegerLattice& ns, const FrameVector& C, const FrameVector& H) {
  for (const auto* x : {&C, &H}) {
    ns.check_frame(*x);
    if (!ns.contains(*x)) throw PositivityError("curve_data: " + x->str() + " is not in " + ns.name());
  }
  Integer c2 = require_integer(square(C), "C^2");
  if (c2 % 2 != 0) throw PositivityError("curve_data: C^2 = " + c2.str() + " is odd, genus not integral");
  return {require_integer(inner(C, H), "C.H"), c2 / 2 + 1};
}

}  // namespace k3even
