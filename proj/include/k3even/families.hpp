#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "disc.hpp"
#include "lattice.hpp"

namespace k3even {

enum class FamilyKind { L2d, L2dPrime, M2d, M2dPrime };
enum class GlueFlavor { none, pair, quadruple };

struct FamilyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const char* family_grammar() {
  return "expected <L|L'|M|M'>:2d=<even n> for L kinds or <M|M'>:2d'=<even n> for M kinds, e.g. \"L:2d=8\", \"L':2d=8\", \"M:2d'=4\", \"M':2d'=8\"";
}

struct NSFamily {
  FamilyKind kind = FamilyKind::L2d;
  int parameter = 1;  // d for L kinds, d' for M kinds; the form value is 2*parameter

  bool is_L() const { return kind == FamilyKind::L2d || kind == FamilyKind::L2dPrime; }
  bool is_M() const { return !is_L(); }
  bool primed() const { return kind == FamilyKind::L2dPrime || kind == FamilyKind::M2dPrime; }
  int form() const { return 2 * parameter; }

  GlueFlavor glue_flavor() const {
    if (kind != FamilyKind::L2dPrime) return GlueFlavor::none;
    return parameter % 4 == 2 ? GlueFlavor::pair : GlueFlavor::quadruple;
  }

  // throws FamilyError when the family does not exist
  void validate() const {
    if (parameter <= 0) throw FamilyError("family parameter must be positive, got " + std::to_string(parameter));
    if (kind == FamilyKind::L2dPrime && parameter % 2 != 0)
      throw FamilyError("no overlattice exists: L^2 = " + std::to_string(form()) + " is 2 mod 4, so NS = L_" + std::to_string(form()));
    if (kind == FamilyKind::M2dPrime && parameter % 2 != 0)
      throw FamilyError("M'_" + std::to_string(form()) + " is only constructed for M^2 divisible by 4 (index-2 overlattice of ZM + E8(-2)), got M^2 = " + std::to_string(form()));
  }

  bool valid() const {
    try {
      validate();
      return true;
    } catch (const FamilyError&) {
      return false;
    }
  }

  std::string str() const {
    std::string k = kind == FamilyKind::L2d ? "L" : kind == FamilyKind::L2dPrime ? "L'" : kind == FamilyKind::M2d ? "M" : "M'";
    return k + (is_L() ? ":2d=" : ":2d'=") + std::to_string(form());
  }
  std::string symbol() const {
    std::string k = kind == FamilyKind::L2d ? "L" : kind == FamilyKind::L2dPrime ? "L'" : kind == FamilyKind::M2d ? "M" : "M'";
    return k + "_" + std::to_string(form());
  }

  static NSFamily parse(const std::string& s) {
    static const std::regex re(R"(^\s*(L|L'|M|M')\s*:\s*(2d|2d')\s*=\s*(\d{1,6})\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw FamilyError("malformed family \"" + s + "\": " + family_grammar());
    NSFamily f;
    const std::string k = m[1], p = m[2];
    f.kind = k == "L" ? FamilyKind::L2d : k == "L'" ? FamilyKind::L2dPrime : k == "M" ? FamilyKind::M2d : FamilyKind::M2dPrime;
    if ((f.is_L() && p != "2d") || (f.is_M() && p != "2d'"))
      throw FamilyError("malformed family \"" + s + "\": " + family_grammar());
    int v = std::stoi(m[3]);
    if (v <= 0 || v % 2 != 0) throw FamilyError("malformed family \"" + s + "\": the form value must be a positive even integer; " + family_grammar());
    f.parameter = v / 2;
    return f;
  }

  static NSFamily L(int d) { return {FamilyKind::L2d, d}; }
  static NSFamily Lp(int d) { return {FamilyKind::L2dPrime, d}; }
  static NSFamily M(int d) { return {FamilyKind::M2d, d}; }
  static NSFamily Mp(int d) { return {FamilyKind::M2dPrime, d}; }

  friend bool operator==(const NSFamily&, const NSFamily&) = default;
};

// ---- standard Gram matrices -------------------------------------------------

inline IntMatrix e8_cartan() {
  return IntMatrix{{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                   {0, 0, -1, 2, -1, 0, 0, 0},  {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                   {0, 0, 0, 0, 0, -1, 2, 0},   {0, 0, -1, 0, 0, 0, 0, 2}};
}

inline IntMatrix scaled(IntMatrix m, long long s) {
  m *= Integer(s);
  return m;
}

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  IntMatrix m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

inline std::vector<std::string> indexed_names(const std::string& stem, int n, int from = 1) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(stem + std::to_string(from + i));
  return v;
}

// Root frame (L, N1..N8) with Gram diag(2d, -2, ..., -2).
inline FramePtr l_frame(int d) {
  IntMatrix g(9, 9);
  g(0, 0) = 2 * d;
  for (int i = 1; i < 9; ++i) g(i, i) = -2;
  auto names = indexed_names("N", 8);
  names.insert(names.begin(), "L");
  return make_frame("ZL+A1(-1)^8[L^2=" + std::to_string(2 * d) + "]", g, names);
}

// Root frame (M, e1..e8) with Gram diag(2d', E8(-2)).
inline FramePtr m_frame(int dp) {
  IntMatrix m(1, 1);
  m(0, 0) = 2 * dp;
  auto names = indexed_names("e", 8);
  names.insert(names.begin(), "M");
  return make_frame("ZM+E8(-2)[M^2=" + std::to_string(2 * dp) + "]", block_diagonal({m, scaled(e8_cartan(), -2)}), names);
}

inline FramePtr k3_frame() {
  IntMatrix u{{0, 1}, {1, 0}};
  IntMatrix e8m = scaled(e8_cartan(), -1);
  std::vector<std::string> names{"e1", "f1", "e2", "f2", "e3", "f3"};
  for (int i = 1; i <= 8; ++i) names.push_back("a" + std::to_string(i) + "'");
  for (int i = 1; i <= 8; ++i) names.push_back("a" + std::to_string(i) + "''");
  return make_frame("U^3+E8(-1)^2", block_diagonal({u, u, u, e8m, e8m}), names);
}

// Frame vector a*L + sum b_i N_i (or a*M + sum b_i e_i) with rational coefficients given as num/den.
inline FrameVector frame_vector(const FramePtr& f, const IntVector& num, const Integer& den = 1) {
  return FrameVector(f, num, den);
}

inline FrameVector nhat(const FramePtr& f) {
  IntVector v(9, Integer(1));
  v[0] = 0;
  return FrameVector(f, v, 2);
}

// sum of N_i (or e_i) over a 1-based index list
inline FrameVector sum_of(const FramePtr& f, const std::vector<int>& idx) {
  IntVector v(f->dim());
  for (int i : idx) v.at(i) += 1;
  return FrameVector(f, v);
}

// ---- glue vectors -----------------------------------------------------------

struct GlueVector {
  std::uint8_t mask = 0;  // bit i-1 set <=> N_i in the support

  static GlueVector of(const std::vector<int>& support) {
    GlueVector g;
    for (int i : support) {
      if (i < 1 || i > 8) throw std::invalid_argument("glue support index out of range: " + std::to_string(i));
      g.mask |= static_cast<std::uint8_t>(1u << (i - 1));
    }
    return g;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < 8; ++i)
      if (mask >> i & 1) s.push_back(i + 1);
    return s;
  }
  int size() const { return std::popcount(static_cast<unsigned>(mask)); }
  GlueVector complement() const { return {static_cast<std::uint8_t>(~mask)}; }
  std::string str() const {
    std::string s = "{";
    for (int i : support()) s += (s.size() > 1 ? "," : "") + std::to_string(i);
    return s + "}";
  }
  // lexicographic by support
  friend bool operator<(const GlueVector& a, const GlueVector& b) { return a.support() < b.support(); }
  friend bool operator==(const GlueVector&, const GlueVector&) = default;
};

// ---- lattice constructors ---------------------------------------------------

inline IntegerLattice make_N() {
  IntMatrix g(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = -2;
  auto f = make_frame("A1(-1)^8", g, indexed_names("N", 8));
  std::vector<FrameVector> b;
  for (int i = 0; i < 7; ++i) b.push_back(FrameVector::unit(f, i));
  b.push_back(FrameVector(f, IntVector(8, Integer(1)), 2));
  auto names = indexed_names("N", 7);
  names.push_back("Nhat");
  return IntegerLattice::from_basis("N", b, names);
}

namespace detail {

inline IntegerLattice make_L(int d) {
  auto f = l_frame(d);
  std::vector<FrameVector> b{FrameVector::unit(f, 0)};
  for (int i = 1; i <= 7; ++i) b.push_back(FrameVector::unit(f, i));
  b.push_back(nhat(f));
  auto names = indexed_names("N", 7);
  names.insert(names.begin(), "L");
  names.push_back("Nhat");
  return IntegerLattice::from_basis("L_" + std::to_string(2 * d), b, names);
}

inline std::vector<int> canonical_glue_support(int d) {
  return d % 4 == 2 ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3, 4};
}

inline IntegerLattice make_Lp(int d) {
  auto f = l_frame(d);
  auto s = canonical_glue_support(d);
  FrameVector g = (FrameVector::unit(f, 0) - sum_of(f, s)) / 2;
  std::vector<FrameVector> b{g};
  for (int i = 1; i <= 7; ++i) b.push_back(FrameVector::unit(f, i));
  b.push_back(nhat(f));
  auto names = indexed_names("N", 7);
  names.insert(names.begin(), "g");
  names.push_back("Nhat");
  return IntegerLattice::from_basis("L'_" + std::to_string(2 * d), b, names);
}

inline IntegerLattice make_M(int dp) {
  auto f = m_frame(dp);
  std::vector<FrameVector> b;
  for (int i = 0; i < 9; ++i) b.push_back(FrameVector::unit(f, i));
  return IntegerLattice::from_basis("M_" + std::to_string(2 * dp), b, f->basis_names);
}

inline FrameVector m_prime_glue(const FramePtr& f, int dp) {
  // (M + e1)/2 if d' = 2 mod 4, (M + e1 + e8)/2 if d' = 0 mod 4; e1.e8 = 0
  std::vector<int> idx = dp % 4 == 2 ? std::vector<int>{1} : std::vector<int>{1, 8};
  return (FrameVector::unit(f, 0) + sum_of(f, idx)) / 2;
}

inline IntegerLattice make_Mp(int dp) {
  auto f = m_frame(dp);
  std::vector<FrameVector> b{m_prime_glue(f, dp)};
  for (int i = 1; i < 9; ++i) b.push_back(FrameVector::unit(f, i));
  auto names = indexed_names("e", 8);
  names.insert(names.begin(), "g");
  return IntegerLattice::from_basis("M'_" + std::to_string(2 * dp), b, names);
}

}  // namespace detail

inline IntegerLattice make(const NSFamily& f) {
  f.validate();
  switch (f.kind) {
    case FamilyKind::L2d: return detail::make_L(f.parameter);
    case FamilyKind::L2dPrime: return detail::make_Lp(f.parameter);
    case FamilyKind::M2d: return detail::make_M(f.parameter);
    case FamilyKind::M2dPrime: return detail::make_Mp(f.parameter);
  }
  throw FamilyError("unknown family kind");
}

// Named lattices: N, U, U(2), E8(-1), E8(-2), K3, or a family string.
inline IntegerLattice make(const std::string& name) {
  if (name == "N") return make_N();
  if (name == "U") return IntegerLattice::root("U", IntMatrix{{0, 1}, {1, 0}}, {"e", "f"});
  if (name == "U(2)") return IntegerLattice::root("U(2)", IntMatrix{{0, 2}, {2, 0}}, {"e", "f"});
  if (name == "E8(-1)") return IntegerLattice::root("E8(-1)", scaled(e8_cartan(), -1), indexed_names("a", 8));
  if (name == "E8(-2)") return IntegerLattice::root("E8(-2)", scaled(e8_cartan(), -2), indexed_names("e", 8));
  if (name == "K3") {
    auto f = k3_frame();
    std::vector<FrameVector> b;
    for (std::size_t i = 0; i < 22; ++i) b.push_back(FrameVector::unit(f, i));
    return IntegerLattice::from_basis("U^3+E8(-1)^2", b, f->basis_names);
  }
  return make(NSFamily::parse(name));
}

// L1, L2 of an L' family (L1 + L2 = L - Nhat).
inline std::pair<FrameVector, FrameVector> l1_l2(const NSFamily& f) {
  if (f.kind != FamilyKind::L2dPrime) throw FamilyError("L1/L2 are defined only for L' families, not " + f.str());
  f.validate();
  auto fr = l_frame(f.parameter);
  FrameVector L = FrameVector::unit(fr, 0);
  if ((f.parameter / 2) % 2 == 1)
    return {(L - sum_of(fr, {1, 2})) / 2, (L - sum_of(fr, {3, 4, 5, 6, 7, 8})) / 2};
  return {(L - sum_of(fr, {1, 2, 3, 4})) / 2, (L - sum_of(fr, {5, 6, 7, 8})) / 2};
}

// ---- overlattices -----------------------------------------------------------

struct OverlatticeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline IntegerLattice overlattice(const IntegerLattice& l, const FrameVector& glue, std::string name = {}) {
  l.check_frame(glue);
  if (l.contains(glue)) throw OverlatticeError("glue " + glue.str() + " already lies in " + l.name());
  auto c = l.coordinates(glue * Integer(2));
  if (!c) throw OverlatticeError("glue " + glue.str() + " does not have index 2 over " + l.name() + " (2*glue not in the lattice)");
  Rational sq = square(glue);
  if (boost::multiprecision::denominator(sq) != 1 || boost::multiprecision::numerator(sq) % 2 != 0)
    throw OverlatticeError("evenness fails: glue^2 = " + to_string(sq) + " is not in 2Z");
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Rational p = inner(glue, l.basis_vector(i));
    if (boost::multiprecision::denominator(p) != 1)
      throw OverlatticeError("integrality fails: glue." + l.basis_names()[i] + " = " + to_string(p));
  }
  if (name.empty()) name = l.name() + "+glue";
  // glue first, replacing the first basis vector whose coefficient in 2*glue is +-1
  for (std::size_t i = 0; i < l.rank(); ++i) {
    if (abs((*c)[i]) != 1) continue;
    std::vector<FrameVector> b{glue};
    std::vector<std::string> names{"g"};
    for (std::size_t j = 0; j < l.rank(); ++j)
      if (j != i) {
        b.push_back(l.basis_vector(j));
        names.push_back(l.basis_names()[j]);
      }
    return IntegerLattice::from_basis(name, b, names);
  }
  auto gens = l.basis();
  gens.push_back(glue);
  return IntegerLattice::from_generators(name, gens);
}

// Nikulin part (N1..N7, Nhat) of an L-type frame.
inline std::vector<FrameVector> nikulin_basis(const FramePtr& f) {
  std::vector<FrameVector> b;
  for (int i = 1; i <= 7; ++i) b.push_back(FrameVector::unit(f, i));
  b.push_back(nhat(f));
  return b;
}

inline bool nikulin_primitive_in(const IntegerLattice& o) {
  return saturation(o, nikulin_basis(o.frame())).index == 1;
}

inline FrameVector glue_class(const FramePtr& f, const GlueVector& v) {
  return (FrameVector::unit(f, 0) + sum_of(f, v.support())) / 2;
}

struct GlueCheck {
  bool admissible = false;
  std::string reason;  // first failing condition
};

// Per-d glue data: L_2d, the Nikulin lattice in the same frame, admissibility tests.
class GlueContext {
 public:
  explicit GlueContext(int d)
      : d_(d), l2d_(make(NSFamily::L(d))), n_(IntegerLattice::from_basis("N", nikulin_basis(l2d_.frame()))) {
    if (d <= 0) throw FamilyError("d must be positive");
  }

  int d() const { return d_; }
  const IntegerLattice& l2d() const { return l2d_; }
  const IntegerLattice& nikulin() const { return n_; }

  GlueCheck check(const GlueVector& v) const {
    const int s = v.size();
    if (s % 2 != 0) return {false, "|S| odd: v^2 not in 4Z"};
    if ((2 * d_ - 2 * s) % 8 != 0) return {false, "L^2 != -v^2 mod 8"};
    const auto& f = l2d_.frame();
    if (n_.contains(sum_of(f, v.support()) / 2)) return {false, "v/2 lies in N"};
    FrameVector g = glue_class(f, v);
    if (l2d_.contains(g)) return {false, "glue already in L_2d"};
    Rational sq = square(g);
    if (boost::multiprecision::denominator(sq) != 1 || boost::multiprecision::numerator(sq) % 2 != 0)
      return {false, "adjoined form not even"};
    for (const auto& b : l2d_.basis())
      if (boost::multiprecision::denominator(inner(g, b)) != 1) return {false, "adjoined form not integral"};
    return {true, ""};
  }

  IntegerLattice overlattice_of(const GlueVector& v) const {
    return overlattice(l2d_, glue_class(l2d_.frame(), v), "L_" + std::to_string(2 * d_) + "+" + v.str());
  }

 private:
  int d_;
  IntegerLattice l2d_, n_;
};

// Permutation of N-coordinates sending the sorted support S onto T (and complements in order).
inline FrameVector permute_n(const FrameVector& x, const std::array<int, 8>& sigma) {
  IntVector v(x.size());
  v[0] = x.numerators()[0];
  for (int i = 0; i < 8; ++i) v[1 + sigma[i]] = x.numerators()[1 + i];
  return FrameVector(x.frame(), v, x.denominator());
}

inline std::array<int, 8> permutation_taking(const GlueVector& s, const GlueVector& t) {
  std::array<int, 8> sigma{};
  auto a = s.support(), b = t.support();
  auto ac = s.complement().support(), bc = t.complement().support();
  for (std::size_t i = 0; i < a.size(); ++i) sigma[a[i] - 1] = b[i] - 1;
  for (std::size_t i = 0; i < ac.size(); ++i) sigma[ac[i] - 1] = bc[i] - 1;
  return sigma;
}

struct GlueEquivalence {
  bool combinatorial = false;  // same orbit under permutations and complement: |S'| in {|S|, 8-|S|}
  bool literal = false;        // sigma(O_v) == O_v' as point sets for an explicit sigma
  bool agree() const { return combinatorial == literal; }
};

// sigma fixes L and permutes N_1..N_8, so it preserves L_2d; sigma(O_v) = L_2d + Z sigma(glue_v).
inline GlueEquivalence glue_equivalence(const IntegerLattice& ov, const GlueVector& v, const IntegerLattice& ov2, const GlueVector& w) {
  GlueEquivalence r;
  r.combinatorial = v.size() == w.size() || v.size() == 8 - w.size();
  const FrameVector g = glue_class(ov.frame(), v);
  for (const GlueVector& t : {w, w.complement()}) {
    if (t.size() != v.size()) continue;
    // both have index 2 over L_2d, so containment is equality
    if (ov2.contains(permute_n(g, permutation_taking(v, t))) && abs(ov.determinant()) == abs(ov2.determinant())) {
      r.literal = true;
      break;
    }
  }
  return r;
}

inline bool glue_equivalent(int d, const GlueVector& v, const GlueVector& w) {
  GlueContext ctx(d);
  for (const auto& g : {v, w}) {
    auto c = ctx.check(g);
    if (!c.admissible) throw std::invalid_argument("glue " + g.str() + " is not admissible for d = " + std::to_string(d) + ": " + c.reason);
  }
  auto e = glue_equivalence(ctx.overlattice_of(v), v, ctx.overlattice_of(w), w);
  if (!e.agree())
    throw std::logic_error("glue equivalence criteria disagree on " + v.str() + " vs " + w.str());
  return e.combinatorial;
}

struct GlueClassification {
  int d = 0;
  std::vector<GlueVector> glues;                    // lexicographic by support
  std::vector<std::vector<std::size_t>> classes;    // indices into glues
  std::size_t pairs_checked = 0;
  std::size_t criteria_disagreements = 0;
  bool all_even = true;
  bool nikulin_primitive = true;
};

inline GlueClassification admissible_glues(int d, unsigned jobs = 1) {
  GlueContext ctx(d);
  GlueClassification out;
  out.d = d;
  for (unsigned m = 0; m < 256; ++m) {
    GlueVector v{static_cast<std::uint8_t>(m)};
    if (ctx.check(v).admissible) out.glues.push_back(v);
  }
  std::sort(out.glues.begin(), out.glues.end());
  const std::size_t n = out.glues.size();
  std::vector<IntegerLattice> over(n);
  for (std::size_t i = 0; i < n; ++i) {
    over[i] = ctx.overlattice_of(out.glues[i]);
    out.all_even = out.all_even && over[i].is_even();
    out.nikulin_primitive = out.nikulin_primitive && nikulin_primitive_in(over[i]);
  }

  // exhaustive pairwise comparison, rows split across workers
  std::vector<std::vector<char>> eq(n, std::vector<char>(n, 0));
  std::vector<std::size_t> bad(std::max(1u, jobs), 0);
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += std::max(1u, jobs))
      for (std::size_t j = i + 1; j < n; ++j) {
        auto e = glue_equivalence(over[i], out.glues[i], over[j], out.glues[j]);
        if (!e.agree()) ++bad[w];
        eq[i][j] = e.combinatorial && e.literal;
      }
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (unsigned w = 0; w < jobs; ++w) ts.emplace_back(work, w);
    for (auto& t : ts) t.join();
  }
  out.pairs_checked = n * (n - (n ? 1 : 0)) / 2;
  for (auto b : bad) out.criteria_disagreements += b;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (eq[i][j]) parent[find(j)] = find(i);
  std::vector<std::size_t> rep_order;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    auto it = std::find(rep_order.begin(), rep_order.end(), r);
    if (it == rep_order.end()) {
      rep_order.push_back(r);
      out.classes.push_back({i});
    } else {
      out.classes[it - rep_order.begin()].push_back(i);
    }
  }
  return out;
}

// ---- explicit embedding into the K3 lattice -----------------------------------

struct K3Embedding {
  NSFamily family;
  bool constructed = false;
  std::string note;
  int n = 0;  // M^2 = 4n
  FrameVector u, alpha, M, v, half;  // half = (M + v)/2
  Integer M_squared;
  IntegerLattice sublattice;
  bool primitive = false;
  bool isometric_to_family = false;
};

// Anti-diagonal copy {(0, x, -x)} of E8(-2) inside U^3 + E8(-1)^2.
inline IntegerLattice anti_diagonal_e8(const FramePtr& k3) {
  std::vector<FrameVector> b;
  for (int i = 0; i < 8; ++i) {
    IntVector x(22);
    x[6 + i] = 1;
    x[14 + i] = -1;
    b.emplace_back(k3, x);
  }
  return IntegerLattice::from_basis("E8(-2)^anti", b, indexed_names("e", 8));
}

inline K3Embedding k3_embedding(const NSFamily& fam) {
  K3Embedding r;
  r.family = fam;
  if (fam.kind != FamilyKind::M2dPrime) {
    r.note = "no explicit embedding construction available for " + fam.symbol() + " (only M' families with M^2 = 4n)";
    return r;
  }
  fam.validate();
  auto k3 = k3_frame();
  const int n = fam.parameter / 2;
  r.n = n;
  IntVector u(22), al(22);
  u[0] = 1;
  u[1] = n % 2 ? (n + 1) / 2 : n / 2 + 1;
  // alpha in the first E8(-1): a root (n odd) or the sum of two orthogonal roots a1 + a8 (n even)
  al[6] = 1;
  if (n % 2 == 0) al[13] = 1;
  IntVector alpha2(22);  // alpha in the second E8(-1)
  for (int i = 0; i < 8; ++i) alpha2[14 + i] = al[6 + i];
  FrameVector U(k3, u), A1(k3, al), A2(k3, alpha2);
  r.u = U;
  r.alpha = A1;
  r.M = U * Integer(2) + A1 + A2;
  r.v = A1 - A2;
  r.half = (r.M + r.v) / 2;
  r.M_squared = as_integer(square(r.M));
  r.constructed = true;
  r.note = "M = (2u, alpha, alpha), v = (0, alpha, -alpha)";

  auto anti = anti_diagonal_e8(k3);
  std::vector<FrameVector> basis{r.half};
  for (const auto& e : anti.basis()) basis.push_back(e);
  r.sublattice = IntegerLattice::from_basis("NS(Y) in U^3+E8(-1)^2", basis);
  r.primitive = is_primitive(make("K3"), r.sublattice);

  // compare with the normative basis (g, e1..e8) of M'_{4n}: g -> (M+v)/2, e_i -> (0, a_i, -a_i)
  IntegerLattice target = make(fam);
  r.isometric_to_family = r.sublattice.gram() == target.gram() && r.M_squared == 4 * n;
  return r;
}

}  // namespace k3even
