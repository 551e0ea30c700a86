#pragma once
// Projective models: per-polarization descriptors computed from lattice data, the table of
// models for the eleven families, the X <-> Y correspondence, elliptic fibrations and the
// sufficient-condition configurations.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chow.hpp"
#include "disc.hpp"
#include "divisor.hpp"
#include "positivity.hpp"

namespace k3even {

struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class MapKind { contraction_to_nodes, birational_embedding, double_cover, elliptic_fibration };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::contraction_to_nodes: return "contraction_to_nodes";
    case MapKind::birational_embedding: return "birational_embedding";
    case MapKind::double_cover: return "double_cover";
    case MapKind::elliptic_fibration: return "elliptic_fibration";
  }
  return "?";
}

inline std::string image_type(const Rational& dn) {
  if (dn == 0) return "node";
  if (dn == 1) return "line";
  if (dn == 2) return "conic";
  return "degree " + to_string(dn);
}

struct ProjectiveModelDescriptor {
  NSFamily family;
  std::string polarization;
  FrameVector divisor;
  Integer self_intersection;
  Positivity status = Positivity::not_nef;
  Integer h0;
  std::string h0_assumption;
  Integer target_dim;
  MapKind map_kind = MapKind::birational_embedding;
  std::string double_cover_target;  // P2, quadric, cone, scroll, veronese
  Integer degree;                   // of the image
  std::vector<std::string> even_set_images;  // per N_i, L families only
  int moduli_count = 11;

  std::string target() const { return "P" + target_dim.str(); }
};

inline ProjectiveModelDescriptor model_descriptor(const NSFamily& fam, const std::string& polarization) {
  fam.validate();
  auto ns = make(fam);
  ProjectiveModelDescriptor m;
  m.family = fam;
  m.polarization = polarization;
  m.divisor = parse_divisor(fam, ns, polarization);
  auto rep = classify_positivity(ns, m.divisor);
  if (!rep.nef())
    throw ModelError("model_descriptor: " + polarization + " is not nef on " + fam.symbol() + " (witness " + rep.witness->str() + ")");
  m.status = rep.status;
  m.self_intersection = rep.self_intersection;
  auto h = riemann_roch_h0(ns, m.divisor);
  m.h0 = h.h0;
  m.h0_assumption = h.assumption;
  m.target_dim = m.h0 - 1;
  if (fam.is_L())
    for (int i = 1; i <= 8; ++i) m.even_set_images.push_back(image_type(inner(m.divisor, FrameVector::unit(ns.frame(), i))));
  if (m.self_intersection == 0) {
    m.map_kind = MapKind::elliptic_fibration;
    m.degree = 0;
    return m;
  }
  auto hyp = hyperelliptic_test(ns, m.divisor);
  if (hyp.double_cover) {
    m.map_kind = MapKind::double_cover;
    m.double_cover_target = hyp.target;
    m.degree = m.self_intersection / 2;
  } else {
    m.map_kind = m.status == Positivity::pseudo_ample ? MapKind::contraction_to_nodes : MapKind::birational_embedding;
    m.degree = m.self_intersection;
  }
  return m;
}

// ---- product maps -------------------------------------------------------------

struct PairDescriptor {
  NSFamily family;
  std::string first, second;
  Integer target1, target2;  // projective dimensions
  IntMatrix gram;            // lattice side
  CompleteIntersection ci;
  IntMatrix chow;  // ambient side
  bool ci_k3 = false;

  bool consistent() const {
    return gram == chow && ci_k3 && ci.space.dims.size() == 2 && target1 == ci.space.dims[0] && target2 == ci.space.dims[1];
  }
};

inline PairDescriptor pair_descriptor(const NSFamily& fam, const std::string& first, const std::string& second, const std::string& ci) {
  auto ns = make(fam);
  PairDescriptor p;
  p.family = fam;
  p.first = first;
  p.second = second;
  FrameVector a = parse_divisor(fam, ns, first), b = parse_divisor(fam, ns, second);
  p.target1 = riemann_roch_h0(ns, a).h0 - 1;
  p.target2 = riemann_roch_h0(ns, b).h0 - 1;
  p.gram = IntMatrix(2, 2);
  p.gram(0, 0) = require_integer(square(a), first + "^2");
  p.gram(1, 1) = require_integer(square(b), second + "^2");
  p.gram(0, 1) = p.gram(1, 0) = require_integer(inner(a, b), first + "." + second);
  p.ci = parse_complete_intersection(ci);
  p.chow = intersection_matrix(p.ci);
  p.ci_k3 = ci_is_k3(p.ci);
  return p;
}

// ---- the table of models ---------------------------------------------------------

struct GoldenModel {
  std::string polarization;  // in the divisor language
  std::string text;          // table entry
  int target_dim;
  MapKind map_kind;
  std::string double_cover_target;
  int degree;
  std::string images;  // per N_i: n node, l line, c conic; empty on the Y side
};

struct GoldenPair {
  std::string first, second, text, ci;
};

struct Table1Row {
  NSFamily x, y;
  std::vector<GoldenModel> x_models;
  std::vector<GoldenPair> x_pairs;
  GoldenModel y_model;
};

inline const std::vector<Table1Row>& table1_golden() {
  using K = MapKind;
  static const std::vector<Table1Row> rows = {
      {NSFamily::L(1), NSFamily::Mp(2),
       {{"L", "double plane (singular sextic)", 2, K::double_cover, "P2", 1, "nnnnnnnn"}},
       {},
       {"M", "smooth quartic in P^3", 3, K::birational_embedding, "", 4, ""}},
      {NSFamily::L(2), NSFamily::Mp(4),
       {{"L", "quartic with even set of nodes", 3, K::contraction_to_nodes, "", 4, "nnnnnnnn"}},
       {},
       {"M", "complete intersection in P^5", 5, K::birational_embedding, "", 8, ""}},
      {NSFamily::Lp(2), NSFamily::M(1),
       {{"L", "double cover of a cone", 3, K::double_cover, "cone", 2, "nnnnnnnn"},
        {"L1", "elliptic fibration", 1, K::elliptic_fibration, "", 0, "llnnnnnn"}},
       {},
       {"M", "double plane", 2, K::double_cover, "P2", 1, ""}},
      {NSFamily::L(3), NSFamily::Mp(6),
       {{"L", "singular complete intersection in P^4", 4, K::contraction_to_nodes, "", 6, "nnnnnnnn"},
        {"L-Nhat", "double plane (smooth sextic)", 2, K::double_cover, "P2", 1, "llllllll"}},
       {{"L", "L-Nhat", "complete intersection in P^4 x P^2", "P4xP2: (2,0)+(1,1)^3"}},
       {"M", "projective model in P^7", 7, K::birational_embedding, "", 12, ""}},
      {NSFamily::L(4), NSFamily::Mp(8),
       {{"L", "singular complete intersection in P^5", 5, K::contraction_to_nodes, "", 8, "nnnnnnnn"},
        {"L-Nhat", "smooth quartic in P^3", 3, K::birational_embedding, "", 4, "llllllll"}},
       {},
       {"M", "projective model in P^9", 9, K::birational_embedding, "", 16, ""}},
      {NSFamily::Lp(4), NSFamily::M(2),
       {{"L", "singular complete intersection in P^5", 5, K::contraction_to_nodes, "", 8, "nnnnnnnn"},
        {"L-Nhat", "double cover of a quadric", 3, K::double_cover, "quadric", 2, "llllllll"}},
       {},
       {"M", "smooth quartic in P^3", 3, K::birational_embedding, "", 4, ""}},
      {NSFamily::L(5), NSFamily::Mp(10),
       {{"L-Nhat", "smooth complete intersection in P^4", 4, K::birational_embedding, "", 6, "llllllll"},
        {"L-N1-N2-N3-N4", "double cover of a plane", 2, K::double_cover, "P2", 1, "ccccnnnn"}},
       {},
       {"M", "projective model in P^11", 11, K::birational_embedding, "", 20, ""}},
      {NSFamily::L(6), NSFamily::Mp(12),
       {{"L-Nhat", "smooth complete intersection in P^5", 5, K::birational_embedding, "", 8, "llllllll"},
        {"L-N1-N2-N3-N4", "singular quartic in P^3 (mixed even set with conics)", 3, K::contraction_to_nodes, "", 4, "ccccnnnn"}},
       {},
       {"M", "projective model in P^13", 13, K::birational_embedding, "", 24, ""}},
      {NSFamily::Lp(6), NSFamily::M(3),
       {{"L-Nhat", "smooth complete intersection in P^5", 5, K::birational_embedding, "", 8, "llllllll"}},
       {{"L2", "L1", "surface of bidegree (2,3) in P^1 x P^2", "P1xP2: (2,3)"}},
       {"M", "complete intersection in P^4", 4, K::birational_embedding, "", 6, ""}},
      {NSFamily::Lp(8), NSFamily::M(4),
       {},
       {{"L1", "L2", "complete intersection in P^2 x P^2", "P2xP2: (1,1)+(2,2)"}},
       {"M", "complete intersection in P^5", 5, K::birational_embedding, "", 8, ""}},
      {NSFamily::Lp(12), NSFamily::M(6),
       {},
       {{"L1", "L2", "complete intersection in P^3 x P^3", "P3xP3: (1,1)^4"}},
       {"M", "complete intersection in P^7", 7, K::birational_embedding, "", 12, ""}},
  };
  return rows;
}

inline std::string images_code(const std::vector<std::string>& images) {
  std::string s;
  for (const auto& t : images) s += t == "node" ? 'n' : t == "line" ? 'l' : t == "conic" ? 'c' : '?';
  return s;
}

struct ModelCheck {
  GoldenModel golden;
  ProjectiveModelDescriptor computed;
  std::vector<std::string> mismatches;
  bool match() const { return mismatches.empty(); }
};

inline ModelCheck check_model(const NSFamily& fam, const GoldenModel& g) {
  ModelCheck c{g, model_descriptor(fam, g.polarization), {}};
  const auto& m = c.computed;
  auto diff = [&](const std::string& what, const std::string& want, const std::string& got) {
    if (want != got) c.mismatches.push_back(what + ": table " + want + ", computed " + got);
  };
  diff("target", "P" + std::to_string(g.target_dim), m.target());
  diff("map kind", to_string(g.map_kind), to_string(m.map_kind));
  diff("double cover target", g.double_cover_target.empty() ? "-" : g.double_cover_target,
       m.double_cover_target.empty() ? "-" : m.double_cover_target);
  diff("degree", std::to_string(g.degree), m.degree.str());
  if (fam.is_L()) diff("N_i images", g.images, images_code(m.even_set_images));
  return c;
}

struct RowReport {
  const Table1Row* row = nullptr;
  std::vector<ModelCheck> x;
  std::vector<PairDescriptor> pairs;
  ModelCheck y;

  bool x_match() const {
    for (const auto& c : x)
      if (!c.match()) return false;
    for (const auto& p : pairs)
      if (!p.consistent()) return false;
    return true;
  }
  bool y_match() const { return y.match(); }
};

inline RowReport table1_row_report(const Table1Row& row) {
  RowReport r;
  r.row = &row;
  for (const auto& g : row.x_models) r.x.push_back(check_model(row.x, g));
  for (const auto& p : row.x_pairs) r.pairs.push_back(pair_descriptor(row.x, p.first, p.second, p.ci));
  r.y = check_model(row.y, row.y_model);
  return r;
}

inline const Table1Row* table1_row_for(const NSFamily& fam) {
  for (const auto& row : table1_golden())
    if (row.x == fam || row.y == fam) return &row;
  return nullptr;
}

// Descriptors for every single polarization the table lists for the family (X or Y side).
inline std::vector<ProjectiveModelDescriptor> table1(const NSFamily& fam) {
  const Table1Row* row = table1_row_for(fam);
  if (!row) throw ModelError(fam.symbol() + " is not tabulated");
  std::vector<ProjectiveModelDescriptor> out;
  if (row->x == fam) {
    for (const auto& g : row->x_models) out.push_back(model_descriptor(fam, g.polarization));
    // the factors of a product map
    for (const auto& p : row->x_pairs)
      for (const auto* name : {&p.first, &p.second})
        if (std::none_of(out.begin(), out.end(), [&](const auto& m) { return m.polarization == *name; }))
          out.push_back(model_descriptor(fam, *name));
  } else {
    out.push_back(model_descriptor(fam, row->y_model.polarization));
  }
  return out;
}

// ---- section counts quoted in the model paragraphs ----------------------------

struct H0Spot {
  NSFamily family;
  std::string divisor;
  int expected;
};

inline const std::vector<H0Spot>& h0_spot_values() {
  static const std::vector<H0Spot> spots = {
      {NSFamily::L(2), "L-Nhat", 2},         {NSFamily::L(2), "2L-2Nhat", 3},   {NSFamily::L(3), "L-Nhat", 3},
      {NSFamily::L(3), "L+Nhat", 3},         {NSFamily::L(3), "2L-2Nhat", 6},   {NSFamily::L(4), "L-Nhat", 4},
      {NSFamily::L(4), "L+Nhat", 4},         {NSFamily::L(4), "2L-2Nhat", 10},  {NSFamily::Lp(4), "L", 6},
      {NSFamily::Lp(4), "L-Nhat", 4},        {NSFamily::Lp(6), "L1+L2", 6},
  };
  return spots;
}

inline Integer h0_of(const NSFamily& fam, const std::string& divisor) {
  auto ns = make(fam);
  return riemann_roch_h0(ns, parse_divisor(fam, ns, divisor)).h0;
}

// ---- X <-> Y ----------------------------------------------------------------------

// L_2d <-> M'_4d and L'_2d <-> M_d (form values).
inline NSFamily ns_correspondence(const NSFamily& f) {
  f.validate();
  switch (f.kind) {
    case FamilyKind::L2d: return NSFamily::Mp(2 * f.parameter);
    case FamilyKind::M2dPrime: return NSFamily::L(f.parameter / 2);
    case FamilyKind::L2dPrime: return NSFamily::M(f.parameter / 2);
    case FamilyKind::M2d: return NSFamily::Lp(2 * f.parameter);
  }
  throw ModelError("ns_correspondence: unknown family");
}

enum class Distinctness { distinct_by_group, same_group_but_constraint, compatible };

inline const char* to_string(Distinctness d) {
  switch (d) {
    case Distinctness::distinct_by_group: return "distinct_by_group";
    case Distinctness::same_group_but_constraint: return "same_group_but_constraint";
    case Distinctness::compatible: return "compatible";
  }
  return "?";
}

struct DistinctnessReport {
  Distinctness kind;
  std::string group1, group2;
  std::string detail;
};

// Invariant factors predicted for a family, also for parameters where it is not constructed.
inline IntVector predicted_invariant_factors(const NSFamily& f) {
  IntVector orders{Integer(f.form())};
  int twos = f.kind == FamilyKind::L2d ? 6 : f.kind == FamilyKind::L2dPrime ? 4 : f.kind == FamilyKind::M2d ? 8 : 6;
  for (int i = 0; i < twos; ++i) orders.push_back(2);
  return invariant_factors_of(orders);
}

inline std::string group_string(const IntVector& factors) {
  DiscriminantGroup g;
  g.invariant_factors = factors;
  return g.str();
}

inline DistinctnessReport families_distinct(const NSFamily& a, const NSFamily& b) {
  auto group_of = [](const NSFamily& f) {
    return f.valid() ? discriminant_group(make(f)).invariant_factors : predicted_invariant_factors(f);
  };
  IntVector ga = group_of(a), gb = group_of(b);
  DistinctnessReport r{Distinctness::compatible, group_string(ga), group_string(gb), {}};
  if (ga != gb) {
    r.kind = Distinctness::distinct_by_group;
    r.detail = a.symbol() + " has " + r.group1 + ", " + b.symbol() + " has " + r.group2;
    return r;
  }
  const NSFamily* l = a.kind == FamilyKind::L2d ? &a : b.kind == FamilyKind::L2d ? &b : nullptr;
  const NSFamily* mp = a.kind == FamilyKind::M2dPrime ? &a : b.kind == FamilyKind::M2dPrime ? &b : nullptr;
  if (l && mp && l->parameter == mp->parameter) {
    r.kind = Distinctness::same_group_but_constraint;
    const int d = l->parameter;
    std::string rule = "M' needs d ≡ 0 mod 4; here d = " + std::to_string(d);
    if (!mp->valid())
      r.detail = rule + ": " + mp->symbol() + " is not constructed (M^2 = " + std::to_string(mp->form()) + " is not divisible by 4)";
    else if (d % 4 == 0)
      r.detail = rule + ", constraint satisfied: compatibility boundary case";
    else
      r.detail = rule + ", constraint violated";
    return r;
  }
  r.detail = "equal discriminant groups " + r.group1;
  return r;
}

// ---- elliptic fibrations ---------------------------------------------------------

struct FiberConfiguration {
  int i1 = 0, i2 = 0;
  int euler() const { return i1 + 2 * i2; }
};

inline bool fibration_euler_check(const FiberConfiguration& c) { return c.euler() == 24; }

struct FibrationData {
  FiberConfiguration fibers;
  std::vector<int> fiber_components, sections, bisections;  // indices of N_i
  std::string assumption;
};

// Fibration by an isotropic nef class E on an L family. The N_i with E.N_i = 0 are fibre
// components; each sits in its own I2 fibre and the other singular fibres are I1.
inline FibrationData fibration_from_lattice(const NSFamily& fam, const std::string& fiber_class) {
  auto ns = make(fam);
  if (!fam.is_L()) throw ModelError("fibration_from_lattice: L families only");
  FrameVector e = parse_divisor(fam, ns, fiber_class);
  if (square(e) != 0) throw ModelError("fibration_from_lattice: " + fiber_class + " is not isotropic");
  if (!classify_positivity(ns, e).nef()) throw ModelError("fibration_from_lattice: " + fiber_class + " is not nef");
  FibrationData f;
  for (int i = 1; i <= 8; ++i) {
    Rational k = inner(e, FrameVector::unit(ns.frame(), i));
    if (k == 0)
      f.fiber_components.push_back(i);
    else if (k == 1)
      f.sections.push_back(i);
    else if (k == 2)
      f.bisections.push_back(i);
  }
  f.fibers.i2 = static_cast<int>(f.fiber_components.size());
  f.fibers.i1 = 24 - 2 * f.fibers.i2;
  f.assumption = "reducible fibres are exactly the I2 fibres through the N_i orthogonal to the fibre";
  return f;
}

// ---- sufficient-condition configurations --------------------------------------------

struct Configuration {
  std::string name;
  std::string statement;  // which geometric data fix the intersection numbers
  NSFamily target;
  std::vector<std::string> generators;
  IntMatrix gram;                       // generator intersection numbers
  std::vector<std::string> images;      // generator images, divisor language
  std::vector<IntVector> basis;         // integer combinations of generators
};

enum class ConfigurationStatus { isometric, proper_sublattice, failed };

inline const char* to_string(ConfigurationStatus s) {
  switch (s) {
    case ConfigurationStatus::isometric: return "isometric";
    case ConfigurationStatus::proper_sublattice: return "proper_sublattice";
    case ConfigurationStatus::failed: return "failed";
  }
  return "?";
}

struct ConfigurationCheck {
  Configuration config;
  ConfigurationStatus status = ConfigurationStatus::failed;
  bool images_isometric = false;  // generator Gram reproduced by the images
  Integer index;                  // of the generated lattice in the target (0 if rank deficient)
  bool basis_map_isometry = false;
  std::string detail;
};

namespace detail {

inline Integer isqrt_exact(const Integer& n) {
  Integer r = boost::multiprecision::sqrt(n);
  if (r * r != n) throw std::domain_error(n.str() + " is not a square");
  return r;
}

// Gram of two polarizations A1, A2 and eight disjoint roots R_i with A_j.R_i given.
inline IntMatrix two_maps_gram(int a11, int a22, int a12, const std::array<int, 8>& r1, const std::array<int, 8>& r2) {
  IntMatrix g(10, 10);
  g(0, 0) = a11;
  g(1, 1) = a22;
  g(0, 1) = g(1, 0) = a12;
  for (int i = 0; i < 8; ++i) {
    g(2 + i, 2 + i) = -2;
    g(0, 2 + i) = g(2 + i, 0) = r1[i];
    g(1, 2 + i) = g(2 + i, 1) = r2[i];
  }
  return g;
}

inline std::vector<IntVector> unit_basis(std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<IntVector> b;
  for (std::size_t i : idx) {
    IntVector v(n);
    v[i] = 1;
    b.push_back(v);
  }
  return b;
}

inline std::vector<std::string> gens(std::vector<std::string> head, const std::string& stem) {
  for (int i = 1; i <= 8; ++i) head.push_back(stem + std::to_string(i));
  return head;
}

inline std::vector<std::string> imgs(std::vector<std::string> head) {
  for (int i = 1; i <= 8; ++i) head.push_back("N" + std::to_string(i));
  return head;
}

}  // namespace detail

inline std::vector<Configuration> sufficient_condition_configurations() {
  using detail::gens;
  using detail::imgs;
  using detail::two_maps_gram;
  using detail::unit_basis;
  const std::array<int, 8> zero{0, 0, 0, 0, 0, 0, 0, 0}, one{1, 1, 1, 1, 1, 1, 1, 1};
  const std::array<int, 8> low1{1, 1, 1, 1, 0, 0, 0, 0}, high1{0, 0, 0, 0, 1, 1, 1, 1};
  const std::array<int, 8> low2{2, 2, 2, 2, 0, 0, 0, 0}, high2{0, 0, 0, 0, 2, 2, 2, 2};
  const std::vector<std::size_t> a_r7{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Configuration> out;

  {
    // L' = 2E' + G0 + G1 on a double cover of a cone; C2 over the branch conic
    Configuration c;
    c.name = "double cover of a cone";
    c.statement = "L'=2E'+G0+G1, E'.G0=E'.G1=1, G0.G1=0; G2..G7 over the six nodes of the branch curve; C2.L'=2, C2.E'=1, C2.Gi=1 (i>=2)";
    c.target = NSFamily::Lp(2);
    c.generators = {"L'", "E'", "C2", "G0", "G1", "G2", "G3", "G4", "G5", "G6", "G7"};
    IntMatrix g(11, 11);
    g(0, 0) = 4;
    g(1, 1) = 0;
    g(2, 2) = -2;
    g(0, 1) = 2;
    g(0, 2) = 2;
    g(1, 2) = 1;
    for (int i = 0; i < 8; ++i) {
      g(3 + i, 3 + i) = -2;
      g(1, 3 + i) = i < 2 ? 1 : 0;
      g(2, 3 + i) = i < 2 ? 0 : 1;
    }
    for (std::size_t i = 0; i < 11; ++i)
      for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    c.gram = g;
    c.images = imgs({"L", "L1", "L2"});
    // E', L'-E'-C2, G0..G6  ->  (L-N1-N2)/2, Nhat, N1..N7
    c.basis = unit_basis(11, {1});
    c.basis.push_back(IntVector{1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0});
    for (std::size_t i = 3; i < 10; ++i) c.basis.push_back(unit_basis(11, {i})[0]);
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "complete intersection (2,0)+(1,1)^3 in P4xP2";
    c.statement = "A1^2=6, A2^2=2, A1.A2=6; A1 contracts R1..R8, A2 maps them to lines";
    c.target = NSFamily::L(3);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(6, 2, 6, zero, one);
    c.images = imgs({"L", "L-Nhat"});
    c.basis = unit_basis(10, a_r7);
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "three quadrics in P5, nodes and a quartic with lines";
    c.statement = "A1^2=8, A2^2=4; A1 contracts R1..R8, A2 maps them to lines; A1.A2=8 forced by 2A1-2A2=R1+..+R8";
    c.target = NSFamily::L(4);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(8, 4, 8, zero, one);
    c.images = imgs({"L", "L-Nhat"});
    c.basis = unit_basis(10, a_r7);
    out.push_back(c);
  }
  {
    // hyperplane h0=0 cuts 2C_H plus the four nodes in H
    Configuration c;
    c.name = "three quadrics in P5, two of them cones over planes";
    c.statement = "A^2=8 contracting R1..R8; A = 2C_H + R1+..+R4 = 2C_K + R5+..+R8";
    c.target = NSFamily::Lp(4);
    c.generators = gens({"A", "C_H", "C_K"}, "R");
    IntMatrix g(11, 11);
    g(0, 0) = 8;
    g(0, 1) = g(1, 0) = 4;
    g(0, 2) = g(2, 0) = 4;
    g(1, 2) = g(2, 1) = 2;
    for (int i = 0; i < 8; ++i) {
      g(3 + i, 3 + i) = -2;
      g(1, 3 + i) = g(3 + i, 1) = i < 4 ? 1 : 0;
      g(2, 3 + i) = g(3 + i, 2) = i < 4 ? 0 : 1;
    }
    c.gram = g;
    c.images = imgs({"L", "L1", "L2"});
    c.basis = unit_basis(11, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "Wehler surface (1,1)+(2,2) in P2xP2";
    c.statement = "A1^2=A2^2=2, A1.A2=4; A1 contracts R1..R4 and sends R5..R8 to lines, A2 the other way";
    c.target = NSFamily::Lp(8);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(2, 2, 4, high1, low1);
    c.images = imgs({"L2", "L1"});
    c.basis = unit_basis(10, a_r7);
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "two double planes with conics";
    c.statement = "A1^2=A2^2=2; A1 contracts R1..R4 and sends R5..R8 to conics, A2 the other way; A1.A2=10 forced by rank 9";
    c.target = NSFamily::L(5);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(2, 2, 10, high2, low2);
    c.images = imgs({"L-N5-N6-N7-N8", "L-N1-N2-N3-N4"});
    c.basis = unit_basis(10, {0, 2, 3, 4, 5, 6, 7, 8, 9});
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "two quartics with a mixed even set";
    c.statement = "A1^2=A2^2=4; A1 contracts R1..R4 and sends R5..R8 to conics, A2 the other way; A1.A2=12 forced by rank 9";
    c.target = NSFamily::L(6);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(4, 4, 12, high2, low2);
    c.images = imgs({"L-N5-N6-N7-N8", "L-N1-N2-N3-N4"});
    c.basis = unit_basis(10, {0, 2, 3, 4, 5, 6, 7, 8, 9});
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "bidegree (2,3) in P1xP2";
    c.statement = "D1^2=0, D2^2=2, D1.D2=3; D1 contracts R1,R2 and has R3..R8 as sections, D2 contracts R3..R8 and sends R1,R2 to lines";
    c.target = NSFamily::Lp(6);
    c.generators = gens({"D1", "D2"}, "R");
    c.gram = two_maps_gram(0, 2, 3, {0, 0, 1, 1, 1, 1, 1, 1}, {1, 1, 0, 0, 0, 0, 0, 0});
    c.images = imgs({"L2", "L1"});
    c.basis = unit_basis(10, a_r7);
    out.push_back(c);
  }
  {
    Configuration c;
    c.name = "complete intersection (1,1)^4 in P3xP3";
    c.statement = "A1^2=A2^2=4, A1.A2=6; A1 contracts R1..R4 and sends R5..R8 to lines, A2 the other way";
    c.target = NSFamily::Lp(12);
    c.generators = gens({"A1", "A2"}, "R");
    c.gram = two_maps_gram(4, 4, 6, high1, low1);
    c.images = imgs({"L2", "L1"});
    c.basis = unit_basis(10, a_r7);
    out.push_back(c);
  }
  return out;
}

inline ConfigurationCheck verify_configuration(const Configuration& c) {
  ConfigurationCheck r;
  r.config = c;
  auto ns = make(c.target);
  std::vector<FrameVector> img;
  for (const auto& s : c.images) img.push_back(parse_divisor(c.target, ns, s));
  const std::size_t n = img.size();
  r.images_isometric = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (inner(img[i], img[j]) != Rational(c.gram(i, j))) r.images_isometric = false;
  if (!r.images_isometric) {
    r.detail = "stated intersection numbers are not reproduced by the images in " + c.target.symbol();
    return r;
  }
  auto generated = IntegerLattice::from_generators(c.name, img);
  if (generated.rank() != ns.rank()) {
    r.index = 0;
    r.detail = "the classes span rank " + std::to_string(generated.rank());
    return r;
  }
  r.index = detail::isqrt_exact(abs(generated.determinant() / ns.determinant()));
  // abstract lattice on the chosen basis, and the map into the target
  IntMatrix cm(c.gram.rows(), c.basis.size());
  for (std::size_t j = 0; j < c.basis.size(); ++j)
    for (std::size_t i = 0; i < c.gram.rows(); ++i) cm(i, j) = c.basis[j][i];
  IntMatrix bg = cm.transpose() * c.gram * cm;
  std::vector<FrameVector> bimg;
  for (const auto& v : c.basis) {
    FrameVector x = FrameVector::zero(ns.frame());
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0) x = x + img[i] * v[i];
    bimg.push_back(x);
  }
  if (det(bg) == 0) {
    r.detail = "chosen basis is degenerate";
    return r;
  }
  auto abstract = IntegerLattice::root(c.name, bg);
  r.basis_map_isometry = isometry_from_basis_map(abstract, ns, bimg);
  if (r.index == 1 && r.basis_map_isometry) {
    r.status = ConfigurationStatus::isometric;
    r.detail = "explicit basis map is an isometry onto " + c.target.symbol();
  } else if (r.index > 1) {
    r.status = ConfigurationStatus::proper_sublattice;
    r.detail = "the stated classes generate a sublattice of index " + r.index.str() + " in " + c.target.symbol() +
               "; the half class (R1+..+R8)/2 is not forced by the intersection data";
  } else {
    r.detail = "index 1 but the basis map is not unimodular";
  }
  return r;
}

inline std::vector<ConfigurationCheck> sufficient_condition_lattices() {
  std::vector<ConfigurationCheck> out;
  for (const auto& c : sufficient_condition_configurations()) out.push_back(verify_configuration(c));
  return out;
}

}  // namespace k3even
