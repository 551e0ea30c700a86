#pragma once
// The eight acceptance checks as a library: each returns pass/fail with the values compared.

#include <chrono>
#include <functional>
#include <random>

#include "brute_force.hpp"
#include "models.hpp"

namespace k3even::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string expected, computed;
  std::vector<std::string> failures;  // first few offending cases
  std::vector<std::string> notes;

  bool within_budget() const { return seconds <= budget_seconds; }
};

struct Options {
  int dmax = 12;
  unsigned jobs = 1;
};

namespace detail {

struct Tally {
  CriterionResult& r;
  std::size_t checks = 0, bad = 0;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++bad;
    if (r.failures.size() < 10) r.failures.push_back(what);
  }
};

inline std::string ivec(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

// Symmetric difference between the engine's root list and the brute-force scan.
inline std::size_t oracle_discrepancies(const IntegerLattice& ns, const FrameVector& D, unsigned jobs) {
  auto rep = classify_positivity(ns, D, jobs);
  Rational box = std::max(Rational(3) * rep.search_bound, Rational(1));
  Rational twice = 2 * box;
  auto halves = static_cast<std::int64_t>(boost::multiprecision::numerator(twice) / boost::multiprecision::denominator(twice));
  auto scan = brute::scan_roots(ns, D, halves, rep.self_intersection == 0);
  std::vector<FrameVector> diff;
  std::set_symmetric_difference(rep.roots.begin(), rep.roots.end(), scan.obstructing.begin(), scan.obstructing.end(), std::back_inserter(diff));
  return diff.size();
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  for (int k = 0; k < 8; ++k) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    long long s = static_cast<long long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += u(j, c) * s;
  }
  return u;
}

}  // namespace detail

inline CriterionResult criterion1(const Options& o) {
  CriterionResult r{1, "discriminant groups of the four families", false, 0, 1.0, {}, {}, {}, {}};
  detail::Tally t{r};
  for (int d = 1; d <= o.dmax; ++d)
    for (auto k : {FamilyKind::L2d, FamilyKind::L2dPrime, FamilyKind::M2d, FamilyKind::M2dPrime}) {
      NSFamily f{k, d};
      if (!f.valid()) continue;
      IntVector want = predicted_invariant_factors(f), got = discriminant_group(make(f)).invariant_factors;
      t.check(want == got, f.symbol() + ": expected " + detail::ivec(want) + ", got " + detail::ivec(got));
    }
  r.expected = "Z/2d+(Z/2)^6, Z/2d+(Z/2)^4, Z/2d'+(Z/2)^8, Z/2d'+(Z/2)^6";
  r.computed = std::to_string(t.checks - t.bad) + "/" + std::to_string(t.checks) + " families equal";
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion2(const Options& o) {
  CriterionResult r{2, "glue classification", false, 0, 1.0, {}, {}, {}, {}};
  detail::Tally t{r};
  std::string counts;
  for (int d = 1; d <= o.dmax; ++d) {
    auto g = admissible_glues(d, o.jobs);
    std::size_t want = d % 2 ? 0 : d % 4 == 2 ? 56 : 70;
    std::string tag = "d=" + std::to_string(d);
    t.check(g.glues.size() == want, tag + ": " + std::to_string(g.glues.size()) + " admissible, expected " + std::to_string(want));
    if (want) {
      t.check(g.classes.size() == 1, tag + ": " + std::to_string(g.classes.size()) + " equivalence classes");
      t.check(g.all_even, tag + ": odd overlattice");
      t.check(g.nikulin_primitive, tag + ": N not primitive");
      t.check(g.criteria_disagreements == 0, tag + ": equivalence criteria disagree");
    }
    counts += (counts.empty() ? "" : " ") + std::to_string(g.glues.size());
  }
  r.expected = "0 for odd d, 56 at d=2 mod 4, 70 at d=0 mod 4, one class each";
  r.computed = "counts by d: " + counts;
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion3(const Options& o) {
  CriterionResult r{3, "positivity certificates with brute-force cross-validation", false, 0, 10.0, {}, {}, {}, {}};
  detail::Tally t{r};
  std::size_t discrepancies = 0, certificates = 0;
  auto run = [&](const NSFamily& f, const std::string& text, const std::function<bool(const PositivityReport&)>& want, const std::string& label) {
    auto ns = make(f);
    FrameVector D = parse_divisor(f, ns, text);
    auto rep = classify_positivity(ns, D, o.jobs);
    t.check(want(rep), f.symbol() + " " + text + ": " + to_string(rep.status) + ", expected " + label);
    std::size_t bad = detail::oracle_discrepancies(ns, D, o.jobs);
    discrepancies += bad;
    t.check(bad == 0, f.symbol() + " " + text + ": " + std::to_string(bad) + " oracle discrepancies");
    ++certificates;
  };
  auto ample = [](const PositivityReport& p) { return p.status == Positivity::ample; };
  for (int d = 3; d <= o.dmax; ++d) run(NSFamily::L(d), "L-Nhat", ample, "ample");
  if (o.dmax >= 2) {
    run(NSFamily::L(2), "L-Nhat", [](const PositivityReport& p) { return p.nef() && !p.big_and_nef(); }, "nef, not big");
    run(NSFamily::L(2), "2L-Nhat", ample, "ample");
    run(NSFamily::L(2), "3L-Nhat", ample, "ample");
  }
  for (int d = 2; d <= o.dmax; ++d)
    for (int rr = 1; rr < d && rr <= 8; ++rr) {
      std::string text = "L";
      for (int i = 1; i <= rr; ++i) text += "-N" + std::to_string(i);
      run(NSFamily::L(d), text, [](const PositivityReport& p) { return p.big_and_nef(); }, "big and nef");
    }
  r.expected = "all certificates as stated, 0 oracle discrepancies";
  r.computed = std::to_string(certificates) + " certificates, " + std::to_string(discrepancies) + " discrepancies";
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion4(const Options&) {
  CriterionResult r{4, "Chow intersection matrices against lattice Gram matrices", false, 0, 1.0, {}, {}, {}, {}};
  detail::Tally t{r};
  struct Case {
    NSFamily f;
    const char *first, *second, *ci;
    IntMatrix displayed;
  };
  const std::vector<Case> cases = {
      {NSFamily::L(3), "L", "L-Nhat", "P4xP2: (2,0)+(1,1)^3", IntMatrix{{6, 6}, {6, 2}}},
      {NSFamily::Lp(8), "L1", "L2", "P2xP2: (1,1)+(2,2)", IntMatrix{{2, 4}, {4, 2}}},
      {NSFamily::Lp(6), "L2", "L1", "P1xP2: (2,3)", IntMatrix{{0, 3}, {3, 2}}},
      {NSFamily::Lp(12), "L1", "L2", "P3xP3: (1,1)^4", IntMatrix{{4, 6}, {6, 4}}},
  };
  for (const auto& c : cases) {
    auto p = pair_descriptor(c.f, c.first, c.second, c.ci);
    t.check(p.chow == c.displayed, std::string(c.ci) + ": chow " + p.chow.str() + ", displayed " + c.displayed.str());
    t.check(p.gram == c.displayed, c.f.symbol() + " (" + c.first + "," + c.second + "): gram " + p.gram.str());
    t.check(p.ci_k3, std::string(c.ci) + " is not K3");
  }
  r.expected = "[[6,6],[6,2]] [[2,4],[4,2]] [[0,3],[3,2]] [[4,6],[6,4]]";
  r.computed = std::to_string(t.checks - t.bad) + "/" + std::to_string(t.checks) + " equalities";
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion5(const Options&) {
  CriterionResult r{5, "table of projective models and section counts", false, 0, 5.0, {}, {}, {}, {}};
  detail::Tally t{r};
  std::size_t models = 0;
  for (const auto& row : table1_golden()) {
    auto rep = table1_row_report(row);
    for (const auto& c : rep.x) {
      ++models;
      std::string why;
      for (const auto& m : c.mismatches) why += " " + m + ";";
      t.check(c.match(), row.x.symbol() + " " + c.golden.polarization + ":" + why);
    }
    for (const auto& p : rep.pairs) {
      ++models;
      t.check(p.consistent(), row.x.symbol() + " " + p.ci.str() + ": gram " + p.gram.str() + " vs chow " + p.chow.str());
    }
    if (!rep.y_match()) {
      std::string why;
      for (const auto& m : rep.y.mismatches) why += " " + m + ";";
      r.notes.push_back("Y side " + row.y.symbol() + " differs from the table text:" + why);
    }
  }
  for (const auto& s : h0_spot_values()) {
    Integer h = h0_of(s.family, s.divisor);
    t.check(h == s.expected, "h0(" + s.divisor + ") on " + s.family.symbol() + " = " + h.str() + ", expected " + std::to_string(s.expected));
  }
  r.expected = "every X-side descriptor equals the table; h0 spot values 2,3,4,6,10";
  r.computed = std::to_string(models) + " X-side models and pairs, " + std::to_string(h0_spot_values().size()) + " h0 values, " +
               std::to_string(t.bad) + " mismatches";
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion6(const Options& o) {
  CriterionResult r{6, "X/Y correspondence and family exclusion", false, 0, 1.0, {}, {}, {}, {}};
  detail::Tally t{r};
  for (const auto& row : table1_golden()) {
    t.check(ns_correspondence(row.x) == row.y, row.x.symbol() + " -> " + ns_correspondence(row.x).symbol());
    t.check(ns_correspondence(row.y) == row.x, row.y.symbol() + " -> " + ns_correspondence(row.y).symbol());
  }
  std::vector<NSFamily> ls, ms;
  for (int d = 1; d <= o.dmax; ++d) {
    for (auto f : {NSFamily::L(d), NSFamily::Lp(d)})
      if (f.valid()) ls.push_back(f);
    for (auto f : {NSFamily::M(d), NSFamily::Mp(d)}) ms.push_back(f);  // M' also where only the formula group exists
  }
  std::size_t same = 0, boundary = 0;
  for (const auto& l : ls)
    for (const auto& m : ms) {
      auto rep = families_distinct(l, m);
      bool expected_same = l.kind == FamilyKind::L2d && m.kind == FamilyKind::M2dPrime && l.parameter == m.parameter;
      t.check((rep.kind != Distinctness::distinct_by_group) == expected_same, l.symbol() + " vs " + m.symbol() + ": " + to_string(rep.kind));
      if (rep.kind != Distinctness::distinct_by_group) {
        ++same;
        t.check(rep.kind == Distinctness::same_group_but_constraint && rep.detail.find("d ≡ 0 mod 4") != std::string::npos,
                l.symbol() + " vs " + m.symbol() + ": constraint not surfaced");
        if (rep.detail.find("boundary") != std::string::npos) ++boundary;
      }
    }
  r.expected = "11 pairings, involution; only (L_2d, M'_2d) share a group, with d = 0 mod 4 surfaced";
  r.computed = std::to_string(same) + " same-group pairs, all of shape (L_2d, M'_2d); " + std::to_string(boundary) + " boundary cases";
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion7(const Options&) {
  CriterionResult r{7, "sufficient-condition configurations", false, 0, 1.0, {}, {}, {}, {}};
  detail::Tally t{r};
  std::size_t iso = 0;
  std::string which;
  for (const auto& c : sufficient_condition_lattices()) {
    t.check(c.images_isometric, c.config.name + ": " + c.detail);
    if (c.status == ConfigurationStatus::isometric) {
      ++iso;
      which += (which.empty() ? "" : " ") + c.config.target.symbol();
    } else {
      r.notes.push_back(c.config.name + " (" + c.config.target.symbol() + "): " + c.detail);
    }
  }
  t.check(iso >= 7, std::to_string(iso) + " configurations verified, expected 7");
  r.expected = "7 configurations isometric through explicit basis maps";
  r.computed = std::to_string(iso) + " isometric: " + which;
  r.passed = t.bad == 0;
  return r;
}

inline CriterionResult criterion8(const Options& o) {
  CriterionResult r{8, "property suites", false, 0, 30.0, {}, {}, {}, {}};
  detail::Tally t{r};
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng() % 9, cols = trial % 2 ? rows : 1 + rng() % 9;
    IntMatrix m = detail::random_matrix(rng, rows, cols, 20);
    auto s = smith_normal_form(m);
    IntMatrix dm(rows, cols);
    for (std::size_t i = 0; i < s.diag.size(); ++i) dm(i, i) = s.diag[i];
    bool chain = true;
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i)
      chain = chain && s.diag[i] >= 0 && (s.diag[i] == 0 ? s.diag[i + 1] == 0 : s.diag[i + 1] % s.diag[i] == 0);
    t.check(s.left * m * s.right == dm && chain && abs(det(s.left)) == 1 && abs(det(s.right)) == 1, "SNF " + m.str());
    if (rows == cols) {
      Integer p = 1;
      for (const auto& x : s.diag) p *= x;
      t.check(abs(det(m)) == p, "det " + m.str());
      IntMatrix g(rows, rows);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j) g(i, j) = m(i, j) + m(j, i);
      IntMatrix u = detail::random_unimodular(rng, rows);
      auto sig = signature(g);
      t.check(sig == signature(u.transpose() * g * u) && sig.positive + sig.negative == smith_normal_form(g).rank(), "signature " + g.str());
    }
  }
  std::size_t lattices = 0, octets = 0, excluded = 0;
  for (int d = 1; d <= o.dmax; ++d)
    for (auto k : {FamilyKind::L2d, FamilyKind::L2dPrime, FamilyKind::M2d, FamilyKind::M2dPrime}) {
      NSFamily f{k, d};
      if (!f.valid()) continue;
      auto ns = make(f);
      ++lattices;
      t.check(ns.is_even(), f.symbol() + " is not even");
      if (f.is_L()) {
        std::vector<FrameVector> oct;
        for (int i = 1; i <= 8; ++i) oct.push_back(FrameVector::unit(ns.frame(), i));
        bool even = is_even_set(ns, oct);
        t.check(even, f.symbol() + ": canonical octet not even");
        octets += even;
      } else if (k == FamilyKind::M2d) {
        auto fe = even_set_feasibility(ns);
        t.check(!fe.possible, f.symbol() + ": even set not excluded");
        excluded += !fe.possible;
      }
    }
  r.expected = "1000 random SNF/det/signature checks; every family even; octets even on L, excluded on M";
  r.computed = std::to_string(t.checks) + " checks, " + std::to_string(lattices) + " lattices, " + std::to_string(octets) + " octets, " +
               std::to_string(excluded) + " M families excluded";
  r.notes.push_back("M' families are not in the exclusion: explicit even octets exist in M'_4 and M'_8");
  r.passed = t.bad == 0;
  return r;
}

inline std::vector<std::function<CriterionResult(const Options&)>> criteria() {
  return {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8};
}

inline CriterionResult run_criterion(int id, const Options& o) {
  auto all = criteria();
  if (id < 1 || id > static_cast<int>(all.size())) throw std::out_of_range("no criterion " + std::to_string(id));
  auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = all[id - 1](o);
  } catch (const std::exception& e) {
    r.id = id;
    r.passed = false;
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::vector<CriterionResult> run_all(const Options& o) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) out.push_back(run_criterion(i, o));
  return out;
}

}  // namespace k3even::verify
