// k3even: command-line front end for the lattice library.
// Exit status: 0 success, 1 verification mismatch, 2 usage error.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

#include "k3even/json_io.hpp"
#include "k3even/verify.hpp"

using namespace k3even;
using io::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string format = "json";
  unsigned jobs = 1;
  int dmax = 12;
};

const char* subcommand_list = "disc, glues, overlattice, ample, evenset, hyperelliptic, chow, table1, correspond, verify-paper";

NSFamily family_arg(const std::string& s) { return NSFamily::parse(s); }

std::vector<int> support_arg(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.size() != 1 || tok[0] < '1' || tok[0] > '8')
      throw UsageError("malformed glue support \"" + s + "\": expected distinct indices 1..8 separated by commas, e.g. 1,2,3,4");
    out.push_back(tok[0] - '0');
  }
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (out.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("malformed glue support \"" + s + "\": expected distinct indices 1..8 separated by commas, e.g. 1,2,3,4");
  return out;
}

std::string support_str(const GlueVector& g) {
  std::string s = "{";
  for (int i : g.support()) s += (s.size() > 1 ? "," : "") + std::to_string(i);
  return s + "}";
}

std::string pad(const std::string& s, std::size_t w) {
  std::size_t visible = 0;
  for (unsigned char c : s) visible += (c & 0xC0) != 0x80;
  return visible >= w ? s : s + std::string(w - visible, ' ');
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// ---- subcommands --------------------------------------------------------------

int cmd_disc(const Globals& g, const NSFamily& f) {
  auto grp = discriminant_group(make(f));
  json j = io::envelope("disc");
  j.update(io::to_json(f));
  j.update(io::to_json(grp));
  emit(g, j, f.symbol() + ": " + grp.str() + ", order " + grp.order.str() + "\n");
  return 0;
}

int cmd_glues(const Globals& g, int d) {
  if (d <= 0) throw UsageError("glues: d must be a positive integer");
  auto c = admissible_glues(d, g.jobs);
  json j = io::envelope("glues");
  j["d"] = d;
  j["admissible"] = c.glues.size();
  json gl = json::array();
  for (const auto& v : c.glues) gl.push_back(support_str(v));
  j["supports"] = gl;
  j["classes"] = c.classes.size();
  j["pairs_checked"] = c.pairs_checked;
  j["criteria_disagreements"] = c.criteria_disagreements;
  j["all_even"] = c.all_even;
  j["nikulin_primitive"] = c.nikulin_primitive;
  std::ostringstream t;
  t << "d = " << d << ": " << c.glues.size() << " admissible glue vectors, " << c.classes.size() << " equivalence class(es)";
  if (!c.glues.empty()) t << ", all even: " << (c.all_even ? "yes" : "no") << ", N primitive: " << (c.nikulin_primitive ? "yes" : "no");
  t << "\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_overlattice(const Globals& g, int d, const std::string& support) {
  if (d <= 0) throw UsageError("overlattice: d must be a positive integer");
  GlueContext ctx(d);
  GlueVector v = GlueVector::of(support.empty() ? detail::canonical_glue_support(d) : support_arg(support));
  auto chk = ctx.check(v);
  json j = io::envelope("overlattice");
  j["d"] = d;
  j["support"] = support_str(v);
  j["admissible"] = chk.admissible;
  std::ostringstream t;
  t << "L_" << 2 * d << " + (L + sum N_i, i in " << support_str(v) << ")/2: ";
  if (!chk.admissible) {
    j["reason"] = chk.reason;
    t << "not admissible (" << chk.reason << ")\n";
    emit(g, j, t.str());
    return 1;
  }
  auto o = ctx.overlattice_of(v);
  j["lattice"] = io::to_json(o);
  j["even"] = o.is_even();
  j["nikulin_primitive"] = nikulin_primitive_in(o);
  j["discriminant"] = io::to_json(discriminant_group(o));
  t << "even " << (o.is_even() ? "yes" : "no") << ", N primitive " << (nikulin_primitive_in(o) ? "yes" : "no") << ", discriminant "
    << discriminant_group(o).str() << "\nGram " << o.gram().str() << "\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_ample(const Globals& g, const NSFamily& f, const std::string& divisor) {
  auto ns = make(f);
  FrameVector D = parse_divisor(f, ns, divisor);
  auto rep = classify_positivity(ns, D, g.jobs);
  json j = io::envelope("ample");
  j.update(io::to_json(f));
  j.update(io::to_json(rep));
  std::ostringstream t;
  t << f.symbol() << " " << divisor << ": " << to_string(rep.status) << " (D^2 = " << rep.self_intersection << ")";
  if (rep.witness) t << ", witness " << rep.witness->str();
  t << "\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_evenset(const Globals& g, const NSFamily& f, const std::string& octet, int search) {
  auto ns = make(f);
  json j = io::envelope("evenset");
  j.update(io::to_json(f));
  std::ostringstream t;
  if (!octet.empty() || f.is_L()) {
    std::vector<FrameVector> oct;
    if (octet.empty()) {
      for (int i = 1; i <= 8; ++i) oct.push_back(FrameVector::unit(ns.frame(), i));
    } else {
      std::stringstream ss(octet);
      std::string tok;
      while (std::getline(ss, tok, ',')) oct.push_back(parse_divisor(f, ns, tok));
    }
    bool even = is_even_set(ns, oct);
    json a = json::array();
    for (const auto& c : oct) a.push_back(io::to_json(c));
    j["octet"] = a;
    j["even"] = even;
    t << f.symbol() << ": octet is " << (even ? "" : "not ") << "an even set\n";
    emit(g, j, t.str());
    return 0;
  }
  auto fe = even_set_feasibility(ns);
  j["possible"] = fe.possible;
  j["certificate"] = fe.certificate;
  t << f.symbol() << ": even set " << (fe.possible ? "not excluded" : "impossible") << " (" << fe.certificate << ")\n";
  if (fe.possible && search > 0) {
    auto hit = find_even_octet(ns, search);
    j["search_bound"] = search;
    if (hit) {
      json a = json::array();
      for (const auto& c : *hit) a.push_back(io::to_json(c));
      j["found_octet"] = a;
      t << "even octet with M.R <= " << search << ":";
      for (const auto& c : *hit) t << " " << c.str();
      t << "\n";
    } else {
      j["found_octet"] = nullptr;
      t << "no even octet with M.R <= " << search << "\n";
    }
  }
  emit(g, j, t.str());
  return 0;
}

int cmd_hyperelliptic(const Globals& g, const NSFamily& f, const std::string& divisor) {
  auto ns = make(f);
  FrameVector D = parse_divisor(f, ns, divisor);
  auto v = hyperelliptic_test(ns, D);
  json j = io::envelope("hyperelliptic");
  j.update(io::to_json(f));
  j["divisor"] = io::to_json(D);
  j.update(io::to_json(v));
  std::ostringstream t;
  t << f.symbol() << " " << divisor << ": " << (v.double_cover ? "2:1 onto " + v.target : std::string("birational")) << " (" << v.reason << ")\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_chow(const Globals& g, const std::string& text) {
  auto ci = parse_complete_intersection(text);
  auto m = intersection_matrix(ci);
  bool k3 = ci_is_k3(ci);
  json j = io::envelope("chow");
  j["complete_intersection"] = ci.str();
  j["matrix"] = io::matrix(m);
  j["k3"] = k3;
  emit(g, j, ci.str() + ": " + m.str() + (k3 ? ", K3" : ", not K3") + "\n");
  return 0;
}

std::string table_text(const std::vector<RowReport>& rows) {
  std::ostringstream t;
  t << pad("X", 10) << pad("polarization", 16) << pad("target", 10) << pad("map", 22) << pad("deg", 5) << pad("N_i", 10) << "table\n";
  for (const auto& r : rows) {
    bool first = true;
    auto lead = [&]() {
      std::string s = first ? pad(r.row->x.symbol(), 10) : pad("", 10);
      first = false;
      return s;
    };
    for (const auto& c : r.x) {
      const auto& m = c.computed;
      std::string kind = to_string(m.map_kind);
      if (!m.double_cover_target.empty()) kind = "2:1 " + m.double_cover_target;
      t << lead() << pad(c.golden.polarization, 16) << pad(m.target(), 10) << pad(kind, 22) << pad(m.degree.str(), 5)
        << pad(images_code(m.even_set_images), 10) << c.golden.text << (c.match() ? "" : "  [MISMATCH]") << "\n";
    }
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
      const auto& p = r.pairs[i];
      t << lead() << pad(p.first + " x " + p.second, 16) << pad("P" + p.target1.str() + "xP" + p.target2.str(), 10) << pad(p.ci.str(), 37)
        << r.row->x_pairs[i].text << (p.consistent() ? "" : "  [MISMATCH]") << "\n";
    }
    const auto& y = r.y.computed;
    std::string kind = to_string(y.map_kind);
    if (!y.double_cover_target.empty()) kind = "2:1 " + y.double_cover_target;
    t << pad("  Y " + r.row->y.symbol(), 10) << pad(r.row->y_model.polarization, 16) << pad(y.target(), 10) << pad(kind, 22)
      << pad(y.degree.str(), 5) << pad("", 10) << r.row->y_model.text << (r.y.match() ? "" : "  [MISMATCH]") << "\n";
  }
  return t.str();
}

int cmd_table1(const Globals& g, const std::string& family) {
  std::vector<RowReport> rows;
  if (family.empty()) {
    for (const auto& row : table1_golden()) rows.push_back(table1_row_report(row));
  } else {
    NSFamily f = family_arg(family);
    const Table1Row* row = table1_row_for(f);
    if (!row) throw ModelError(f.symbol() + " is not tabulated");
    rows.push_back(table1_row_report(*row));
  }
  json j = io::envelope("table1");
  json a = json::array();
  bool ok = true;
  for (const auto& r : rows) {
    a.push_back(io::to_json(r));
    ok = ok && r.x_match() && r.y_match();
  }
  j["rows"] = a;
  j["all_match"] = ok;
  emit(g, j, table_text(rows));
  return ok ? 0 : 1;
}

int cmd_correspond(const Globals& g, const NSFamily& f, const std::string& with) {
  NSFamily partner = ns_correspondence(f);
  json j = io::envelope("correspond");
  j.update(io::to_json(f));
  j["partner"] = partner.symbol();
  j["partner_family"] = partner.str();
  j["involution"] = ns_correspondence(partner) == f;
  std::ostringstream t;
  t << f.symbol() << " <-> " << partner.symbol() << "\n";
  if (!with.empty()) {
    NSFamily other = family_arg(with);
    auto r = families_distinct(f, other);
    j["compare"] = other.symbol();
    j["distinct"] = io::to_json(r);
    t << f.symbol() << " vs " << other.symbol() << ": " << to_string(r.kind) << " (" << r.detail << ")\n";
  }
  emit(g, j, t.str());
  return 0;
}

int cmd_verify(const Globals& g) {
  if (g.dmax < 2) throw UsageError("--dmax must be at least 2");
  auto results = verify::run_all({g.dmax, g.jobs});
  json j = io::envelope("verify-paper");
  j["dmax"] = g.dmax;
  json a = json::array();
  bool ok = true;
  std::ostringstream t;
  for (const auto& r : results) {
    json c;
    c["criterion"] = r.id;
    c["title"] = r.title;
    c["passed"] = r.passed;
    c["expected"] = r.expected;
    c["computed"] = r.computed;
    c["failures"] = r.failures;
    c["notes"] = r.notes;
    a.push_back(c);
    ok = ok && r.passed;
    t << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << ": " << r.computed << "\n";
    for (const auto& f : r.failures) t << "    failure: " << f << "\n";
    for (const auto& n : r.notes) t << "    note: " << n << "\n";
  }
  j["criteria"] = a;
  j["all_passed"] = ok;
  emit(g, j, t.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice computations for K3 surfaces with an even set of eight rational curves"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_option("--dmax", g.dmax, "largest d for batch verification")->check(CLI::Range(1, 64))->capture_default_str();

  std::string family_s, divisor, text, support, octet, with;
  int d = 0, search = 0;
  const std::string fam_help = std::string("family, ") + family_grammar();
  const std::string div_help = std::string("divisor: ") + divisor_grammar();

  auto* disc = app.add_subcommand("disc", "discriminant group of a family");
  disc->add_option("family", family_s, fam_help)->required();
  auto* glues = app.add_subcommand("glues", "classify admissible glue vectors for L_2d");
  glues->add_option("d", d, "d (the form value is 2d)")->required();
  auto* over = app.add_subcommand("overlattice", "build L_2d + (L + v)/2");
  over->add_option("d", d, "d (the form value is 2d)")->required();
  over->add_option("--glue", support, "support of v, e.g. 1,2,3,4 (default: canonical)");
  auto* ample = app.add_subcommand("ample", "ample / nef classification");
  ample->add_option("family", family_s, fam_help)->required();
  ample->add_option("--divisor", divisor, div_help)->required();
  auto* even = app.add_subcommand("evenset", "even-set test or feasibility");
  even->add_option("family", family_s, fam_help)->required();
  even->add_option("--octet", octet, "eight comma-separated divisors (default: N1..N8 on L families)");
  even->add_option("--search", search, "search M families for an even octet with M.R up to this bound");
  auto* hyp = app.add_subcommand("hyperelliptic", "2:1 test for a big and nef divisor");
  hyp->add_option("family", family_s, fam_help)->required();
  hyp->add_option("--divisor", divisor, div_help)->required();
  auto* chow = app.add_subcommand("chow", "intersection matrix of a complete intersection");
  chow->add_option("ci", text, "e.g. \"P4xP2: (2,0)+(1,1)^3\"")->required();
  auto* table = app.add_subcommand("table1", "regenerate the table of projective models");
  table->add_option("family", family_s, fam_help);
  auto* corr = app.add_subcommand("correspond", "partner family under X <-> Y");
  corr->add_option("family", family_s, fam_help)->required();
  corr->add_option("--with", with, "compare discriminant groups with this family");
  auto* ver = app.add_subcommand("verify-paper", "run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\nsubcommands: " << subcommand_list << "\n";
    return 2;
  }

  try {
    // validate every input before computing
    std::optional<NSFamily> fam;
    if (!family_s.empty() && !table->parsed()) fam = family_arg(family_s);
    if (fam) fam->validate();
    if (!with.empty()) family_arg(with);
    if (disc->parsed()) return cmd_disc(g, *fam);
    if (glues->parsed()) return cmd_glues(g, d);
    if (over->parsed()) return cmd_overlattice(g, d, support);
    if (ample->parsed()) return cmd_ample(g, *fam, divisor);
    if (even->parsed()) return cmd_evenset(g, *fam, octet, search);
    if (hyp->parsed()) return cmd_hyperelliptic(g, *fam, divisor);
    if (chow->parsed()) return cmd_chow(g, text);
    if (table->parsed()) return cmd_table1(g, family_s);
    if (corr->parsed()) return cmd_correspond(g, *fam, with);
    if (ver->parsed()) return cmd_verify(g);
  } catch (const FamilyError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    if (std::string(e.what()).find(family_grammar()) == std::string::npos) std::cerr << family_grammar() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
