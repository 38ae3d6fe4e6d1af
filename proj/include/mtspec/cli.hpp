#pragma once

#include <mtspec/classify.hpp>
#include <mtspec/spectra.hpp>
#include <mtspec/tftlab.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mtspec::cli {

using spectra::SpectrumId;

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// ---------------------------------------------------------------------------
// Structured values

inline json integer_json(const Integer& n) {
  static const Integer limit = Integer(1) << 53;
  if (abs(n) < limit) return n.convert_to<long long>();
  return n.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error(ErrorKind::ParseError, "expected an integer, got " + j.dump());
}

inline json group_json(const FgAbGroup& g, const std::vector<std::string>& generators = {}) {
  json torsion = json::array();
  for (const Integer& t : g.torsion()) torsion.push_back(integer_json(t));
  return {{"free_rank", g.free_rank()}, {"torsion", torsion}, {"generators", generators}};
}

inline json entry_json(const CohomologyEntry& e) {
  std::vector<std::string> names;
  for (const NamedGenerator& g : e.generators) names.push_back(g.name);
  return group_json(e.group, names);
}

inline std::pair<FgAbGroup, std::vector<std::string>> group_from_json(const json& j) {
  Vector torsion;
  for (const json& t : j.at("torsion")) torsion.push_back(integer_from_json(t));
  return {FgAbGroup(j.at("free_rank").get<std::size_t>(), torsion), j.at("generators").get<std::vector<std::string>>()};
}

/// Real values as {base, exponent}; roots of unity as {root_of_unity: {order, power}};
/// anything else carries both.
inline json unit_json(const ExactUnit& u) {
  if (u.is_real()) return {{"base", to_string(u.to_rational())}, {"exponent", 1}};
  json j;
  if (u.modulus() != 1) {
    j["base"] = to_string(u.modulus());
    j["exponent"] = 1;
  }
  j["root_of_unity"] = {{"order", integer_json(u.root_order())}, {"power", integer_json(u.root_power())}};
  return j;
}

inline ExactUnit unit_from_json(const json& j) {
  ExactUnit u(1);
  if (j.contains("base")) u = ExactUnit::parse(j.at("base").get<std::string>()).pow(integer_from_json(j.at("exponent")));
  if (j.contains("root_of_unity")) {
    const json& r = j.at("root_of_unity");
    u = u * ExactUnit::root_of_unity(integer_from_json(r.at("order")), integer_from_json(r.at("power")));
  }
  return u;
}

inline json value_json(const ExactValue& v) {
  json factors = json::array();
  for (const PowerFactor& f : v.factors)
    factors.push_back({{"symbol", f.symbol}, {"base", unit_json(f.base)}, {"exponent", integer_json(f.exponent)}});
  return {{"factors", factors}, {"value", unit_json(v.value())}};
}

inline ExactValue value_from_json(const json& j) {
  ExactValue v;
  for (const json& f : j.at("factors"))
    v.factors.push_back({f.at("symbol").get<std::string>(), unit_from_json(f.at("base")), integer_from_json(f.at("exponent"))});
  if (!(v.value() == unit_from_json(j.at("value"))))
    throw Error(ErrorKind::ParseError, "factors do not multiply to the stated value");
  return v;
}

inline json document(const std::string& command, json inputs, json result, std::vector<std::string> topics) {
  return {{"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"paper_refs", topics}};
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
  std::string format = "text";
  bool ascii = false;

  bool unicode() const { return !ascii; }
  bool as_json() const { return format == "json"; }
};

/// Either text or a structured document, one per invocation.
struct Output {
  std::string text;
  json doc;
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::vector<SpectrumId> table_spectra(std::optional<int> d, std::optional<int> cover) {
  if (d && (*d < 2 || *d > 4)) throw Error(ErrorKind::OutOfRange, "the cohomology table covers d = 2, 3, 4");
  if (cover && (*cover < 0 || *cover > 1)) throw Error(ErrorKind::OutOfRange, "the cohomology table covers cover = 0, 1");
  std::vector<SpectrumId> out;
  for (int dd = 4; dd >= 2; --dd)
    for (int c = 0; c <= 1; ++c)
      if ((!d || *d == dd) && (!cover || *cover == c)) out.push_back({dd, c});
  return out;
}

inline Output table_cohomology(const Options& o, std::optional<int> d, std::optional<int> cover) {
  const spectra::CertifiedTable& table = spectra::default_table();
  Output r;
  if (o.format == "data") {
    if (d || cover) throw Error(ErrorKind::InvalidArgument, "--format data emits the whole table");
    r.text = table.render();
    return r;
  }
  json rows = json::array();
  std::string text;
  for (const SpectrumId& s : table_spectra(d, cover)) {
    if (!text.empty()) text += "\n";
    text += s.label(o.unicode()) + "\n";
    json ks = json::array();
    for (int k = 0; k <= 5; ++k) {
      const CohomologyEntry& e = spectra::cohomology(s, k, table);
      text += "k=" + std::to_string(k) + ": " + render_entry(e, o.unicode()) + "\n";
      ks.push_back({{"k", k}, {"group", entry_json(e)}});
    }
    rows.push_back({{"spectrum", s.key()}, {"label", s.label(false)}, {"rows", ks}});
  }
  json inputs = json::object();
  if (d) inputs["d"] = *d;
  if (cover) inputs["cover"] = *cover;
  r.text = text;
  r.doc = document("table cohomology", inputs, {{"spectra", rows}}, {"cover cohomology table"});
  return r;
}

inline Output table_homotopy(const Options& o, std::optional<int> d) {
  if (d && (*d < 1 || *d > 4)) throw Error(ErrorKind::OutOfRange, "d must be in 1..4");
  Output r;
  json rows = json::array();
  for (int dd = 1; dd <= 4; ++dd) {
    if (d && *d != dd) continue;
    std::vector<std::string> cells;
    json groups = json::array();
    for (int k = 0; spectra::homotopy_tabulated(dd, k); ++k) {
      FgAbGroup g = spectra::homotopy_group(dd, k);
      cells.push_back(g.to_string(o.unicode()));
      groups.push_back(group_json(g));
    }
    r.text += SpectrumId{dd, 0}.label(o.unicode()) + ": " + join(cells, ", ") + "\n";
    rows.push_back({{"d", dd}, {"groups", groups}});
  }
  json inputs = json::object();
  if (d) inputs["d"] = *d;
  r.doc = document("table homotopy", inputs, {{"rows", rows}}, {"low homotopy of Madsen-Tillmann spectra"});
  return r;
}

inline Output table_hz(const Options& o) {
  Output r;
  std::vector<std::string> cells;
  json groups = json::array();
  for (int k = 0; k <= 6; ++k) {
    FgAbGroup g = spectra::hz_self_cohomology(k);
    cells.push_back(g.to_string(o.unicode()));
    groups.push_back(group_json(g));
  }
  r.text = "k=0..6: " + join(cells, ",") + "\n";
  r.doc = document("table hz", json::object(), {{"groups", groups}}, {"integral Steenrod algebra in low degrees"});
  return r;
}

inline json theory_group_json(const classify::TheoryGroup& g) {
  return {{"d", g.d},
          {"n", g.n},
          {"cover", g.cover},
          {"unit_rank", g.unit_rank},
          {"finite_part", group_json(g.finite_part)},
          {"basis", g.basis_names}};
}

inline Output cmd_classify(const Options& o, int d, int n) {
  classify::TheoryGroup g = classify::classify(d, n);
  Output r;
  r.text = g.to_string(o.unicode()) + "\n";
  r.doc = document("classify", {{"d", d}, {"n", n}}, theory_group_json(g), {"classification of invertible theories"});
  return r;
}

inline std::vector<ExactUnit> parse_params(const std::string& text) {
  std::vector<ExactUnit> out;
  for (const std::string& part : tftlab::detail::split(text, ',')) out.push_back(ExactUnit::parse(tftlab::detail::strip(part)));
  return out;
}

inline Output cmd_restrict(const Options& o, int d, int from, int to, const std::string& params) {
  classify::TheoryParams in = classify::make_params(d, from, parse_params(params));
  classify::TheoryParams out = classify::restrict_theory(d, from, to, in);
  Output r;
  std::vector<std::string> cells;
  json coords = json::array();
  for (const ExactUnit& u : out.coords) {
    cells.push_back(u.to_string(o.unicode()));
    coords.push_back(unit_json(u));
  }
  r.text = join(cells, ", ") + "\n";
  r.doc = document("restrict", {{"d", d}, {"from", from}, {"to", to}, {"params", params}},
                   {{"basis", out.basis}, {"params", coords}}, {"restriction of invertible theories"});
  return r;
}

inline Output cmd_kernel(const Options& o, int d, int from, int to) {
  classify::RestrictionKernel k = classify::restriction_kernel(d, from, to);
  json elements = json::array();
  for (const auto& row : k.element_values()) {
    json e = json::array();
    for (const ExactUnit& u : row) e.push_back(unit_json(u));
    elements.push_back(e);
  }
  json matrix = json::array();
  for (std::size_t i = 0; i < k.matrix.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k.matrix.cols(); ++j) row.push_back(integer_json(k.matrix(i, j)));
    matrix.push_back(row);
  }
  Output r;
  r.text = k.to_string(o.unicode()) + "\n";
  r.doc = document("kernel", {{"d", d}, {"from", from}, {"to", to}},
                   {{"group", group_json(k.group)}, {"basis", k.basis}, {"matrix", matrix}, {"elements", elements}},
                   {"kernel of restriction"});
  return r;
}

struct EvalArgs {
  std::string theory;
  std::optional<std::string> manifold;
  std::optional<long long> genus;
  std::optional<std::string> lambda, mu, l1, l2;
  std::optional<std::string> unit, mult, comult, counit;
};

inline ExactUnit required_unit(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw Error(ErrorKind::InvalidArgument, std::string("missing ") + flag);
  return ExactUnit::parse(*v);
}

inline Output cmd_eval(const Options& o, const EvalArgs& a) {
  if (a.manifold.has_value() == a.genus.has_value() && a.theory != "four_d")
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --manifold and --genus");
  json inputs = {{"theory", a.theory}};
  if (a.manifold) inputs["manifold"] = *a.manifold;
  if (a.genus) inputs["genus"] = *a.genus;
  json result;
  std::string topic;
  ExactUnit value;

  if (a.theory == "euler") {
    ExactUnit lambda = required_unit(a.lambda, "--lambda");
    inputs["lambda"] = *a.lambda;
    Integer chi = a.genus ? Integer(2 - 2 * *a.genus) : tftlab::parse_manifold(*a.manifold).euler;
    if (a.genus && *a.genus < 0) throw Error(ErrorKind::OutOfRange, "genus must be nonnegative");
    if (a.manifold && tftlab::parse_manifold(*a.manifold).dim != 2)
      throw Error(ErrorKind::DimensionMismatch, *a.manifold + " is not a surface");
    ExactValue v = tftlab::euler_theory_value(lambda, {chi, 0});
    value = v.value();
    result = value_json(v);
    topic = "Euler theory";
  } else if (a.theory == "frobenius") {
    tftlab::FrobeniusData f;
    if (a.mu) {
      f = tftlab::FrobeniusData::from_mu(ExactUnit::parse(*a.mu));
      inputs["mu"] = *a.mu;
    } else {
      f = {required_unit(a.unit, "--unit or --mu"), required_unit(a.mult, "--mult"), required_unit(a.comult, "--comult"),
           required_unit(a.counit, "--counit")};
      inputs["unit"] = *a.unit;
      inputs["mult"] = *a.mult;
      inputs["comult"] = *a.comult;
      inputs["counit"] = *a.counit;
    }
    tftlab::FrobeniusVerdict verdict = tftlab::frobenius_verify(f);
    if (!verdict.ok) throw Error(ErrorKind::InvalidArgument, "not a Frobenius algebra: " + join(verdict.violations, ", "));
    value = ExactUnit(1);
    if (a.genus) {
      value = tftlab::frobenius_closed_value(f, *a.genus);
    } else {
      // Componentwise: each summand of a disjoint union is a connected closed surface.
      for (const std::string& part : tftlab::detail::split(*a.manifold, '+')) {
        tftlab::ManifoldClass m = tftlab::parse_manifold(part);
        if (m.dim != 2) throw Error(ErrorKind::DimensionMismatch, m.name + " is not a surface");
        value = value * tftlab::frobenius_closed_value(f, (2 - m.euler) / 2);
      }
    }
    result = {{"value", unit_json(value)}};
    topic = "one-dimensional Frobenius algebras";
  } else if (a.theory == "four_d") {
    if (!a.manifold) throw Error(ErrorKind::InvalidArgument, "missing --manifold");
    ExactUnit l1 = required_unit(a.l1, "--l1"), l2 = required_unit(a.l2, "--l2");
    inputs["l1"] = *a.l1;
    inputs["l2"] = *a.l2;
    ExactValue v = tftlab::invertible_4d_value(l1, l2, tftlab::parse_manifold(*a.manifold));
    value = v.value();
    result = value_json(v);
    topic = "four-dimensional invertible theory";
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown theory " + a.theory);
  }
  Output r;
  r.text = value.to_string(o.unicode()) + "\n";
  r.doc = document("eval " + a.theory, inputs, result, {topic});
  return r;
}

inline Output cmd_bordism(const Options& o, int d, const std::string& expr) {
  tftlab::FormalSum s = tftlab::parse_formal_sum(expr);
  tftlab::VfInvariant inv = tftlab::vf_invariant(d, s);
  spectra::VfSplitting split = spectra::vf_splitting(d);
  std::vector<std::string> cells;
  json values = json::array();
  for (const Integer& v : inv.values) {
    cells.push_back(v.str());
    values.push_back(integer_json(v));
  }
  std::string shown = cells.empty() ? "0" : cells.size() == 1 ? cells[0] : "(" + join(cells, ", ") + ")";
  Output r;
  r.text = "invariant " + shown + "\n";
  r.text += std::string("vector-field nullbordant: ") + (inv.is_zero() ? "yes" : "no") + "\n";
  (void)o;
  r.doc = document("bordism", {{"d", d}, {"sum", expr}},
                   {{"group", group_json(split.group)},
                    {"invariants", split.invariants},
                    {"values", values},
                    {"nullbordant", inv.is_zero()}},
                   {"vector-field bordism"});
  return r;
}

inline Output cmd_gilmer_masbaum(const Options& o) {
  classify::GilmerMasbaumReport rep = classify::gilmer_masbaum_report();
  bool u = o.unicode();
  auto rho_multiple = [&](const Integer& n) { return (n == 1 ? std::string() : n.str()) + (u ? "ρ" : "rho"); };
  std::string text;
  text += std::string(u ? "HZ⁴(" : "HZ^4(") + SpectrumId{3, 2}.label(u) + ") " + (u ? "≅ " : "= ") +
          render_entry(rep.group, u) + "\n";
  json extensions = json::array();
  for (const classify::NamedExtension& e : rep.extensions) {
    text += e.label + ": " + rho_multiple(e.cls.rho_multiple) + (u ? " → " : " -> ") + e.mcg_class.str() + "\n";
    extensions.push_back({{"label", e.label},
                          {"characteristic_class", e.characteristic_class},
                          {"rho_multiple", integer_json(e.cls.rho_multiple)},
                          {"mcg_class", integer_json(e.mcg_class)},
                          {"source", e.source}});
  }
  for (const std::string& line : rep.argument) text += "  " + line + "\n";
  text += std::string("fundamental extension: ") + (rep.fundamental_realizable ? "realizable" : "impossible") + "\n";
  text += std::string("index-four subcategory of Walker's: ") +
          (rep.walker_index_four_realizable ? "realizable" : "impossible") + "\n";
  Output r;
  r.text = text;
  r.doc = document("gilmer-masbaum", json::object(),
                   {{"group", entry_json(rep.group)},
                    {"extensions", extensions},
                    {"smallest_mcg_class", integer_json(rep.smallest_mcg_class)},
                    {"fundamental_realizable", rep.fundamental_realizable},
                    {"walker_index_four_realizable", rep.walker_index_four_realizable},
                    {"argument", rep.argument}},
                   {"central extensions of the three-dimensional bordism category"});
  return r;
}

/// Recomputes the exact sequences and the cover derivations; a failure is an
/// internal invariant violation.
inline Output cmd_verify(const Options& o) {
  Output r;
  bool ok = true;
  json les = json::array();
  for (int d = 2; d <= 4; ++d) {
    spectra::LesReport rep = spectra::verify_les(d, spectra::default_table(), o.unicode());
    ok = ok && rep.all_exact();
    r.text += "les d=" + std::to_string(d) + ": " + (rep.all_exact() ? "exact" : "NOT exact") + " (" +
              std::to_string(rep.checks.size()) + " checks)\n";
    json segs = json::array();
    for (const spectra::ShortExactSegment& s : rep.segments) {
      r.text += "  k=" + std::to_string(s.degree) + ": " + s.text + "\n";
      segs.push_back({{"k", s.degree}, {"text", s.text}, {"exact", s.exact}});
    }
    les.push_back({{"d", d}, {"exact", rep.all_exact()}, {"checks", rep.checks.size()}, {"segments", segs}});
  }
  json derivations = json::array();
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k <= 5; ++k) {
      spectra::DerivationResult dr = spectra::derive_cover_cohomology(d, k, spectra::standard_constraints(d, k));
      bool good = !dr.ambiguous && dr.agrees_with_table.value_or(false);
      ok = ok && good;
      r.text += "derive d=" + std::to_string(d) + " k=" + std::to_string(k) + ": " +
                (dr.group ? dr.group->to_string(o.unicode()) : std::string("ambiguous")) +
                (good ? "" : "  MISMATCH") + "\n";
      derivations.push_back({{"d", d},
                             {"k", k},
                             {"group", dr.group ? group_json(*dr.group) : json(nullptr)},
                             {"ambiguous", dr.ambiguous},
                             {"agrees_with_table", dr.agrees_with_table.value_or(false)}});
    }
  r.doc = document("verify", json::object(), {{"les", les}, {"derivations", derivations}, {"ok", ok}},
                   {"long exact sequence of the cover", "extension problems for the cover"});
  if (!ok) throw Error(ErrorKind::InvariantViolation, "verification failed:\n" + r.text);
  return r;
}

inline Output cmd_catalog(const Options& o) {
  const tftlab::Catalog& c = tftlab::standard_manifolds();
  Output r;
  if (o.format == "data") {
    r.text = c.render();
    return r;
  }
  json ms = json::array();
  for (const tftlab::ManifoldClass& m : c.manifolds()) {
    r.text += m.name + ": dim " + std::to_string(m.dim) + ", " + (o.unicode() ? "χ" : "chi") + " " + m.euler.str();
    if (m.dim == 4) r.text += std::string(", ") + (o.unicode() ? "σ " : "sigma ") + m.signature.str() +
                              (o.unicode() ? ", p₁ " : ", p1 ") + m.p1.str();
    if (m.kr) r.text += std::string(", ") + (o.unicode() ? "k_ℝ " : "k_R ") + std::to_string(*m.kr);
    r.text += "\n";
    ms.push_back({{"name", m.name},
                  {"dim", m.dim},
                  {"chi", integer_json(m.euler)},
                  {"sigma", integer_json(m.signature)},
                  {"p1", integer_json(m.p1)},
                  {"kr", m.kr ? json(*m.kr) : json(nullptr)}});
  }
  json fs = json::array();
  for (const tftlab::ManifoldFamily& f : c.families()) {
    std::string chi = tftlab::detail::render_affine(f.chi_base, f.chi_slope);
    r.text += f.prefix + "g: dim " + std::to_string(f.dim) + ", " + (o.unicode() ? "χ " : "chi ") + chi + "\n";
    fs.push_back({{"name", f.prefix + "g"}, {"dim", f.dim}, {"chi", chi}});
  }
  r.doc = document("catalog", json::object(), {{"manifolds", ms}, {"families", fs}}, {"manifold invariants"});
  return r;
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs one command line (without the program name). Payload goes to `out`,
/// diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invertible field theories and the cohomology of Madsen-Tillmann spectra", "mtspec"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "text, json, or data (table cohomology and catalog)")
      ->check(CLI::IsMember({"text", "json", "data"}));
  app.add_flag("--ascii", o.ascii, "ascii instead of unicode math");

  std::optional<int> d, cover, n;
  int from = 0, to = 0, dd = 0;
  std::string params, sum;

  CLI::App* table = app.add_subcommand("table", "cohomology, homotopy and HZ tables");
  table->require_subcommand(1);
  CLI::App* t_coh = table->add_subcommand("cohomology", "certified cohomology of Σ^d MTSO(d) and p≥1");
  t_coh->add_option("--d", d);
  t_coh->add_option("--cover", cover);
  CLI::App* t_hom = table->add_subcommand("homotopy", "low homotopy groups");
  t_hom->add_option("--d", d);
  CLI::App* t_hz = table->add_subcommand("hz", "HZ^k(HZ) for k = 0..6");

  CLI::App* c_cls = app.add_subcommand("classify", "group of invertible theories");
  c_cls->add_option("--d", dd)->required();
  c_cls->add_option("--n", n)->required();

  CLI::App* c_res = app.add_subcommand("restrict", "restrict parameters to a lower level");
  c_res->add_option("--d", dd)->required();
  c_res->add_option("--from", from)->required();
  c_res->add_option("--to", to)->required();
  c_res->add_option("--params", params, "comma-separated: 2,3 or -1/2,zeta6^5")->required();

  CLI::App* c_ker = app.add_subcommand("kernel", "kernel of restriction");
  c_ker->add_option("--d", dd)->required();
  c_ker->add_option("--from", from)->required();
  c_ker->add_option("--to", to)->required();

  EvalArgs ev;
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a theory on a closed manifold");
  c_eval->require_subcommand(1);
  CLI::App* e_euler = c_eval->add_subcommand("euler", "λ^χ");
  e_euler->add_option("--lambda", ev.lambda)->required();
  CLI::App* e_frob = c_eval->add_subcommand("frobenius", "one-dimensional Frobenius algebra");
  e_frob->add_option("--mu", ev.mu);
  e_frob->add_option("--unit", ev.unit);
  e_frob->add_option("--mult", ev.mult);
  e_frob->add_option("--comult", ev.comult);
  e_frob->add_option("--counit", ev.counit);
  CLI::App* e_four = c_eval->add_subcommand("four_d", "λ1^χ λ2^p1");
  e_four->add_option("--l1", ev.l1)->required();
  e_four->add_option("--l2", ev.l2)->required();
  for (CLI::App* e : {e_euler, e_frob, e_four}) {
    e->add_option("--manifold", ev.manifold, "catalog name, A#B connected sum, A+B disjoint union");
    if (e != e_four) e->add_option("--genus", ev.genus);
  }

  CLI::App* c_bord = app.add_subcommand("bordism", "vector-field bordism invariant of a formal sum");
  c_bord->add_option("--d", dd)->required();
  c_bord->add_option("--sum", sum, "e.g. \"K3 + 2*S4\"")->required();

  CLI::App* c_gm = app.add_subcommand("gilmer-masbaum", "central extension certificate");
  CLI::App* c_ver = app.add_subcommand("verify", "recheck exact sequences and derivations");
  CLI::App* c_cat = app.add_subcommand("catalog", "manifold catalog");

  for (CLI::App* sub : {table, t_coh, t_hom, t_hz, c_cls, c_res, c_ker, c_eval, e_euler, e_frob, e_four, c_bord, c_gm,
                        c_ver, c_cat})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output result;
    bool data_ok = t_coh->parsed() || c_cat->parsed();
    if (o.format == "data" && !data_ok) throw Error(ErrorKind::InvalidArgument, "--format data applies to table cohomology and catalog");
    if (t_coh->parsed()) result = table_cohomology(o, d, cover);
    else if (t_hom->parsed()) result = table_homotopy(o, d);
    else if (t_hz->parsed()) result = table_hz(o);
    else if (c_cls->parsed()) result = cmd_classify(o, dd, *n);
    else if (c_res->parsed()) result = cmd_restrict(o, dd, from, to, params);
    else if (c_ker->parsed()) result = cmd_kernel(o, dd, from, to);
    else if (c_eval->parsed()) {
      ev.theory = e_euler->parsed() ? "euler" : e_frob->parsed() ? "frobenius" : "four_d";
      result = cmd_eval(o, ev);
    } else if (c_bord->parsed()) result = cmd_bordism(o, dd, sum);
    else if (c_gm->parsed()) result = cmd_gilmer_masbaum(o);
    else if (c_ver->parsed()) result = cmd_verify(o);
    else if (c_cat->parsed()) result = cmd_catalog(o);

    if (o.as_json()) out << result.doc.dump(2) << "\n";
    else out << result.text;
    return kExitOk;
  } catch (const Error& e) {
    err << "mtspec: " << e.what() << "\n";
    return e.kind() == ErrorKind::InvariantViolation ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    err << "mtspec: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace mtspec::cli
