#pragma once

// Closed manifolds as invariant tuples, their vector-field bordism classes,
// and the values of concrete invertible theories on them.

#include <mtspec/error.hpp>
#include <mtspec/exact_unit.hpp>
#include <mtspec/integer.hpp>
#include <mtspec/spectra.hpp>

#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mtspec::tftlab {

struct ManifoldClass {
  std::string name;
  int dim = 0;
  Integer euler = 0;
  Integer signature = 0;
  Integer p1 = 0;
  /// Real semicharacteristic mod 2, for dim ≡ 1 mod 4.
  std::optional<int> kr;

  /// Checks the constraints every closed oriented manifold satisfies.
  void validate() const {
    auto fail = [&](const std::string& why) { throw Error(ErrorKind::InvariantViolation, name + ": " + why); };
    if (dim < 1 || dim > 4) throw Error(ErrorKind::OutOfRange, name + ": dimension must be in 1..4");
    if (dim % 2 == 1 && euler != 0) fail("odd-dimensional closed manifolds have chi = 0");
    if (dim == 2 && floor_mod(euler, 2) != 0) fail("closed oriented surfaces have even chi");
    if (dim != 4 && (signature != 0 || p1 != 0)) fail("signature and p1 are only carried in dimension 4");
    if (dim == 4 && floor_mod(euler + signature, 2) != 0) fail("chi + sigma must be even");
    if (dim == 4 && p1 != 3 * signature) fail("p1 must equal 3 sigma");
    if (kr && dim % 4 != 1) fail("k_R is only carried in dimensions 1 mod 4");
    if (kr && *kr != 0 && *kr != 1) fail("k_R is a residue mod 2");
  }

  friend bool operator==(const ManifoldClass&, const ManifoldClass&) = default;
};

inline ManifoldClass make_manifold(std::string name, int dim, Integer euler, Integer signature = 0, Integer p1 = 0,
                                   std::optional<int> kr = std::nullopt) {
  ManifoldClass m{std::move(name), dim, std::move(euler), std::move(signature), std::move(p1), kr};
  m.validate();
  return m;
}

inline void same_dimension(const ManifoldClass& a, const ManifoldClass& b) {
  if (a.dim != b.dim)
    throw Error(ErrorKind::DimensionMismatch, a.name + " has dimension " + std::to_string(a.dim) + ", " + b.name +
                                                  " has dimension " + std::to_string(b.dim));
}

inline ManifoldClass disjoint_union(const ManifoldClass& a, const ManifoldClass& b) {
  same_dimension(a, b);
  std::optional<int> kr;
  if (a.kr && b.kr) kr = (*a.kr + *b.kr) % 2;
  return make_manifold(a.name + "+" + b.name, a.dim, a.euler + b.euler, a.signature + b.signature, a.p1 + b.p1, kr);
}

/// chi(a # b) = chi(a) + chi(b) - chi(S^d); signature and p1 add.
inline ManifoldClass connected_sum(const ManifoldClass& a, const ManifoldClass& b) {
  same_dimension(a, b);
  if (a.dim != 2 && a.dim != 4) throw Error(ErrorKind::Unsupported, "connected sums are supported in dimensions 2 and 4");
  return make_manifold(a.name + "#" + b.name, a.dim, a.euler + b.euler - 2, a.signature + b.signature, a.p1 + b.p1);
}

// ---------------------------------------------------------------------------
// Catalog

/// chi = base + slope * g
struct ManifoldFamily {
  std::string prefix;  // "Sigma_" for "Sigma_g"
  int dim = 0;
  Integer chi_base = 0;
  Integer chi_slope = 0;
  Integer signature = 0;
  Integer p1 = 0;

  ManifoldClass at(const Integer& g) const {
    if (g < 0) throw Error(ErrorKind::OutOfRange, "genus must be nonnegative");
    return make_manifold(prefix + g.str(), dim, chi_base + chi_slope * g, signature, p1);
  }
};

namespace detail {

inline std::string render_affine(const Integer& base, const Integer& slope) {
  std::string out = base.str();
  if (slope == 0) return out;
  Integer a = abs(slope);
  out += slope < 0 ? "-" : "+";
  if (a != 1) out += a.str();
  return out + "g";
}

inline std::pair<Integer, Integer> parse_affine(const std::string& text) {
  auto fail = [&]() { return Error(ErrorKind::ParseError, "bad affine expression '" + text + "'"); };
  std::size_t split = text.find_first_of("+-", 1);
  try {
    if (split == std::string::npos) return {Integer(text), 0};
    Integer base(text.substr(0, split));
    std::string rest = text.substr(split);
    if (rest.back() != 'g') throw fail();
    std::string coef = rest.substr(1, rest.size() - 2);
    Integer slope = coef.empty() ? Integer(1) : Integer(coef);
    return {base, rest[0] == '-' ? Integer(-slope) : slope};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw fail();
  }
}

inline Integer parse_integer(const std::string& text, int line) {
  try {
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i >= text.size()) throw std::invalid_argument(text);
    for (; i < text.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw std::invalid_argument(text);
    return Integer(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad integer '" + text + "'");
  }
}

}  // namespace detail

class Catalog {
 public:
  static Catalog parse(const std::string& text) {
    Catalog c;
    for (const spectra::DataRecord& r : spectra::parse_data_records(text)) {
      const std::string& kr_text = r.get("kr");
      std::optional<int> kr;
      if (kr_text != "-") kr = static_cast<int>(detail::parse_integer(kr_text, r.line));
      if (r.type == "M") {
        ManifoldClass m{r.get("name"), r.get_int("dim"), detail::parse_integer(r.get("chi"), r.line),
                        detail::parse_integer(r.get("sigma"), r.line), detail::parse_integer(r.get("p1"), r.line), kr};
        m.validate();
        c.manifolds_.push_back(std::move(m));
      } else if (r.type == "F") {
        const std::string& name = r.get("name");
        if (name.size() < 2 || name.substr(name.size() - 2) != "_g")
          throw Error(ErrorKind::ParseError, "family names end in _g: " + name);
        auto [base, slope] = detail::parse_affine(r.get("chi"));
        ManifoldFamily f{name.substr(0, name.size() - 1), r.get_int("dim"), base, slope,
                         detail::parse_integer(r.get("sigma"), r.line), detail::parse_integer(r.get("p1"), r.line)};
        if (kr) throw Error(ErrorKind::ParseError, "families do not carry k_R");
        f.at(0);
        f.at(1);
        c.families_.push_back(std::move(f));
      } else {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(r.line) + ": unknown record '" + r.type + "'");
      }
    }
    return c;
  }

  static Catalog load(const std::string& path) { return parse(spectra::read_file(path)); }

  const std::vector<ManifoldClass>& manifolds() const noexcept { return manifolds_; }
  const std::vector<ManifoldFamily>& families() const noexcept { return families_; }

  /// A catalog entry ("CP2") or a family member ("Sigma_3", "S2xSigma_0").
  ManifoldClass lookup(const std::string& name) const {
    for (const ManifoldClass& m : manifolds_)
      if (m.name == name) return m;
    for (const ManifoldFamily& f : families_) {
      if (name.size() <= f.prefix.size() || name.compare(0, f.prefix.size(), f.prefix) != 0) continue;
      std::string g = name.substr(f.prefix.size());
      if (!std::all_of(g.begin(), g.end(), [](unsigned char ch) { return std::isdigit(ch); })) continue;
      return f.at(Integer(g));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown manifold '" + name + "'");
  }

  /// Canonical text form; the shipped catalog file is exactly this rendering.
  std::string render() const {
    std::string out;
    out += "# Closed oriented manifolds, described only by the invariants the theories see.\n";
    out += "# chi: Euler characteristic; sigma: signature (dim 4 only); p1: first Pontryagin number (dim 4 only);\n";
    out += "# kr: real semicharacteristic (dim 1 mod 4 only), '-' elsewhere.\n";
    out += "# F records are one-parameter families in g >= 0; chi is affine in g.\n";
    out += std::string(spectra::kDataMagic) + "\n";
    for (const ManifoldClass& m : manifolds_)
      out += "M name=" + m.name + " dim=" + std::to_string(m.dim) + " chi=" + m.euler.str() + " sigma=" +
             m.signature.str() + " p1=" + m.p1.str() + " kr=" + (m.kr ? std::to_string(*m.kr) : "-") + "\n";
    for (const ManifoldFamily& f : families_)
      out += "F name=" + f.prefix + "g dim=" + std::to_string(f.dim) + " chi=" +
             detail::render_affine(f.chi_base, f.chi_slope) + " sigma=" + f.signature.str() + " p1=" + f.p1.str() +
             " kr=-\n";
    return out;
  }

 private:
  std::vector<ManifoldClass> manifolds_;
  std::vector<ManifoldFamily> families_;
};

/// $MTSPEC_CATALOG, else the copy shipped with the sources.
inline std::string default_catalog_path() {
  if (const char* env = std::getenv("MTSPEC_CATALOG"); env && *env) return env;
#ifdef MTSPEC_DATA_DIR
  return std::string(MTSPEC_DATA_DIR) + "/manifold_catalog.txt";
#else
  throw Error(ErrorKind::InvalidArgument, "MTSPEC_CATALOG is not set and no default data directory was compiled in");
#endif
}

inline const Catalog& standard_manifolds() {
  static const Catalog catalog = Catalog::load(default_catalog_path());
  return catalog;
}

namespace detail {

inline std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

}  // namespace detail

/// "CP2#CP2+S4": '#' is connected sum, '+' disjoint union ('#' binds tighter).
inline ManifoldClass parse_manifold(const std::string& spec, const Catalog& catalog = standard_manifolds()) {
  std::string s = detail::strip(spec);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty manifold description");
  std::optional<ManifoldClass> total;
  for (const std::string& part : detail::split(s, '+')) {
    std::optional<ManifoldClass> chain;
    for (const std::string& name : detail::split(part, '#')) {
      if (name.empty()) throw Error(ErrorKind::ParseError, "bad manifold description '" + spec + "'");
      ManifoldClass m = catalog.lookup(name);
      chain = chain ? connected_sum(*chain, m) : m;
    }
    total = total ? disjoint_union(*total, *chain) : *chain;
  }
  return *total;
}

// ---------------------------------------------------------------------------
// Formal sums and vector-field bordism

struct FormalSum {
  std::vector<std::pair<ManifoldClass, Integer>> terms;

  int dim() const {
    if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "empty formal sum has no dimension");
    return terms.front().first.dim;
  }

  void add(const ManifoldClass& m, const Integer& multiplicity) {
    if (!terms.empty()) same_dimension(terms.front().first, m);
    terms.emplace_back(m, multiplicity);
  }

  FormalSum operator+(const FormalSum& other) const {
    FormalSum out = *this;
    for (const auto& [m, k] : other.terms) out.add(m, k);
    return out;
  }

  FormalSum scaled(const Integer& k) const {
    FormalSum out;
    for (const auto& [m, c] : terms) out.terms.emplace_back(m, c * k);
    return out;
  }
};

/// Integer combinations like "K3 + 2*S4", "Sigma_3 - (-2)*S2", "[S2xSigma_1] - 0*[S4]".
inline FormalSum parse_formal_sum(const std::string& text, const Catalog& catalog = standard_manifolds()) {
  std::string s = detail::strip(text);
  auto fail = [&]() { return Error(ErrorKind::ParseError, "bad formal sum '" + text + "'"); };
  if (s.empty()) throw fail();
  FormalSum out;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    Integer sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (!first) {
      throw fail();
    }
    first = false;
    Integer coef = 1;
    std::size_t star = s.find('*', pos);
    std::size_t next_op = s.find_first_of("+-", pos);
    // A coefficient is present if a '*' precedes the next operator (parenthesised signs are skipped).
    if (pos < s.size() && s[pos] == '(') {
      std::size_t close = s.find(')', pos);
      if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '*') throw fail();
      std::string num = s.substr(pos + 1, close - pos - 1);
      coef = detail::parse_integer(num, 0);
      pos = close + 2;
    } else if (star != std::string::npos && (next_op == std::string::npos || star < next_op)) {
      coef = detail::parse_integer(s.substr(pos, star - pos), 0);
      pos = star + 1;
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string name = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (name.size() >= 2 && name.front() == '[' && name.back() == ']') name = name.substr(1, name.size() - 2);
    if (name.empty()) throw fail();
    ManifoldClass m = parse_manifold(name, catalog);
    out.add(m, sign * coef);
    pos = end == std::string::npos ? s.size() : end;
  }
  return out;
}

/// Complete invariant of π_0 MTSO(d): d=1: (k_R mod 2); d=2: (chi/2);
/// d=3: (); d=4: ((chi+sigma)/2, sigma).
struct VfInvariant {
  int d = 0;
  std::vector<Integer> values;

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Integer& v) { return v == 0; });
  }
  friend bool operator==(const VfInvariant&, const VfInvariant&) = default;
};

inline VfInvariant vf_invariant(int d, const FormalSum& s) {
  if (d < 1 || d > 4) throw Error(ErrorKind::OutOfRange, "d must be in 1..4");
  for (const auto& [m, k] : s.terms)
    if (m.dim != d)
      throw Error(ErrorKind::DimensionMismatch, m.name + " has dimension " + std::to_string(m.dim) + ", expected " +
                                                    std::to_string(d));
  VfInvariant inv{d, {}};
  switch (d) {
    case 1: {
      Integer total = 0;
      for (const auto& [m, k] : s.terms) {
        if (!m.kr) throw Error(ErrorKind::MissingKr, m.name + " has no k_R data");
        total += k * *m.kr;
      }
      inv.values = {floor_mod(total, 2)};
      break;
    }
    case 2: {
      Integer total = 0;
      for (const auto& [m, k] : s.terms) total += k * (m.euler / 2);
      inv.values = {total};
      break;
    }
    case 3: break;
    case 4: {
      Integer half = 0, sig = 0;
      for (const auto& [m, k] : s.terms) {
        half += k * ((m.euler + m.signature) / 2);
        sig += k * m.signature;
      }
      inv.values = {half, sig};
      break;
    }
  }
  return inv;
}

inline bool is_vf_nullbordant(int d, const FormalSum& s) { return vf_invariant(d, s).is_zero(); }

// ---------------------------------------------------------------------------
// Two-dimensional theories

/// A one-dimensional commutative Frobenius algebra, all structure maps scalars.
struct FrobeniusData {
  ExactUnit unit{1};
  ExactUnit mult{1};
  ExactUnit comult{1};
  ExactUnit counit{1};

  static FrobeniusData from_mu(const ExactUnit& mu) { return {ExactUnit(1), ExactUnit(1), mu.inverse(), mu}; }
};

struct FrobeniusVerdict {
  bool ok = true;
  /// Names of the identities that fail.
  std::vector<std::string> violations;
};

inline FrobeniusVerdict frobenius_verify(const FrobeniusData& f) {
  FrobeniusVerdict v;
  auto check = [&](bool holds, const char* name) {
    if (!holds) {
      v.ok = false;
      v.violations.emplace_back(name);
    }
  };
  const ExactUnit one(1);
  check(f.mult * f.unit == one, "unit law");
  check(f.counit * f.comult == one, "counit law");
  check(f.mult * f.mult == f.mult * f.mult, "associativity");
  check(f.comult * f.comult == f.comult * f.comult, "coassociativity");
  check(f.comult * f.mult == f.mult * f.comult, "Frobenius relation");
  return v;
}

/// counit ∘ (mult ∘ comult)^g ∘ unit.
inline ExactUnit frobenius_closed_value(const FrobeniusData& f, const Integer& genus) {
  if (genus < 0) throw Error(ErrorKind::OutOfRange, "genus must be nonnegative");
  return f.counit * (f.mult * f.comult).pow(genus) * f.unit;
}

inline ExactUnit frobenius_closed_value(const ExactUnit& mu, const Integer& genus) {
  return frobenius_closed_value(FrobeniusData::from_mu(mu), genus);
}

/// A surface bordism Y0 -> Y1 described by chi(Σ) and chi(Y0).
struct SurfaceBordism {
  Integer chi_total = 0;
  Integer chi_source = 0;

  static SurfaceBordism closed(const Integer& genus) { return {2 - 2 * genus, 0}; }
};

/// λ^{chi(Σ) - chi(Y0)}.
inline ExactValue euler_theory_value(const ExactUnit& lambda, const SurfaceBordism& b) {
  return ExactValue{{{"lambda", lambda, b.chi_total - b.chi_source}}};
}

/// λ1^{chi(W)} λ2^{p1(W)}.
inline ExactValue invertible_4d_value(const ExactUnit& l1, const ExactUnit& l2, const ManifoldClass& m) {
  if (m.dim != 4) throw Error(ErrorKind::DimensionMismatch, m.name + " is not a 4-manifold");
  return ExactValue{{{"l1", l1, m.euler}, {"l2", l2, m.p1}}};
}

}  // namespace mtspec::tftlab
