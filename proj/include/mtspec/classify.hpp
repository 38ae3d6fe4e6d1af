#pragma once

// Invertible field theories with values in C^x: the group of (d; n) theories
// is H^d(p≥{d-n} Σ^d MTSO(d); C^x). This header computes those groups, the
// multiplicative restriction maps between levels, their kernels, and the
// central-extension certificate for three-dimensional theories.

#include <mtspec/abelian.hpp>
#include <mtspec/exact_unit.hpp>
#include <mtspec/spectra.hpp>

#include <string>
#include <vector>

namespace mtspec::classify {

using spectra::SpectrumId;

struct TheoryGroup {
  int d = 0;
  int n = 0;
  /// Cover level d - n of Σ^d MTSO(d).
  int cover = 0;
  /// Number of C^x factors.
  std::size_t unit_rank = 0;
  FgAbGroup finite_part;
  /// Free generators of H^d that the C^x coordinates are dual to.
  std::vector<std::string> basis_names;

  bool is_trivial() const { return unit_rank == 0 && finite_part.is_trivial(); }

  /// "(ℂˣ)² on (eu, p₁u)", "ℂˣ on (τ)", "trivial".
  std::string to_string(bool unicode = true) const {
    if (is_trivial()) return "trivial";
    std::string cx = unicode ? "ℂˣ" : "C^x";
    std::string out;
    if (unit_rank == 1) out = cx;
    else if (unit_rank > 1)
      out = "(" + cx + ")" + (unicode ? ExactUnit::superscript(std::to_string(unit_rank)) : "^" + std::to_string(unit_rank));
    if (!finite_part.is_trivial()) out += (out.empty() ? "" : (unicode ? "⊕" : "+")) + finite_part.to_string(unicode);
    if (!basis_names.empty()) {
      out += " on (";
      for (std::size_t i = 0; i < basis_names.size(); ++i) {
        if (i) out += ", ";
        out += display_name(basis_names[i], unicode);
      }
      out += ")";
    }
    return out;
  }

  friend bool operator==(const TheoryGroup&, const TheoryGroup&) = default;
};

struct TheoryParams {
  std::vector<std::string> basis;
  std::vector<ExactUnit> coords;

  friend bool operator==(const TheoryParams&, const TheoryParams&) = default;
};

inline void check_levels(int d, int n) {
  if (d < 1 || d > 4) throw Error(ErrorKind::OutOfRange, "d must be in 1..4");
  if (n < 1 || n > d) throw Error(ErrorKind::OutOfRange, "n must be in 1..d");
}

inline FgAbGroup cover_cohomology_group(int d, int cover, int k, const spectra::CertifiedTable& table) {
  if (d == 1) return spectra::sphere_cohomology(k);
  return spectra::cohomology(SpectrumId{d, cover}, k, table).group;
}

/// H^d(p≥{d-n} Σ^d MTSO(d); C^x): one C^x per free generator of H^d, plus
/// the torsion of H^{d+1} (via Z -> C -> C^x); torsion in H^d dies in C.
inline TheoryGroup classify(int d, int n, const spectra::CertifiedTable& table = spectra::default_table()) {
  check_levels(d, n);
  TheoryGroup g;
  g.d = d;
  g.n = n;
  g.cover = d - n;
  FgAbGroup top = cover_cohomology_group(d, g.cover, d, table);
  FgAbGroup next = cover_cohomology_group(d, g.cover, d + 1, table);
  g.unit_rank = top.free_rank();
  g.finite_part = next.torsion_subgroup();
  if (d > 1) g.basis_names = spectra::cohomology(SpectrumId{d, g.cover}, d, table).free_names();
  return g;
}

/// Exponent matrix of the restriction from (d; n_from) theories to (d; n_to)
/// theories: rows are the free generators of the source level, columns those
/// of the target level, entry (i, j) the coefficient of target generator j in
/// the image of source generator i.
inline IntMatrix restriction_matrix(int d, int n_from, int n_to,
                                    const spectra::CertifiedTable& table = spectra::default_table()) {
  check_levels(d, n_from);
  check_levels(d, n_to);
  if (n_to >= n_from) throw Error(ErrorKind::OutOfRange, "restriction must lower n");
  const int c_from = d - n_from;
  const int c_to = d - n_to;
  TheoryGroup src = classify(d, n_from, table);
  TheoryGroup tgt = classify(d, n_to, table);
  if (src.unit_rank == 0 || tgt.unit_rank == 0) return IntMatrix(src.unit_rank, tgt.unit_rank);

  if (c_from >= 1) {
    if (!spectra::grid_equivalence(d, c_from, c_to))
      throw Error(ErrorKind::NotRecorded, "no recorded map between covers p≥" + std::to_string(c_from) + " and p≥" +
                                              std::to_string(c_to));
    return IntMatrix::identity(src.unit_rank);
  }
  if (c_to > 1 && !spectra::grid_equivalence(d, 1, c_to))
    throw Error(ErrorKind::NotRecorded, "cover p≥" + std::to_string(c_to) + " is not reached from p≥1");
  spectra::NamedHom h = spectra::cover_map(d, d, table);
  CohomologyEntry target = spectra::cohomology(SpectrumId{d, 1}, d, table);
  IntMatrix a(src.unit_rank, tgt.unit_rank);
  for (std::size_t i = 0; i < src.basis_names.size(); ++i) {
    const spectra::LinearCombination* lc = h.image_of(src.basis_names[i]);
    if (!lc) throw Error(ErrorKind::NotRecorded, "no image recorded for " + src.basis_names[i]);
    for (const auto& [c, name] : lc->terms) {
      auto j = target.index_of(name);
      if (!j || *j >= tgt.unit_rank) throw Error(ErrorKind::InvariantViolation, "image outside the free part");
      a(i, *j) += c;
    }
  }
  return a;
}

/// t_j = ∏_i s_i^{A_ij}.
inline TheoryParams restrict_theory(int d, int n_from, int n_to, const TheoryParams& params,
                                    const spectra::CertifiedTable& table = spectra::default_table()) {
  TheoryGroup src = classify(d, n_from, table);
  TheoryGroup tgt = classify(d, n_to, table);
  if (!src.finite_part.is_trivial() || !tgt.finite_part.is_trivial())
    throw Error(ErrorKind::Unsupported, "theory groups with a finite part have no coordinate description");
  if (params.coords.size() != src.unit_rank)
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(src.unit_rank) + " parameters, got " +
                                                std::to_string(params.coords.size()));
  IntMatrix a = restriction_matrix(d, n_from, n_to, table);
  TheoryParams out{tgt.basis_names, {}};
  for (std::size_t j = 0; j < tgt.unit_rank; ++j) {
    ExactUnit t;
    for (std::size_t i = 0; i < src.unit_rank; ++i) t = t * params.coords[i].pow(a(i, j));
    out.coords.push_back(t);
  }
  return out;
}

inline TheoryParams make_params(int d, int n, std::vector<ExactUnit> coords,
                                const spectra::CertifiedTable& table = spectra::default_table()) {
  TheoryGroup g = classify(d, n, table);
  if (coords.size() != g.unit_rank)
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(g.unit_rank) + " parameters, got " +
                                                std::to_string(coords.size()));
  return TheoryParams{g.basis_names, std::move(coords)};
}

struct RestrictionKernel {
  FgAbGroup group;
  IntMatrix matrix;
  std::vector<std::string> basis;
  /// All elements, when the kernel is finite of order ≤ 64.
  std::vector<RootTuple> elements;

  /// Elements as tuples of exact values.
  std::vector<std::vector<ExactUnit>> element_values() const {
    std::vector<std::vector<ExactUnit>> out;
    for (const RootTuple& t : elements) {
      std::vector<ExactUnit> row;
      for (std::size_t i = 0; i < t.powers.size(); ++i) row.push_back(ExactUnit::from_root_tuple_entry(t, i));
      out.push_back(std::move(row));
    }
    return out;
  }

  /// "ℤ/6: (ζ³, ζ), ζ⁶=1" for a cyclic kernel of order > 2 (smallest
  /// generating tuple); an explicit element list otherwise.
  std::string to_string(bool unicode = true) const {
    std::string out = group.to_string(unicode);
    if (elements.empty()) return out;
    std::string zeta = unicode ? "ζ" : "zeta";
    auto power = [&](const Integer& p) -> std::string {
      if (p == 0) return "1";
      if (p == 1) return zeta;
      return zeta + (unicode ? ExactUnit::superscript(p.str()) : "^" + p.str());
    };
    const Integer order = elements.front().order;
    if (group.torsion().size() == 1 && order > 2) {
      for (const RootTuple& t : elements) {
        Integer g = 0;
        for (const Integer& p : t.powers) g = gcd(g, p);
        if (gcd(g, order) != 1) continue;
        out += ": (";
        for (std::size_t i = 0; i < t.powers.size(); ++i) out += (i ? ", " : "") + power(t.powers[i]);
        return out + "), " + power(order) + "=1";
      }
    }
    out += ": {";
    auto values = element_values();
    for (std::size_t e = 0; e < values.size(); ++e) {
      out += e ? ", (" : "(";
      for (std::size_t i = 0; i < values[e].size(); ++i) out += (i ? ", " : "") + values[e][i].to_string(unicode);
      out += ")";
    }
    return out + "}";
  }
};

inline RestrictionKernel restriction_kernel(int d, int n_from, int n_to,
                                            const spectra::CertifiedTable& table = spectra::default_table()) {
  RestrictionKernel k;
  k.matrix = restriction_matrix(d, n_from, n_to, table);
  k.basis = classify(d, n_from, table).basis_names;
  k.group = units_kernel(k.matrix);
  if (k.group.is_finite() && *k.group.order() <= 64 && k.matrix.rows() > 0)
    k.elements = units_kernel_elements(k.matrix);
  return k;
}

// ---------------------------------------------------------------------------
// Central extensions of the three-dimensional bordism category

/// A class n·ρ in HZ^4(p≥2 Σ^3 MTSO(3)) ≅ Z.
struct ExtensionClass {
  Integer rho_multiple = 0;

  friend ExtensionClass operator+(const ExtensionClass& a, const ExtensionClass& b) {
    return {a.rho_multiple + b.rho_multiple};
  }
  friend bool operator==(const ExtensionClass&, const ExtensionClass&) = default;
};

/// Multiple of the generator of H^2(Γ; Z) induced by ρ.
inline constexpr int kMcgClassOfRho = 2;

inline Integer mcg_extension_class(const ExtensionClass& x) { return kMcgClassOfRho * x.rho_multiple; }

struct NamedExtension {
  std::string label;
  /// Characteristic class it comes from ("p1", "sigma", "rho").
  std::string characteristic_class;
  ExtensionClass cls;
  Integer mcg_class;
  /// Where the multiple of ρ was read off.
  std::string source;
};

struct GilmerMasbaumReport {
  SpectrumId spectrum{3, 2};
  CohomologyEntry group;
  std::vector<NamedExtension> extensions;
  /// Some class nρ induces the generator of H^2(Γ; Z).
  bool fundamental_realizable = true;
  /// Smallest positive class reached.
  Integer smallest_mcg_class;
  /// Some class nρ induces a quarter of Walker's class.
  bool walker_index_four_realizable = true;
  std::vector<std::string> argument;

  const NamedExtension& find(const std::string& label) const {
    for (const NamedExtension& e : extensions)
      if (e.label == label) return e;
    throw Error(ErrorKind::InvalidArgument, "no extension labelled " + label);
  }
};

namespace detail {

inline Integer rho_coefficient(const spectra::LinearCombination& lc) {
  if (lc.terms.size() != 1 || lc.terms.front().second != "rho")
    throw Error(ErrorKind::InvariantViolation, "expected a multiple of rho, got " + lc.render());
  return lc.terms.front().first;
}

}  // namespace detail

/// Reads the Atiyah (p₁) and Walker (signature) classes off the certified
/// arrows into H^4(p≥1 Σ^3 MTSO(3)) ≅ H^4(p≥2 Σ^3 MTSO(3)) and decides
/// which mapping-class-group extensions are realised.
inline GilmerMasbaumReport gilmer_masbaum_report(const spectra::CertifiedTable& table = spectra::default_table()) {
  GilmerMasbaumReport r;
  if (!spectra::grid_equivalence(3, 1, 2))
    throw Error(ErrorKind::InvariantViolation, "p≥1 and p≥2 covers of Σ^3 MTSO(3) differ");
  r.group = spectra::cohomology(r.spectrum, 4, table);
  if (!(r.group.group == FgAbGroup::free(1)) || r.group.generators.front().name != "rho")
    throw Error(ErrorKind::InvariantViolation, "HZ^4(p≥2 Σ^3 MTSO(3)) is not Z generated by rho");

  spectra::NamedHom p1_arrow = spectra::cover_map(3, 4, table);
  spectra::NamedHom sigma_arrow = spectra::restriction_arrow(4, 1, 4, table);
  Integer atiyah = detail::rho_coefficient(*p1_arrow.image_of("p1u"));
  Integer walker = detail::rho_coefficient(*sigma_arrow.image_of("sigma"));

  auto add = [&](std::string label, std::string cc, const Integer& n, std::string source) {
    ExtensionClass cls{n};
    r.extensions.push_back({std::move(label), std::move(cc), cls, mcg_extension_class(cls), std::move(source)});
  };
  add("Atiyah", "p1", atiyah, "cover map p1u -> " + p1_arrow.image_of("p1u")->render());
  add("Walker", "sigma", walker, "restriction sigma -> " + sigma_arrow.image_of("sigma")->render());
  add("Gilmer", "rho", 1, "generator");

  // Every class is nρ, inducing 2n.
  r.smallest_mcg_class = kMcgClassOfRho;
  r.fundamental_realizable = false;
  const Integer walker_mcg = r.find("Walker").mcg_class;
  r.walker_index_four_realizable = walker_mcg % 4 == 0 && (walker_mcg / 4) % kMcgClassOfRho == 0;

  r.argument = {
      "HZ^4(p>=2 Sigma^3 MTSO(3)) = Z, generated by rho",
      "a class n*rho induces " + std::to_string(kMcgClassOfRho) + "n times the generator of H^2(Gamma; Z)",
      "every induced class is even, so the generator itself is never induced",
      "Walker's class is " + walker_mcg.str() + "; a quarter of it would be 1, which is not induced",
  };
  return r;
}

}  // namespace mtspec::classify
