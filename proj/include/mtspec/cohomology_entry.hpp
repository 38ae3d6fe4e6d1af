#pragma once

#include <mtspec/abelian.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mtspec {

struct NamedGenerator {
  std::string name;
  /// nullopt for a free generator.
  std::optional<Integer> order;

  friend bool operator==(const NamedGenerator&, const NamedGenerator&) = default;
};

/// A cohomology group with its named generators, listed in the canonical
/// generator order of `group` (free first, then torsion).
struct CohomologyEntry {
  FgAbGroup group;
  std::vector<NamedGenerator> generators;

  /// Builds the group from the generator list and checks they line up with
  /// the canonical generators one for one.
  static CohomologyEntry from_generators(std::vector<NamedGenerator> gens) {
    std::size_t free = 0;
    Vector torsion;
    for (const NamedGenerator& g : gens) {
      if (g.order) {
        torsion.push_back(*g.order);
      } else {
        if (!torsion.empty())
          throw Error(ErrorKind::InvalidArgument, "free generators must precede torsion generators");
        ++free;
      }
    }
    CohomologyEntry e{FgAbGroup(free, torsion), std::move(gens)};
    if (!e.aligned())
      throw Error(ErrorKind::InvalidArgument, "generators do not match invariant-factor form");
    return e;
  }

  bool aligned() const {
    if (generators.size() != group.generator_count()) return false;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      Integer expected = group.generator_order(i);
      const auto& o = generators[i].order;
      if (expected == 0 ? o.has_value() : (!o || *o != expected)) return false;
    }
    return true;
  }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<std::string> free_names() const {
    std::vector<std::string> out;
    for (const NamedGenerator& g : generators)
      if (!g.order) out.push_back(g.name);
    return out;
  }

  friend bool operator==(const CohomologyEntry&, const CohomologyEntry&) = default;
};

/// Display form of an ascii generator name: W3 -> W₃, p1 -> p₁, c^2 -> c²,
/// psi/sigma/tau/rho -> Greek letters.
inline std::string display_name(const std::string& ascii, bool unicode) {
  if (!unicode) return ascii;
  if (ascii == "psi") return "ψ";
  if (ascii == "sigma") return "σ";
  if (ascii == "tau") return "τ";
  if (ascii == "rho") return "ρ";
  if (ascii == "iota") return "ι";
  static const char* sup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (std::size_t i = 0; i < ascii.size(); ++i) {
    char ch = ascii[i];
    if ((ch == 'W' && i + 1 < ascii.size() && ascii[i + 1] == '3')) {
      out += "W₃";
      ++i;
    } else if (ch == 'p' && i + 1 < ascii.size() && ascii[i + 1] == '1') {
      out += "p₁";
      ++i;
    } else if (ch == '^') {
      while (i + 1 < ascii.size() && ascii[i + 1] >= '0' && ascii[i + 1] <= '9') out += sup[ascii[++i] - '0'];
    } else {
      out += ch;
    }
  }
  return out;
}

/// "ℤ⊕ℤ (ψ, σ)"; just the group when there are no generators.
inline std::string render_entry(const CohomologyEntry& e, bool unicode) {
  std::string out = e.group.to_string(unicode);
  if (e.generators.empty()) return out;
  out += " (";
  for (std::size_t i = 0; i < e.generators.size(); ++i) {
    if (i) out += ", ";
    out += display_name(e.generators[i].name, unicode);
  }
  return out + ")";
}

}  // namespace mtspec
