#pragma once

// Integral cohomology rings H*(BSO(d); Z) for d = 2, 3, 4:
//   d = 4: Z[W3, e, p1] / (2 W3)
//   d = 3: Z[W3, p1] / (2 W3)
//   d = 2: Z[c]
// with |c| = 2, |W3| = 3, |e| = |p1| = 4, and the Thom-module description
// H*(Σ^d MTSO(d)) = H*(BSO(d)) · u with u in degree 0.
//
// W3 is the integral Bockstein of w2. It is carried here purely as a named
// 2-torsion generator; no Steenrod operations are computed.

#include <mtspec/abelian.hpp>
#include <mtspec/cohomology_entry.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace mtspec::charclasses {

enum class Generator { W3 = 0, e = 1, p1 = 2, c = 3 };

inline constexpr std::array<Generator, 4> kAllGenerators = {Generator::W3, Generator::e, Generator::p1,
                                                           Generator::c};
inline constexpr int kDegreeCap = 64;

inline int degree(Generator g) {
  switch (g) {
    case Generator::c: return 2;
    case Generator::W3: return 3;
    case Generator::e:
    case Generator::p1: return 4;
  }
  return 0;
}

inline const char* name(Generator g) {
  switch (g) {
    case Generator::W3: return "W3";
    case Generator::e: return "e";
    case Generator::p1: return "p1";
    case Generator::c: return "c";
  }
  return "?";
}

/// 2 for W3, 0 (free) otherwise.
inline int torsion_order(Generator g) { return g == Generator::W3 ? 2 : 0; }

inline void check_ambient(int d) {
  if (d < 2 || d > 4) throw Error(ErrorKind::OutOfRange, "ambient dimension must be 2, 3 or 4");
}

inline bool legal(Generator g, int d) {
  switch (d) {
    case 2: return g == Generator::c;
    case 3: return g == Generator::W3 || g == Generator::p1;
    case 4: return g != Generator::c;
  }
  return false;
}

/// Exponents indexed by Generator: (W3, e, p1, c).
struct Monomial {
  std::array<unsigned, 4> exponents{};

  static Monomial one() { return {}; }
  static Monomial of(Generator g, unsigned power = 1) {
    Monomial m;
    m.exponents[static_cast<int>(g)] = power;
    return m;
  }

  unsigned exponent(Generator g) const { return exponents[static_cast<int>(g)]; }

  int degree() const {
    int total = 0;
    for (Generator g : kAllGenerators) total += static_cast<int>(exponent(g)) * charclasses::degree(g);
    return total;
  }

  bool is_torsion() const { return exponent(Generator::W3) > 0; }

  bool legal_in(int d) const {
    for (Generator g : kAllGenerators)
      if (exponent(g) > 0 && !legal(g, d)) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < 4; ++i) m.exponents[i] = exponents[i] + other.exponents[i];
    return m;
  }

  /// "1", "W3", "e^2p1", "c^2".
  std::string name() const {
    std::string out;
    for (Generator g : kAllGenerators) {
      unsigned k = exponent(g);
      if (k == 0) continue;
      out += charclasses::name(g);
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "1" : out;
  }

  /// Basis order: lexicographically decreasing in (W3, e, p1, c) exponents.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exponents > b.exponents; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class RingElement {
 public:
  explicit RingElement(int ambient_d) : d_(ambient_d) { check_ambient(d_); }

  static RingElement one(int d) { return monomial(d, Monomial::one()); }
  static RingElement generator(int d, Generator g) { return monomial(d, Monomial::of(g)); }
  static RingElement monomial(int d, const Monomial& m, const Integer& coefficient = 1) {
    RingElement x(d);
    x.add_term(m, coefficient);
    return x;
  }

  int ambient_d() const noexcept { return d_; }
  const std::map<Monomial, Integer>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Integer coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int deg = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != deg) return false;
    return true;
  }

  void add_term(const Monomial& m, const Integer& coefficient) {
    if (!m.legal_in(d_))
      throw Error(ErrorKind::InvalidArgument,
                  "monomial " + m.name() + " not in H*(BSO(" + std::to_string(d_) + "))");
    Integer& slot = terms_[m];
    slot += coefficient;
    if (m.is_torsion()) slot = floor_mod(slot, 2);
    if (slot == 0) terms_.erase(m);
  }

  RingElement operator+(const RingElement& other) const {
    same_ambient(other);
    RingElement out = *this;
    for (const auto& [m, c] : other.terms_) out.add_term(m, c);
    return out;
  }

  RingElement operator-() const {
    RingElement out(d_);
    for (const auto& [m, c] : terms_) out.add_term(m, -c);
    return out;
  }

  RingElement operator-(const RingElement& other) const { return *this + (-other); }

  RingElement scaled(const Integer& k) const {
    RingElement out(d_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * k);
    return out;
  }

  friend bool operator==(const RingElement&, const RingElement&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      Integer a = abs(c);
      if (a != 1 || m == Monomial::one()) out += a.str() + (m == Monomial::one() ? "" : "*");
      if (!(m == Monomial::one())) out += m.name();
    }
    return out;
  }

  void same_ambient(const RingElement& other) const {
    if (other.d_ != d_)
      throw Error(ErrorKind::AmbientMismatch, "elements of H*(BSO(" + std::to_string(d_) + ")) and H*(BSO(" +
                                                  std::to_string(other.d_) + "))");
  }

 private:
  int d_;
  std::map<Monomial, Integer> terms_;
};

/// Distributive product; W3-terms reduced mod 2 on insertion.
inline RingElement multiply(const RingElement& x, const RingElement& y) {
  x.same_ambient(y);
  RingElement out(x.ambient_d());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) out.add_term(mx * my, cx * cy);
  return out;
}

/// Image of a generator under the restriction H*(BSO(from)) -> H*(BSO(to)).
/// Shared names are preserved, e ↦ 0, and landing in BSO(2): p1 ↦ -c^2,
/// W3 ↦ 0 (H^3(BSO(2)) = 0).
inline RingElement restrict_generator(Generator g, int from_d, int to_d) {
  RingElement zero(to_d);
  switch (g) {
    case Generator::e: return zero;
    case Generator::W3: return to_d == 2 ? zero : RingElement::generator(to_d, Generator::W3);
    case Generator::p1:
      return to_d == 2 ? -RingElement::monomial(to_d, Monomial::of(Generator::c, 2))
                       : RingElement::generator(to_d, Generator::p1);
    case Generator::c:
      if (from_d == 2) return RingElement::generator(to_d, Generator::c);
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "no restriction rule");
}

inline RingElement restrict_generators(const RingElement& x, int to_d) {
  const int from = x.ambient_d();
  check_ambient(to_d);
  if (to_d >= from || to_d > 3) throw Error(ErrorKind::OutOfRange, "restriction must lower the dimension to 2 or 3");
  RingElement out(to_d);
  for (const auto& [m, c] : x.terms()) {
    RingElement term = RingElement::one(to_d).scaled(c);
    for (Generator g : kAllGenerators)
      for (unsigned k = 0; k < m.exponent(g); ++k) term = multiply(term, restrict_generator(g, from, to_d));
    out = out + term;
  }
  return out;
}

/// Degree-k part of H*(BSO(d); Z) with its monomial basis; free monomials
/// first, then W3-monomials (each Z/2), each block in basis order.
struct GradedPiece {
  FgAbGroup group;
  std::vector<Monomial> basis;
};

inline GradedPiece graded_piece(int d, int k) {
  check_ambient(d);
  if (k < 0 || k > kDegreeCap) throw Error(ErrorKind::OutOfRange, "degree must be in 0..64");
  std::vector<Monomial> free;
  std::vector<Monomial> torsion;
  // W3 has degree 3 and everything else is even, so bounds are k/2 at most.
  for (unsigned w = 0; 3 * w <= static_cast<unsigned>(k); ++w)
    for (unsigned e = 0; 3 * w + 4 * e <= static_cast<unsigned>(k); ++e)
      for (unsigned p = 0; 3 * w + 4 * e + 4 * p <= static_cast<unsigned>(k); ++p)
        for (unsigned c = 0; 3 * w + 4 * e + 4 * p + 2 * c <= static_cast<unsigned>(k); ++c) {
          Monomial m;
          m.exponents = {w, e, p, c};
          if (m.degree() != k || !m.legal_in(d)) continue;
          (m.is_torsion() ? torsion : free).push_back(m);
        }
  std::sort(free.begin(), free.end());
  std::sort(torsion.begin(), torsion.end());
  GradedPiece piece{FgAbGroup(free.size(), Vector(torsion.size(), 2)), free};
  piece.basis.insert(piece.basis.end(), torsion.begin(), torsion.end());
  return piece;
}

/// Name of m·u: "u", "cu", "c^2u", "W3u", "ep1u".
inline std::string thom_name(const Monomial& m) {
  return m == Monomial::one() ? "u" : m.name() + "u";
}

/// Degree-k part of H*(Σ^d MTSO(d)); the Thom class has degree 0.
inline CohomologyEntry thom_module_piece(int d, int k) {
  GradedPiece piece = graded_piece(d, k);
  std::vector<NamedGenerator> gens;
  for (const Monomial& m : piece.basis)
    gens.push_back({thom_name(m), m.is_torsion() ? std::optional<Integer>(2) : std::nullopt});
  return CohomologyEntry::from_generators(std::move(gens));
}

}  // namespace mtspec::charclasses
