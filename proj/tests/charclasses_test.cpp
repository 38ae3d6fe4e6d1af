#include <mtspec/charclasses.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mtspec;
using namespace mtspec::charclasses;

namespace {

std::vector<std::string> basis_names(const GradedPiece& p) {
  std::vector<std::string> out;
  for (const Monomial& m : p.basis) out.push_back(m.name());
  return out;
}

const std::vector<Generator>& generators_of(int d) {
  static const std::vector<Generator> g2 = {Generator::c};
  static const std::vector<Generator> g3 = {Generator::W3, Generator::p1};
  static const std::vector<Generator> g4 = {Generator::W3, Generator::e, Generator::p1};
  return d == 2 ? g2 : d == 3 ? g3 : g4;
}

// Random homogeneous element of degree k (possibly zero).
RingElement random_homogeneous(std::mt19937& rng, int d, int k) {
  RingElement x(d);
  GradedPiece piece = graded_piece(d, k);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (const Monomial& m : piece.basis) x.add_term(m, coef(rng));
  return x;
}

}  // namespace

TEST(Generators, Degrees) {
  EXPECT_EQ(degree(Generator::c), 2);
  EXPECT_EQ(degree(Generator::W3), 3);
  EXPECT_EQ(degree(Generator::e), 4);
  EXPECT_EQ(degree(Generator::p1), 4);
  EXPECT_EQ(torsion_order(Generator::W3), 2);
  EXPECT_EQ(torsion_order(Generator::p1), 0);
  // Every generator is of even degree or 2-torsion, so graded commutativity needs no signs.
  for (Generator g : kAllGenerators) EXPECT_TRUE(degree(g) % 2 == 0 || torsion_order(g) == 2);
}

TEST(GradedPiece, Examples) {
  GradedPiece p44 = graded_piece(4, 4);
  EXPECT_EQ(p44.group, FgAbGroup::free(2));
  EXPECT_EQ(basis_names(p44), (std::vector<std::string>{"e", "p1"}));
  GradedPiece p43 = graded_piece(4, 3);
  EXPECT_EQ(p43.group, FgAbGroup::cyclic(2));
  EXPECT_EQ(basis_names(p43), std::vector<std::string>{"W3"});
  EXPECT_TRUE(graded_piece(2, 5).group.is_trivial());
  GradedPiece p47 = graded_piece(4, 7);
  EXPECT_EQ(p47.group, FgAbGroup(0, Vector{2, 2}));
  EXPECT_EQ(basis_names(p47), (std::vector<std::string>{"W3e", "W3p1"}));
  EXPECT_EQ(basis_names(graded_piece(3, 8)), (std::vector<std::string>{"p1^2"}));
  EXPECT_EQ(basis_names(graded_piece(2, 4)), std::vector<std::string>{"c^2"});
  EXPECT_THROW(graded_piece(4, 65), Error);
  EXPECT_THROW(graded_piece(5, 0), Error);
}

TEST(GradedPiece, BruteForceOracleFourDim) {
  for (int k = 0; k <= 12; ++k) {
    std::size_t free = 0;
    std::size_t torsion = 0;
    for (int a = 0; 3 * a <= k; ++a)
      for (int b = 0; 3 * a + 4 * b <= k; ++b)
        for (int c = 0; 3 * a + 4 * b + 4 * c <= k; ++c)
          if (3 * a + 4 * b + 4 * c == k) (a > 0 ? torsion : free)++;
    GradedPiece p = graded_piece(4, k);
    EXPECT_EQ(p.group, FgAbGroup(free, Vector(torsion, 2))) << k;
    EXPECT_EQ(p.basis.size(), free + torsion) << k;
  }
}

TEST(GradedPiece, BasisIsLegalAndOfRightDegree) {
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k <= 24; ++k)
      for (const Monomial& m : graded_piece(d, k).basis) {
        EXPECT_EQ(m.degree(), k);
        EXPECT_TRUE(m.legal_in(d));
      }
}

TEST(ThomModule, Examples) {
  CohomologyEntry e34 = thom_module_piece(3, 4);
  EXPECT_EQ(e34.group, FgAbGroup::free(1));
  EXPECT_EQ(e34.generators.at(0).name, "p1u");
  EXPECT_EQ(thom_module_piece(2, 2).generators.at(0).name, "cu");
  EXPECT_EQ(thom_module_piece(4, 0).generators.at(0).name, "u");
  EXPECT_EQ(thom_module_piece(2, 4).generators.at(0).name, "c^2u");
  EXPECT_EQ(thom_module_piece(4, 3).generators.at(0).order, Integer(2));
}

TEST(ThomModule, MatchesGradedPiece) {
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k <= 12; ++k) {
      CohomologyEntry e = thom_module_piece(d, k);
      GradedPiece p = graded_piece(d, k);
      EXPECT_EQ(e.group, p.group);
      EXPECT_TRUE(e.aligned());
      for (std::size_t i = 0; i < p.basis.size(); ++i) EXPECT_EQ(e.generators[i].name, thom_name(p.basis[i]));
    }
}

TEST(Multiply, Examples) {
  RingElement w = RingElement::generator(4, Generator::W3);
  RingElement w2 = multiply(w, w);
  EXPECT_EQ(w2.coefficient(Monomial::of(Generator::W3, 2)), 1);
  EXPECT_TRUE(multiply(w.scaled(2), w).is_zero());
  EXPECT_TRUE(w.scaled(2).is_zero());
  RingElement c = RingElement::generator(2, Generator::c);
  EXPECT_EQ(multiply(c, c).to_string(), "c^2");
  RingElement ep = RingElement::generator(4, Generator::e) + RingElement::generator(4, Generator::p1);
  EXPECT_EQ(multiply(ep, RingElement::one(4)), ep);
  try {
    multiply(c, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbientMismatch);
  }
  EXPECT_THROW(RingElement::generator(2, Generator::e), Error);
}

TEST(Multiply, CommutativeAssociative) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    RingElement x = random_homogeneous(rng, d, static_cast<int>(rng() % 7));
    RingElement y = random_homogeneous(rng, d, static_cast<int>(rng() % 7));
    RingElement z = random_homogeneous(rng, d, static_cast<int>(rng() % 7));
    ASSERT_EQ(multiply(x, y), multiply(y, x));
    ASSERT_EQ(multiply(multiply(x, y), z), multiply(x, multiply(y, z)));
    ASSERT_EQ(multiply(x, y + z), multiply(x, y) + multiply(x, z));
    ASSERT_TRUE(multiply(x, y).is_homogeneous());
  }
}

TEST(Restrict, Examples) {
  RingElement p1 = RingElement::generator(4, Generator::p1);
  EXPECT_EQ(restrict_generators(p1, 3), RingElement::generator(3, Generator::p1));
  EXPECT_EQ(restrict_generators(RingElement::generator(3, Generator::p1), 2).to_string(), "-c^2");
  EXPECT_TRUE(restrict_generators(RingElement::generator(4, Generator::e), 3).is_zero());
  EXPECT_TRUE(restrict_generators(RingElement::generator(3, Generator::W3), 2).is_zero());
  EXPECT_EQ(restrict_generators(RingElement::generator(4, Generator::W3), 3),
            RingElement::generator(3, Generator::W3));
  EXPECT_THROW(restrict_generators(p1, 4), Error);
}

TEST(Restrict, Composes) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    RingElement x = random_homogeneous(rng, 4, static_cast<int>(rng() % 13));
    ASSERT_EQ(restrict_generators(restrict_generators(x, 3), 2), restrict_generators(x, 2));
  }
}

TEST(Restrict, RingHomomorphism) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    int from = 3 + static_cast<int>(rng() % 2);
    int to = from == 4 ? 2 + static_cast<int>(rng() % 2) : 2;
    int kx = static_cast<int>(rng() % 7);
    int ky = static_cast<int>(rng() % 7);
    RingElement x = random_homogeneous(rng, from, kx);
    RingElement y = random_homogeneous(rng, from, ky);
    ASSERT_EQ(restrict_generators(multiply(x, y), to), multiply(restrict_generators(x, to), restrict_generators(y, to)));
    ASSERT_EQ(restrict_generators(x + y, to), restrict_generators(x, to) + restrict_generators(y, to));
  }
  for (int from : {3, 4})
    for (Generator g : generators_of(from)) EXPECT_TRUE(restrict_generators(RingElement::generator(from, g), 2).is_homogeneous());
}

TEST(RingElementTest, Rendering) {
  RingElement x = RingElement::generator(4, Generator::e).scaled(2) - RingElement::generator(4, Generator::p1);
  EXPECT_EQ(x.to_string(), "2*e - p1");
  EXPECT_EQ(RingElement::one(3).scaled(-3).to_string(), "-3");
  EXPECT_EQ(RingElement(2).to_string(), "0");
}
