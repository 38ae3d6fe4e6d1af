#include <mtspec/abelian.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mtspec;
using namespace oracles;

TEST(Smith, Examples) {
  SmithForm s = smith_normal_form(IntMatrix{{2, -1}, {0, 3}});
  EXPECT_EQ(s.invariants(), v({1, 6}));
  EXPECT_EQ((s.left * IntMatrix{{2, -1}, {0, 3}} * s.right), (s.diagonal));
  SmithForm id = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(id.diagonal, IntMatrix::identity(2));
  SmithForm z = smith_normal_form(IntMatrix{{0}});
  EXPECT_EQ((z.diagonal), (IntMatrix{{0}}));
  EXPECT_EQ(z.rank, 0u);
  SmithForm empty = smith_normal_form(IntMatrix(0, 0));
  EXPECT_EQ(empty.rank, 0u);
  SmithForm wide = smith_normal_form(IntMatrix(2, 0));
  EXPECT_EQ(wide.left, IntMatrix::identity(2));
}

TEST(Smith, OracleOnTwoByTwo) {
  // Exhaustive over entries in [-4, 4].
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c)
        for (int d = -4; d <= 4; ++d) {
          IntMatrix m{{a, b}, {c, d}};
          ASSERT_EQ(smith_normal_form(m).invariants(), determinantal_invariants(m)) << a << b << c << d;
        }
}

TEST(SmithProperty, ThousandRandomMatrices) {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    SmithForm s = smith_normal_form(a);
    ASSERT_EQ(s.left * a * s.right, s.diagonal);
    ASSERT_EQ(abs(det(s.left)), 1);
    ASSERT_EQ(abs(det(s.right)), 1);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) ASSERT_EQ(s.diagonal(i, j), 0);
        if (i == j) ASSERT_GE(s.diagonal(i, j), 0);
      }
    Vector inv = s.invariants();
    for (std::size_t i = 0; i + 1 < inv.size(); ++i) ASSERT_EQ(inv[i + 1] % inv[i], 0);
    for (std::size_t i = s.rank; i < std::min(rows, cols); ++i) ASSERT_EQ(s.diagonal(i, i), 0);
    ASSERT_EQ(inv, determinantal_invariants(a));
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ((cokernel(IntMatrix{{2, -1}, {0, 3}})), (Zn(6)));
  EXPECT_EQ(cokernel(IntMatrix(2, 0)), Z(2));
  EXPECT_EQ((cokernel(IntMatrix{{2}})), (Zn(2)));
  EXPECT_EQ((cokernel(IntMatrix{{2, 0}, {0, 3}})), (Zn(6)));
  EXPECT_EQ((cokernel(IntMatrix{{2, 0}, {0, 2}, {0, 0}})), (FgAbGroup(1, v({2, 2}))));
}

TEST(CokernelProperty, UnimodularInvariance) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    FgAbGroup base = cokernel(a);
    IntMatrix changed = random_unimodular(rng, rows) * a * random_unimodular(rng, cols);
    ASSERT_EQ(cokernel(changed), base);
    IntMatrix permuted = a;
    permuted.swap_rows(0, rng() % rows);
    permuted.swap_cols(0, rng() % cols);
    ASSERT_EQ(cokernel(permuted), base);
  }
}

TEST(Group, CanonicalForm) {
  EXPECT_EQ(FgAbGroup(0, v({2, 3})), Zn(6));
  EXPECT_EQ(FgAbGroup(0, v({4, 6})).torsion(), v({2, 12}));
  EXPECT_EQ(FgAbGroup(1, v({1, 1})), Z());
  EXPECT_EQ(FgAbGroup(2, v({6})).to_string(), "Z+Z+Z/6");
  EXPECT_EQ(FgAbGroup(2, v({6})).to_string(true), "ℤ⊕ℤ⊕ℤ/6");
  EXPECT_EQ(FgAbGroup{}.to_string(), "0");
  EXPECT_EQ(parse_group("Z+Z/2+Z/3"), FgAbGroup(1, v({6})));
  EXPECT_THROW(parse_group("Q"), Error);
  EXPECT_THROW(FgAbGroup(0, v({0})), Error);
  EXPECT_EQ(*Zn(6).direct_sum(Zn(4)).order(), 24);
}

TEST(Hom, CompositionAndTorsion) {
  EXPECT_THROW((GroupHom(Zn(2), Z(), IntMatrix{{1}})), Error);
  GroupHom f(Z(), Z(), IntMatrix{{2}});
  GroupHom g(Z(), Zn(2), IntMatrix{{1}});
  EXPECT_TRUE(compose(g, f).is_zero());
  try {
    compose(f, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CompositionMismatch);
  }
}

TEST(Exact, Examples) {
  GroupHom times2(Z(), Z(), IntMatrix{{2}});
  EXPECT_TRUE((check_exact(times2, GroupHom(Z(), Zn(2), IntMatrix{{1}})).exact));
  // cu -> 2 tau, tau -> generator of Z/2
  EXPECT_TRUE((check_exact(GroupHom(Z(), Z(), IntMatrix{{2}}), GroupHom(Z(), Zn(2), IntMatrix{{1}})).exact));
  ExactnessVerdict bad = check_exact(times2, GroupHom(Z(), Zn(4), IntMatrix{{1}}));
  EXPECT_FALSE(bad.exact);
  EXPECT_FALSE(bad.composite_zero);
  ExactnessVerdict gap = check_exact(GroupHom(Z(), Z(), IntMatrix{{4}}), GroupHom(Z(), Zn(2), IntMatrix{{1}}));
  EXPECT_TRUE(gap.composite_zero);
  EXPECT_FALSE(gap.image_equals_kernel);
}

TEST(ExactProperty, AgreesWithElementChase) {
  std::mt19937 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    FgAbGroup a = random_finite_group(rng, 200);
    FgAbGroup b = random_finite_group(rng, 200);
    FgAbGroup c = random_finite_group(rng, 200);
    GroupHom f = random_hom(rng, a, b);
    GroupHom g = random_hom(rng, b, c);
    ASSERT_EQ(check_exact(f, g).exact, compose(g, f).is_zero() && brute_exact(f, g))
        << a.to_string() << " -> " << b.to_string() << " -> " << c.to_string();
    ++checked;
  }
  // Exact cases are rare at random; the cyclic sequences 0 -> Z/m -> Z/mn -> Z/n -> 0 supply some.
  for (long long m = 1; m <= 14; ++m)
    for (long long n = 1; m * n <= 200; ++n) {
      if (m == 1 || n == 1) continue;
      GroupHom inc(Zn(m), Zn(m * n), IntMatrix{{n}});
      GroupHom proj(Zn(m * n), Zn(n), IntMatrix{{1}});
      ASSERT_TRUE(check_exact(inc, proj).exact);
      ASSERT_TRUE(brute_exact(inc, proj));
    }
  EXPECT_EQ(checked, 400);
}

TEST(ImageKernel, Basics) {
  GroupHom f(Z(2), Z(2), IntMatrix{{2, 0}, {-1, 3}});
  EXPECT_EQ(image(f).abstract_group(), Z(2));
  EXPECT_EQ(cokernel(f).group, Zn(6));
  EXPECT_EQ(kernel(f).abstract_group(), FgAbGroup{});
  GroupHom g(Zn(6), Zn(6), IntMatrix{{2}});
  EXPECT_EQ(kernel(g).abstract_group(), Zn(2));
  EXPECT_EQ(image(g).abstract_group(), Zn(3));
  EXPECT_EQ(divisibility(Z(), v({6})), 6);
  EXPECT_EQ(divisibility(Z(2), v({2, -4})), 2);
  EXPECT_EQ(divisibility(Z(), v({0})), 0);
}

TEST(Ext, Identities) {
  EXPECT_EQ(ext_group(Zn(2), Z()), Zn(2));
  EXPECT_EQ(ext_group(Z(), Zn(6)), FgAbGroup{});
  EXPECT_EQ(ext_group(Zn(6), Zn(4)), Zn(2));
  EXPECT_EQ(ext_group(FgAbGroup(1, v({2, 3})), Z(2)), FgAbGroup(0, v({6, 6})));
}

TEST(Extensions, Examples) {
  EXPECT_EQ(middle_group_candidates(Z(), Zn(2)), (std::set<FgAbGroup>{Z(), FgAbGroup(1, v({2}))}));
  EXPECT_EQ(middle_group_candidates(Z(), Zn(6)),
            (std::set<FgAbGroup>{Z(), FgAbGroup(1, v({2})), FgAbGroup(1, v({3})), FgAbGroup(1, v({6}))}));
  EXPECT_EQ(middle_group_candidates(Z(2), FgAbGroup{}), std::set<FgAbGroup>{Z(2)});
  EXPECT_EQ(enumerate_extensions(Z(), Zn(6)).size(), 6u);
  EXPECT_EQ(middle_group_candidates(Zn(2), Zn(2)), (std::set<FgAbGroup>{Zn(4), FgAbGroup(0, v({2, 2}))}));
  EXPECT_THROW(middle_group_candidates(Zn(128), Z()), Error);
}

TEST(ExtensionsProperty, CyclicByIntegersOracle) {
  // Z -> X -> Z/n with class k has X = Z ⊕ Z/gcd(k, n).
  for (long long n = 1; n <= 30; ++n) {
    std::set<FgAbGroup> expected;
    for (long long k = 0; k < n; ++k) expected.insert(FgAbGroup(1, v({std::gcd(k, n)})));
    ASSERT_EQ(middle_group_candidates(Z(), Zn(n)), expected) << n;
  }
}

TEST(ExtensionsProperty, ContainsSplit) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    FgAbGroup a = random_finite_group(rng, 40).direct_sum(Z(rng() % 2));
    FgAbGroup b = random_finite_group(rng, 40).direct_sum(Z(rng() % 2));
    auto c = middle_group_candidates(a, b);
    ASSERT_TRUE(c.count(a.direct_sum(b))) << a.to_string() << " " << b.to_string();
    for (const FgAbGroup& x : c) ASSERT_EQ(x.free_rank(), a.free_rank() + b.free_rank());
  }
}

TEST(ExtensionsProperty, InclusionsAreInjectiveWithRightQuotient) {
  FgAbGroup a = Z();
  FgAbGroup b = Zn(6);
  for (const Extension& e : enumerate_extensions(a, b)) {
    EXPECT_TRUE(kernel(e.inclusion).abstract_group().is_trivial());
    EXPECT_EQ(cokernel(e.inclusion).group, b);
  }
}

TEST(UnitsKernel, Examples) {
  EXPECT_EQ((units_kernel(IntMatrix{{2, -1}, {0, 3}})), (Zn(6)));
  EXPECT_EQ((units_kernel(IntMatrix{{2}})), (Zn(2)));
  EXPECT_EQ(units_kernel(IntMatrix::identity(3)), FgAbGroup{});
  EXPECT_EQ(units_kernel(IntMatrix(2, 0)), Z(2));
}

TEST(UnitsKernel, ElementsSatisfyKernelEquations) {
  IntMatrix a{{2, 0}, {-1, 3}};
  auto els = units_kernel_elements(a);
  ASSERT_EQ(els.size(), 6u);
  std::set<Vector> distinct;
  for (const RootTuple& t : els) {
    EXPECT_EQ(t.order, 6);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * t.powers[i];
      EXPECT_EQ(floor_mod(s, t.order), 0);
    }
    distinct.insert(t.powers);
  }
  EXPECT_EQ(distinct.size(), 6u);
  EXPECT_THROW(units_kernel_elements(IntMatrix(1, 0)), Error);
}

TEST(UnitsKernelProperty, OrderIsDeterminant) {
  std::mt19937 rng(11);
  int nonsingular = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, n, n, 5);
    Integer d = det(a);
    if (d == 0) continue;
    ++nonsingular;
    ASSERT_EQ(*units_kernel(a).order(), abs(d));
  }
  EXPECT_GT(nonsingular, 100);
}

TEST(Solve, NullspaceAndSolve) {
  IntMatrix a{{2, 4}, {1, 2}};
  IntMatrix n = integer_nullspace(a);
  EXPECT_EQ(n.cols(), 1u);
  EXPECT_TRUE((a * n).is_zero());
  EXPECT_TRUE((solve_integer(IntMatrix{{2}}, v({4})).has_value()));
  EXPECT_FALSE((solve_integer(IntMatrix{{2}}, v({3})).has_value()));
}
