// One PASS/FAIL line per acceptance criterion. Every comparison is exact:
// integers, rationals and roots of unity are compared symbolically, so the
// tolerance is zero throughout.

#include <mtspec/classify.hpp>
#include <mtspec/spectra.hpp>
#include <mtspec/tftlab.hpp>

#include "oracles.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace mtspec;
using namespace oracles;

namespace {

constexpr int kTolerance = 0;  // exact

struct Criterion {
  std::ostringstream notes;
  int failures = 0;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (failures <= 5) notes << " [" << what << "]";
    }
  }
};

using Check = std::function<void(Criterion&)>;

ExactUnit q(long long num, long long den = 1) { return ExactUnit(Rational(num, den)); }

ExactUnit random_rational(std::mt19937& rng) {
  long long n = 0;
  while (n == 0) n = static_cast<long long>(rng() % 81) - 40;
  return q(n, 1 + static_cast<long long>(rng() % 30));
}

ExactUnit random_unit(std::mt19937& rng) {
  long long order = 1 + static_cast<long long>(rng() % 12);
  return random_rational(rng) * ExactUnit::root_of_unity(order, static_cast<long long>(rng() % order));
}

// ---------------------------------------------------------------------------

void ac1(Criterion& c) {
  struct Row {
    int d, cover;
    std::vector<std::pair<const char*, std::vector<std::string>>> ks;
  };
  const std::vector<Row> expected = {
      {4, 0, {{"Z", {"u"}}, {"0", {}}, {"0", {}}, {"Z/2", {"W3u"}}, {"Z+Z", {"eu", "p1u"}}, {"0", {}}}},
      {4, 1, {{"0", {}}, {"0", {}}, {"0", {}}, {"0", {}}, {"Z+Z", {"psi", "sigma"}}, {"0", {}}}},
      {3, 0, {{"Z", {"u"}}, {"0", {}}, {"0", {}}, {"Z/2", {"W3u"}}, {"Z", {"p1u"}}, {"0", {}}}},
      {3, 1, {{"0", {}}, {"0", {}}, {"0", {}}, {"0", {}}, {"Z", {"rho"}}, {"0", {}}}},
      {2, 0, {{"Z", {"u"}}, {"0", {}}, {"Z", {"cu"}}, {"0", {}}, {"Z", {"c^2u"}}, {"0", {}}}},
      {2, 1, {{"0", {}}, {"0", {}}, {"Z", {"tau"}}, {"0", {}}, {"Z", {"rho"}}, {"0", {}}}},
  };
  int groups = 0, names = 0;
  for (const Row& row : expected)
    for (int k = 0; k <= 5; ++k) {
      CohomologyEntry e = spectra::cohomology(spectra::SpectrumId{row.d, row.cover}, k);
      std::string where = "d=" + std::to_string(row.d) + " p" + std::to_string(row.cover) + " k=" + std::to_string(k);
      c.expect(e.group == parse_group(row.ks[k].first), where + " group");
      ++groups;
      std::vector<std::string> got;
      for (const NamedGenerator& g : e.generators) got.push_back(g.name);
      c.expect(got == row.ks[k].second, where + " generators");
      names += static_cast<int>(row.ks[k].second.size());
    }
  c.expect(groups == 36, "36 entries");
  c.notes << " " << groups << " groups, " << names << " generator names";
}

void ac2(Criterion& c) {
  std::set<std::string> texts;
  for (int d = 2; d <= 4; ++d) {
    spectra::LesReport r = spectra::verify_les(d);
    c.expect(r.all_exact(), "d=" + std::to_string(d) + " exact");
    for (const spectra::LesCheck& ch : r.checks) c.expect(ch.verdict.exact, ch.position);
    for (const spectra::ShortExactSegment& s : r.segments) {
      c.expect(s.exact, s.text);
      texts.insert(s.text);
    }
  }
  c.expect(texts.count("0 → ℤeu⊕ℤp₁u → ℤψ⊕ℤσ → ℤ/6 → 0") == 1, "degree-four SES for d=4");
  c.expect(texts.count("0 → ℤcu → ℤτ → ℤ/2 → 0") == 1, "degree-two SES for d=2");
  c.notes << " d=2,3,4 exact";
}

void ac3(Criterion& c) {
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k <= 5; ++k) {
      spectra::DerivationResult r = spectra::derive_cover_cohomology(d, k, spectra::standard_constraints(d, k));
      std::string where = "d=" + std::to_string(d) + " k=" + std::to_string(k);
      c.expect(!r.ambiguous, where + " unique");
      c.expect(r.group.has_value() && *r.group == spectra::cohomology(spectra::SpectrumId{d, 1}, k).group,
               where + " matches table");
    }
  spectra::DerivationResult free = spectra::derive_cover_cohomology(3, 4, {});
  FgAbGroup z = Z();
  std::set<FgAbGroup> four{z, z.direct_sum(Zn(2)), z.direct_sum(Zn(3)), z.direct_sum(Zn(6))};
  c.expect(free.ambiguous, "unconstrained is ambiguous");
  c.expect(free.survivors == four && free.candidates == four, "candidate set {Z, Z+Z/2, Z+Z/3, Z+Z/6}");
  c.notes << " 18 entries unique; unconstrained d=3 k=4 has " << free.survivors.size() << " candidates";
}

void ac4(Criterion& c) {
  c.expect(classify::classify(1, 1).is_trivial(), "d=1 trivial");
  for (int n = 1; n <= 3; ++n) c.expect(classify::classify(3, n).is_trivial(), "d=3 trivial");
  for (int n = 1; n <= 2; ++n) {
    classify::TheoryGroup g = classify::classify(2, n);
    c.expect(g.unit_rank == 1 && g.finite_part.is_trivial(), "d=2 C^x");
  }
  for (int n = 1; n <= 4; ++n) {
    classify::TheoryGroup g = classify::classify(4, n);
    c.expect(g.unit_rank == 2 && g.finite_part.is_trivial(), "d=4 (C^x)^2");
  }
  std::mt19937 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    ExactUnit l1 = random_rational(rng), l2 = random_rational(rng);
    classify::TheoryParams out = classify::restrict_theory(4, 4, 3, classify::make_params(4, 4, {l1, l2}));
    c.expect(out.coords == std::vector<ExactUnit>{l1 * l1, l2 * l2 * l2 / l1}, "(l1^2, l2^3/l1)");
  }
  classify::RestrictionKernel k = classify::restriction_kernel(4, 4, 3);
  c.expect(k.group == Zn(6) && k.elements.size() == 6, "kernel order 6");
  std::set<std::pair<Integer, Integer>> got, want;
  for (const RootTuple& t : k.elements)
    got.insert({floor_mod(t.powers[0] * 6 / t.order, 6), floor_mod(t.powers[1] * 6 / t.order, 6)});
  for (long long j = 0; j < 6; ++j) want.insert({(3 * j) % 6, j});
  c.expect(got == want, "elements (zeta^3, zeta)");
  std::vector<std::vector<ExactUnit>> pm = classify::restriction_kernel(2, 2, 1).element_values();
  c.expect(pm == std::vector<std::vector<ExactUnit>>{{q(1)}, {q(-1)}}, "kernel {1, -1}");
  c.notes << " classification table, 100 rational restrictions, kernels of order 6 and 2";
}

void ac5(Criterion& c) {
  classify::GilmerMasbaumReport r = classify::gilmer_masbaum_report();
  c.expect(r.group.group == Z() && r.group.generators.at(0).name == "rho", "HZ^4 = Z rho");
  auto check = [&](const char* label, long long rho, long long mcg) {
    const classify::NamedExtension& e = r.find(label);
    c.expect(e.cls.rho_multiple == rho && e.mcg_class == mcg, label);
    c.notes << " " << label << ": " << e.cls.rho_multiple << "rho->" << e.mcg_class;
  };
  check("Atiyah", 6, 12);
  check("Walker", 2, 4);
  check("Gilmer", 1, 2);
  c.expect(!r.fundamental_realizable, "fundamental impossible");
  c.expect(!r.walker_index_four_realizable, "no index-four subcategory");
  c.notes << ", fundamental: " << (r.fundamental_realizable ? "realizable" : "impossible");
}

void ac6(Criterion& c) {
  using namespace tftlab;
  auto M = [](const std::string& name) { return standard_manifolds().lookup(name); };
  for (int g = 0; g <= 10; ++g) {
    FormalSum s;
    s.add(M("Sigma_" + std::to_string(g)), 1);
    s.add(M("S2"), -(1 - g));
    c.expect(vf_invariant(2, s).is_zero(), "surface g=" + std::to_string(g));
    FormalSum t;
    t.add(M("S2xSigma_" + std::to_string(g)), 1);
    t.add(M("S4"), -(2 - 2 * g));
    c.expect(vf_invariant(4, t).is_zero(), "S2xSigma g=" + std::to_string(g));
  }
  FormalSum circles;
  circles.add(M("S1"), 2);
  c.expect(vf_invariant(1, circles).is_zero(), "2[S1]");
  std::vector<ManifoldClass> threes;
  for (const ManifoldClass& m : standard_manifolds().manifolds())
    if (m.dim == 3) threes.push_back(m);
  std::mt19937 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    FormalSum s;
    for (const ManifoldClass& m : threes) s.add(m, static_cast<long long>(rng() % 21) - 10);
    c.expect(vf_invariant(3, s).is_zero(), "d=3 sum");
  }
  FormalSum cp2;
  cp2.add(M("CP2"), 1);
  c.expect(vf_invariant(4, cp2).values == Vector{2, 1}, "CP2 -> (2, 1)");
  c.notes << " relations for g=0..10, 2[S1], " << threes.size() << " catalog 3-manifolds, CP2 -> (2, 1)";
}

void ac7(Criterion& c) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    ExactUnit l = random_unit(rng);
    for (int g = 0; g <= 10; ++g)
      c.expect(tftlab::euler_theory_value(l, tftlab::SurfaceBordism::closed(g)).value() ==
                   tftlab::frobenius_closed_value(l * l, g),
               "g=" + std::to_string(g));
  }
  c.notes << " 20 random lambda, g=0..10";
}

void ac8(Criterion& c) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    SmithForm s = smith_normal_form(a);
    c.expect(s.left * a * s.right == s.diagonal, "U A V = D");
    c.expect(abs(det(s.left)) == 1 && abs(det(s.right)) == 1, "unimodular");
    Vector inv = s.invariants();
    for (std::size_t i = 0; i + 1 < inv.size(); ++i) c.expect(inv[i + 1] % inv[i] == 0, "divisibility chain");
    c.expect(inv == determinantal_invariants(a), "determinantal divisors");
  }
  int exact_cases = 0;
  for (int trial = 0; trial < 400; ++trial) {
    FgAbGroup x = random_finite_group(rng, 200), y = random_finite_group(rng, 200), z = random_finite_group(rng, 200);
    GroupHom f = random_hom(rng, x, y), g = random_hom(rng, y, z);
    bool brute = compose(g, f).is_zero() && brute_exact(f, g);
    c.expect(check_exact(f, g).exact == brute, "check_exact vs element chase");
    exact_cases += brute;
  }
  for (long long m = 2; m <= 14; ++m)
    for (long long n = 2; m * n <= 200; ++n) {
      GroupHom inc(Zn(m), Zn(m * n), IntMatrix{{n}});
      GroupHom proj(Zn(m * n), Zn(n), IntMatrix{{1}});
      c.expect(check_exact(inc, proj).exact && brute_exact(inc, proj), "cyclic SES");
      ++exact_cases;
    }
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    c.expect(cokernel(random_unimodular(rng, rows) * a * random_unimodular(rng, cols)) == cokernel(a),
             "cokernel invariance");
  }

  // Square: H^4(Σ^4MTSO(4)) -> H^4(p≥1 Σ^4MTSO(4)) -> H^4(p≥1 Σ^3MTSO(3)) against the other way round.
  spectra::NamedHom top = spectra::cover_map(4, 4), right = spectra::restriction_arrow(4, 1, 4);
  spectra::NamedHom left = spectra::restriction_arrow(4, 0, 4), bottom = spectra::cover_map(3, 4);
  c.expect(top.image_of("p1u")->render() == "3*sigma" && right.image_of("sigma")->render() == "2*rho",
           "p1u: 3 sigma -> 6 rho");
  c.expect(left.image_of("p1u")->render() == "p1u" && bottom.image_of("p1u")->render() == "6*rho", "p1u -> 6 rho");
  c.expect(top.image_of("eu")->render() == "2*psi-sigma" && right.image_of("psi")->render() == "rho",
           "eu: 2 psi - sigma -> 0");
  c.expect(left.image_of("eu")->render() == "0", "eu -> 0 -> 0");
  auto hom = [](const spectra::NamedHom& h) {
    return spectra::to_group_hom(h, spectra::cohomology(h.source, h.degree), spectra::cohomology(h.target, h.degree));
  };
  GroupHom across = compose(hom(right), hom(top)), down = compose(hom(bottom), hom(left));
  c.expect(across.matrix() == down.matrix(), "square commutes");
  c.expect(across.apply(v({0, 1})) == v({6}) && across.apply(v({1, 0})) == v({0}), "generator images");
  c.notes << " 1000 SNF, exactness vs element chase (" << exact_cases << " exact cases), 100 cokernels, square";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria = {
      {"AC1 cohomology table", ac1},     {"AC2 long exact sequences", ac2},
      {"AC3 derivation uniqueness", ac3}, {"AC4 classification", ac4},
      {"AC5 central extension certificate", ac5}, {"AC6 vector-field bordism", ac6},
      {"AC7 Euler vs Frobenius", ac7},   {"AC8 property suites", ac8},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Criterion c;
    try {
      check(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    if (c.failures) ++failed;
    std::cout << (c.failures ? "FAIL " : "PASS ") << name << " (tolerance " << kTolerance << ", exact):"
              << c.notes.str();
    if (c.failures) std::cout << " failures=" << c.failures;
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
