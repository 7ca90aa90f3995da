#include <gtest/gtest.h>

#include "permext/formulation.hpp"
#include "permext/section.hpp"
#include "support.hpp"

using namespace permext;
using testing_support::birkhoff_kappa;
using testing_support::birkhoff_with_constant;

namespace {

/// Index j' whose values satisfy s_{j'}(x) = s_j(pi^-1.x) on every vertex,
/// found by scanning all components.
std::optional<std::size_t> direct_action(const Section& s, const Permutation& pi, std::size_t j) {
  const Permutation inv = pi.inverse();
  for (std::size_t k = 0; k < static_cast<std::size_t>(s.d()); ++k) {
    bool match = true;
    for (std::size_t r = 0; r < s.num_vertices() && match; ++r)
      match = s.component(k, r) == s.value_at(inv * s.zeta(r))[j];
    if (match) return k;
  }
  return std::nullopt;
}

Section pair_sum_section(int n) {
  return Section::from_rule(n, 1, [](const Permutation& zeta) {
    const RatVector x = lambda_vertex(zeta);
    return RatVector{x[0] + x[1]};
  }, n);
}

}  // namespace

TEST(CanonicalBirkhoff, Examples) {
  const Section s3 = canonical_birkhoff_section(3);
  const RatVector& at_id = s3.value_at(Permutation::identity(3));
  EXPECT_EQ(at_id, (RatVector{1, 0, 0, 0, 1, 0, 0, 0, 1}));
  const SubspaceExtension e3 = birkhoff_z_extension(3);
  EXPECT_EQ(e3.projection * at_id, (RatVector{1, 2, 3}));

  const Section s2 = canonical_birkhoff_section(2);
  const RatVector& anti = s2.value_at(Permutation::parse("(1 2)", 2));
  EXPECT_EQ(anti, (RatVector{0, 1, 1, 0}));
  EXPECT_EQ(birkhoff_z_extension(2).projection * anti, (RatVector{2, 1}));
}

TEST(CanonicalBirkhoff, DoublyStochasticEverywhere) {
  for (int n = 1; n <= 5; ++n) {
    const Section s = canonical_birkhoff_section(n);
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t r = 0; r < s.num_vertices(); ++r)
      for (std::size_t a = 0; a < un; ++a) {
        Rational row, col;
        for (std::size_t b = 0; b < un; ++b) {
          row += s.component(a * un + b, r);
          col += s.component(b * un + a, r);
        }
        EXPECT_EQ(row, Rational(1));
        EXPECT_EQ(col, Rational(1));
      }
  }
}

TEST(VerifySection, Birkhoff) {
  for (int n = 2; n <= 5; ++n)
    EXPECT_TRUE(verify_section(canonical_birkhoff_section(n), birkhoff_z_extension(n))) << n;
}

TEST(VerifySection, NegatedEntryRejected) {
  const int n = 4;
  std::vector<RatVector> table = canonical_birkhoff_section(n).table();
  table[5][3] = -table[5][3] - 1;
  const Section bad = Section::from_table(n, n * n, table);
  const auto defect = section_defect(bad, birkhoff_z_extension(n));
  ASSERT_TRUE(defect);
  EXPECT_NE(defect->find("negative"), std::string::npos);
}

TEST(VerifySection, RepeatedPointRejected) {
  const int n = 4;
  std::vector<RatVector> table = canonical_birkhoff_section(n).table();
  table[1] = table[0];
  const Section bad = Section::from_table(n, n * n, table);
  const auto defect = section_defect(bad, birkhoff_z_extension(n));
  ASSERT_TRUE(defect);
  EXPECT_NE(defect->find("projection mismatch"), std::string::npos);
}

TEST(VerifySection, ShapeErrors) {
  EXPECT_THROW(Section::from_table(3, 2, {}), InvalidInput);
  EXPECT_FALSE(verify_section(canonical_birkhoff_section(3), birkhoff_z_extension(4)));
}

TEST(WeakSymmetry, BirkhoffRhoWitness) {
  for (int n = 3; n <= 5; ++n) {
    const Section s = canonical_birkhoff_section(n);
    const auto w = derive_weak_symmetry_witness(s, rho_generators(n));
    ASSERT_TRUE(w);
    EXPECT_TRUE(verify_weak_symmetry_witness(s, *w));
    for (std::size_t q = 0; q < w->generators.size(); ++q)
      EXPECT_EQ(w->kappas[q], birkhoff_kappa(w->generators[q]));
  }
}

TEST(WeakSymmetry, DefiningEquationCheckedDirectly) {
  const int n = 4;
  const Section s = canonical_birkhoff_section(n);
  for (const auto& pi : rho_generators(n)) {
    const Permutation kappa = birkhoff_kappa(pi);
    for (std::size_t r = 0; r < s.num_vertices(); ++r) {
      const RatVector& y = s.value(r);
      const RatVector& moved = s.value_at(pi * s.zeta(r));
      for (int j = 0; j < n * n; ++j)
        EXPECT_EQ(moved[static_cast<std::size_t>(kappa(j))], y[static_cast<std::size_t>(j)]);
    }
  }
}

TEST(WeakSymmetry, SingleVertex) {
  const Section s = Section::from_table(1, 2, {RatVector{1, 1}});
  const auto w = derive_weak_symmetry_witness(s, {Permutation::identity(1)});
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->kappas[0].is_identity());
}

TEST(WeakSymmetry, ScrambledVertexHasNone) {
  const int n = 4;
  std::vector<RatVector> table = canonical_birkhoff_section(n).table();
  std::swap(table[7][0], table[7][1]);
  const Section bad = Section::from_table(n, n * n, table);
  EXPECT_FALSE(derive_weak_symmetry_witness(bad, rho_generators(n)));
  EXPECT_FALSE(satisfies_weak_symmetry(bad, rho_generators(n)[0],
                                       birkhoff_kappa(rho_generators(n)[0])));
}

TEST(ComponentAction, IdentityAndRhoExamples) {
  const int n = 4;
  const Section s = canonical_birkhoff_section(n);
  const auto w = *derive_weak_symmetry_witness(s, rho_generators(n));
  const KappaTable table = KappaTable::expand(w, n, s.d(), n);
  for (std::size_t j = 0; j < 16; ++j)
    EXPECT_EQ(component_action(Permutation::identity(n), j, table), j);
  // rho_1 = (1 2 3): (i, 1) moves to (i, rho_1(1)) = (i, 2)
  const Permutation rho1 = rho_generator(0, n);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(component_action(rho1, i * 4 + 0, table), i * 4 + 1);
    EXPECT_EQ(direct_action(s, rho1, i * 4 + 0), i * 4 + 1);
  }
  EXPECT_EQ(component_action(rho1, 0, w, s), 1u);
  EXPECT_THROW(component_action(Permutation::parse("(1 2)", n), 0, table), InvalidInput);
}

TEST(ComponentAction, MatchesDirectOracleAndActionLaw) {
  const int n = 4;
  const Section s = canonical_birkhoff_section(n);
  const auto w = *derive_weak_symmetry_witness(s, rho_generators(n));
  const KappaTable table = KappaTable::expand(w, n, s.d(), n);
  const auto an = alternating_group(n).elements();
  for (const auto& pi : an)
    for (std::size_t j = 0; j < 16; ++j)
      EXPECT_EQ(component_action(pi, j, table), direct_action(s, pi, j));
  for (const auto& pi : an)
    for (const auto& sigma : an)
      for (std::size_t j = 0; j < 16; ++j) {
        const std::size_t lhs = component_action(pi * sigma, j, table);
        const std::size_t rhs = component_action(pi, component_action(sigma, j, table), table);
        EXPECT_EQ(s.fingerprint(lhs), s.fingerprint(rhs));
      }
}

TEST(Isotropy, BirkhoffStabilizers) {
  for (int n = 4; n <= 5; ++n) {
    const Section s = canonical_birkhoff_section(n);
    const PermSet sn = symmetric_group(n);
    for (int i = 0; i < n; ++i)
      for (int v = 0; v < n; ++v) {
        const PermSet iso = isotropy_group(s, static_cast<std::size_t>(i * n + v), sn);
        EXPECT_EQ(iso.size(), factorial(static_cast<unsigned>(n - 1)).get_ui());
        for (const auto& p : iso) EXPECT_EQ(p(v), v);
        EXPECT_EQ(iso.index_in_symmetric(), Integer(n));
        EXPECT_LE(iso.index_in_symmetric(), Integer(s.d()));
      }
  }
}

TEST(Isotropy, ConstantComponentKeepsEverything) {
  const Section s = birkhoff_with_constant(4);
  EXPECT_EQ(isotropy_group(s, 16, symmetric_group(4)).size(), 24u);
  EXPECT_EQ(isotropy_group(s, 16, alternating_group(4)).size(), 12u);
}

TEST(Isotropy, ClosedUnderProductsAndInverses) {
  const Section s = pair_sum_section(5);
  const PermSet iso = isotropy_group(s, 0, symmetric_group(5));
  EXPECT_EQ(iso.size(), 12u);  // setwise stabilizer of {1,2}
  for (const auto& a : iso) {
    EXPECT_TRUE(iso.contains(a.inverse()));
    for (const auto& b : iso) EXPECT_TRUE(iso.contains(a * b));
  }
}

TEST(EssentialElement, BirkhoffComponents) {
  for (int n = 5; n <= 6; ++n) {
    const Section s = canonical_birkhoff_section(n);
    for (int i = 0; i < n; ++i)
      for (int v = 0; v < n; ++v) {
        const EssentialElement e = essential_element(s, static_cast<std::size_t>(i * n + v));
        EXPECT_EQ(e.kind, EssentialElement::Kind::element);
        EXPECT_EQ(e.v, v);
        EXPECT_TRUE(e.unique);
      }
  }
  EXPECT_EQ(essential_element(canonical_birkhoff_section(6), 7).str(), "v=2");
}

TEST(EssentialElement, ConstantAndPairComponents) {
  const EssentialElement all = essential_element(birkhoff_with_constant(6), 36);
  EXPECT_EQ(all.kind, EssentialElement::Kind::all);
  EXPECT_EQ(all.str(), "ALL");
  const EssentialElement none = essential_element(pair_sum_section(6), 0);
  EXPECT_EQ(none.kind, EssentialElement::Kind::none);
  EXPECT_EQ(none.str(), "NONE");
}

TEST(Yannakakis, Examples) {
  const int n = 6;
  const PermSet stab = PermSet::from_elements(
      n, symmetric_group(n).select([](const Permutation& p) { return p(0) == 0; }));
  EXPECT_EQ(stab.index_in_symmetric(), Integer(6));
  EXPECT_EQ(yannakakis_witness(stab, 1, n), (std::vector<int>{0}));
  EXPECT_EQ(yannakakis_witness(symmetric_group(n), 1, n), std::vector<int>{});
  EXPECT_EQ(yannakakis_witness(alternating_group(n), 1, n), std::vector<int>{});
}

TEST(Yannakakis, MissingWitnessIsReported) {
  const int n = 6;
  const PermSet trivial = enumerate_group({}, n);
  EXPECT_FALSE(yannakakis_witness(trivial, 1, n));
  // the trivial group only contains the stabilizer of n-2 points
  EXPECT_EQ(yannakakis_witness(trivial, 4, n), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Fingerprint, EqualSignaturesAreInterchangeable) {
  const int n = 3;
  const Section s = testing_support::doubled_birkhoff_section(n);
  const int nn = n * n;
  for (int j = 0; j < nn; ++j) {
    EXPECT_TRUE(s.same_component(static_cast<std::size_t>(j), static_cast<std::size_t>(nn + j)));
    EXPECT_EQ(s.fingerprint(static_cast<std::size_t>(j)),
              s.fingerprint(static_cast<std::size_t>(nn + j)));
  }
  EXPECT_FALSE(s.same_component(0, 1));
  const auto w = *derive_weak_symmetry_witness(s, rho_generators(n));
  for (std::size_t q = 0; q < w.generators.size(); ++q)
    for (int j = 0; j < nn; ++j) {
      std::vector<int> swap(static_cast<std::size_t>(2 * nn));
      for (int k = 0; k < 2 * nn; ++k) swap[static_cast<std::size_t>(k)] = k;
      std::swap(swap[static_cast<std::size_t>(j)], swap[static_cast<std::size_t>(nn + j)]);
      const Permutation tau(swap);
      EXPECT_TRUE(satisfies_weak_symmetry(s, w.generators[q], w.kappas[q] * tau));
      EXPECT_TRUE(satisfies_weak_symmetry(s, w.generators[q], tau * w.kappas[q]));
    }
  // distinct signatures are not interchangeable
  std::vector<int> bad(static_cast<std::size_t>(2 * nn));
  for (int k = 0; k < 2 * nn; ++k) bad[static_cast<std::size_t>(k)] = k;
  std::swap(bad[0], bad[1]);
  EXPECT_FALSE(satisfies_weak_symmetry(s, w.generators[0], w.kappas[0] * Permutation(bad)));
}
