#include <gtest/gtest.h>

#include <set>

#include "permext/perm_group.hpp"
#include "permext/permutation.hpp"
#include "support.hpp"

using namespace permext;
using testing_support::random_permutation;

TEST(Permutation, ParsesBothSyntaxes) {
  EXPECT_EQ(Permutation::parse("[2,3,1]").images(), (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(Permutation::parse("(1 2 3)(4 5)").str(), "[2,3,1,5,4]");
  EXPECT_EQ(Permutation::parse("(1 2)", 4).str(), "[2,1,3,4]");
  EXPECT_EQ(Permutation::parse("()", 3), Permutation::identity(3));
  EXPECT_EQ(Permutation::parse("[2,3,1,5,4]").cycle_str(), "(1 2 3)(4 5)");
  EXPECT_THROW(Permutation::parse("[1,1]"), InvalidInput);
  EXPECT_THROW(Permutation::parse("(1 2)(2 3)"), InvalidInput);
  EXPECT_THROW(Permutation::parse("(1 5)", 4), InvalidInput);
  EXPECT_THROW(Permutation::parse("{1}"), InvalidInput);
}

TEST(Permutation, RankUnrankRoundTrip) {
  for (int n = 1; n <= 5; ++n) {
    std::uint64_t r = 0;
    for (const auto& p : all_permutations(n)) {
      EXPECT_EQ(p.rank(), r);
      EXPECT_EQ(Permutation::unrank(n, r), p);
      ++r;
    }
  }
}

TEST(Permutation, CompositionIsFunctionComposition) {
  for (int k = 0; k < 100; ++k) {
    const Permutation a = random_permutation(6), b = random_permutation(6);
    const Permutation ab = a * b;
    for (int v = 0; v < 6; ++v) EXPECT_EQ(ab(v), a(b(v)));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ((a * b).is_even(), a.is_even() == b.is_even());
  }
  EXPECT_THROW(Permutation::identity(2) * Permutation::identity(3), InvalidInput);
}

TEST(LambdaVertex, Examples) {
  EXPECT_EQ(lambda_vertex(Permutation::identity(4)), (RatVector{1, 2, 3, 4}));
  EXPECT_EQ(lambda_vertex(Permutation::parse("(1 2)", 3)), (RatVector{2, 1, 3}));
  // zeta = (1 2 3): zeta^-1 = (1 3 2), so (zeta^-1(1), ..., zeta^-1(4)) = (3, 1, 2, 4)
  EXPECT_EQ(lambda_vertex(Permutation::parse("(1 2 3)", 4)), (RatVector{3, 1, 2, 4}));
}

TEST(LambdaVertex, InjectiveAndInvertible) {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::string> seen;
    for (const auto& z : all_permutations(n)) {
      const RatVector x = lambda_vertex(z);
      EXPECT_TRUE(seen.insert(x.str()).second);
      EXPECT_EQ(*vertex_permutation(x), z);
    }
  }
  EXPECT_FALSE(vertex_permutation(RatVector{1, 1, 3}));
  EXPECT_FALSE(vertex_permutation(RatVector{Rational::normalize(1, 2), 2}));
}

TEST(ActOnVertex, Examples) {
  const RatVector x{1, 2, 3};
  EXPECT_EQ(act_on_vertex(Permutation::identity(3), x), x);
  EXPECT_EQ(act_on_vertex(Permutation::parse("(1 2)", 3), x), (RatVector{2, 1, 3}));
  EXPECT_THROW(act_on_vertex(Permutation::identity(2), x), InvalidInput);
}

TEST(ActOnVertex, MatchesLambdaOfProductExhaustively) {
  for (int n = 1; n <= 5; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& pi : perms)
      for (const auto& zeta : perms) {
        const RatVector lhs = act_on_vertex(pi, lambda_vertex(zeta));
        // (pi.x)_v = x_{pi^-1(v)} read off directly
        RatVector direct(static_cast<std::size_t>(n));
        const RatVector x = lambda_vertex(zeta);
        for (int v = 0; v < n; ++v)
          direct[static_cast<std::size_t>(v)] = x[static_cast<std::size_t>(pi.inverse()(v))];
        EXPECT_EQ(lhs, direct);
        EXPECT_EQ(lhs, lambda_vertex(pi * zeta));
      }
  }
}

TEST(ActOnVertex, GroupActionLaw) {
  for (int k = 0; k < 200; ++k) {
    const Permutation p = random_permutation(6), s = random_permutation(6);
    RatVector x(6);
    for (auto& e : x) e = testing_support::random_rational(9, 4);
    EXPECT_EQ(act_on_vertex(p * s, x), act_on_vertex(p, act_on_vertex(s, x)));
  }
}

TEST(EnumerateGroup, Examples) {
  const auto s6 = enumerate_group({Permutation::parse("(1 2)", 6), Permutation::parse("(1 2 3 4 5 6)", 6)}, 6);
  EXPECT_EQ(s6.size(), 720u);
  const auto trivial = enumerate_group({}, 4);
  EXPECT_EQ(trivial.size(), 1u);
  EXPECT_TRUE(trivial.contains(Permutation::identity(4)));
  EXPECT_EQ(enumerate_group(rho_generators(5), 5).size(), 60u);
  EXPECT_THROW(enumerate_group({}, 9), CapExceeded);
  EXPECT_NO_THROW(enumerate_group({}, 9, 9));
}

TEST(EnumerateGroup, CapMessageCarriesSizeEstimate) {
  try {
    all_permutations(10);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("3628800"), std::string::npos);
  }
}

TEST(AlternatingGroup, Sizes) {
  EXPECT_EQ(alternating_group(3).size(), 3u);
  EXPECT_TRUE(alternating_group(3).contains(Permutation::parse("(1 3 2)", 3)));
  EXPECT_EQ(alternating_group(2).size(), 1u);
  EXPECT_EQ(alternating_group(6).size(), 360u);
  for (int n = 2; n <= 7; ++n)
    EXPECT_EQ(alternating_group(n).size(), factorial(static_cast<unsigned>(n)).get_ui() / 2);
}

TEST(AlternatingGroup, GeneratedByRhoCycles) {
  for (int n = 3; n <= 7; ++n) {
    const PermSet closure = enumerate_group(rho_generators(n), n);
    EXPECT_EQ(closure.size(), alternating_group(n).size());
    EXPECT_TRUE(closure.is_subset_of(alternating_group(n)));
  }
}

TEST(HStar, Sizes) {
  EXPECT_EQ(h_star_subgroup(2, 6).size(), 24u);
  EXPECT_EQ(h_star_subgroup(1, 3).size(), 1u);
  EXPECT_THROW(h_star_subgroup(0, 4), InvalidInput);
  EXPECT_THROW(h_star_subgroup(4, 4), InvalidInput);
  for (int n = 3; n <= 7; ++n)
    for (int w = 1; w <= n - 1; ++w) {
      const Integer expected = factorial(static_cast<unsigned>(w)) *
                            factorial(static_cast<unsigned>(n - w)) / 2;
      EXPECT_EQ(h_star_subgroup(w, n).size(), expected.get_ui()) << n << " " << w;
    }
}

TEST(HStar, FiberCount) {
  const int n = 6, w = 3;
  const PermSet h = h_star_subgroup(w, n);
  for (int t = 0; t < w; ++t)
    for (int v = 0; v < w; ++v) {
      std::size_t count = 0;
      for (const auto& p : h)
        if (p.inverse()(t) == v) ++count;
      EXPECT_EQ(count, 6u);  // (w-1)!(n-w)!/2
    }
}

TEST(PointwiseStabilizer, Examples) {
  EXPECT_EQ(pointwise_stabilizer_in_alternating({}, 4).size(), 12u);
  EXPECT_EQ(pointwise_stabilizer_in_alternating({0}, 4).size(), 3u);
  EXPECT_EQ(pointwise_stabilizer_in_alternating({0, 1, 2, 3}, 4).size(), 1u);
  EXPECT_THROW(pointwise_stabilizer_in_alternating({4}, 4), InvalidInput);
}

TEST(RhoGenerator, ShapeAndParity) {
  EXPECT_EQ(rho_generator(0, 4).str(), "[2,3,1,4]");
  for (int n = 3; n <= 7; ++n)
    for (const auto& r : rho_generators(n)) EXPECT_TRUE(r.is_even());
  EXPECT_THROW(rho_generator(2, 4), InvalidInput);
  EXPECT_THROW(rho_generator(-1, 4), InvalidInput);
}

TEST(PermSet, RejectsNonGroups) {
  EXPECT_THROW(PermSet::from_elements(3, {Permutation::parse("(1 2 3)", 3)}), InvalidInput);
  EXPECT_THROW(PermSet::from_elements(3, {Permutation::identity(3), Permutation::parse("(1 2 3)", 3)}),
               InvalidInput);
  EXPECT_NO_THROW(PermSet::from_elements(3, alternating_group(3).elements()));
}
