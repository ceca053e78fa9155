#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "duality/analytic.hpp"
#include "duality/error.hpp"

namespace {

using namespace duality::analytic;

SeedPair random_pair(std::mt19937_64& rng, double max_abs) {
  std::uniform_real_distribution<double> mag(0.0, max_abs), ph(0.0, 6.283185307179586);
  return {std::polar(mag(rng), ph(rng)), std::polar(mag(rng), ph(rng))};
}

void expect_measures_near(const ComplementarityMeasures& got, const ComplementarityMeasures& want,
                          double tol) {
  EXPECT_NEAR(got.D, want.D, tol);
  EXPECT_NEAR(got.P, want.P, tol);
  EXPECT_NEAR(got.E, want.E, tol);
  EXPECT_NEAR(got.V, want.V, tol);
  EXPECT_NEAR(got.C, want.C, tol);
  EXPECT_NEAR(got.F_abs, want.F_abs, tol);
  EXPECT_NEAR(got.mu_s, want.mu_s, tol);
}

}  // namespace

TEST(Analytic, KnownPointTwoOne) {
  const auto m = complementarity_measures({{2.0, 0.0}, {1.0, 0.0}});
  EXPECT_NEAR(m.D * m.D, 33.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.P * m.P, 9.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.E * m.E, 24.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.C * m.C, 16.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.mu_s * m.mu_s, 25.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.V * m.V, 40.0 / 49.0, 1e-12);
  EXPECT_NEAR(m.F_abs, 2.0 / std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(m.C, 4.0 / 7.0, 1e-12);
}

TEST(Analytic, KnownPointEqualSeeds) {
  const auto m = complementarity_measures({{1.0, 0.0}, {1.0, 0.0}});
  EXPECT_NEAR(m.P, 0.0, 1e-12);
  EXPECT_NEAR(m.V, 1.0, 1e-12);
  EXPECT_NEAR(m.F_abs, 0.5, 1e-12);
  EXPECT_NEAR(m.C, 0.5, 1e-12);
  EXPECT_NEAR(m.mu_s, 0.5, 1e-12);
  EXPECT_NEAR(m.E * m.E, 0.75, 1e-12);
  EXPECT_NEAR(m.D * m.D, 0.75, 1e-12);
}

TEST(Analytic, KnownPointVacuumSeeds) {
  const auto m = complementarity_measures({});
  EXPECT_NEAR(m.D, 1.0, 1e-12);
  EXPECT_NEAR(m.E, 1.0, 1e-12);
  EXPECT_NEAR(m.P, 0.0, 1e-12);
  EXPECT_NEAR(m.V, 1.0, 1e-12);
  EXPECT_NEAR(m.C, 0.0, 1e-12);
  EXPECT_NEAR(m.F_abs, 0.0, 1e-12);
  EXPECT_NEAR(m.mu_s, 0.0, 1e-12);
}

TEST(Analytic, AmplitudesAndDensity) {
  const SeedPair seeds{{2.0, 0.0}, {1.0, 0.0}};
  const auto c = quanton_amplitudes(seeds);
  EXPECT_NEAR(c.c1 * c.c1, 5.0 / 7.0, 1e-15);
  EXPECT_NEAR(c.c2 * c.c2, 2.0 / 7.0, 1e-15);
  const auto rho = quanton_density_closed(seeds);
  EXPECT_NEAR(rho.rho11, 5.0 / 7.0, 1e-15);
  EXPECT_NEAR(rho.rho22, 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.rho12), std::sqrt(10.0) / 7.0, 1e-15);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
}

TEST(Analytic, FidelityPhase) {
  const SeedPair seeds{std::polar(1.0, 0.4), std::polar(2.0, -0.3)};
  const cplx f = detector_fidelity(seeds);
  EXPECT_NEAR(std::arg(f), 0.7, 1e-14);
  EXPECT_NEAR(std::abs(f), 2.0 / (std::sqrt(2.0) * std::sqrt(5.0)), 1e-15);
}

TEST(Analytic, RejectsInvalidSeeds) {
  EXPECT_THROW(complementarity_measures({{NAN, 0.0}, {1.0, 0.0}}), duality::ValidationError);
  EXPECT_THROW(complementarity_measures({{1.0, 0.0}, {0.0, INFINITY}}), duality::ValidationError);
  EXPECT_THROW(complementarity_measures({{1001.0, 0.0}, {1.0, 0.0}}), duality::ValidationError);
  EXPECT_NO_THROW(complementarity_measures({{1000.0, 0.0}, {1.0, 0.0}}));
}

TEST(AnalyticProperty, IdentitiesHoldOnRandomPairs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto seeds = random_pair(rng, 10.0);
    const auto m = complementarity_measures(seeds);
    const double D2 = m.D * m.D, P2 = m.P * m.P, E2 = m.E * m.E, C2 = m.C * m.C;
    const double mu2 = m.mu_s * m.mu_s;
    ASSERT_LT(std::abs(D2 - (P2 + E2)), 1e-12) << trial;
    ASSERT_LT(std::abs(P2 + E2 + C2 - 1.0), 1e-12) << trial;
    ASSERT_LT(std::abs(P2 + C2 - mu2), 1e-12) << trial;
    ASSERT_LT(std::abs(mu2 + E2 - 1.0), 1e-12) << trial;
    ASSERT_LT(std::abs(m.C - m.V * m.F_abs), 1e-12) << trial;
    ASSERT_LT(std::abs(m.V * m.V + P2 - 1.0), 1e-12) << trial;
    for (double x : {m.D, m.P, m.E, m.V, m.C, m.F_abs, m.mu_s}) {
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
  }
}

TEST(AnalyticProperty, SwapInvariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seeds = random_pair(rng, 10.0);
    expect_measures_near(complementarity_measures(seeds),
                         complementarity_measures(seeds.swapped()), 1e-15);
  }
}

TEST(AnalyticProperty, GlobalPhaseInvariance) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seeds = random_pair(rng, 10.0);
    const cplx rot = std::polar(1.0, ph(rng));
    const cplx rot2 = std::polar(1.0, ph(rng));
    expect_measures_near(complementarity_measures(seeds),
                         complementarity_measures({seeds.alpha1 * rot, seeds.alpha2 * rot2}),
                         1e-14);
  }
}

TEST(AnalyticProperty, CoherenceFallsAsPredictabilityRises) {
  // Fix |alpha2| = 1 and raise |alpha1| from 1: the paths grow more unequal.
  double last_p = -1.0, last_v = 2.0;
  for (double a1 = 1.0; a1 <= 10.0; a1 += 0.25) {
    const auto m = complementarity_measures({{a1, 0.0}, {1.0, 0.0}});
    EXPECT_GT(m.P, last_p);
    EXPECT_LT(m.V, last_v);
    last_p = m.P;
    last_v = m.V;
  }
}

TEST(AnalyticProperty, EqualMagnitudeCrossing) {
  // With equal seeds E^2 = 1 - F^2 and C^2 = F^2 meet where F^2 = 1/2,
  // i.e. |alpha|^2 = 1 + sqrt(2).
  const double crossing = std::sqrt(1.0 + std::sqrt(2.0));
  const auto m = complementarity_measures({{crossing, 0.0}, {crossing, 0.0}});
  EXPECT_NEAR(m.E * m.E, m.C * m.C, 1e-12);
  const auto below = complementarity_measures({{crossing - 0.05, 0.0}, {crossing - 0.05, 0.0}});
  const auto above = complementarity_measures({{crossing + 0.05, 0.0}, {crossing + 0.05, 0.0}});
  EXPECT_GT(below.E, below.C);
  EXPECT_LT(above.E, above.C);
}
