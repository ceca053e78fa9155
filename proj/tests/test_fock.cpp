#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "duality/error.hpp"
#include "duality/fock.hpp"

namespace {

using namespace duality::fock;
using duality::Execution;

// Coherent amplitude by the textbook recurrence in extended precision,
// independent of the log-space path used by coherent_state.
std::vector<std::complex<long double>> coherent_reference(std::complex<long double> alpha,
                                                          int cutoff) {
  std::vector<std::complex<long double>> amps(static_cast<std::size_t>(cutoff) + 1);
  amps[0] = std::exp(-std::norm(alpha) / 2.0L);
  for (int n = 1; n <= cutoff; ++n) {
    amps[static_cast<std::size_t>(n)] =
        amps[static_cast<std::size_t>(n) - 1] * alpha / std::sqrt(static_cast<long double>(n));
  }
  return amps;
}

// Smallest N >= floor with 1 - sum_{n<N} Poisson(mean) < tol, by cumulative
// summation in long double.
int cutoff_by_cumulative_sum(long double mean, long double tol, int floor, int ceiling) {
  long double term = std::exp(-mean);
  long double cumulative = 0.0L;
  for (int n = 0; n <= ceiling; ++n) {
    // cumulative holds sum_{k<n} p_k here.
    if (n >= floor && 1.0L - cumulative < tol) return n;
    cumulative += term;
    term *= mean / (n + 1);
  }
  return -1;
}

cplx analytic_coherent_overlap(cplx a, cplx b) {
  return std::exp(-(std::norm(a) + std::norm(b)) / 2.0 + std::conj(a) * b);
}

}  // namespace

// ---- coherent_state ---------------------------------------------------------

TEST(CoherentState, VacuumIsNumberStateZero) {
  const auto v = coherent_state({0.0, 0.0}, 16);
  EXPECT_EQ(v.modes(), 1);
  EXPECT_EQ(v.size(), 17u);
  EXPECT_EQ(v.amplitude({0}), cplx(1.0, 0.0));
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(v.amplitude({n}), cplx(0.0, 0.0));
  EXPECT_TRUE(v.is_normalized());
}

TEST(CoherentState, VacuumOverlapForAlphaOne) {
  const auto v = coherent_state({1.0, 0.0}, 40);
  EXPECT_NEAR(std::abs(v.amplitude({0})), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(std::abs(v.amplitude({0})), 0.606531, 1e-6);
}

TEST(CoherentState, TruncatedVectorIsNormalized) {
  const auto v = coherent_state({2.0, 0.0}, 40);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_TRUE(v.is_normalized());
}

TEST(CoherentState, MatchesRecurrenceReference) {
  const cplx alpha{1.3, -0.7};
  const int cutoff = 45;
  const auto v = coherent_state(alpha, cutoff);
  const auto ref = coherent_reference({1.3L, -0.7L}, cutoff);
  for (int n = 0; n <= cutoff; ++n) {
    const auto r = ref[static_cast<std::size_t>(n)];
    EXPECT_NEAR(v.amplitude({n}).real(), static_cast<double>(r.real()), 1e-13) << n;
    EXPECT_NEAR(v.amplitude({n}).imag(), static_cast<double>(r.imag()), 1e-13) << n;
  }
}

TEST(CoherentState, RejectsBadInput) {
  EXPECT_THROW(coherent_state({std::nan(""), 0.0}, 16), duality::ValidationError);
  EXPECT_THROW(coherent_state({INFINITY, 0.0}, 16), duality::ValidationError);
  EXPECT_THROW(coherent_state({1.0, 0.0}, 513), duality::ValidationError);
  EXPECT_THROW(coherent_state({1.0, 0.0}, 0), duality::ValidationError);
  CutoffPolicy tight;
  tight.ceiling = 20;
  EXPECT_THROW(coherent_state({1.0, 0.0}, 21, tight), duality::ValidationError);
}

// ---- apply_creation ---------------------------------------------------------

TEST(ApplyCreation, VacuumGoesToOnePhoton) {
  const auto raised = apply_creation(number_state(0, 16), 0);
  EXPECT_EQ(raised.amplitude({1}), cplx(1.0, 0.0));
  EXPECT_EQ(raised.amplitude({0}), cplx(0.0, 0.0));
  EXPECT_DOUBLE_EQ(raised.norm(), 1.0);
  EXPECT_EQ(raised.normalization(), Normalization::unnormalized);
}

TEST(ApplyCreation, CoherentNormIsSqrtOnePlusAlphaSquared) {
  const auto raised = apply_creation(coherent_state({1.0, 0.0}, 40), 0);
  EXPECT_NEAR(raised.norm(), std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(raised.norm(), 1.414214, 1e-6);
}

TEST(ApplyCreation, TopLevelStateRejected) {
  EXPECT_THROW(apply_creation(number_state(16, 16), 0), duality::TruncationError);
}

TEST(ApplyCreation, ActsOnSelectedModeOnly) {
  const auto two = tensor_product(number_state(2, 5), number_state(0, 5));
  const auto on_second = apply_creation(two, 1);
  EXPECT_EQ(on_second.amplitude({2, 1}), cplx(1.0, 0.0));
  const auto on_first = apply_creation(two, 0);
  EXPECT_NEAR(on_first.amplitude({3, 0}).real(), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(apply_creation(two, 2), duality::ValidationError);
}

TEST(ApplyCreation, NormPropertyOverRandomAlphas) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mag(0.0, 4.0), ph(0.0, 6.283185307179586);
  const CutoffPolicy policy;
  for (int trial = 0; trial < 50; ++trial) {
    const cplx alpha = std::polar(mag(rng), ph(rng));
    const std::array<cplx, 1> alphas{alpha};
    const int cutoff = choose_cutoff(alphas, policy);
    const auto raised = apply_creation(coherent_state(alpha, cutoff), 0);
    EXPECT_NEAR(raised.norm() * raised.norm(), 1.0 + std::norm(alpha), 1e-10) << alpha;
  }
}

// ---- spacs_state -------------------------------------------------------------

TEST(Spacs, VacuumSeedGivesOnePhotonState) {
  const auto s = spacs_state({0.0, 0.0}, 16);
  EXPECT_NEAR(std::abs(inner_product(number_state(1, 16), s)), 1.0, 1e-15);
  EXPECT_TRUE(s.is_normalized());
}

TEST(Spacs, OverlapWithCoherentState) {
  for (double a : {1.0, 2.0}) {
    const int cutoff = 40;
    const auto coherent = coherent_state({a, 0.0}, cutoff);
    const auto spacs = spacs_state({a, 0.0}, cutoff);
    const double expected = a / std::sqrt(1.0 + a * a);
    EXPECT_NEAR(std::abs(inner_product(coherent, spacs)), expected, 1e-10) << a;
    EXPECT_NEAR(spacs.norm(), 1.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(inner_product(coherent_state({1.0, 0.0}, 40), spacs_state({1.0, 0.0}, 40))),
              0.707107, 1e-6);
  EXPECT_NEAR(std::abs(inner_product(coherent_state({2.0, 0.0}, 40), spacs_state({2.0, 0.0}, 40))),
              0.894427, 1e-6);
}

TEST(Spacs, OverlapPhaseIsConjugateAlpha) {
  const cplx alpha = std::polar(1.5, 0.9);
  const auto c = coherent_state(alpha, 40);
  const auto s = spacs_state(alpha, 40);
  const cplx expected = std::conj(alpha) / std::sqrt(1.0 + std::norm(alpha));
  EXPECT_LT(std::abs(inner_product(c, s) - expected), 1e-10);
}

TEST(Spacs, CutoffTooSmallPropagates) {
  EXPECT_THROW(spacs_state({5.0, 0.0}, 16), duality::TruncationError);
}

// ---- inner_product ------------------------------------------------------------

TEST(InnerProduct, NumberStates) {
  EXPECT_EQ(inner_product(number_state(0, 16), number_state(0, 16)), cplx(1.0, 0.0));
  EXPECT_EQ(inner_product(number_state(1, 16), number_state(0, 16)), cplx(0.0, 0.0));
}

TEST(InnerProduct, CoherentWithVacuum) {
  const cplx v = inner_product(coherent_state({1.0, 0.0}, 40), coherent_state({0.0, 0.0}, 40));
  EXPECT_NEAR(std::abs(v), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(std::abs(v), 0.606531, 1e-6);
}

TEST(InnerProduct, ShapeMismatch) {
  EXPECT_THROW(inner_product(number_state(0, 16), number_state(0, 17)), duality::ValidationError);
  EXPECT_THROW(inner_product(number_state(0, 4),
                             tensor_product(number_state(0, 4), number_state(0, 4))),
               duality::ValidationError);
}

TEST(InnerProduct, TruncationFidelityAgainstClosedForm) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> mag(0.0, 4.0), ph(0.0, 6.283185307179586);
  for (int trial = 0; trial < 100; ++trial) {
    const cplx a = std::polar(mag(rng), ph(rng));
    const cplx b = std::polar(mag(rng), ph(rng));
    const std::array<cplx, 2> alphas{a, b};
    const int cutoff = choose_cutoff(alphas);
    const cplx fock = inner_product(coherent_state(a, cutoff), coherent_state(b, cutoff));
    EXPECT_LT(std::abs(fock - analytic_coherent_overlap(a, b)), 1e-10) << a << " " << b;
  }
}

TEST(InnerProduct, ConjugateSymmetryAndPositivity) {
  const auto a = spacs_state(std::polar(2.0, 0.3), 40);
  const auto b = coherent_state(std::polar(1.1, -1.2), 40);
  for (Execution exec : {Execution::serial, Execution::parallel}) {
    EXPECT_LT(std::abs(inner_product(a, b, exec) - std::conj(inner_product(b, a, exec))), 1e-15);
    const cplx aa = inner_product(a, a, exec);
    EXPECT_EQ(aa.imag(), 0.0);
    EXPECT_GE(aa.real(), 0.0);
  }
}

// ---- tensor_product ------------------------------------------------------------

TEST(TensorProduct, NumberStates) {
  const auto vac = tensor_product(number_state(0, 3), number_state(0, 3));
  EXPECT_EQ(vac.modes(), 2);
  EXPECT_EQ(vac.size(), 16u);
  EXPECT_EQ(vac.amplitude({0, 0}), cplx(1.0, 0.0));
  const auto one_zero = tensor_product(number_state(1, 3), number_state(0, 3));
  EXPECT_EQ(one_zero.amplitude({1, 0}), cplx(1.0, 0.0));
  // Mode 0 is the most significant digit.
  EXPECT_EQ(one_zero.amplitudes()[4], cplx(1.0, 0.0));
}

TEST(TensorProduct, NormMultiplies) {
  const auto a = coherent_state({1.2, 0.4}, 30);
  const auto b = spacs_state({0.5, -0.8}, 30);
  const auto ab = tensor_product(a, b);
  EXPECT_NEAR(ab.norm(), 1.0, 1e-12);
  EXPECT_TRUE(ab.is_normalized());
  const auto raised = apply_creation(a, 0);
  EXPECT_NEAR(tensor_product(raised, b).norm(), raised.norm(), 1e-12);
}

TEST(TensorProduct, Associative) {
  const auto a = coherent_state({0.7, 0.1}, 12);
  const auto b = spacs_state({0.3, 0.2}, 12);
  const auto c = coherent_state({-0.4, 0.5}, 12);
  const auto left = tensor_product(tensor_product(a, b), c);
  const auto right = tensor_product(a, tensor_product(b, c));
  ASSERT_EQ(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    EXPECT_LT(std::abs(left.amplitudes()[i] - right.amplitudes()[i]), 1e-15) << i;
  }
}

TEST(TensorProduct, CutoffMismatch) {
  EXPECT_THROW(tensor_product(number_state(0, 3), number_state(0, 4)), duality::ValidationError);
}

// ---- FockVector ----------------------------------------------------------------

TEST(FockVector, LengthAndNormalizationContracts) {
  EXPECT_THROW(FockVector(2, 3, std::vector<cplx>(15)), duality::ValidationError);
  EXPECT_THROW(FockVector(1, 3, std::vector<cplx>(4, cplx(1.0, 0.0)), Normalization::normalized),
               duality::ValidationError);
  EXPECT_NO_THROW(FockVector(1, 3, {cplx(0.6), cplx(0.8), 0.0, 0.0}, Normalization::normalized));
}

// ---- choose_cutoff ----------------------------------------------------------------

TEST(ChooseCutoff, FloorAppliesForVacuum) {
  const std::array<cplx, 1> alphas{cplx(0.0, 0.0)};
  EXPECT_EQ(choose_cutoff(alphas), 16);
}

TEST(ChooseCutoff, FrozenValuesFromExactTailEnumeration) {
  // Computed with 50-digit arithmetic: smallest N >= 16 with P(X >= N) < 1e-12.
  const std::array<std::pair<double, int>, 5> frozen{{{1.0, 16}, {2.0, 26}, {3.0, 38}, {4.0, 52},
                                                      {10.0, 179}}};
  for (const auto& [a, n] : frozen) {
    const std::array<cplx, 1> alphas{cplx(a, 0.0)};
    EXPECT_EQ(choose_cutoff(alphas), n) << "alpha=" << a;
  }
}

TEST(ChooseCutoff, AgreesWithCumulativeSumOracle) {
  const CutoffPolicy policy;
  for (double a = 0.0; a <= 12.0; a += 0.37) {
    const std::array<cplx, 2> alphas{cplx(a / 2, 0.0), std::polar(a, 1.0)};
    const int oracle = cutoff_by_cumulative_sum(static_cast<long double>(a) * a, 1e-12L,
                                                policy.floor, policy.ceiling);
    EXPECT_EQ(choose_cutoff(alphas, policy), oracle) << "alpha=" << a;
  }
}

TEST(ChooseCutoff, CeilingGuard) {
  const std::array<cplx, 1> alphas{cplx(30.0, 0.0)};
  EXPECT_THROW(choose_cutoff(alphas), duality::TruncationError);
}

TEST(ChooseCutoff, InvalidPolicy) {
  const std::array<cplx, 1> alphas{cplx(1.0, 0.0)};
  EXPECT_THROW(choose_cutoff(alphas, CutoffPolicy{0.0, 16, 512}), duality::ValidationError);
  EXPECT_THROW(choose_cutoff(alphas, CutoffPolicy{1.0, 16, 512}), duality::ValidationError);
  EXPECT_THROW(choose_cutoff(alphas, CutoffPolicy{1e-12, 20, 10}), duality::ValidationError);
}

TEST(PoissonTail, SmallCases) {
  EXPECT_DOUBLE_EQ(poisson_tail(0.0, 1), 0.0);
  EXPECT_DOUBLE_EQ(poisson_tail(3.0, 0), 1.0);
  EXPECT_NEAR(poisson_tail(1.0, 1), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(poisson_tail(2.0, 3), 1.0 - std::exp(-2.0) * (1.0 + 2.0 + 2.0), 1e-15);
}
