#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "duality/analytic.hpp"
#include "duality/fock.hpp"
#include "duality/parallel.hpp"

/// Brute-force route to the complementarity measures: build the
/// quanton-detector state explicitly in truncated Fock space and evaluate
/// every quantity from amplitudes, overlaps and partial traces. Nothing here
/// calls the closed-form measure formulas, so disagreement with
/// duality::analytic flags a transcription error in one of the two routes.
namespace duality::oracle {

using analytic::ComplementarityMeasures;
using analytic::QuantonAmplitudes;
using analytic::QuantonDensityMatrix;
using analytic::SeedPair;
using fock::CutoffPolicy;
using fock::FockVector;

/// c1 |1,0>_s |d1> + c2 |0,1>_s |d2>. The signal photon is kept as a two-level
/// which-path label; only the two idler modes live in Fock space.
struct CompositeState {
  SeedPair seeds;
  QuantonAmplitudes amplitudes;
  FockVector d1;  ///< a1^dagger |alpha1>|alpha2>, normalized (two idler modes)
  FockVector d2;  ///< |alpha1> a2^dagger |alpha2>, normalized
  int cutoff = 0;

  /// Full amplitude vector, label-major: psi[label * dim(d) + k].
  std::vector<std::complex<double>> flatten() const;
};

CompositeState build_composite(const SeedPair& seeds, const CutoffPolicy& policy = {});

/// Reduced signal-photon density matrix, obtained by tracing the flattened
/// composite vector over both idler modes. rho[i][j] = c_i c_j <d_j|d_i>.
QuantonDensityMatrix reduce_quanton(const CompositeState& state,
                                    Execution exec = Execution::parallel);

/// D, P, E, V, C from their pairwise-overlap definitions with explicit Fock
/// inner products; mu_s from the purity of the reduced matrix,
/// sqrt(2 Tr[rho_r^2] - 1).
ComplementarityMeasures measures_from_state(const CompositeState& state,
                                            Execution exec = Execution::parallel);

/// Entanglement of the pure composite state via the linear entropy of the
/// reduced quanton: sqrt(2 (1 - Tr[rho_r^2])).
double entanglement_from_purity(const QuantonDensityMatrix& reduced);

/// Source purity via sqrt(2 Tr[rho_r^2] - 1).
double source_purity(const QuantonDensityMatrix& reduced);

struct VerificationTolerances {
  double closed_form = 1e-12;
  double oracle = 1e-8;
};

struct VerificationOptions {
  std::size_t samples = 1000;
  std::uint64_t rng_seed = 42;
  /// |alpha_j| range for the closed-form identities.
  double alpha_max = 10.0;
  /// |alpha_j| range for the Fock-space comparisons (also capped by alpha_max).
  double oracle_alpha_max = 4.0;
  bool run_oracle = true;
  CutoffPolicy policy{};
  VerificationTolerances tolerances{};
};

struct IdentityResult {
  std::string name;
  std::size_t samples = 0;
  double tolerance = 0.0;
  double worst_residual = 0.0;
  SeedPair worst_seeds{};
  std::size_t worst_sample = 0;
  bool pass = false;
};

struct VerificationReport {
  std::size_t samples = 0;
  std::uint64_t rng_seed = 0;
  std::vector<IdentityResult> identities;

  bool all_pass() const;
  const IdentityResult* find(const std::string& name) const;
  std::string to_text() const;
  std::string to_json() const;
};

/// Samples seed pairs with uniform magnitudes and uniform random phases and
/// checks every identity. Violations are reported, not thrown; a residual
/// passes only if it is strictly below its tolerance. Each sample draws from
/// its own stream derived from (rng_seed, sample index), so the report is the
/// same for serial and parallel execution.
VerificationReport verify_identities(const VerificationOptions& options,
                                     Execution exec = Execution::parallel);

}  // namespace duality::oracle
