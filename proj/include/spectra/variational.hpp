#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "spectra/spectral_model.hpp"

namespace spectra {

enum class SubspaceTag { Full, PastExponent, OutsideGap };

struct MultiplierFunction {
  ComplexFn eval;
  SubspaceTag tag = SubspaceTag::Full;
};

struct ObjectiveValue {
  double value = 0.0;
  double abs_error = 0.0;
  bool infinite = false;
};

/// G(psi) = integral of |psi - 1|^2 + |l psi|^2 against the measure.
ObjectiveValue objective(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                         const MultiplierFunction& psi, const QuadratureOptions& opts = {});

/// First-variation pairing ((psi - 1), h) + (|l|^2 psi, h) in L2(mu);
/// vanishes for every h at the optimum.
std::complex<double> euler_residual(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                                    const MultiplierFunction& psi, const MultiplierFunction& h,
                                    const QuadratureOptions& opts = {});

/// Energy form Q(h) = integral of (1 + |l|^2) |h|^2 d(mu); the exact
/// second-order term of G around the optimum.
ObjectiveValue quadratic_form(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                              const MultiplierFunction& h, const QuadratureOptions& opts = {});

/// Checks whether membership integral |psi|^2 d(mu) is finite.
bool in_l2(const SpectralMeasure& m, const MultiplierFunction& psi,
           const QuadratureOptions& opts = {});

/// Random trigonometric polynomial of the given degree with coefficients
/// uniform on the complex unit disc; on the Line the sum is windowed by
/// 1/(1 + u^2) to keep it integrable. Deterministic in (seed, trial).
MultiplierFunction random_test_function(Domain domain, int degree, std::uint64_t seed,
                                        std::uint64_t trial);

struct PerturbationResult {
  bool all_pass = true;
  double worst_violation = 0.0;  // max of G(psi*) - G(psi* + eps h) over trials
  int trials = 0;
};

/// Draws `trials` random test functions and checks
/// G(psi* + eps h) >= G(psi*) - tol for each eps in the grid.
PerturbationResult perturbation_check(const SpectralMeasure& m,
                                      const FrequencyCharacteristic& ell,
                                      const MultiplierFunction& psi_star, int trials,
                                      std::span<const double> eps_grid, std::uint64_t seed,
                                      const QuadratureOptions& opts = {});

}  // namespace spectra
