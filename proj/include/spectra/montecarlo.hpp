#pragma once

#include <cstdint>

#include "spectra/nonadaptive.hpp"
#include "spectra/spectral_model.hpp"

namespace spectra {

/// Frequency discretization for spectral synthesis: independent complex
/// Gaussian weights with per-cell variances equal to the cell masses.
/// Increment mode (infinite measures) excludes a symmetric zone around u = 0.
struct SynthesisGrid {
  std::vector<double> nodes;
  std::vector<double> masses;
  bool increments = false;
  double window = 0.0;          // 0 on the circle
  double excluded_halfwidth = 0.0;
  double mass_sum = 0.0;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n = 0;     // independent samples (spectral) or blocks (time average)
  std::uint64_t seed = 0;
  double grid_bias_bound = 0.0;  // systematic offset bound: grid-vs-quadrature or kernel tail
  double theory_grid = 0.0;      // grid-discretized expectation (exact for the sampler)
  double theory = 0.0;           // continuum value when finite
};

/// Cells over [-pi, pi) (equal) or [-window, window] (arc-tangent graded so
/// heavy tails and the origin are resolved); masses by per-cell quadrature.
/// Finite measures with more than `mass_budget` of their mass outside the
/// window are rejected as a sizing error.
SynthesisGrid build_grid(const SpectralMeasure& m, int M, double window,
                         double mass_budget = 0.05, const QuadratureOptions& opts = {});

/// Empirical mean of |sum (psi - 1) Z|^2 + |sum l psi Z|^2 over n draws of
/// independent complex circular Gaussians per cell. Deterministic for a fixed
/// seed regardless of `threads`.
MonteCarloEstimate estimate_functional(const SpectralMeasure& m, const SynthesisGrid& grid,
                                       const FrequencyCharacteristic& ell, const ComplexFn& psi,
                                       std::uint64_t n, std::uint64_t seed, int threads = 1,
                                       const QuadratureOptions& opts = {});

/// Convenience wrapper that builds the grid internally.
MonteCarloEstimate estimate_functional(const SpectralMeasure& m,
                                       const FrequencyCharacteristic& ell, const ComplexFn& psi,
                                       std::uint64_t n, std::uint64_t seed, int M = 512,
                                       double window = 5000.0, int threads = 1,
                                       const QuadratureOptions& opts = {});

/// Path-wise experiment for the discrete presets: simulate the recursion,
/// apply the truncated bilateral geometric kernel, time-average
/// |X(t)-B(t)|^2 + alpha^2 |X(t+1)-X(t)|^2. Mean and standard error come
/// from block means (blocks of 10^4 steps), which absorbs the serial
/// correlation of the path.
MonteCarloEstimate time_domain_experiment(const ProcessModel& model, double alpha,
                                          std::uint64_t n_steps, double truncation_tol,
                                          std::uint64_t seed);

}  // namespace spectra
