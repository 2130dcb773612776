#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spectra/spectral_model.hpp"

namespace spectra {

/// The optimal spectral multiplier u -> 1 / (1 + |l(u)|^2), as an evaluator.
struct PsiDescriptor {
  std::function<double(double)> eval;
  std::string formula = "1/(1+|l(u)|^2)";
};

/// Bilateral geometric moving-average weights w_k = w0 * beta^{-k}, k >= 0,
/// truncated once the tail sum drops below tail_tol.
struct DiscreteKernel {
  double w0 = 1.0;
  double beta = 0.0;  // +inf when alpha == 0 (identity kernel)
  std::vector<double> weights;
  int truncation_K = 0;
  double tail_bound = 0.0;
};

/// Two-sided exponential kernel tau -> e^{-|tau|/alpha} / (2 alpha).
struct ContinuousKernel {
  double alpha = 1.0;
  double operator()(double tau) const;
};

using KernelDescriptor = std::variant<DiscreteKernel, ContinuousKernel>;

struct SolutionReport {
  double sigma2 = 0.0;
  double sigma2_error_estimate = 0.0;
  PsiDescriptor psi;
  bool infinite = false;        // problem value is +inf (infinite measure, undamped filter)
  double cross_check = 0.0;     // second route for finite measures, NaN otherwise
  std::optional<KernelDescriptor> kernel;
};

PsiDescriptor optimal_psi(const FrequencyCharacteristic& ell);

/// Minimal penalized approximation error: integral of |l|^2/(1+|l|^2)
/// against the measure, atoms included. Finite measures are cross-computed
/// as total_mass - integral of 1/(1+|l|^2) d(mu) and the two routes must
/// agree within their combined error estimates.
SolutionReport sigma2_nonadaptive(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                                  const QuadratureOptions& opts = {});

/// Closed forms for the preset models under the kinetic filter of scale alpha.
double closed_form_sigma2(const ProcessModel& model, double alpha);

/// Larger root of beta^2 - ((2 alpha^2 + 1)/alpha^2) beta + 1 = 0.
double beta_root(double alpha);

DiscreteKernel discrete_kernel(double alpha, double tail_tol);
ContinuousKernel continuous_kernel(double alpha);

struct LimitRow {
  double delta = 0.0;
  double alpha_delta = 0.0;
  double beta_delta = 0.0;
  double beta_pow_alpha = 0.0;   // beta_delta ^ alpha_delta
  double sigma2_delta = 0.0;     // partial-sums error at increment variance V*delta
  double sigma2_limit = 0.0;     // V * alpha / 2
};

/// Discrete-to-continuous refinement table: alpha_delta = alpha/delta.
std::vector<LimitRow> discrete_to_continuous_limit(double alpha, std::span<const double> deltas,
                                                   double V = 1.0);

}  // namespace spectra
