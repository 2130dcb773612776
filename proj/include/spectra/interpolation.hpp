#pragma once

#include <optional>
#include <vector>

#include "spectra/spectral_model.hpp"

namespace spectra {

struct InterpolationReport {
  double sigma2_int = 0.0;
  double err_estimate = 0.0;
  std::optional<double> c;               // absent when the reciprocal integral diverges
  std::function<double(double)> phi;     // optimal multiplier, convergent case only
  IntegralResult kolmogorov;             // integral of 1/f
  bool precise = false;                  // true iff 1/f diverges (gap costs nothing extra)
};

/// Integral of du/f over the circle with divergence flag. Atoms are not
/// supported here: the gap problem is posed for a spectral density.
IntegralResult kolmogorov_integral(const SpectralMeasure& m, const QuadratureOptions& opts = {});

/// Optimal one-point gap reconstruction error. Divergent reciprocal
/// integral: the error equals the full-knowledge error. Convergent:
/// adds (int 1/(1+|l|^2))^2 / (int 1/(f (1+|l|^2))) and produces the
/// multiplier phi = (c + f) / (f (1 + |l|^2)) with its constant c.
InterpolationReport sigma2_interpolation(const SpectralMeasure& m,
                                         const FrequencyCharacteristic& ell,
                                         const QuadratureOptions& opts = {});

/// Optimality residuals: index 0 is |integral of phi|, index s in 1..s_max is
/// the larger of |int (phi (1+|l|^2) - 1) e^{+-isu} f du|. All should sit at
/// quadrature noise level.
std::vector<double> interpolation_residuals(const SpectralMeasure& m,
                                            const FrequencyCharacteristic& ell,
                                            const InterpolationReport& report, int s_max,
                                            const QuadratureOptions& opts = {});

/// Brute-force objectives over trigonometric polynomials supported on
/// 1 <= |s| <= S, for S = 1..S_max. Shares the Toeplitz integrals across S;
/// nonincreasing in S and converging to sigma2_int from above.
std::vector<double> galerkin_objectives(const SpectralMeasure& m,
                                        const FrequencyCharacteristic& ell, int S_max,
                                        const QuadratureOptions& opts = {});

double galerkin_oracle(const SpectralMeasure& m, const FrequencyCharacteristic& ell, int S,
                       const QuadratureOptions& opts = {});

}  // namespace spectra
