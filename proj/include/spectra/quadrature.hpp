#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "spectra/types.hpp"

namespace spectra {

struct QuadratureOptions {
  double tol = 1e-10;                  // absolute tolerance on the integral
  int max_panels = 1000000;            // hard cap on panel count
  double divergence_threshold = 1e12;  // |partial sum| beyond this means divergence
};

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  bool diverged = false;
};

struct ComplexIntegralResult {
  std::complex<double> value{0.0, 0.0};
  double abs_error = 0.0;
  int subdivisions = 0;
  bool diverged = false;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

/// Adaptive Gauss-Kronrod (G7/K15) integration over the whole domain.
/// Circle integrates f over [-pi, pi); Line maps u = tan(theta) onto
/// (-pi/2, pi/2) and grades panels toward both endpoints. Hinted points
/// become panel boundaries; an integrable power law (0 < exponent < 1)
/// gets a smoothing change of variable, a non-integrable one (exponent >= 1)
/// a geometric panel ladder so that damped integrands converge and genuinely
/// divergent ones trip the divergence threshold.
IntegralResult integrate(const RealFn& f, Domain domain,
                         std::span<const SingularityHint> hints = {},
                         const QuadratureOptions& opts = {});

ComplexIntegralResult integrate_complex(const ComplexFn& f, Domain domain,
                                        std::span<const SingularityHint> hints = {},
                                        const QuadratureOptions& opts = {});

/// Same engine on a finite interval [a, b]; hints outside are ignored.
IntegralResult integrate_interval(const RealFn& f, double a, double b,
                                  std::span<const SingularityHint> hints = {},
                                  const QuadratureOptions& opts = {});

/// Integral of envelope(u) * e^{i freq u}. On the line the oscillatory tails
/// are truncated with a stationary-phase bound 2|envelope(U)|/|freq| (added
/// to the error estimate) and the centre is resolved in u-space; the bound
/// assumes the envelope modulus eventually decays monotonically.
ComplexIntegralResult integrate_fourier(const ComplexFn& envelope, double freq, Domain domain,
                                        std::span<const SingularityHint> hints = {},
                                        const QuadratureOptions& opts = {});

struct DivergenceVerdict {
  bool diverged = false;
  double diagnostic = 0.0;  // integral estimate (convergent) or partial sum
};

/// Heuristic divergence test for a non-negative integrand: converged
/// integrals are reported as such; otherwise per-level contributions of
/// geometric annuli around each hinted point (and the Line tails) are
/// examined -- non-decaying level sums or a partial sum past the threshold
/// mean divergence. The verdict is numerical, not a proof.
DivergenceVerdict detect_divergence(const RealFn& f, Domain domain,
                                    std::span<const SingularityHint> hints = {},
                                    const QuadratureOptions& opts = {});

}  // namespace spectra
