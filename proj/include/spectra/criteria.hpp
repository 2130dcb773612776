#pragma once

#include <optional>
#include <string>

#include "spectra/spectral_model.hpp"

namespace spectra {

enum class HorizonKind {
  AllTSingular,  // log-integral diverges: every horizon already optimal
  FiniteDegree,  // optimal multiplier is a trigonometric polynomial of degree t
  NeverFiniteT,  // no finite horizon reaches the full-knowledge error
  Approximate,   // continuous-domain support heuristic, not a proof
};

const char* horizon_kind_name(HorizonKind k);

struct HorizonVerdict {
  HorizonKind kind = HorizonKind::NeverFiniteT;
  int t = -1;                // set for FiniteDegree
  bool approximate = false;  // continuous-domain verdicts are heuristic
  std::string note;
  double log_integral = 0.0;
  bool log_diverged = false;
  double tail_mass = 0.0;  // coefficient/transform mass beyond the found degree
};

/// Log-integral of the density: |ln f_a| du on the circle,
/// |ln f_a|/(1+u^2) du on the line. Divergence decided numerically.
/// Zeros of the density must be hinted; undeclared zeros abort.
IntegralResult log_integral(const SpectralMeasure& m, const QuadratureOptions& opts = {});

/// Fourier degree of 1/(1+|l|^2) on the circle: the smallest t whose beyond-t
/// coefficients are consistent with quadrature noise behind a sharp drop and
/// carry squared mass below tol; nullopt when the coefficients keep decaying
/// geometrically (the function is not a trigonometric polynomial).
std::optional<int> trig_poly_degree(const FrequencyCharacteristic& ell, double tol = 1e-10,
                                    int maxdeg = 128, const QuadratureOptions& opts = {});

/// Full no-loss-horizon decision. Circle: exact. Line: exact only for the
/// constant-|l| case; otherwise an approximate transform-support test.
HorizonVerdict no_loss_horizon(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                               double tol = 1e-10, int maxdeg = 128,
                               const QuadratureOptions& opts = {});

/// Limit of the prediction error as the horizon recedes:
/// total mass minus the atom masses damped by 1/(1+|l|^2). Requires a finite
/// measure with a finite log-integral of the density.
double regularity_limit(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                        const QuadratureOptions& opts = {});

}  // namespace spectra
