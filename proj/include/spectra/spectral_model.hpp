#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spectra/quadrature.hpp"
#include "spectra/types.hpp"

namespace spectra {

/// Spectral measure mu = f_a(u) du + sum of atoms. `finite` is false for
/// stationary-increment processes, whose measure may blow up at u = 0 but
/// must satisfy the integrability check in levy_check().
struct SpectralMeasure {
  Domain domain = Domain::Circle;
  std::function<double(double)> ac_density;
  std::vector<Atom> atoms;
  bool finite = true;
  std::vector<SingularityHint> singularity_hints;
};

// --- filter frequency characteristics -------------------------------------

struct ZeroFilter {};
struct KineticDiscrete {
  double alpha;
};  // l(u) = alpha (e^{iu} - 1)
struct KineticContinuous {
  double alpha;
};  // l(u) = alpha i u
struct PolynomialLine {
  std::vector<std::complex<double>> coeffs;  // c_k, k >= 1: l(u) = sum c_k u^k
};
struct PolynomialCircle {
  std::vector<std::complex<double>> coeffs;  // l(u) = sum c_k (e^{iu} - 1)^k
};
struct TabulatedAbs2 {
  std::vector<double> u;     // strictly increasing grid
  std::vector<double> abs2;  // |l(u)|^2 samples, piecewise-linear between
};
struct ConstantAbs {
  double c;  // |l| == c
};
struct CustomAbs2 {
  std::function<double(double)> abs2;
  int zero_order_at_origin = 0;  // order of the zero of |l|^2 at u = 0, if any
};

class FrequencyCharacteristic {
public:
  using Variant = std::variant<ZeroFilter, KineticDiscrete, KineticContinuous, PolynomialLine,
                               PolynomialCircle, TabulatedAbs2, ConstantAbs, CustomAbs2>;

  FrequencyCharacteristic() : v_(ZeroFilter{}) {}
  FrequencyCharacteristic(Variant v);  // validates parameters

  const Variant& variant() const { return v_; }

  /// |l(u)|^2; never negative. Tabulated queries outside the grid throw.
  double abs2(double u) const;

  /// l(u) for variants with a defined phase; modulus-only variants return
  /// sqrt(abs2), which leaves every second-order quantity unchanged.
  std::complex<double> value(double u) const;

  bool is_zero() const { return std::holds_alternative<ZeroFilter>(v_); }
  bool compatible_with(Domain d) const;

  /// Order of the zero of |l|^2 at u0 (0 when |l(u0)| > 0). Used to damp
  /// singularity exponents of the measure in error integrands.
  int abs2_zero_order_at(double u0) const;

  std::string describe() const;

private:
  Variant v_;
};

// --- process models --------------------------------------------------------

enum class ModelKind { IID, AR1, MA1, PartialSums, OU, FBM, Levy, Custom };

const char* model_kind_name(ModelKind k);

struct ProcessModel {
  ModelKind kind = ModelKind::IID;
  double V = 1.0;    // variance scale (IID, AR1, MA1, PartialSums, Levy)
  double rho = 0.0;  // AR1/MA1 coefficient, |rho| < 1
  double H = 0.5;    // fBm Hurst index in (0, 1]
  std::optional<SpectralMeasure> custom;

  /// Throws Errc::InvalidArgument naming the offending field.
  void validate() const;
};

/// Shared Gamma evaluation; every place that needs Gamma goes through here so
/// constants cancel consistently in cross-checks.
double gamma_fn(double x);

/// M_H = Gamma(2H+1) sin(pi H) / (2 pi), the fBm spectral density constant.
double fbm_spectral_constant(double H);

/// Spectral measure of a preset model (Custom returns its stored measure).
SpectralMeasure preset_measure(const ProcessModel& model);

inline double ell_abs2(const FrequencyCharacteristic& ell, double u) { return ell.abs2(u); }

/// Total mass integral f_a du plus atom masses. Requires a finite measure.
IntegralResult total_mass(const SpectralMeasure& m, const QuadratureOptions& opts = {});

/// K(t) = integral of e^{itu} against the measure. Requires a finite measure.
ComplexIntegralResult covariance(const SpectralMeasure& m, double t,
                                 const QuadratureOptions& opts = {});

struct LevyCheckResult {
  bool pass = false;
  double value = 0.0;  // the integrability integral (partial sum when divergent)
};

/// Integrability condition for infinite (stationary-increment) measures:
/// integral of u^2 (circle) or min(u^2, 1) (line) against the measure.
LevyCheckResult levy_check(const SpectralMeasure& m, const QuadratureOptions& opts = {});

}  // namespace spectra
