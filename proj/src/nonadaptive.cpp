#include "spectra/nonadaptive.hpp"

#include <cmath>
#include <limits>

namespace spectra {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double damp(double abs2) {
  // |l|^2 / (1 + |l|^2), stable at both ends; +inf maps to 1
  if (std::isinf(abs2)) return 1.0;
  return abs2 >= 1.0 ? 1.0 - 1.0 / (1.0 + abs2) : abs2 / (1.0 + abs2);
}

// Hints for the damped error integrand: a zero of |l|^2 of order 2k at a
// singular point of the measure lowers the power-law exponent by 2k.
std::vector<SingularityHint> damped_hints(const SpectralMeasure& m,
                                          const FrequencyCharacteristic& ell) {
  std::vector<SingularityHint> hints = m.singularity_hints;
  for (auto& h : hints) {
    if (h.exponent <= 0) continue;
    h.exponent -= ell.abs2_zero_order_at(h.location);
  }
  return hints;
}

}  // namespace

double ContinuousKernel::operator()(double tau) const {
  return std::exp(-std::abs(tau) / alpha) / (2.0 * alpha);
}

PsiDescriptor optimal_psi(const FrequencyCharacteristic& ell) {
  PsiDescriptor d;
  d.eval = [ell](double u) {
    const double a2 = ell.abs2(u);
    if (std::isinf(a2)) return 0.0;  // pointwise limit
    return 1.0 / (1.0 + a2);
  };
  return d;
}

SolutionReport sigma2_nonadaptive(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                                  const QuadratureOptions& opts) {
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch,
                "sigma2_nonadaptive: filter " + ell.describe() + " is not defined on the " +
                    std::string(domain_name(m.domain)) + " domain");
  SolutionReport rep;
  rep.psi = optimal_psi(ell);
  rep.cross_check = kNaN;

  const auto& f = m.ac_density;
  RealFn integrand = [&f, &ell](double u) { return damp(ell.abs2(u)) * f(u); };
  const auto hints = damped_hints(m, ell);

  if (!m.finite) {
    auto v = detect_divergence(integrand, m.domain, hints, opts);
    if (v.diverged) {
      rep.infinite = true;
      rep.sigma2 = std::numeric_limits<double>::infinity();
      return rep;
    }
  }

  auto r = integrate(integrand, m.domain, hints, opts);
  if (r.diverged) {
    if (!m.finite) {
      rep.infinite = true;
      rep.sigma2 = std::numeric_limits<double>::infinity();
      return rep;
    }
    throw Error(Errc::Divergent, "sigma2_nonadaptive: error integral diverged");
  }
  double sigma2 = r.value;
  for (const auto& a : m.atoms) sigma2 += damp(ell.abs2(a.location)) * a.mass;
  rep.sigma2 = sigma2;
  rep.sigma2_error_estimate = r.abs_error;

  if (m.finite) {
    auto mass = total_mass(m, opts);
    RealFn rest = [&f, &ell](double u) { return f(u) / (1.0 + ell.abs2(u)); };
    auto r2 = integrate(rest, m.domain, m.singularity_hints, opts);
    if (r2.diverged) throw Error(Errc::Divergent, "sigma2_nonadaptive: cross-check diverged");
    double other = mass.value - r2.value;
    for (const auto& a : m.atoms) other -= a.mass / (1.0 + ell.abs2(a.location));
    rep.cross_check = other;
    const double budget = r.abs_error + r2.abs_error + mass.abs_error + 1e-13 * std::abs(sigma2);
    if (std::abs(other - sigma2) > std::max(budget, 1e-12))
      throw Error(Errc::Numerical, "sigma2_nonadaptive: the two error routes disagree beyond "
                                   "their combined quadrature estimates");
  }
  return rep;
}

double beta_root(double alpha) {
  if (!(alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  const double a2 = alpha * alpha;
  return (2.0 * a2 + 1.0 + std::sqrt(1.0 + 4.0 * a2)) / (2.0 * a2);
}

double closed_form_sigma2(const ProcessModel& model, double alpha) {
  model.validate();
  if (!(alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  const double root = std::sqrt(1.0 + 4.0 * alpha * alpha);
  switch (model.kind) {
    case ModelKind::IID:
      return model.V * (1.0 - 1.0 / root);
    case ModelKind::AR1: {
      const double b = beta_root(alpha);
      return model.V / (1.0 - model.rho * model.rho) *
             (1.0 - (1.0 / root) * (b + model.rho) / (b - model.rho));
    }
    case ModelKind::MA1: {
      const double b = beta_root(alpha);
      const double r2 = 1.0 + model.rho * model.rho;
      return model.V * (r2 - (1.0 / root) * (r2 + 2.0 * model.rho / b));
    }
    case ModelKind::PartialSums:
      return model.V * alpha * alpha / root;
    case ModelKind::OU:
      return alpha / (2.0 + alpha);
    case ModelKind::FBM:
      return gamma_fn(2.0 * model.H + 1.0) * std::pow(alpha, 2.0 * model.H) / 2.0;
    case ModelKind::Levy:
      return alpha * model.V / 2.0;
    case ModelKind::Custom:
      throw Error(Errc::Unsupported, "closed_form_sigma2: no closed form for custom models");
  }
  return kNaN;
}

DiscreteKernel discrete_kernel(double alpha, double tail_tol) {
  if (!(alpha >= 0)) throw Error(Errc::InvalidArgument, "alpha: must be >= 0");
  if (!(tail_tol > 0)) throw Error(Errc::InvalidArgument, "tail_tol: must be > 0");
  DiscreteKernel k;
  if (alpha == 0.0) {  // no penalty: identity kernel
    k.w0 = 1.0;
    k.beta = std::numeric_limits<double>::infinity();
    k.weights = {1.0};
    k.truncation_K = 0;
    k.tail_bound = 0.0;
    return k;
  }
  k.beta = beta_root(alpha);
  k.w0 = 1.0 / std::sqrt(1.0 + 4.0 * alpha * alpha);
  const double q = 1.0 / k.beta;
  int K = 0;
  double tail = 2.0 * k.w0 * q / (1.0 - q);  // sum of both tails past index K
  while (tail >= tail_tol) {
    ++K;
    tail *= q;
  }
  k.truncation_K = K;
  k.tail_bound = tail;
  k.weights.resize(K + 1);
  double w = k.w0;
  for (int i = 0; i <= K; ++i) {
    k.weights[i] = w;
    w *= q;
  }
  return k;
}

ContinuousKernel continuous_kernel(double alpha) {
  if (!(alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  return ContinuousKernel{alpha};
}

std::vector<LimitRow> discrete_to_continuous_limit(double alpha, std::span<const double> deltas,
                                                   double V) {
  if (!(alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  std::vector<LimitRow> rows;
  rows.reserve(deltas.size());
  for (double d : deltas) {
    if (!(d > 0)) throw Error(Errc::InvalidArgument, "deltas: must be > 0");
    LimitRow row;
    row.delta = d;
    row.alpha_delta = alpha / d;
    row.beta_delta = beta_root(row.alpha_delta);
    row.beta_pow_alpha = std::pow(row.beta_delta, row.alpha_delta);
    ProcessModel ps{ModelKind::PartialSums, V * d};
    row.sigma2_delta = closed_form_sigma2(ps, row.alpha_delta);
    row.sigma2_limit = V * alpha / 2.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spectra
