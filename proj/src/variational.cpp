#include "spectra/variational.hpp"

#include <cmath>
#include <vector>

#include "spectra/rng.hpp"

namespace spectra {
namespace {

double abs2c(const std::complex<double>& z) { return std::norm(z); }

}  // namespace

ObjectiveValue objective(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                         const MultiplierFunction& psi, const QuadratureOptions& opts) {
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch, "objective: filter/domain mismatch");
  const auto& f = m.ac_density;
  const auto& p = psi.eval;
  RealFn g = [&](double u) {
    const std::complex<double> pv = p(u);
    return (abs2c(pv - 1.0) + ell.abs2(u) * abs2c(pv)) * f(u);
  };
  auto r = integrate(g, m.domain, m.singularity_hints, opts);
  ObjectiveValue out;
  if (r.diverged) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = r.value;
  out.abs_error = r.abs_error;
  for (const auto& a : m.atoms) {
    const std::complex<double> pv = p(a.location);
    out.value += (abs2c(pv - 1.0) + ell.abs2(a.location) * abs2c(pv)) * a.mass;
  }
  return out;
}

std::complex<double> euler_residual(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                                    const MultiplierFunction& psi, const MultiplierFunction& h,
                                    const QuadratureOptions& opts) {
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch, "euler_residual: filter/domain mismatch");
  const auto& f = m.ac_density;
  ComplexFn g = [&](double u) {
    const std::complex<double> pv = psi.eval(u);
    const std::complex<double> hv = std::conj(h.eval(u));
    return ((pv - 1.0) + ell.abs2(u) * pv) * hv * f(u);
  };
  auto r = integrate_complex(g, m.domain, m.singularity_hints, opts);
  if (r.diverged) throw Error(Errc::Divergent, "euler_residual: pairing integral diverged");
  std::complex<double> val = r.value;
  for (const auto& a : m.atoms) {
    const std::complex<double> pv = psi.eval(a.location);
    const std::complex<double> hv = std::conj(h.eval(a.location));
    val += ((pv - 1.0) + ell.abs2(a.location) * pv) * hv * a.mass;
  }
  return val;
}

ObjectiveValue quadratic_form(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                              const MultiplierFunction& h, const QuadratureOptions& opts) {
  const auto& f = m.ac_density;
  RealFn g = [&](double u) { return (1.0 + ell.abs2(u)) * abs2c(h.eval(u)) * f(u); };
  auto r = integrate(g, m.domain, m.singularity_hints, opts);
  ObjectiveValue out;
  if (r.diverged) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = r.value;
  out.abs_error = r.abs_error;
  for (const auto& a : m.atoms)
    out.value += (1.0 + ell.abs2(a.location)) * abs2c(h.eval(a.location)) * a.mass;
  return out;
}

bool in_l2(const SpectralMeasure& m, const MultiplierFunction& psi,
           const QuadratureOptions& opts) {
  const auto& f = m.ac_density;
  RealFn g = [&](double u) { return abs2c(psi.eval(u)) * f(u); };
  auto v = detect_divergence(g, m.domain, m.singularity_hints, opts);
  return !v.diverged;
}

MultiplierFunction random_test_function(Domain domain, int degree, std::uint64_t seed,
                                        std::uint64_t trial) {
  CounterRng rng(seed, streams::kTestFunctions);
  std::vector<std::complex<double>> coeffs;
  coeffs.reserve(2 * degree + 1);
  for (int j = -degree; j <= degree; ++j) {
    const std::uint64_t idx =
        trial * (2 * static_cast<std::uint64_t>(degree) + 1) + static_cast<std::uint64_t>(j + degree);
    coeffs.push_back(rng.unit_disc(idx));
  }
  const bool window = domain == Domain::Line;
  MultiplierFunction h;
  h.eval = [coeffs, degree, window](double u) {
    std::complex<double> acc{0.0, 0.0};
    for (int j = -degree; j <= degree; ++j)
      acc += coeffs[static_cast<size_t>(j + degree)] * std::polar(1.0, j * u);
    if (window) acc /= (1.0 + u * u);
    return acc;
  };
  return h;
}

PerturbationResult perturbation_check(const SpectralMeasure& m,
                                      const FrequencyCharacteristic& ell,
                                      const MultiplierFunction& psi_star, int trials,
                                      std::span<const double> eps_grid, std::uint64_t seed,
                                      const QuadratureOptions& opts) {
  auto base = objective(m, ell, psi_star, opts);
  PerturbationResult res;
  res.trials = trials;
  for (int t = 0; t < trials; ++t) {
    auto h = random_test_function(m.domain, 16, seed, static_cast<std::uint64_t>(t));
    for (double eps : eps_grid) {
      MultiplierFunction cand;
      cand.eval = [&psi_star, &h, eps](double u) { return psi_star.eval(u) + eps * h.eval(u); };
      auto g = objective(m, ell, cand, opts);
      const double tol = 1e-9 + 4.0 * (base.abs_error + g.abs_error);
      const double drop = base.value - g.value;
      if (drop > res.worst_violation) res.worst_violation = drop;
      if (g.value < base.value - tol) res.all_pass = false;
    }
  }
  return res;
}

}  // namespace spectra
