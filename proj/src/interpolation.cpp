#include "spectra/interpolation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace spectra {
namespace {

double damp(double abs2) {
  if (std::isinf(abs2)) return 1.0;
  return abs2 >= 1.0 ? 1.0 - 1.0 / (1.0 + abs2) : abs2 / (1.0 + abs2);
}

void require_density_problem(const SpectralMeasure& m, const char* who) {
  if (m.domain != Domain::Circle)
    throw Error(Errc::Unsupported, std::string(who) + ": gap reconstruction is posed for "
                                                      "discrete time (circle domain)");
  if (!m.finite)
    throw Error(Errc::Unsupported, std::string(who) + ": infinite measures are not supported");
  if (!m.atoms.empty())
    throw Error(Errc::Unsupported, std::string(who) + ": atoms are not supported; a spectral "
                                                      "density is required");
}

// 1/f turns declared poles of f into zeros and declared zeros into poles.
std::vector<SingularityHint> reciprocal_hints(const SpectralMeasure& m) {
  std::vector<SingularityHint> hints;
  for (const auto& h : m.singularity_hints) hints.push_back({h.location, -h.exponent});
  return hints;
}

}  // namespace

IntegralResult kolmogorov_integral(const SpectralMeasure& m, const QuadratureOptions& opts) {
  require_density_problem(m, "kolmogorov_integral");
  const auto& f = m.ac_density;
  RealFn g = [&f](double u) { return 1.0 / f(u); };
  const auto hints = reciprocal_hints(m);
  auto verdict = detect_divergence(g, m.domain, hints, opts);
  if (verdict.diverged) {
    IntegralResult r;
    r.value = verdict.diagnostic;
    r.diverged = true;
    return r;
  }
  return integrate(g, m.domain, hints, opts);
}

InterpolationReport sigma2_interpolation(const SpectralMeasure& m,
                                         const FrequencyCharacteristic& ell,
                                         const QuadratureOptions& opts) {
  require_density_problem(m, "sigma2_interpolation");
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch, "sigma2_interpolation: filter/domain mismatch");

  InterpolationReport rep;
  rep.kolmogorov = kolmogorov_integral(m, opts);

  const auto& f = m.ac_density;
  RealFn base = [&f, &ell](double u) { return damp(ell.abs2(u)) * f(u); };
  auto i1 = integrate(base, m.domain, m.singularity_hints, opts);
  if (i1.diverged)
    throw Error(Errc::Numerical, "sigma2_interpolation: error integral diverged");

  if (rep.kolmogorov.diverged) {
    rep.precise = true;
    rep.sigma2_int = i1.value;
    rep.err_estimate = i1.abs_error;
    return rep;
  }

  RealFn inv_pen = [&ell](double u) { return 1.0 / (1.0 + ell.abs2(u)); };
  auto i2 = integrate(inv_pen, m.domain, {}, opts);
  if (i2.diverged)
    throw Error(Errc::Numerical, "sigma2_interpolation: penalty-weight integral diverged");
  RealFn inv_fpen = [&f, &ell](double u) { return 1.0 / (f(u) * (1.0 + ell.abs2(u))); };
  auto i3 = integrate(inv_fpen, m.domain, reciprocal_hints(m), opts);
  if (i3.diverged)
    throw Error(Errc::Numerical, "sigma2_interpolation: reciprocal-density integral diverged");

  const double c = -i2.value / i3.value;
  rep.c = c;
  rep.precise = false;
  rep.sigma2_int = i1.value + i2.value * i2.value / i3.value;
  rep.err_estimate = i1.abs_error + 2.0 * i2.value * i2.abs_error / i3.value +
                     (i2.value / i3.value) * (i2.value / i3.value) * i3.abs_error;
  rep.phi = [f = m.ac_density, ell, c](double u) {
    return (c + f(u)) / (f(u) * (1.0 + ell.abs2(u)));
  };
  return rep;
}

std::vector<double> interpolation_residuals(const SpectralMeasure& m,
                                            const FrequencyCharacteristic& ell,
                                            const InterpolationReport& report, int s_max,
                                            const QuadratureOptions& opts) {
  if (!report.c || !report.phi)
    throw Error(Errc::Unsupported,
                "interpolation_residuals: defined for the convergent case only");
  if (s_max < 1) throw Error(Errc::InvalidArgument, "s_max: must be >= 1");
  const auto& f = m.ac_density;
  const auto& phi = report.phi;

  std::vector<double> out(static_cast<size_t>(s_max) + 1, 0.0);
  auto r0 = integrate([&phi](double u) { return phi(u); }, m.domain, m.singularity_hints, opts);
  out[0] = std::abs(r0.value);
  for (int s = 1; s <= s_max; ++s) {
    double worst = 0.0;
    for (int sgn : {+1, -1}) {
      const double ss = sgn * s;
      ComplexFn g = [&](double u) {
        const double bracket = phi(u) * (1.0 + ell.abs2(u)) - 1.0;
        return bracket * f(u) * std::polar(1.0, ss * u);
      };
      auto r = integrate_complex(g, m.domain, m.singularity_hints, opts);
      worst = std::max(worst, std::abs(r.value));
    }
    out[static_cast<size_t>(s)] = worst;
  }
  return out;
}

std::vector<double> galerkin_objectives(const SpectralMeasure& m,
                                        const FrequencyCharacteristic& ell, int S_max,
                                        const QuadratureOptions& opts) {
  require_density_problem(m, "galerkin_oracle");
  if (S_max < 1) throw Error(Errc::InvalidArgument, "S: must be >= 1");
  if (S_max > 200) throw Error(Errc::InvalidArgument, "S: capped at 200");
  auto kol = kolmogorov_integral(m, opts);
  if (kol.diverged)
    throw Error(Errc::Unsupported, "galerkin_oracle: defined for the convergent case only");

  const auto& f = m.ac_density;
  using C = std::complex<double>;

  // Toeplitz data: weighted exponentials against (1+|l|^2) f and against f.
  std::vector<C> g(static_cast<size_t>(2 * S_max) + 1);  // g[k], k >= 0
  for (int k = 0; k <= 2 * S_max; ++k) {
    ComplexFn fn = [&](double u) {
      return std::polar(1.0, k * u) * (1.0 + ell.abs2(u)) * f(u);
    };
    auto r = integrate_complex(fn, m.domain, m.singularity_hints, opts);
    if (r.diverged)
      throw Error(Errc::Numerical, "galerkin_oracle: Gram entry quadrature diverged");
    g[static_cast<size_t>(k)] = r.value;
  }
  std::vector<C> b(static_cast<size_t>(S_max) + 1);  // b[s] = int e^{-isu} f du, s >= 0
  for (int s = 0; s <= S_max; ++s) {
    ComplexFn fn = [&](double u) { return std::polar(1.0, -s * u) * f(u); };
    auto r = integrate_complex(fn, m.domain, m.singularity_hints, opts);
    if (r.diverged)
      throw Error(Errc::Numerical, "galerkin_oracle: right-hand-side quadrature diverged");
    b[static_cast<size_t>(s)] = r.value;
  }
  auto gk = [&g](int k) { return k >= 0 ? g[static_cast<size_t>(k)] : std::conj(g[static_cast<size_t>(-k)]); };
  auto bs = [&b](int s) { return s >= 0 ? b[static_cast<size_t>(s)] : std::conj(b[static_cast<size_t>(-s)]); };
  const double m0 = b[0].real();

  std::vector<double> objectives;
  objectives.reserve(static_cast<size_t>(S_max));
  for (int S = 1; S <= S_max; ++S) {
    std::vector<int> idx;
    for (int s = -S; s <= S; ++s)
      if (s != 0) idx.push_back(s);
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXcd G(n, n);
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
      rhs(i) = bs(idx[static_cast<size_t>(i)]);
      for (int j = 0; j < n; ++j) G(i, j) = gk(idx[static_cast<size_t>(j)] - idx[static_cast<size_t>(i)]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > 1e12) {
      std::ostringstream os;
      os << "galerkin_oracle: Gram matrix ill-conditioned at S=" << S
         << " (condition estimate " << (lmin > 0 ? lmax / lmin : std::numeric_limits<double>::infinity()) << ")";
      throw Error(Errc::Numerical, os.str());
    }
    Eigen::VectorXcd a = G.llt().solve(rhs);
    const double value = m0 - rhs.dot(a).real();  // dot conjugates the left factor
    objectives.push_back(value);
  }
  return objectives;
}

double galerkin_oracle(const SpectralMeasure& m, const FrequencyCharacteristic& ell, int S,
                       const QuadratureOptions& opts) {
  return galerkin_objectives(m, ell, S, opts).back();
}

}  // namespace spectra
