#include "spectra/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace spectra {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Zero guard: the density must be positive away from hinted points.
void check_declared_zeros(const SpectralMeasure& m) {
  const int n = 2048;
  for (int i = 0; i < n; ++i) {
    double u;
    if (m.domain == Domain::Circle) {
      u = -kPi + (i + 0.5) * (2.0 * kPi / n);
    } else {
      const double theta = -kPi / 2 + (i + 0.5) * (kPi / n);
      u = std::tan(theta);
    }
    if (m.ac_density(u) < 1e-300) {
      bool near_hint = false;
      for (const auto& h : m.singularity_hints)
        if (std::abs(u - h.location) < 1e-2 * (1.0 + std::abs(u))) near_hint = true;
      if (!near_hint) {
        std::ostringstream os;
        os << "log_integral: density vanishes near u=" << u
           << " without a declared singularity hint";
        throw Error(Errc::InvalidArgument, os.str());
      }
    }
  }
}

}  // namespace

const char* horizon_kind_name(HorizonKind k) {
  switch (k) {
    case HorizonKind::AllTSingular: return "all-t-singular";
    case HorizonKind::FiniteDegree: return "finite-degree";
    case HorizonKind::NeverFiniteT: return "never-finite-t";
    case HorizonKind::Approximate: return "approximate";
  }
  return "?";
}

IntegralResult log_integral(const SpectralMeasure& m, const QuadratureOptions& opts) {
  if (!m.ac_density) throw Error(Errc::InvalidArgument, "log_integral: no density");
  check_declared_zeros(m);
  const auto& f = m.ac_density;
  RealFn g;
  if (m.domain == Domain::Circle)
    g = [&f](double u) { return std::abs(std::log(f(u))); };
  else
    g = [&f](double u) { return std::abs(std::log(f(u))) / (1.0 + u * u); };
  // poles and zeros of the density turn into log singularities of the
  // integrand; 0.5 engages the smoothing substitution
  std::vector<SingularityHint> hints;
  for (const auto& h : m.singularity_hints) hints.push_back({h.location, 0.5});

  auto verdict = detect_divergence(g, m.domain, hints, opts);
  if (verdict.diverged) {
    IntegralResult r;
    r.value = verdict.diagnostic;
    r.diverged = true;
    return r;
  }
  return integrate(g, m.domain, hints, opts);
}

std::optional<int> trig_poly_degree(const FrequencyCharacteristic& ell, double tol, int maxdeg,
                                    const QuadratureOptions& opts) {
  if (!ell.compatible_with(Domain::Circle))
    throw Error(Errc::DomainMismatch, "trig_poly_degree: needs a circle-domain filter");
  if (maxdeg < 1) throw Error(Errc::InvalidArgument, "maxdeg: must be >= 1");

  auto psi = [&ell](double u) {
    const double a2 = ell.abs2(u);
    return std::isinf(a2) ? 0.0 : 1.0 / (1.0 + a2);
  };
  QuadratureOptions q = opts;
  q.tol = std::min(opts.tol, 1e-13);

  // psi is real, so |b_{-j}| = |b_j|; compute j >= 0 only
  std::vector<double> mag(static_cast<size_t>(maxdeg) + 1);
  double max_err = 0.0;
  for (int j = 0; j <= maxdeg; ++j) {
    ComplexFn g = [&psi, j](double u) { return psi(u) * std::polar(1.0, -j * u); };
    auto r = integrate_complex(g, Domain::Circle, {}, q);
    if (r.diverged) throw Error(Errc::Numerical, "trig_poly_degree: coefficient quadrature failed");
    mag[static_cast<size_t>(j)] = std::abs(r.value) / (2.0 * kPi);
    max_err = std::max(max_err, r.abs_error / (2.0 * kPi));
  }

  const double noise = std::max(1e-12, 20.0 * max_err);
  int T = -1;
  for (int j = maxdeg; j >= 0; --j)
    if (mag[static_cast<size_t>(j)] > noise) {
      T = j;
      break;
    }
  if (T < 0) return 0;        // the zero function counts as degree 0
  if (T >= maxdeg) return std::nullopt;  // above noise all the way out

  // A genuine polynomial drops from its last coefficient straight to noise;
  // a geometric tail descends through the noise floor gradually and never
  // truncates. (Decay ratios under ~1e-3 are indistinguishable from a cliff
  // at double precision; such extreme filters are reported as polynomials.)
  const double drop = mag[static_cast<size_t>(T + 1)] / mag[static_cast<size_t>(T)];
  if (drop > 1e-3) return std::nullopt;

  double tail = 0.0;
  for (int j = T + 1; j <= maxdeg; ++j) tail += 2.0 * mag[static_cast<size_t>(j)] * mag[static_cast<size_t>(j)];
  if (tail >= tol) return std::nullopt;
  return T;
}

HorizonVerdict no_loss_horizon(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                               double tol, int maxdeg, const QuadratureOptions& opts) {
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch, "no_loss_horizon: filter/domain mismatch");
  HorizonVerdict v;
  auto li = log_integral(m, opts);
  v.log_integral = li.value;
  v.log_diverged = li.diverged;
  if (li.diverged) {
    v.kind = HorizonKind::AllTSingular;
    v.note = "log-integral of the density diverges; every horizon attains the "
             "full-knowledge error";
    return v;
  }

  if (m.domain == Domain::Circle) {
    auto deg = trig_poly_degree(ell, tol, maxdeg, opts);
    if (deg) {
      v.kind = HorizonKind::FiniteDegree;
      v.t = *deg;
      v.note = "optimal multiplier is a trigonometric polynomial";
    } else {
      v.kind = HorizonKind::NeverFiniteT;
      std::ostringstream os;
      os << "no polynomial truncation up to degree " << maxdeg;
      v.note = os.str();
    }
    return v;
  }

  // Line: the constant-|l| case is exact
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double theta = -kPi / 2 + (i + 0.5) * (kPi / 4096);
    const double a = std::sqrt(ell.abs2(std::tan(theta)));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  if (hi - lo < std::max(tol, 1e-9) * (1.0 + hi)) {
    v.kind = HorizonKind::FiniteDegree;
    v.t = 0;
    v.note = "|l| is constant; the optimal multiplier is already available at "
             "horizon zero";
    return v;
  }

  // Approximate transform-support probe of psi - psi(inf). A compactly
  // supported transform shows a cliff; exponential or polynomial decay keeps
  // descending and means no finite horizon. Heuristic, never exact.
  v.approximate = true;
  double linf = 0.0;
  {
    double s = 0.0;
    int n = 0;
    for (double u : {1e6, -1e6, 1e7, -1e7, 1e8, -1e8}) {
      const double a2 = ell.abs2(u);
      s += std::isinf(a2) ? 0.0 : 1.0 / (1.0 + a2);
      ++n;
    }
    linf = s / n;
  }
  auto g = [&ell, linf](double u) {
    const double a2 = ell.abs2(u);
    return (std::isinf(a2) ? 0.0 : 1.0 / (1.0 + a2)) - linf;
  };
  RealFn g2 = [&g](double u) {
    const double x = g(u);
    return x * x;
  };
  auto sq = detect_divergence(g2, Domain::Line, {}, opts);
  if (sq.diverged) {
    v.kind = HorizonKind::Approximate;
    v.note = "multiplier minus its limit is not square-integrable; support "
             "probe unavailable";
    return v;
  }

  const double dtau = 0.25;
  const int ntau = 65;
  QuadratureOptions q = opts;
  q.tol = std::min(opts.tol, 1e-11);
  std::vector<double> mag(ntau);
  double max_err = 0.0;
  for (int k = 0; k < ntau; ++k) {
    const double tau = k * dtau;
    ComplexFn h = [&g, tau](double u) { return g(u) * std::polar(1.0, -tau * u); };
    auto r = integrate_complex(h, Domain::Line, {}, q);
    mag[static_cast<size_t>(k)] = std::abs(r.value);
    max_err = std::max(max_err, r.abs_error);
  }
  const double noise = std::max(1e-9, 50.0 * max_err);
  int K = -1;
  for (int k = ntau - 1; k >= 0; --k)
    if (mag[static_cast<size_t>(k)] > noise) {
      K = k;
      break;
    }
  double tail = 0.0;
  for (int k = K + 1; k < ntau; ++k) tail += mag[static_cast<size_t>(k)] * mag[static_cast<size_t>(k)] * dtau;
  v.tail_mass = tail;
  if (K >= 0 && K < ntau - 1 && mag[static_cast<size_t>(K + 1)] / mag[static_cast<size_t>(K)] < 1e-2) {
    v.kind = HorizonKind::Approximate;
    std::ostringstream os;
    os << "transform support appears to end near tau=" << K * dtau
       << " (approximate); horizons beyond that width look lossless";
    v.t = static_cast<int>(std::ceil(K * dtau));
    v.note = os.str();
  } else {
    v.kind = HorizonKind::NeverFiniteT;
    v.note = "transform of the centered multiplier decays without a support "
             "cliff (approximate verdict)";
  }
  return v;
}

double regularity_limit(const SpectralMeasure& m, const FrequencyCharacteristic& ell,
                        const QuadratureOptions& opts) {
  if (!ell.compatible_with(m.domain))
    throw Error(Errc::DomainMismatch, "regularity_limit: filter/domain mismatch");
  if (!m.finite) throw Error(Errc::InfiniteMass, "regularity_limit: measure must be finite");
  auto li = log_integral(m, opts);
  if (li.diverged)
    throw Error(Errc::Unsupported,
                "regularity_limit: requires a finite log-integral of the density "
                "(regular absolutely continuous part)");
  auto mass = total_mass(m, opts);
  double out = mass.value;
  for (const auto& a : m.atoms) out -= a.mass / (1.0 + ell.abs2(a.location));
  return out;
}

}  // namespace spectra
