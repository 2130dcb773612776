#include "spectra/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spectra {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double pl_interp(const std::vector<double>& xs, const std::vector<double>& ys, double x,
                 const char* what) {
  if (x < xs.front() || x > xs.back()) {
    std::ostringstream os;
    os << what << ": query u=" << x << " outside tabulated grid [" << xs.front() << ", "
       << xs.back() << "]";
    throw Error(Errc::InvalidArgument, os.str());
  }
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const size_t i = static_cast<size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double w = (x - x0) / (x1 - x0);
  return ys[i - 1] * (1.0 - w) + ys[i] * w;
}

}  // namespace

FrequencyCharacteristic::FrequencyCharacteristic(Variant v) : v_(std::move(v)) {
  if (auto* k = std::get_if<KineticDiscrete>(&v_)) {
    if (!(k->alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  } else if (auto* k = std::get_if<KineticContinuous>(&v_)) {
    if (!(k->alpha > 0)) throw Error(Errc::InvalidArgument, "alpha: must be > 0");
  } else if (auto* c = std::get_if<ConstantAbs>(&v_)) {
    if (!(c->c >= 0)) throw Error(Errc::InvalidArgument, "c: must be >= 0");
  } else if (auto* t = std::get_if<TabulatedAbs2>(&v_)) {
    if (t->u.size() != t->abs2.size() || t->u.size() < 2)
      throw Error(Errc::InvalidArgument, "table: needs two equal-length columns, >= 2 rows");
    if (!std::is_sorted(t->u.begin(), t->u.end()))
      throw Error(Errc::InvalidArgument, "table: u column must be increasing");
    for (double y : t->abs2)
      if (!(y >= 0)) throw Error(Errc::InvalidArgument, "table: |l|^2 must be >= 0");
  } else if (auto* p = std::get_if<PolynomialLine>(&v_)) {
    if (p->coeffs.empty()) throw Error(Errc::InvalidArgument, "coeffs: must be non-empty");
  } else if (auto* p = std::get_if<PolynomialCircle>(&v_)) {
    if (p->coeffs.empty()) throw Error(Errc::InvalidArgument, "coeffs: must be non-empty");
  }
}

double FrequencyCharacteristic::abs2(double u) const {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ZeroFilter>) {
          return 0.0;
        } else if constexpr (std::is_same_v<F, KineticDiscrete>) {
          // |alpha (e^{iu} - 1)|^2 = 2 alpha^2 (1 - cos u)
          return 2.0 * f.alpha * f.alpha * (1.0 - std::cos(u));
        } else if constexpr (std::is_same_v<F, KineticContinuous>) {
          return f.alpha * f.alpha * u * u;
        } else if constexpr (std::is_same_v<F, PolynomialLine>) {
          std::complex<double> acc{0.0, 0.0};
          double p = 1.0;
          for (const auto& c : f.coeffs) {
            p *= u;
            acc += c * p;
          }
          return std::norm(acc);
        } else if constexpr (std::is_same_v<F, PolynomialCircle>) {
          const std::complex<double> z = std::polar(1.0, u) - 1.0;
          std::complex<double> acc{0.0, 0.0};
          std::complex<double> p{1.0, 0.0};
          for (const auto& c : f.coeffs) {
            p *= z;
            acc += c * p;
          }
          return std::norm(acc);
        } else if constexpr (std::is_same_v<F, TabulatedAbs2>) {
          return std::max(0.0, pl_interp(f.u, f.abs2, u, "tabulated filter"));
        } else if constexpr (std::is_same_v<F, ConstantAbs>) {
          return f.c * f.c;
        } else {
          const double y = f.abs2(u);
          return y < 0.0 ? 0.0 : y;
        }
      },
      v_);
}

std::complex<double> FrequencyCharacteristic::value(double u) const {
  return std::visit(
      [&](const auto& f) -> std::complex<double> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ZeroFilter>) {
          return {0.0, 0.0};
        } else if constexpr (std::is_same_v<F, KineticDiscrete>) {
          return f.alpha * (std::polar(1.0, u) - 1.0);
        } else if constexpr (std::is_same_v<F, KineticContinuous>) {
          return {0.0, f.alpha * u};
        } else if constexpr (std::is_same_v<F, PolynomialLine>) {
          std::complex<double> acc{0.0, 0.0};
          double p = 1.0;
          for (const auto& c : f.coeffs) {
            p *= u;
            acc += c * p;
          }
          return acc;
        } else if constexpr (std::is_same_v<F, PolynomialCircle>) {
          const std::complex<double> z = std::polar(1.0, u) - 1.0;
          std::complex<double> acc{0.0, 0.0};
          std::complex<double> p{1.0, 0.0};
          for (const auto& c : f.coeffs) {
            p *= z;
            acc += c * p;
          }
          return acc;
        } else {
          return {std::sqrt(abs2(u)), 0.0};
        }
      },
      v_);
}

bool FrequencyCharacteristic::compatible_with(Domain d) const {
  return std::visit(
      [&](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, KineticDiscrete> || std::is_same_v<F, PolynomialCircle>)
          return d == Domain::Circle;
        else if constexpr (std::is_same_v<F, KineticContinuous> ||
                           std::is_same_v<F, PolynomialLine>)
          return d == Domain::Line;
        else
          return true;
        (void)f;
      },
      v_);
}

int FrequencyCharacteristic::abs2_zero_order_at(double u0) const {
  return std::visit(
      [&](const auto& f) -> int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, KineticDiscrete> || std::is_same_v<F, KineticContinuous>) {
          return std::abs(u0) < 1e-12 ? 2 : 0;
        } else if constexpr (std::is_same_v<F, PolynomialLine> ||
                             std::is_same_v<F, PolynomialCircle>) {
          if (std::abs(u0) >= 1e-12) return abs2(u0) > 0 ? 0 : 2;
          int k = 0;
          for (const auto& c : f.coeffs) {
            ++k;
            if (std::abs(c) > 0) return 2 * k;
          }
          return 0;
        } else if constexpr (std::is_same_v<F, CustomAbs2>) {
          return std::abs(u0) < 1e-12 ? f.zero_order_at_origin : 0;
        } else if constexpr (std::is_same_v<F, ZeroFilter> || std::is_same_v<F, ConstantAbs>) {
          return 0;
        } else {
          // tabulated: numeric probe of the local power law
          const double h = 1e-4;
          try {
            const double y1 = abs2(u0 + h), y2 = abs2(u0 + 2 * h);
            if (y1 <= 0 || y2 <= 0) return 0;
            const double p = std::log2(y2 / y1);
            return std::clamp(static_cast<int>(std::lround(p)), 0, 8);
          } catch (const Error&) {
            return 0;
          }
        }
        (void)f;
      },
      v_);
}

std::string FrequencyCharacteristic::describe() const {
  return std::visit(
      [&](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<F, ZeroFilter>)
          os << "zero";
        else if constexpr (std::is_same_v<F, KineticDiscrete>)
          os << "kinetic-discrete(alpha=" << f.alpha << ")";
        else if constexpr (std::is_same_v<F, KineticContinuous>)
          os << "kinetic-continuous(alpha=" << f.alpha << ")";
        else if constexpr (std::is_same_v<F, PolynomialLine>)
          os << "poly-line(" << f.coeffs.size() << " coeffs)";
        else if constexpr (std::is_same_v<F, PolynomialCircle>)
          os << "poly-circle(" << f.coeffs.size() << " coeffs)";
        else if constexpr (std::is_same_v<F, TabulatedAbs2>)
          os << "tabulated(" << f.u.size() << " rows)";
        else if constexpr (std::is_same_v<F, ConstantAbs>)
          os << "const(|l|=" << f.c << ")";
        else
          os << "custom";
        return os.str();
      },
      v_);
}

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::IID: return "iid";
    case ModelKind::AR1: return "ar1";
    case ModelKind::MA1: return "ma1";
    case ModelKind::PartialSums: return "partial-sums";
    case ModelKind::OU: return "ou";
    case ModelKind::FBM: return "fbm";
    case ModelKind::Levy: return "levy";
    case ModelKind::Custom: return "custom";
  }
  return "?";
}

void ProcessModel::validate() const {
  switch (kind) {
    case ModelKind::IID:
    case ModelKind::PartialSums:
    case ModelKind::Levy:
      if (!(V > 0)) throw Error(Errc::InvalidArgument, "V: must be > 0");
      break;
    case ModelKind::AR1:
    case ModelKind::MA1:
      if (!(V > 0)) throw Error(Errc::InvalidArgument, "V: must be > 0");
      if (!(std::abs(rho) < 1)) throw Error(Errc::InvalidArgument, "rho: must satisfy |rho| < 1");
      break;
    case ModelKind::OU:
      break;
    case ModelKind::FBM:
      if (!(H > 0.0 && H <= 1.0))
        throw Error(Errc::InvalidArgument, "H: must lie in (0, 1]");
      break;
    case ModelKind::Custom:
      if (!custom || !custom->ac_density)
        throw Error(Errc::InvalidArgument, "custom: missing spectral measure");
      break;
  }
}

double gamma_fn(double x) { return std::tgamma(x); }

double fbm_spectral_constant(double H) {
  return gamma_fn(2.0 * H + 1.0) * std::sin(kPi * H) / (2.0 * kPi);
}

SpectralMeasure preset_measure(const ProcessModel& model) {
  model.validate();
  SpectralMeasure m;
  switch (model.kind) {
    case ModelKind::IID: {
      const double V = model.V;
      m.domain = Domain::Circle;
      m.ac_density = [V](double) { return V / (2.0 * kPi); };
      break;
    }
    case ModelKind::AR1: {
      const double V = model.V, rho = model.rho;
      m.domain = Domain::Circle;
      m.ac_density = [V, rho](double u) {
        // V / (2 pi |1 - rho e^{-iu}|^2)
        return V / (2.0 * kPi * (1.0 - 2.0 * rho * std::cos(u) + rho * rho));
      };
      break;
    }
    case ModelKind::MA1: {
      const double V = model.V, rho = model.rho;
      m.domain = Domain::Circle;
      m.ac_density = [V, rho](double u) {
        return V * (1.0 + 2.0 * rho * std::cos(u) + rho * rho) / (2.0 * kPi);
      };
      break;
    }
    case ModelKind::PartialSums: {
      const double V = model.V;
      m.domain = Domain::Circle;
      m.finite = false;
      m.ac_density = [V](double u) {
        const double d = 2.0 * (1.0 - std::cos(u));  // |e^{iu} - 1|^2
        return V / (2.0 * kPi * d);
      };
      m.singularity_hints = {{0.0, 2.0}};
      break;
    }
    case ModelKind::OU: {
      m.domain = Domain::Line;
      m.ac_density = [](double u) { return 2.0 / (kPi * (4.0 * u * u + 1.0)); };
      break;
    }
    case ModelKind::FBM: {
      const double H = model.H;
      const double MH = fbm_spectral_constant(H);
      m.domain = Domain::Line;
      m.finite = false;
      m.ac_density = [MH, H](double u) { return MH / std::pow(std::abs(u), 2.0 * H + 1.0); };
      m.singularity_hints = {{0.0, 2.0 * H + 1.0}};
      break;
    }
    case ModelKind::Levy: {
      const double V = model.V;
      m.domain = Domain::Line;
      m.finite = false;
      m.ac_density = [V](double u) { return V / (2.0 * kPi * u * u); };
      m.singularity_hints = {{0.0, 2.0}};
      break;
    }
    case ModelKind::Custom:
      m = *model.custom;
      break;
  }
  return m;
}

IntegralResult total_mass(const SpectralMeasure& m, const QuadratureOptions& opts) {
  if (!m.finite)
    throw Error(Errc::InfiniteMass, "total_mass: measure is not finite");
  auto r = integrate(m.ac_density, m.domain, m.singularity_hints, opts);
  if (r.diverged)
    throw Error(Errc::Divergent, "total_mass: density integral diverged");
  for (const auto& a : m.atoms) r.value += a.mass;
  return r;
}

ComplexIntegralResult covariance(const SpectralMeasure& m, double t,
                                 const QuadratureOptions& opts) {
  if (!m.finite)
    throw Error(Errc::InfiniteMass, "covariance: measure is not finite");
  const auto& f = m.ac_density;
  ComplexFn env = [&f](double u) { return std::complex<double>(f(u), 0.0); };
  auto r = integrate_fourier(env, t, m.domain, m.singularity_hints, opts);
  if (r.diverged)
    throw Error(Errc::Divergent, "covariance: integral diverged");
  for (const auto& a : m.atoms) r.value += a.mass * std::polar(1.0, t * a.location);
  return r;
}

LevyCheckResult levy_check(const SpectralMeasure& m, const QuadratureOptions& opts) {
  if (m.finite)
    throw Error(Errc::InvalidArgument, "levy_check: applies to infinite measures only");
  for (const auto& a : m.atoms)
    if (std::abs(a.location) < 1e-12)
      return {false, std::numeric_limits<double>::infinity()};
  const auto& f = m.ac_density;
  RealFn g;
  std::vector<SingularityHint> hints = m.singularity_hints;
  if (m.domain == Domain::Circle) {
    g = [&f](double u) { return u * u * f(u); };
  } else {
    g = [&f](double u) { return std::min(u * u, 1.0) * f(u); };
    hints.push_back({1.0, 0.0});  // kink of min(u^2, 1)
    hints.push_back({-1.0, 0.0});
  }
  // the u^2 factor lowers the singularity exponent at the origin by 2
  for (auto& h : hints)
    if (std::abs(h.location) < 1e-12 && h.exponent > 0) h.exponent -= 2.0;
  auto v = detect_divergence(g, m.domain, hints, opts);
  if (v.diverged) return {false, v.diagnostic};
  double val = v.diagnostic;
  for (const auto& a : m.atoms) {
    const double w = m.domain == Domain::Circle ? a.location * a.location
                                                : std::min(a.location * a.location, 1.0);
    val += w * a.mass;
  }
  return {true, val};
}

}  // namespace spectra
