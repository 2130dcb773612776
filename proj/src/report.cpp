#include "spectra/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spectra/criteria.hpp"
#include "spectra/interpolation.hpp"
#include "spectra/montecarlo.hpp"
#include "spectra/nonadaptive.hpp"
#include "spectra/variational.hpp"

namespace spectra {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::optional<double> filter_alpha(const FrequencyCharacteristic& ell) {
  if (const auto* k = std::get_if<KineticDiscrete>(&ell.variant())) return k->alpha;
  if (const auto* k = std::get_if<KineticContinuous>(&ell.variant())) return k->alpha;
  return std::nullopt;
}

}  // namespace

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

JsonWriter& JsonWriter::field(const std::string& key, double v) {
  if (!std::isfinite(v)) return field_null(key);
  return field_raw(key, fmt_g12(v));
}
JsonWriter& JsonWriter::field(const std::string& key, const std::string& v) {
  return field_raw(key, "\"" + json_escape(v) + "\"");
}
JsonWriter& JsonWriter::field(const std::string& key, const char* v) {
  return field(key, std::string(v));
}
JsonWriter& JsonWriter::field(const std::string& key, bool v) {
  return field_raw(key, v ? "true" : "false");
}
JsonWriter& JsonWriter::field(const std::string& key, std::int64_t v) {
  return field_raw(key, std::to_string(v));
}
JsonWriter& JsonWriter::field(const std::string& key, std::uint64_t v) {
  return field_raw(key, std::to_string(v));
}
JsonWriter& JsonWriter::field_null(const std::string& key) { return field_raw(key, "null"); }
JsonWriter& JsonWriter::field_raw(const std::string& key, const std::string& json_text) {
  if (!body_.empty()) body_ += ",";
  body_ += "\"" + json_escape(key) + "\":" + json_text;
  return *this;
}
std::string JsonWriter::str() const { return "{" + body_ + "}"; }

std::string error_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                         const RunOptions& ro) {
  auto rep = sigma2_nonadaptive(spec.measure, ell, ro.quad());
  JsonWriter w;
  w.field("model", model_kind_name(spec.model.kind));
  w.field("filter", ell.describe());
  w.field("sigma2", rep.sigma2);
  w.field("sigma2_error_estimate", rep.sigma2_error_estimate);
  w.field("infinite", rep.infinite);
  const auto a = filter_alpha(ell);
  if (a && spec.model.kind != ModelKind::Custom) {
    w.field("alpha", *a);
    const double cf = closed_form_sigma2(spec.model, *a);
    w.field("sigma2_closed_form", cf);
    w.field("abs_diff", std::abs(rep.sigma2 - cf));
  } else {
    w.field_null("sigma2_closed_form");
    w.field_null("abs_diff");
  }
  if (spec.measure.finite) w.field("cross_check", rep.cross_check);
  return w.str();
}

std::string kernel_csv(bool discrete, double alpha, double tail_tol) {
  std::ostringstream os;
  if (discrete) {
    auto k = discrete_kernel(alpha, tail_tol);
    os << "k,weight\n";
    for (int i = -k.truncation_K; i <= k.truncation_K; ++i)
      os << i << "," << fmt_g12(k.weights[static_cast<size_t>(std::abs(i))]) << "\n";
  } else {
    auto k = continuous_kernel(alpha);
    const double T = alpha * std::log(1.0 / std::max(tail_tol, 1e-300));
    const int n = 200;
    os << "tau,weight\n";
    for (int i = 0; i <= n; ++i) {
      const double tau = -T + 2.0 * T * i / n;
      os << fmt_g12(tau) << "," << fmt_g12(k(tau)) << "\n";
    }
  }
  return os.str();
}

std::string criteria_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                            const RunOptions& ro) {
  const auto q = ro.quad();
  auto verdict = no_loss_horizon(spec.measure, ell, ro.criteria_tol, ro.maxdeg, q);
  JsonWriter w;
  w.field("model", model_kind_name(spec.model.kind));
  w.field("filter", ell.describe());
  w.field("log_integral", verdict.log_integral);
  w.field("log_diverged", verdict.log_diverged);
  {
    JsonWriter h;
    h.field("kind", horizon_kind_name(verdict.kind));
    if (verdict.kind == HorizonKind::FiniteDegree || verdict.t >= 0)
      h.field("t", static_cast<std::int64_t>(verdict.t));
    else
      h.field_null("t");
    h.field("approximate", verdict.approximate);
    h.field("note", verdict.note);
    w.field_raw("horizon_verdict", h.str());
  }
  try {
    w.field("regularity_limit", regularity_limit(spec.measure, ell, q));
  } catch (const Error& e) {
    w.field_null("regularity_limit");
    w.field("regularity_limit_error", e.what());
  }
  return w.str();
}

std::string interp_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                          const RunOptions& ro) {
  const auto q = ro.quad();
  auto rep = sigma2_interpolation(spec.measure, ell, q);
  JsonWriter w;
  w.field("model", model_kind_name(spec.model.kind));
  w.field("filter", ell.describe());
  w.field("sigma2_int", rep.sigma2_int);
  if (rep.c) w.field("c", *rep.c);
  else w.field_null("c");
  w.field("precise", rep.precise);
  w.field("kolmogorov_integral", rep.kolmogorov.diverged
                                     ? std::numeric_limits<double>::infinity()
                                     : rep.kolmogorov.value);
  w.field("kolmogorov_diverged", rep.kolmogorov.diverged);
  if (ro.galerkin > 0) {
    const double g = galerkin_oracle(spec.measure, ell, ro.galerkin, q);
    w.field("galerkin_value", g);
    w.field("galerkin_gap", g - rep.sigma2_int);
  }
  if (!rep.precise) {
    auto res = interpolation_residuals(spec.measure, ell, rep, ro.s_max, q);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    w.field("residual_max", worst);
  } else {
    w.field_null("residual_max");
  }
  return w.str();
}

std::string simulate_report(const std::string& mode, const ModelSpec& spec,
                            const FrequencyCharacteristic& ell, const RunOptions& ro) {
  JsonWriter w;
  w.field("mode", mode);
  w.field("model", model_kind_name(spec.model.kind));
  w.field("filter", ell.describe());
  w.field("n", ro.n);
  w.field("seed", ro.seed);
  MonteCarloEstimate est;
  if (mode == "spectral") {
    auto psi_opt = optimal_psi(ell);
    ComplexFn psi = [e = psi_opt.eval](double u) { return std::complex<double>(e(u), 0.0); };
    est = estimate_functional(spec.measure, ell, psi, ro.n, ro.seed, ro.grid_cells, ro.window,
                              ro.threads, ro.quad());
    w.field("grid", static_cast<std::int64_t>(ro.grid_cells));
    if (spec.measure.domain == Domain::Line) w.field("window", ro.window);
  } else if (mode == "time") {
    const auto a = filter_alpha(ell);
    if (!a)
      throw Error(Errc::InvalidArgument, "simulate: time mode needs a kinetic filter");
    est = time_domain_experiment(spec.model, *a, ro.n, ro.tail_tol, ro.seed);
    w.field("blocks", est.n);
  } else {
    throw Error(Errc::InvalidArgument, "simulate: mode must be 'spectral' or 'time'");
  }
  w.field("estimate", est.mean);
  w.field("std_error", est.std_error);
  const double theory = std::isfinite(est.theory) ? est.theory : est.theory_grid;
  w.field("theory", theory);
  w.field("theory_grid", est.theory_grid);
  w.field("z_score", est.std_error > 0 ? (est.mean - theory) / est.std_error : 0.0);
  w.field("grid_bias_bound", est.grid_bias_bound);
  w.field("threads", static_cast<std::int64_t>(ro.threads));
  return w.str();
}

std::string limit_csv(double alpha, double V, const std::vector<double>& deltas) {
  auto rows = discrete_to_continuous_limit(alpha, deltas, V);
  std::ostringstream os;
  os << "delta,alpha_delta,beta_delta,beta_pow_alpha_delta,abs_diff_to_e,sigma2_delta,"
        "sigma2_limit\n";
  const double e = 2.718281828459045235360287471352662498;
  for (const auto& r : rows)
    os << fmt_g12(r.delta) << "," << fmt_g12(r.alpha_delta) << "," << fmt_g12(r.beta_delta)
       << "," << fmt_g12(r.beta_pow_alpha) << "," << fmt_g12(std::abs(r.beta_pow_alpha - e))
       << "," << fmt_g12(r.sigma2_delta) << "," << fmt_g12(r.sigma2_limit) << "\n";
  return os.str();
}

VerifyOutcome verify_report(const RunOptions& ro) {
  const auto q = ro.quad();
  struct Check {
    std::string name;
    bool pass;
    double value;
    double bound;
  };
  std::vector<Check> checks;
  auto add = [&checks](const std::string& name, double value, double bound) {
    checks.push_back({name, value <= bound, value, bound});
  };

  const std::vector<ProcessModel> presets = {
      {ModelKind::IID, 1.0},         {ModelKind::AR1, 1.0, -0.5}, {ModelKind::AR1, 1.0, 0.5},
      {ModelKind::AR1, 1.0, 0.9},    {ModelKind::MA1, 1.0, 0.4},  {ModelKind::PartialSums, 1.0},
      {ModelKind::OU},               {ModelKind::FBM, 1.0, 0.0, 0.25},
      {ModelKind::FBM, 1.0, 0.0, 0.5}, {ModelKind::FBM, 1.0, 0.0, 0.75},
      {ModelKind::Levy, 1.0}};

  // closed forms against quadrature
  {
    double worst = 0.0;
    for (const auto& model : presets) {
      auto measure = preset_measure(model);
      for (double a : {0.1, 1.0, 5.0}) {
        FrequencyCharacteristic ell =
            measure.domain == Domain::Circle
                ? FrequencyCharacteristic(KineticDiscrete{a})
                : FrequencyCharacteristic(KineticContinuous{a});
        const double got = sigma2_nonadaptive(measure, ell, q).sigma2;
        const double want = closed_form_sigma2(model, a);
        worst = std::max(worst, std::abs(got - want) / want);
      }
    }
    add("closed-form-vs-quadrature-rel", worst, 1e-6);
  }

  // kernel weights resum the optimal multiplier
  {
    auto k = discrete_kernel(1.0, 1e-10);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double u = -kPi + 2.0 * kPi * i / 256;
      double s = k.weights[0];
      for (int j = 1; j <= k.truncation_K; ++j)
        s += 2.0 * k.weights[static_cast<size_t>(j)] * std::cos(j * u);
      const double psi = 1.0 / (1.0 + 2.0 * (1.0 - std::cos(u)));
      worst = std::max(worst, std::abs(s - psi));
    }
    add("kernel-multiplier-identity", worst, 1e-9);
  }

  // first-variation residuals at the optimum
  {
    double worst = 0.0;
    for (const auto& model : presets) {
      auto measure = preset_measure(model);
      if (!measure.finite) continue;
      FrequencyCharacteristic ell =
          measure.domain == Domain::Circle
              ? FrequencyCharacteristic(KineticDiscrete{1.0})
              : FrequencyCharacteristic(KineticContinuous{1.0});
      auto psi_opt = optimal_psi(ell);
      MultiplierFunction psi{[e = psi_opt.eval](double u) {
        return std::complex<double>(e(u), 0.0);
      }};
      for (int s = -10; s <= 10; ++s) {
        MultiplierFunction h{[s](double u) { return std::polar(1.0, s * u); }};
        worst = std::max(worst, std::abs(euler_residual(measure, ell, psi, h, q)));
      }
    }
    add("euler-residual-max", worst, 1e-8);
  }

  // second-order expansion around the optimum
  {
    double worst = 0.0;
    for (const auto& model : {ProcessModel{ModelKind::OU}, ProcessModel{ModelKind::AR1, 1.0, 0.5}}) {
      auto measure = preset_measure(model);
      FrequencyCharacteristic ell =
          measure.domain == Domain::Circle
              ? FrequencyCharacteristic(KineticDiscrete{1.0})
              : FrequencyCharacteristic(KineticContinuous{1.0});
      auto psi_opt = optimal_psi(ell);
      MultiplierFunction psi{[e = psi_opt.eval](double u) {
        return std::complex<double>(e(u), 0.0);
      }};
      auto base = objective(measure, ell, psi, q);
      for (int t = 0; t < 10; ++t) {
        auto h = random_test_function(measure.domain, 16, 20250809, static_cast<std::uint64_t>(t));
        auto qf = quadratic_form(measure, ell, h, q);
        for (double eps : {0.1, 1e-3}) {
          MultiplierFunction cand{[&psi, &h, eps](double u) {
            return psi.eval(u) + eps * h.eval(u);
          }};
          auto g = objective(measure, ell, cand, q);
          const double diff = std::abs((g.value - base.value) - eps * eps * qf.value);
          const double tol = 1e-8 + 8.0 * (g.abs_error + base.abs_error + qf.abs_error);
          worst = std::max(worst, diff - tol);
        }
      }
    }
    add("quadratic-expansion-excess", std::max(0.0, worst), 0.0);
  }

  // the two error routes are one identity
  {
    double worst = 0.0;
    for (const auto& model : presets) {
      auto measure = preset_measure(model);
      if (!measure.finite) continue;
      FrequencyCharacteristic ell =
          measure.domain == Domain::Circle
              ? FrequencyCharacteristic(KineticDiscrete{1.0})
              : FrequencyCharacteristic(KineticContinuous{1.0});
      auto rep = sigma2_nonadaptive(measure, ell, q);
      worst = std::max(worst, std::abs(rep.sigma2 - rep.cross_check));
    }
    add("mass-splitting-identity", worst, 1e-9);
  }

  // gap reconstruction without a penalty: classical values
  {
    ProcessModel iid{ModelKind::IID, 1.0};
    auto m1 = preset_measure(iid);
    auto r1 = sigma2_interpolation(m1, FrequencyCharacteristic(ZeroFilter{}), q);
    double worst = std::abs(r1.sigma2_int - 1.0);
    ProcessModel ar{ModelKind::AR1, 1.0, 0.5};
    auto m2 = preset_measure(ar);
    auto r2 = sigma2_interpolation(m2, FrequencyCharacteristic(ZeroFilter{}), q);
    worst = std::max(worst, std::abs(r2.sigma2_int - 1.0 / 1.25));
    add("gap-classical-values", worst, 1e-8);
  }

  // random perturbations cannot beat the optimum
  {
    auto measure = preset_measure(ProcessModel{ModelKind::OU});
    FrequencyCharacteristic ell{KineticContinuous{1.0}};
    auto psi_opt = optimal_psi(ell);
    MultiplierFunction psi{[e = psi_opt.eval](double u) {
      return std::complex<double>(e(u), 0.0);
    }};
    const double eps[] = {0.1, -0.1, 1e-3, -1e-3};
    auto res = perturbation_check(measure, ell, psi, 20, std::span<const double>(eps, 4),
                                  20250809, q);
    add("perturbation-drop", res.all_pass ? 0.0 : res.worst_violation, 0.0);
  }

  // defining quadratic of the kernel ratio
  {
    double worst = 0.0;
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0, 25.0}) {
      const double b = beta_root(a);
      worst = std::max(worst,
                       std::abs(b * b - (2.0 * a * a + 1.0) / (a * a) * b + 1.0));
    }
    add("beta-quadratic-residual", worst, 1e-12);
  }

  std::ostringstream arr;
  int failures = 0;
  arr << "[";
  for (size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    if (!c.pass) ++failures;
    JsonWriter w;
    w.field("name", c.name);
    w.field("pass", c.pass);
    w.field("value", c.value);
    w.field("bound", c.bound);
    arr << (i ? "," : "") << w.str();
  }
  arr << "]";
  JsonWriter top;
  top.field_raw("checks", arr.str());
  top.field("failures", static_cast<std::int64_t>(failures));
  top.field("all_pass", failures == 0);
  VerifyOutcome out;
  out.json = top.str();
  out.failures = failures;
  return out;
}

}  // namespace spectra
