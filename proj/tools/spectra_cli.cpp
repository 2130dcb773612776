// Command-line front end. All numerics go through the shared C interface in
// spectra/spectra_c.h; this file only parses flags/config and prints reports.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectra/spectra_c.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerifyFailed = 3;

int exit_code_for(spectra_status s) {
  switch (s) {
    case SPECTRA_OK: return kExitOk;
    case SPECTRA_ERR_DIVERGENT:
    case SPECTRA_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitInput;
  }
}

[[noreturn]] void fail(spectra_status s) {
  std::cerr << "error (" << spectra_status_name(s) << "): " << spectra_last_error() << "\n";
  std::exit(exit_code_for(s));
}

void check(spectra_status s) {
  if (s != SPECTRA_OK) fail(s);
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { spectra_string_free(p); }
};

struct ModelHandle {
  spectra_model* p = nullptr;
  ~ModelHandle() { spectra_model_free(p); }
};
struct FilterHandle {
  spectra_filter* p = nullptr;
  ~FilterHandle() { spectra_filter_free(p); }
};
struct OptionsHandle {
  spectra_options* p = nullptr;
  OptionsHandle() { check(spectra_options_create(&p)); }
  ~OptionsHandle() { spectra_options_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal energy-penalized approximation of stationary processes"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config merged under explicit flags");

  std::string model = "iid", filter = "kinetic", density_csv, domain = "circle";
  double V = 1.0, rho = 0.5, H = 0.5, alpha = 1.0;
  double tol = 1e-10, criteria_tol = 1e-10, window = 5000.0, tail_tol = 1e-8, limit_V = 1.0;
  std::uint64_t n = 1000000, seed = 12345;
  int max_panels = 1000000, maxdeg = 128, grid = 512, galerkin = 0, s_max = 10, threads = 1;
  std::string mode = "spectral", kernel_time = "discrete", deltas_arg;

  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--model", model, "iid|ar1|ma1|partial-sums|ou|fbm|levy|custom");
    cmd->add_option("--V", V, "variance scale");
    cmd->add_option("--rho", rho, "ar1/ma1 coefficient, |rho| < 1");
    cmd->add_option("--H", H, "fbm Hurst index in (0, 1]");
    cmd->add_option("--density-csv", density_csv, "custom model density (columns u, f)");
    cmd->add_option("--domain", domain, "custom model domain: circle|line");
  };
  auto add_filter_flags = [&](CLI::App* cmd) {
    cmd->add_option("--filter", filter, "zero|kinetic[:a]|const:c|poly:c1,..|table:path");
    cmd->add_option("--alpha", alpha, "kinetic filter scale");
  };
  auto add_numeric_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "quadrature tolerance");
    cmd->add_option("--max-panels", max_panels, "quadrature panel cap");
  };

  CLI::App* c_error = app.add_subcommand("error", "optimal approximation error");
  add_model_flags(c_error);
  add_filter_flags(c_error);
  add_numeric_flags(c_error);

  CLI::App* c_kernel = app.add_subcommand("kernel", "optimal moving-average weights (CSV)");
  c_kernel->add_option("--alpha", alpha, "kinetic filter scale");
  c_kernel->add_option("--time", kernel_time, "discrete|continuous");
  c_kernel->add_option("--tail-tol", tail_tol, "truncation tail bound");

  CLI::App* c_criteria = app.add_subcommand("criteria", "no-loss horizon and regularity limit");
  add_model_flags(c_criteria);
  add_filter_flags(c_criteria);
  add_numeric_flags(c_criteria);
  c_criteria->add_option("--maxdeg", maxdeg, "largest Fourier degree examined");
  c_criteria->add_option("--criteria-tol", criteria_tol, "tail-mass tolerance");

  CLI::App* c_interp = app.add_subcommand("interp", "one-point gap reconstruction error");
  add_model_flags(c_interp);
  add_filter_flags(c_interp);
  add_numeric_flags(c_interp);
  c_interp->add_option("--galerkin", galerkin, "run the brute-force oracle at this order");
  c_interp->add_option("--s-max", s_max, "residual check order");

  CLI::App* c_sim = app.add_subcommand("simulate", "Monte Carlo verification");
  add_model_flags(c_sim);
  add_filter_flags(c_sim);
  add_numeric_flags(c_sim);
  c_sim->add_option("--mode", mode, "spectral|time");
  c_sim->add_option("--n", n, "sample count / path steps");
  c_sim->add_option("--seed", seed, "rng seed (default env SPECTRA_SEED or 12345)");
  c_sim->add_option("--grid", grid, "spectral synthesis cells");
  c_sim->add_option("--window", window, "frequency window (line domain)");
  c_sim->add_option("--threads", threads, "worker threads (deterministic result)");
  c_sim->add_option("--tail-tol", tail_tol, "kernel truncation (time mode)");

  CLI::App* c_verify = app.add_subcommand("verify", "run the cross-module invariant battery");
  add_numeric_flags(c_verify);

  CLI::App* c_limit = app.add_subcommand("limit", "discrete-to-continuous refinement (CSV)");
  c_limit->add_option("--alpha", alpha, "kinetic filter scale");
  c_limit->add_option("--V", limit_V, "variance scale");
  c_limit->add_option("--deltas", deltas_arg, "comma list of step sizes (default 2^-4..2^-14)");

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();

  json cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error (io): cannot open config " << config_path << "\n";
      return kExitInput;
    }
    try {
      in >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "error (io): bad config: " << e.what() << "\n";
      return kExitInput;
    }
    if (!cfg.is_object()) {
      std::cerr << "error (io): config must be a JSON object\n";
      return kExitInput;
    }
  } else {
    cfg = json::object();
  }

  // config fills anything the command line left at its default
  auto flag_given = [&](const char* name) {
    return cmd->count(name) > 0 || app.count(name) > 0;
  };
  auto overlay_num = [&](const char* flag, const char* key, auto& var) {
    if (!flag_given(flag) && cfg.contains(key) && cfg[key].is_number())
      var = cfg[key].get<std::decay_t<decltype(var)>>();
  };
  auto overlay_str = [&](const char* flag, const char* key, std::string& var) {
    if (!flag_given(flag) && cfg.contains(key) && cfg[key].is_string())
      var = cfg[key].get<std::string>();
  };
  overlay_str("--model", "model", model);
  overlay_str("--filter", "filter", filter);
  overlay_str("--density-csv", "density_csv", density_csv);
  overlay_str("--domain", "domain", domain);
  overlay_str("--mode", "mode", mode);
  overlay_str("--time", "time", kernel_time);
  overlay_str("--deltas", "deltas", deltas_arg);
  overlay_num("--V", "V", V);
  overlay_num("--rho", "rho", rho);
  overlay_num("--H", "H", H);
  overlay_num("--alpha", "alpha", alpha);
  overlay_num("--tol", "tol", tol);
  overlay_num("--max-panels", "max_panels", max_panels);
  overlay_num("--maxdeg", "maxdeg", maxdeg);
  overlay_num("--criteria-tol", "criteria_tol", criteria_tol);
  overlay_num("--n", "n", n);
  overlay_num("--grid", "grid", grid);
  overlay_num("--window", "window", window);
  overlay_num("--galerkin", "galerkin", galerkin);
  overlay_num("--s-max", "s_max", s_max);
  overlay_num("--tail-tol", "tail_tol", tail_tol);
  overlay_num("--threads", "threads", threads);
  if (!flag_given("--seed")) {
    if (cfg.contains("seed") && cfg["seed"].is_number()) {
      seed = cfg["seed"].get<std::uint64_t>();
    } else if (const char* env = std::getenv("SPECTRA_SEED")) {
      try {
        seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error (invalid-argument): SPECTRA_SEED is not an integer\n";
        return kExitInput;
      }
    }
  }

  OptionsHandle opts;
  check(spectra_options_set(opts.p, "tol", tol));
  check(spectra_options_set(opts.p, "max_panels", static_cast<double>(max_panels)));
  check(spectra_options_set(opts.p, "alpha", alpha));
  check(spectra_options_set(opts.p, "maxdeg", static_cast<double>(maxdeg)));
  check(spectra_options_set(opts.p, "criteria_tol", criteria_tol));
  check(spectra_options_set(opts.p, "n", static_cast<double>(n)));
  check(spectra_options_set(opts.p, "seed", static_cast<double>(seed)));
  check(spectra_options_set(opts.p, "grid", static_cast<double>(grid)));
  check(spectra_options_set(opts.p, "window", window));
  check(spectra_options_set(opts.p, "galerkin", static_cast<double>(galerkin)));
  check(spectra_options_set(opts.p, "s_max", static_cast<double>(s_max)));
  check(spectra_options_set(opts.p, "tail_tol", tail_tol));
  check(spectra_options_set(opts.p, "threads", static_cast<double>(threads)));

  auto make_model = [&]() {
    json j;
    for (const char* key :
         {"model", "V", "rho", "H", "density_csv", "domain", "atoms", "hints", "finite"})
      if (cfg.contains(key)) j[key] = cfg[key];
    j["model"] = model;
    if (flag_given("--V") || !j.contains("V")) j["V"] = V;
    if (flag_given("--rho") || !j.contains("rho")) j["rho"] = rho;
    if (flag_given("--H") || !j.contains("H")) j["H"] = H;
    if (model != "custom") {
      j.erase("density_csv");
      j.erase("domain");
      j.erase("finite");
    } else {
      if (flag_given("--density-csv")) j["density_csv"] = density_csv;
      if (flag_given("--domain") || !j.contains("domain")) j["domain"] = domain;
    }
    ModelHandle h;
    check(spectra_model_from_json(j.dump().c_str(), &h.p));
    return h;
  };
  auto make_filter = [&](const ModelHandle& m) {
    FilterHandle h;
    check(spectra_filter_from_spec(filter.c_str(), m.p, alpha, &h.p));
    return h;
  };

  if (cmd == c_error) {
    ModelHandle m = make_model();
    FilterHandle f = make_filter(m);
    OwnedString out;
    check(spectra_error_report_json(m.p, f.p, opts.p, &out.p));
    std::cout << out.p << "\n";
    return kExitOk;
  }
  if (cmd == c_kernel) {
    if (kernel_time != "discrete" && kernel_time != "continuous") {
      std::cerr << "error (invalid-argument): --time must be discrete or continuous\n";
      return kExitInput;
    }
    OwnedString out;
    check(spectra_kernel_csv(kernel_time == "discrete" ? 1 : 0, alpha, tail_tol, &out.p));
    std::cout << out.p;
    return kExitOk;
  }
  if (cmd == c_criteria) {
    ModelHandle m = make_model();
    FilterHandle f = make_filter(m);
    OwnedString out;
    check(spectra_criteria_report_json(m.p, f.p, opts.p, &out.p));
    std::cout << out.p << "\n";
    return kExitOk;
  }
  if (cmd == c_interp) {
    ModelHandle m = make_model();
    FilterHandle f = make_filter(m);
    OwnedString out;
    check(spectra_interp_report_json(m.p, f.p, opts.p, &out.p));
    std::cout << out.p << "\n";
    return kExitOk;
  }
  if (cmd == c_sim) {
    ModelHandle m = make_model();
    FilterHandle f = make_filter(m);
    OwnedString out;
    check(spectra_simulate_report_json(mode.c_str(), m.p, f.p, opts.p, &out.p));
    std::cout << out.p << "\n";
    return kExitOk;
  }
  if (cmd == c_verify) {
    OwnedString out;
    int failures = 0;
    check(spectra_verify_report_json(opts.p, &failures, &out.p));
    std::cout << out.p << "\n";
    if (failures > 0) {
      std::cerr << failures << " verification check(s) failed\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  }
  if (cmd == c_limit) {
    std::vector<double> deltas;
    if (!deltas_arg.empty()) {
      std::istringstream ss(deltas_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          deltas.push_back(std::stod(tok));
        } catch (const std::exception&) {
          std::cerr << "error (invalid-argument): --deltas: bad number '" << tok << "'\n";
          return kExitInput;
        }
      }
    } else {
      for (int k = 4; k <= 14; ++k) deltas.push_back(std::pow(0.5, k));
    }
    OwnedString out;
    check(spectra_limit_csv(alpha, limit_V, deltas.data(), deltas.size(), &out.p));
    std::cout << out.p;
    return kExitOk;
  }
  return kExitInput;
}
