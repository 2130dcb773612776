#include "spectra/spectra_c.h"

#include <cstring>
#include <new>
#include <string>

#include "spectra/model_io.hpp"
#include "spectra/nonadaptive.hpp"
#include "spectra/report.hpp"

struct spectra_model {
  spectra::ModelSpec spec;
};
struct spectra_filter {
  spectra::FrequencyCharacteristic ell;
};
struct spectra_options {
  spectra::RunOptions ro;
};

namespace {

thread_local std::string g_last_error;

spectra_status map_errc(spectra::Errc c) {
  using spectra::Errc;
  switch (c) {
    case Errc::InvalidArgument: return SPECTRA_ERR_INVALID_ARGUMENT;
    case Errc::DomainMismatch: return SPECTRA_ERR_DOMAIN;
    case Errc::InfiniteMass: return SPECTRA_ERR_INFINITE_MASS;
    case Errc::Divergent: return SPECTRA_ERR_DIVERGENT;
    case Errc::Numerical: return SPECTRA_ERR_NUMERICAL;
    case Errc::Unsupported: return SPECTRA_ERR_UNSUPPORTED;
    case Errc::Io: return SPECTRA_ERR_IO;
  }
  return SPECTRA_ERR_NUMERICAL;
}

template <typename Fn>
spectra_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SPECTRA_OK;
  } catch (const spectra::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SPECTRA_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPECTRA_ERR_NUMERICAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* spectra_status_name(spectra_status status) {
  switch (status) {
    case SPECTRA_OK: return "ok";
    case SPECTRA_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SPECTRA_ERR_DOMAIN: return "domain-mismatch";
    case SPECTRA_ERR_INFINITE_MASS: return "infinite-mass";
    case SPECTRA_ERR_DIVERGENT: return "divergent";
    case SPECTRA_ERR_NUMERICAL: return "numerical";
    case SPECTRA_ERR_UNSUPPORTED: return "unsupported";
    case SPECTRA_ERR_IO: return "io";
  }
  return "unknown";
}

const char* spectra_last_error(void) { return g_last_error.c_str(); }

spectra_status spectra_model_from_json(const char* json_text, spectra_model** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new spectra_model{spectra::parse_model_json(json_text)}; });
}

void spectra_model_free(spectra_model* model) { delete model; }

int spectra_model_domain_is_line(const spectra_model* model) {
  return model && model->spec.measure.domain == spectra::Domain::Line ? 1 : 0;
}

int spectra_model_is_finite(const spectra_model* model) {
  return model && model->spec.measure.finite ? 1 : 0;
}

spectra_status spectra_filter_from_spec(const char* spec, const spectra_model* model,
                                        double alpha, spectra_filter** out) {
  if (!spec || !model || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = new spectra_filter{
        spectra::parse_filter_spec(spec, model->spec.measure.domain, alpha)};
  });
}

void spectra_filter_free(spectra_filter* filter) { delete filter; }

spectra_status spectra_options_create(spectra_options** out) {
  if (!out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = new spectra_options{}; });
}

void spectra_options_free(spectra_options* opts) { delete opts; }

spectra_status spectra_options_set(spectra_options* opts, const char* key, double value) {
  if (!opts || !key) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto& ro = opts->ro;
    const std::string k = key;
    if (k == "tol") ro.tol = value;
    else if (k == "max_panels") ro.max_panels = static_cast<int>(value);
    else if (k == "alpha") ro.alpha = value;
    else if (k == "maxdeg") ro.maxdeg = static_cast<int>(value);
    else if (k == "criteria_tol") ro.criteria_tol = value;
    else if (k == "n") ro.n = static_cast<std::uint64_t>(value);
    else if (k == "seed") ro.seed = static_cast<std::uint64_t>(value);
    else if (k == "grid") ro.grid_cells = static_cast<int>(value);
    else if (k == "window") ro.window = value;
    else if (k == "galerkin") ro.galerkin = static_cast<int>(value);
    else if (k == "s_max") ro.s_max = static_cast<int>(value);
    else if (k == "tail_tol") ro.tail_tol = value;
    else if (k == "threads") ro.threads = static_cast<int>(value);
    else throw spectra::Error(spectra::Errc::InvalidArgument, "options: unknown key '" + k + "'");
  });
}

spectra_status spectra_beta(double alpha, double* out) {
  if (!out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = spectra::beta_root(alpha); });
}

spectra_status spectra_closed_form_sigma2(const spectra_model* model, double alpha,
                                          double* out) {
  if (!model || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = spectra::closed_form_sigma2(model->spec.model, alpha); });
}

spectra_status spectra_total_mass(const spectra_model* model, const spectra_options* opts,
                                  double* value, double* abs_error) {
  if (!model || !value) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = spectra::total_mass(model->spec.measure,
                                 opts ? opts->ro.quad() : spectra::QuadratureOptions{});
    *value = r.value;
    if (abs_error) *abs_error = r.abs_error;
  });
}

spectra_status spectra_covariance(const spectra_model* model, double t,
                                  const spectra_options* opts, double* re, double* im) {
  if (!model || !re) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = spectra::covariance(model->spec.measure, t,
                                 opts ? opts->ro.quad() : spectra::QuadratureOptions{});
    *re = r.value.real();
    if (im) *im = r.value.imag();
  });
}

spectra_status spectra_levy_check(const spectra_model* model, const spectra_options* opts,
                                  int* pass, double* value) {
  if (!model || !pass) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = spectra::levy_check(model->spec.measure,
                                 opts ? opts->ro.quad() : spectra::QuadratureOptions{});
    *pass = r.pass ? 1 : 0;
    if (value) *value = r.value;
  });
}

spectra_status spectra_sigma2_nonadaptive(const spectra_model* model,
                                          const spectra_filter* filter,
                                          const spectra_options* opts, double* sigma2,
                                          double* abs_error, int* infinite) {
  if (!model || !filter || !sigma2) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto r = spectra::sigma2_nonadaptive(model->spec.measure, filter->ell,
                                         opts ? opts->ro.quad() : spectra::QuadratureOptions{});
    *sigma2 = r.sigma2;
    if (abs_error) *abs_error = r.sigma2_error_estimate;
    if (infinite) *infinite = r.infinite ? 1 : 0;
  });
}

spectra_status spectra_error_report_json(const spectra_model* model,
                                         const spectra_filter* filter,
                                         const spectra_options* opts, char** out) {
  if (!model || !filter || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = dup_string(spectra::error_report(model->spec, filter->ell,
                                            opts ? opts->ro : spectra::RunOptions{}));
  });
}

spectra_status spectra_kernel_csv(int discrete, double alpha, double tail_tol, char** out) {
  if (!out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out = dup_string(spectra::kernel_csv(discrete != 0, alpha, tail_tol)); });
}

spectra_status spectra_criteria_report_json(const spectra_model* model,
                                            const spectra_filter* filter,
                                            const spectra_options* opts, char** out) {
  if (!model || !filter || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = dup_string(spectra::criteria_report(model->spec, filter->ell,
                                               opts ? opts->ro : spectra::RunOptions{}));
  });
}

spectra_status spectra_interp_report_json(const spectra_model* model,
                                          const spectra_filter* filter,
                                          const spectra_options* opts, char** out) {
  if (!model || !filter || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = dup_string(spectra::interp_report(model->spec, filter->ell,
                                             opts ? opts->ro : spectra::RunOptions{}));
  });
}

spectra_status spectra_simulate_report_json(const char* mode, const spectra_model* model,
                                            const spectra_filter* filter,
                                            const spectra_options* opts, char** out) {
  if (!mode || !model || !filter || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = dup_string(spectra::simulate_report(mode, model->spec, filter->ell,
                                               opts ? opts->ro : spectra::RunOptions{}));
  });
}

spectra_status spectra_limit_csv(double alpha, double V, const double* deltas, size_t n_deltas,
                                 char** out) {
  if (!deltas || !out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::vector<double> d(deltas, deltas + n_deltas);
    *out = dup_string(spectra::limit_csv(alpha, V, d));
  });
}

spectra_status spectra_verify_report_json(const spectra_options* opts, int* failures,
                                          char** out) {
  if (!out) {
    g_last_error = "null argument";
    return SPECTRA_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto v = spectra::verify_report(opts ? opts->ro : spectra::RunOptions{});
    *out = dup_string(v.json);
    if (failures) *failures = v.failures;
  });
}

void spectra_string_free(char* s) { delete[] s; }

}  // extern "C"
