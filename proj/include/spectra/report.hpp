#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/model_io.hpp"

namespace spectra {

/// All numeric output is printed with 12 significant digits so reports are
/// stable golden-file material.
std::string fmt_g12(double x);

/// Minimal ordered JSON object writer (deterministic key order, non-finite
/// numbers become null).
class JsonWriter {
public:
  JsonWriter& field(const std::string& key, double v);
  JsonWriter& field(const std::string& key, const std::string& v);
  JsonWriter& field(const std::string& key, const char* v);
  JsonWriter& field(const std::string& key, bool v);
  JsonWriter& field(const std::string& key, std::int64_t v);
  JsonWriter& field(const std::string& key, std::uint64_t v);
  JsonWriter& field_null(const std::string& key);
  JsonWriter& field_raw(const std::string& key, const std::string& json_text);
  std::string str() const;

private:
  std::string body_;
};

struct RunOptions {
  double tol = 1e-10;
  int max_panels = 1000000;
  double alpha = 1.0;
  int maxdeg = 128;
  double criteria_tol = 1e-10;
  std::uint64_t n = 1000000;
  std::uint64_t seed = 12345;
  int grid_cells = 512;
  double window = 5000.0;
  int galerkin = 0;  // 0: skip the oracle
  int s_max = 10;
  double tail_tol = 1e-8;
  int threads = 1;

  QuadratureOptions quad() const { return {tol, max_panels, 1e12}; }
};

std::string error_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                         const RunOptions& ro);
std::string kernel_csv(bool discrete, double alpha, double tail_tol);
std::string criteria_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                            const RunOptions& ro);
std::string interp_report(const ModelSpec& spec, const FrequencyCharacteristic& ell,
                          const RunOptions& ro);
std::string simulate_report(const std::string& mode, const ModelSpec& spec,
                            const FrequencyCharacteristic& ell, const RunOptions& ro);
std::string limit_csv(double alpha, double V, const std::vector<double>& deltas);

struct VerifyOutcome {
  std::string json;
  int failures = 0;
};
VerifyOutcome verify_report(const RunOptions& ro);

}  // namespace spectra
