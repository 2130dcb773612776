#pragma once

#include <string>

#include "spectra/spectral_model.hpp"

namespace spectra {

struct ModelSpec {
  ProcessModel model;
  SpectralMeasure measure;
};

/// Parses a model configuration document, e.g.
///   {"model": "ar1", "V": 1.0, "rho": 0.5}
///   {"model": "custom", "density_csv": "f.csv", "domain": "circle"}
/// Optional keys: atoms [{"u":..,"mass":..}], hints [{"u":..,"exponent":..}],
/// finite (custom only). Unknown keys are rejected.
ModelSpec parse_model_json(const std::string& json_text);

/// Loads a tabulated density: CSV with a header row and columns u, f_a(u).
SpectralMeasure load_density_csv(const std::string& path, Domain domain);

/// Filter specification strings: "zero", "kinetic" / "kinetic:<alpha>"
/// (variant picked by the domain), "const:<c>", "poly:<c1,c2,...>",
/// "table:<csv path>" (columns u, |l(u)|^2). `alpha` feeds the bare
/// "kinetic" form.
FrequencyCharacteristic parse_filter_spec(const std::string& spec, Domain domain, double alpha);

}  // namespace spectra
