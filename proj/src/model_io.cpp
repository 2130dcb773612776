#include "spectra/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace spectra {
namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw Error(Errc::InvalidArgument, std::string(key) + ": missing or not a number");
  return j[key].get<double>();
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path,
                                                           const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, std::string(what) + ": cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error(Errc::Io, std::string(what) + ": empty file " + path);
  // header row is mandatory
  std::vector<std::pair<double, double>> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0, b = 0;
    if (!(ls >> a >> b)) {
      std::ostringstream os;
      os << what << ": bad row " << lineno << " in " << path;
      throw Error(Errc::Io, os.str());
    }
    rows.emplace_back(a, b);
  }
  if (rows.size() < 2)
    throw Error(Errc::Io, std::string(what) + ": need at least two data rows in " + path);
  if (!std::is_sorted(rows.begin(), rows.end(),
                      [](auto& x, auto& y) { return x.first < y.first; }))
    throw Error(Errc::Io, std::string(what) + ": u column must be increasing in " + path);
  return rows;
}

}  // namespace

SpectralMeasure load_density_csv(const std::string& path, Domain domain) {
  auto rows = read_two_column_csv(path, "density csv");
  auto grid = std::make_shared<std::vector<double>>();
  auto vals = std::make_shared<std::vector<double>>();
  for (const auto& [u, f] : rows) {
    if (f < 0) throw Error(Errc::Io, "density csv: negative density value in " + path);
    grid->push_back(u);
    vals->push_back(f);
  }
  SpectralMeasure m;
  m.domain = domain;
  m.ac_density = [grid, vals, path](double u) {
    if (u < grid->front() || u > grid->back())
      throw Error(Errc::InvalidArgument,
                  "tabulated density: query outside the grid loaded from " + path);
    auto it = std::upper_bound(grid->begin(), grid->end(), u);
    if (it == grid->begin()) return vals->front();
    if (it == grid->end()) return vals->back();
    const size_t i = static_cast<size_t>(it - grid->begin());
    const double w = (u - (*grid)[i - 1]) / ((*grid)[i] - (*grid)[i - 1]);
    return (*vals)[i - 1] * (1.0 - w) + (*vals)[i] * w;
  };
  return m;
}

ModelSpec parse_model_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Io, std::string("model json: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::Io, "model json: expected an object");

  static const std::set<std::string> known{"model", "V",     "rho",   "H",
                                           "density_csv", "domain", "atoms", "hints",
                                           "finite"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw Error(Errc::InvalidArgument, "model json: unknown key '" + it.key() + "'");
  if (!j.contains("model") || !j["model"].is_string())
    throw Error(Errc::InvalidArgument, "model: missing or not a string");

  const std::string name = j["model"].get<std::string>();
  ModelSpec spec;
  ProcessModel& m = spec.model;
  if (name == "iid") m.kind = ModelKind::IID;
  else if (name == "ar1") m.kind = ModelKind::AR1;
  else if (name == "ma1") m.kind = ModelKind::MA1;
  else if (name == "partial-sums" || name == "partial_sums") m.kind = ModelKind::PartialSums;
  else if (name == "ou") m.kind = ModelKind::OU;
  else if (name == "fbm") m.kind = ModelKind::FBM;
  else if (name == "levy") m.kind = ModelKind::Levy;
  else if (name == "custom") m.kind = ModelKind::Custom;
  else throw Error(Errc::InvalidArgument, "model: unknown model '" + name + "'");

  if (j.contains("V")) m.V = require_number(j, "V");
  if (j.contains("rho")) m.rho = require_number(j, "rho");
  if (j.contains("H")) m.H = require_number(j, "H");

  if (m.kind == ModelKind::Custom) {
    if (!j.contains("density_csv") || !j["density_csv"].is_string())
      throw Error(Errc::InvalidArgument, "density_csv: required for custom models");
    Domain d = Domain::Circle;
    if (j.contains("domain")) {
      const std::string ds = j["domain"].get<std::string>();
      if (ds == "circle") d = Domain::Circle;
      else if (ds == "line") d = Domain::Line;
      else throw Error(Errc::InvalidArgument, "domain: must be 'circle' or 'line'");
    }
    SpectralMeasure meas = load_density_csv(j["density_csv"].get<std::string>(), d);
    if (j.contains("finite")) {
      if (!j["finite"].is_boolean())
        throw Error(Errc::InvalidArgument, "finite: must be a boolean");
      meas.finite = j["finite"].get<bool>();
    }
    m.custom = std::move(meas);
  } else if (j.contains("density_csv") || j.contains("domain") || j.contains("finite")) {
    throw Error(Errc::InvalidArgument,
                "density_csv/domain/finite: only valid for custom models");
  }

  m.validate();
  spec.measure = preset_measure(m);

  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw Error(Errc::InvalidArgument, "atoms: must be an array");
    for (const auto& a : j["atoms"]) {
      if (!a.is_object() || !a.contains("u") || !a.contains("mass"))
        throw Error(Errc::InvalidArgument, "atoms: entries need fields u and mass");
      const double u = a["u"].get<double>();
      const double mass = a["mass"].get<double>();
      if (!(mass >= 0)) throw Error(Errc::InvalidArgument, "atoms: mass must be >= 0");
      for (const auto& prev : spec.measure.atoms)
        if (prev.location == u)
          throw Error(Errc::InvalidArgument, "atoms: duplicate location");
      spec.measure.atoms.push_back({u, mass});
    }
  }
  if (j.contains("hints")) {
    if (!j["hints"].is_array()) throw Error(Errc::InvalidArgument, "hints: must be an array");
    for (const auto& h : j["hints"]) {
      if (!h.is_object() || !h.contains("u") || !h.contains("exponent"))
        throw Error(Errc::InvalidArgument, "hints: entries need fields u and exponent");
      spec.measure.singularity_hints.push_back(
          {h["u"].get<double>(), h["exponent"].get<double>()});
    }
  }
  return spec;
}

FrequencyCharacteristic parse_filter_spec(const std::string& spec, Domain domain, double alpha) {
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  auto parse_double = [&](const std::string& s, const char* what) {
    try {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, std::string(what) + ": bad number '" + s + "'");
    }
  };

  if (head == "zero") return FrequencyCharacteristic(ZeroFilter{});
  if (head == "kinetic") {
    const double a = arg.empty() ? alpha : parse_double(arg, "kinetic");
    if (domain == Domain::Circle) return FrequencyCharacteristic(KineticDiscrete{a});
    return FrequencyCharacteristic(KineticContinuous{a});
  }
  if (head == "const") {
    if (arg.empty()) throw Error(Errc::InvalidArgument, "const: needs a value, e.g. const:2");
    return FrequencyCharacteristic(ConstantAbs{parse_double(arg, "const")});
  }
  if (head == "poly") {
    if (arg.empty()) throw Error(Errc::InvalidArgument, "poly: needs coefficients, e.g. poly:1,0.5");
    std::vector<std::complex<double>> coeffs;
    std::istringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ','))
      coeffs.emplace_back(parse_double(tok, "poly"), 0.0);
    if (domain == Domain::Circle) return FrequencyCharacteristic(PolynomialCircle{coeffs});
    return FrequencyCharacteristic(PolynomialLine{coeffs});
  }
  if (head == "table") {
    if (arg.empty()) throw Error(Errc::InvalidArgument, "table: needs a csv path");
    auto rows = read_two_column_csv(arg, "filter table");
    TabulatedAbs2 t;
    for (const auto& [u, a2] : rows) {
      t.u.push_back(u);
      t.abs2.push_back(a2);
    }
    return FrequencyCharacteristic(std::move(t));
  }
  throw Error(Errc::InvalidArgument,
              "filter: unknown spec '" + spec +
                  "' (expected zero | kinetic[:a] | const:c | poly:c1,... | table:path)");
}

}  // namespace spectra
