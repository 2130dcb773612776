#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Frequency domain of a process: Circle is [-pi, pi) (discrete time),
/// Line is the real axis (continuous time).
enum class Domain { Circle, Line };

inline const char* domain_name(Domain d) {
  return d == Domain::Circle ? "circle" : "line";
}

enum class Errc {
  InvalidArgument,  // bad parameter value, names the offending field
  DomainMismatch,   // filter/measure domain disagreement
  InfiniteMass,     // operation requires a finite measure
  Divergent,        // integral diverged where finiteness was required
  Numerical,        // quadrature/conditioning failure
  Unsupported,      // operation undefined for this input class
  Io,               // file/parse problem
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

/// Power-law behaviour marker for quadrature: the integrand (or density)
/// behaves like |u - location|^{-exponent} near `location`. exponent <= 0
/// marks a kink or a zero; the point is still a panel boundary.
struct SingularityHint {
  double location = 0.0;
  double exponent = 0.0;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

}  // namespace spectra
