#include <doctest.h>

#include <cmath>

#include "spectra/quadrature.hpp"
#include "spectra/rng.hpp"

using namespace spectra;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("constant density over the circle") {
  auto r = integrate([](double) { return 1.0 / (2.0 * kPi); }, Domain::Circle, {}, {1e-10});
  CHECK(!r.diverged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.abs_error <= 1e-10);
}

TEST_CASE("lorentzian over the line (arctangent oracle)") {
  auto r = integrate([](double u) { return 2.0 / (kPi * (4.0 * u * u + 1.0)); }, Domain::Line,
                     {}, {1e-9});
  CHECK(!r.diverged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("damped power-law integrand with origin hint") {
  // u^2/(u^2+1) * M_H |u|^{-2.5}, H = 0.75: value Gamma(2.5)/2
  const double H = 0.75;
  const double MH = std::tgamma(2.0 * H + 1.0) * std::sin(kPi * H) / (2.0 * kPi);
  SingularityHint hint{0.0, 2.0 * H + 1.0 - 2.0};  // damping removes two powers
  auto r = integrate(
      [MH, H](double u) {
        return u * u / (u * u + 1.0) * MH / std::pow(std::abs(u), 2.0 * H + 1.0);
      },
      Domain::Line, std::span<const SingularityHint>(&hint, 1), {1e-10});
  CHECK(!r.diverged);
  CHECK(r.value == doctest::Approx(0.664670194089569).epsilon(1e-9));
}

TEST_CASE("finite interval polynomial") {
  auto r = integrate_interval([](double x) { return x * x; }, 0.0, 1.0, {}, {1e-12});
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("integrable log singularity at an interval endpoint") {
  SingularityHint hint{0.0, 0.5};
  auto r = integrate_interval([](double x) { return std::log(1.0 / x); }, 0.0, 1.0,
                              std::span<const SingularityHint>(&hint, 1), {1e-10});
  CHECK(!r.diverged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("complex integrand: oscillatory against the lorentzian") {
  auto r = integrate_complex(
      [](double u) {
        return std::polar(1.0, 2.0 * u) * 2.0 / (kPi * (4.0 * u * u + 1.0));
      },
      Domain::Line, {}, {1e-10});
  CHECK(!r.diverged);
  CHECK(r.value.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(std::abs(r.value.imag()) < 1e-9);
}

TEST_CASE("divergence: inverse square near zero on the circle") {
  SingularityHint hint{0.0, 2.0};
  auto v = detect_divergence([](double u) { return 1.0 / (u * u); }, Domain::Circle,
                             std::span<const SingularityHint>(&hint, 1));
  CHECK(v.diverged);
}

TEST_CASE("divergence: 1/|u| is caught despite its slow growth") {
  SingularityHint hint{0.0, 1.0};
  auto v = detect_divergence([](double u) { return 1.0 / std::abs(u); }, Domain::Circle,
                             std::span<const SingularityHint>(&hint, 1));
  CHECK(v.diverged);
}

TEST_CASE("no divergence: constant and smooth reciprocals") {
  auto c = detect_divergence([](double) { return std::abs(std::log(1.0 / (2.0 * kPi))); },
                             Domain::Circle, {});
  CHECK(!c.diverged);
  CHECK(c.diagnostic == doctest::Approx(2.0 * kPi * std::log(2.0 * kPi)).epsilon(1e-8));

  // 1/f for a smooth rational density: (2 pi)^2 (1 + rho^2) at V = 1
  const double rho = 0.5;
  auto r = detect_divergence(
      [rho](double u) { return 2.0 * kPi * (1.0 - 2.0 * rho * std::cos(u) + rho * rho); },
      Domain::Circle, {});
  CHECK(!r.diverged);
  CHECK(r.diagnostic == doctest::Approx(4.0 * kPi * kPi * 1.25).epsilon(1e-9));
}

TEST_CASE("integrable endpoint power law converges, divergent one flags") {
  SingularityHint mild{0.0, 0.5};
  auto ok = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                               std::span<const SingularityHint>(&mild, 1), {1e-9});
  CHECK(!ok.diverged);
  CHECK(ok.value == doctest::Approx(2.0).epsilon(1e-9));

  SingularityHint hard{0.0, 1.5};
  auto bad = detect_divergence([](double x) { return std::pow(std::abs(x), -1.5); },
                               Domain::Circle, std::span<const SingularityHint>(&hard, 1));
  CHECK(bad.diverged);
}

TEST_CASE("linearity on random trigonometric integrands") {
  CounterRng rng(99, 7);
  for (int t = 0; t < 20; ++t) {
    const auto [a, b] = rng.uniform_pair(static_cast<std::uint64_t>(t));
    const double ca = 2.0 * a - 1.0, cb = 2.0 * b - 1.0;
    auto f = [](double u) { return std::cos(3.0 * u) + 0.25 * u * u; };
    auto g = [](double u) { return std::sin(2.0 * u) + 1.0; };
    const QuadratureOptions opts{1e-11};
    auto rf = integrate(f, Domain::Circle, {}, opts);
    auto rg = integrate(g, Domain::Circle, {}, opts);
    auto rc = integrate([&](double u) { return ca * f(u) + cb * g(u); }, Domain::Circle, {}, opts);
    CHECK(rc.value ==
          doctest::Approx(ca * rf.value + cb * rg.value).epsilon(1e-10));
  }
}

TEST_CASE("hint order does not matter") {
  std::vector<SingularityHint> h1{{0.5, 0.5}, {-1.0, 0.5}, {2.0, 0.5}};
  std::vector<SingularityHint> h2{h1.rbegin(), h1.rend()};
  auto f = [](double u) {
    return 1.0 / std::sqrt(std::abs(u - 0.5)) + 1.0 / std::sqrt(std::abs(u + 1.0)) +
           1.0 / std::sqrt(std::abs(u - 2.0));
  };
  auto r1 = integrate(f, Domain::Circle, h1, {1e-9});
  auto r2 = integrate(f, Domain::Circle, h2, {1e-9});
  CHECK(!r1.diverged);
  CHECK(r1.value == doctest::Approx(r2.value).epsilon(1e-10));
}

TEST_CASE("even integrand equals twice its half-domain integral") {
  auto f = [](double u) { return std::exp(-u * u) * (1.0 + std::cos(u)); };
  auto full = integrate(f, Domain::Circle, {}, {1e-11});
  auto half = integrate_interval(f, 0.0, kPi, {}, {1e-11});
  CHECK(full.value == doctest::Approx(2.0 * half.value).epsilon(1e-10));
}

TEST_CASE("NaN from the integrand is reported as an evaluation error") {
  CHECK_THROWS_AS(integrate([](double u) { return u > 1.0 ? std::nan("") : 1.0; },
                            Domain::Circle, {}, {1e-10}),
                  Error);
}

TEST_CASE("error estimate honors the requested tolerance") {
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    auto r = integrate([](double u) { return std::exp(std::sin(u)); }, Domain::Circle, {},
                       {tol});
    CHECK(!r.diverged);
    CHECK(r.abs_error <= tol);
    CHECK(r.subdivisions <= 1000000);
  }
}

TEST_SUITE_END();
