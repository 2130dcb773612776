#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

namespace spectra {

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (seed, stream, index), so sample batches can run on any number of threads
// and still reproduce bit-for-bit. Stream ids separate independent uses
// (spectral cells, path noise, test-function coefficients, ...); the index
// enumerates draws within a stream.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t index) {
    std::uint32_t c0 = static_cast<std::uint32_t>(index);
    std::uint32_t c1 = static_cast<std::uint32_t>(index >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * c0;
      const std::uint64_t p1 = 0xCD9E8D57ULL * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9U;
      k1 += 0xBB67AE85U;
    }
    return {c0, c1, c2, c3};
  }
};

class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Two uniforms: first in (0, 1], second in [0, 1).
  std::pair<double, double> uniform_pair(std::uint64_t index) const {
    const auto b = Philox4x32::block(seed_, stream_, index);
    const std::uint64_t x = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    const std::uint64_t y = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
    const double u1 = (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(y >> 11) * 0x1.0p-53;
    return {u1, u2};
  }

  double uniform(std::uint64_t index) const { return uniform_pair(index).second; }

  /// Independent standard normal pair (Box-Muller).
  std::pair<double, double> normal_pair(std::uint64_t index) const {
    const auto [u1, u2] = uniform_pair(index);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  /// Uniform draw from the closed complex unit disc.
  std::complex<double> unit_disc(std::uint64_t index) const {
    const auto [u1, u2] = uniform_pair(index);
    const double r = std::sqrt(u1);
    const double a = 6.283185307179586476925286766559 * u2;
    return std::polar(r, a);
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Stream ids used across the library.
namespace streams {
constexpr std::uint64_t kSpectralCells = 0;
constexpr std::uint64_t kPathNoise = 1;
constexpr std::uint64_t kTestFunctions = 2;
}  // namespace streams

}  // namespace spectra
