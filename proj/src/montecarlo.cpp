#include "spectra/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "spectra/rng.hpp"

namespace spectra {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::uint64_t kBatch = 4096;

std::vector<double> cell_edges(const SpectralMeasure& m, int M, double window) {
  std::vector<double> edges(static_cast<size_t>(M) + 1);
  if (m.domain == Domain::Circle) {
    for (int i = 0; i <= M; ++i) edges[static_cast<size_t>(i)] = -kPi + 2.0 * kPi * i / M;
  } else {
    const double tmax = std::atan(window);
    for (int i = 0; i <= M; ++i) {
      const double theta = -tmax + 2.0 * tmax * i / M;
      edges[static_cast<size_t>(i)] = std::tan(theta);
    }
  }
  return edges;
}

}  // namespace

SynthesisGrid build_grid(const SpectralMeasure& m, int M, double window, double mass_budget,
                         const QuadratureOptions& opts) {
  if (M < 16) throw Error(Errc::InvalidArgument, "M: need at least 16 cells");
  if (m.domain == Domain::Line && !(window > 0))
    throw Error(Errc::InvalidArgument, "window: must be > 0 on the line");

  SynthesisGrid grid;
  grid.increments = !m.finite;
  grid.window = m.domain == Domain::Line ? window : 0.0;
  auto edges = cell_edges(m, M, window);

  QuadratureOptions cellopts = opts;
  cellopts.tol = std::min(opts.tol, 1e-11);

  for (int i = 0; i < M; ++i) {
    double a = edges[static_cast<size_t>(i)], b = edges[static_cast<size_t>(i) + 1];
    if (grid.increments && a <= 0.0 && b >= 0.0) {
      // drop the zone around the origin; its functional contribution is
      // damped there and accounted for in the bias bound
      grid.excluded_halfwidth = std::max(std::abs(a), std::abs(b));
      continue;
    }
    auto r = integrate_interval(m.ac_density, a, b, {}, cellopts);
    if (r.diverged) throw Error(Errc::Divergent, "build_grid: cell mass quadrature diverged");
    double mass = r.value;
    for (const auto& atom : m.atoms)
      if (atom.location >= a && atom.location < b) mass += atom.mass;
    grid.nodes.push_back(0.5 * (a + b));
    grid.masses.push_back(mass);
    grid.mass_sum += mass;
  }

  if (m.finite) {
    const double total = total_mass(m, opts).value;
    if (total - grid.mass_sum > mass_budget * total)
      throw Error(Errc::InvalidArgument,
                  "build_grid: window leaves too much spectral mass outside the grid");
  }
  return grid;
}

MonteCarloEstimate estimate_functional(const SpectralMeasure& m, const SynthesisGrid& grid,
                                       const FrequencyCharacteristic& ell, const ComplexFn& psi,
                                       std::uint64_t n, std::uint64_t seed, int threads,
                                       const QuadratureOptions& opts) {
  if (n < 1000) throw Error(Errc::InvalidArgument, "n: need at least 10^3 samples");
  if (threads < 1) throw Error(Errc::InvalidArgument, "threads: must be >= 1");
  const size_t M = grid.nodes.size();

  // per-cell constants
  std::vector<std::complex<double>> approx_coef(M);  // psi(u_j) - 1
  std::vector<std::complex<double>> filter_coef(M);  // l(u_j) psi(u_j)
  std::vector<double> sigma(M);                      // sqrt(mass/2) per real component
  double theory_grid = 0.0;
  for (size_t j = 0; j < M; ++j) {
    const double u = grid.nodes[j];
    const std::complex<double> p = psi(u);
    approx_coef[j] = p - 1.0;
    filter_coef[j] = ell.value(u) * p;
    sigma[j] = std::sqrt(0.5 * grid.masses[j]);
    theory_grid += grid.masses[j] * (std::norm(approx_coef[j]) + std::norm(filter_coef[j]));
  }

  const std::uint64_t nbatches = (n + kBatch - 1) / kBatch;
  std::vector<double> batch_sum(nbatches, 0.0), batch_sumsq(nbatches, 0.0);

  auto run_batches = [&](std::uint64_t first, std::uint64_t stride) {
    CounterRng rng(seed, streams::kSpectralCells);
    for (std::uint64_t b = first; b < nbatches; b += stride) {
      const std::uint64_t lo = b * kBatch;
      const std::uint64_t hi = std::min(n, lo + kBatch);
      double s = 0.0, s2 = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        std::complex<double> acc_a{0.0, 0.0}, acc_f{0.0, 0.0};
        for (size_t j = 0; j < M; ++j) {
          const auto [g1, g2] = rng.normal_pair(i * M + j);
          const std::complex<double> z{sigma[j] * g1, sigma[j] * g2};
          acc_a += approx_coef[j] * z;
          acc_f += filter_coef[j] * z;
        }
        const double val = std::norm(acc_a) + std::norm(acc_f);
        s += val;
        s2 += val * val;
      }
      batch_sum[b] = s;
      batch_sumsq[b] = s2;
    }
  };

  if (threads == 1) {
    run_batches(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(run_batches, static_cast<std::uint64_t>(t),
                        static_cast<std::uint64_t>(threads));
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t b = 0; b < nbatches; ++b) {  // fixed reduction order
    sum += batch_sum[b];
    sumsq += batch_sumsq[b];
  }
  const double mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - static_cast<double>(n) * mean * mean) / (static_cast<double>(n) - 1.0));

  MonteCarloEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / static_cast<double>(n));
  est.n = n;
  est.seed = seed;
  est.theory_grid = theory_grid;

  // continuum value of the same functional, when it exists
  const auto& f = m.ac_density;
  RealFn cont = [&](double u) {
    const std::complex<double> p = psi(u);
    return (std::norm(p - 1.0) + ell.abs2(u) * std::norm(p)) * f(u);
  };
  std::vector<SingularityHint> hints = m.singularity_hints;
  for (auto& h : hints)
    if (h.exponent > 0 && std::abs(h.location) < 1e-12)
      h.exponent -= ell.abs2_zero_order_at(h.location);
  auto div = detect_divergence(cont, m.domain, hints, opts);
  if (div.diverged) {
    est.theory = std::numeric_limits<double>::infinity();
    est.grid_bias_bound = std::numeric_limits<double>::infinity();
  } else {
    auto r = integrate(cont, m.domain, hints, opts);
    double theory = r.value;
    for (const auto& a : m.atoms) {
      const std::complex<double> p = psi(a.location);
      theory += (std::norm(p - 1.0) + ell.abs2(a.location) * std::norm(p)) * a.mass;
    }
    est.theory = theory;
    est.grid_bias_bound = std::abs(theory_grid - theory) + r.abs_error;
  }
  return est;
}

MonteCarloEstimate estimate_functional(const SpectralMeasure& m,
                                       const FrequencyCharacteristic& ell, const ComplexFn& psi,
                                       std::uint64_t n, std::uint64_t seed, int M, double window,
                                       int threads, const QuadratureOptions& opts) {
  auto grid = build_grid(m, M, window, 0.05, opts);
  return estimate_functional(m, grid, ell, psi, n, seed, threads, opts);
}

MonteCarloEstimate time_domain_experiment(const ProcessModel& model, double alpha,
                                          std::uint64_t n_steps, double truncation_tol,
                                          std::uint64_t seed) {
  if (model.kind != ModelKind::IID && model.kind != ModelKind::AR1 &&
      model.kind != ModelKind::MA1)
    throw Error(Errc::Unsupported,
                "time_domain_experiment: discrete models only (iid, ar1, ma1)");
  model.validate();
  if (!(alpha >= 0)) throw Error(Errc::InvalidArgument, "alpha: must be >= 0");

  const DiscreteKernel kernel = discrete_kernel(alpha, truncation_tol);
  const std::uint64_t K = static_cast<std::uint64_t>(kernel.truncation_K);
  constexpr std::uint64_t kBlock = 10000;
  if (n_steps < 2 * kBlock || n_steps < 8 * (K + 1))
    throw Error(Errc::InvalidArgument,
                "n_steps: too small for the kernel margins and block averaging");

  const std::uint64_t burn = 64;
  const std::uint64_t path_len = n_steps + 2 * K + burn + 2;
  const double sd = std::sqrt(model.V);
  CounterRng rng(seed, streams::kPathNoise);

  std::vector<double> path(path_len);
  switch (model.kind) {
    case ModelKind::IID:
      for (std::uint64_t i = 0; i < path_len; ++i) path[i] = sd * rng.normal_pair(i).first;
      break;
    case ModelKind::AR1: {
      // exact stationary start, then the recursion
      double b = sd / std::sqrt(1.0 - model.rho * model.rho) * rng.normal_pair(0).first;
      path[0] = b;
      for (std::uint64_t i = 1; i < path_len; ++i) {
        b = model.rho * b + sd * rng.normal_pair(i).first;
        path[i] = b;
      }
      break;
    }
    case ModelKind::MA1:
      for (std::uint64_t i = 0; i < path_len; ++i)
        path[i] = sd * (rng.normal_pair(i + 1).first + model.rho * rng.normal_pair(i).first);
      break;
    default:
      break;
  }

  // X(t) = sum_{|k| <= K} w_{|k|} B(t+k), needed on [t0 - 1, t0 + n_steps]
  const std::uint64_t t0 = K + burn + 1;
  std::vector<double> smoothed(n_steps + 1);
  for (std::uint64_t i = 0; i <= n_steps; ++i) {
    const std::uint64_t t = t0 + i;
    double x = kernel.weights[0] * path[t];
    for (std::uint64_t k = 1; k <= K; ++k)
      x += kernel.weights[k] * (path[t + k] + path[t - k]);
    smoothed[i] = x;
  }

  const std::uint64_t nblocks = n_steps / kBlock;
  double bsum = 0.0, bsumsq = 0.0;
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    double s = 0.0;
    for (std::uint64_t i = b * kBlock; i < (b + 1) * kBlock; ++i) {
      const double da = smoothed[i] - path[t0 + i];
      const double dk = smoothed[i + 1] - smoothed[i];
      s += da * da + alpha * alpha * dk * dk;
    }
    const double bm = s / static_cast<double>(kBlock);
    bsum += bm;
    bsumsq += bm * bm;
  }
  const double mean = bsum / static_cast<double>(nblocks);
  const double var = std::max(
      0.0, (bsumsq - static_cast<double>(nblocks) * mean * mean) / (static_cast<double>(nblocks) - 1.0));

  MonteCarloEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / static_cast<double>(nblocks));
  est.n = nblocks;
  est.seed = seed;
  est.theory = alpha > 0 ? closed_form_sigma2(model, alpha) : 0.0;
  est.theory_grid = est.theory;

  // kernel truncation bias: ||X_trunc - X|| <= tail * ||B||, propagated
  // through both quadratic terms
  const double total_var = model.kind == ModelKind::AR1 ? model.V / (1.0 - model.rho * model.rho)
                           : model.kind == ModelKind::MA1 ? model.V * (1.0 + model.rho * model.rho)
                                                          : model.V;
  const double d = kernel.tail_bound * std::sqrt(total_var);
  const double root_v = std::sqrt(total_var);
  est.grid_bias_bound =
      d * (2.0 * root_v + d) + 2.0 * alpha * d * (2.0 * root_v + 2.0 * alpha * d);
  return est;
}

}  // namespace spectra
