#include "risopt/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; modulo bias would be harmless here
// but rejection keeps the stream platform-stable and unbiased.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace

ScalarMinimum golden_section_minimize(const ScalarFn& fn, double lo, double hi,
                                      int iterations) {
  if (!(lo <= hi)) throw contract_error("golden section needs lo <= hi");
  if (lo == hi) return {lo, fn(lo)};
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
  for (int it = 0; it < iterations; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
    const ScalarMinimum cand = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
    if (cand.value < best.value) best = cand;
  }
  return best;
}

ScalarMinimum grid_then_golden(const ScalarFn& fn, double lo, double hi,
                               int n_grid, int golden_iterations) {
  if (n_grid < 2) throw contract_error("grid search needs n_grid >= 2");
  if (!(lo < hi)) throw contract_error("grid search needs lo < hi");
  ScalarMinimum best{lo, fn(lo)};
  int best_index = 0;
  for (int i = 1; i < n_grid; ++i) {
    const double x = lo + (hi - lo) * (static_cast<double>(i) /
                                       static_cast<double>(n_grid - 1));
    const double v = fn(x);
    if (v < best.value) {
      best = {x, v};
      best_index = i;
    }
  }
  const double step = (hi - lo) / static_cast<double>(n_grid - 1);
  const double a = std::max(lo, best.x - step);
  const double b = std::min(hi, best.x + step);
  (void)best_index;
  const ScalarMinimum refined = golden_section_minimize(fn, a, b, golden_iterations);
  return refined.value < best.value ? refined : best;
}

DeResult differential_evolution(const VectorFn& fn, std::span<const double> lo,
                                std::span<const double> hi, const DeConfig& cfg,
                                std::optional<std::span<const double>> incumbent) {
  const std::size_t dim = lo.size();
  if (dim == 0 || hi.size() != dim)
    throw contract_error("differential evolution needs matching non-empty bounds");
  for (std::size_t i = 0; i < dim; ++i)
    if (!(lo[i] < hi[i]))
      throw contract_error("differential evolution needs lo < hi per dimension");
  if (cfg.population < 4)
    throw contract_error("differential evolution needs population >= 4");
  if (incumbent && incumbent->size() != dim)
    throw contract_error("incumbent dimension mismatch");

  std::mt19937_64 rng(cfg.seed);
  const std::size_t pop = static_cast<std::size_t>(cfg.population);

  std::vector<std::vector<double>> members(pop, std::vector<double>(dim));
  std::vector<double> values(pop);
  DeResult result;
  result.best.assign(dim, 0.0);

  for (std::size_t m = 0; m < pop; ++m) {
    if (m == 0 && incumbent) {
      std::copy(incumbent->begin(), incumbent->end(), members[m].begin());
      for (std::size_t j = 0; j < dim; ++j)
        members[m][j] = std::clamp(members[m][j], lo[j], hi[j]);
    } else {
      for (std::size_t j = 0; j < dim; ++j)
        members[m][j] = lo[j] + (hi[j] - lo[j]) * uniform01(rng);
    }
    values[m] = fn(members[m]);
    ++result.evaluations;
  }

  auto best_of_population = [&] {
    std::size_t bi = 0;
    for (std::size_t m = 1; m < pop; ++m)
      if (values[m] < values[bi]) bi = m;
    result.best = members[bi];
    result.best_value = values[bi];
  };
  best_of_population();

  std::vector<double> trial(dim);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    for (std::size_t m = 0; m < pop; ++m) {
      std::size_t a, b, c;
      do a = uniform_below(rng, pop); while (a == m);
      do b = uniform_below(rng, pop); while (b == m || b == a);
      do c = uniform_below(rng, pop); while (c == m || c == a || c == b);
      const std::size_t forced = uniform_below(rng, dim);
      for (std::size_t j = 0; j < dim; ++j) {
        const double u = uniform01(rng);
        if (u < cfg.crossover || j == forced) {
          trial[j] = members[a][j] + cfg.weight * (members[b][j] - members[c][j]);
          trial[j] = std::clamp(trial[j], lo[j], hi[j]);
        } else {
          trial[j] = members[m][j];
        }
      }
      const double v = fn(trial);
      ++result.evaluations;
      if (v <= values[m]) {
        members[m] = trial;
        values[m] = v;
        if (v < result.best_value) {
          result.best = members[m];
          result.best_value = v;
        }
      }
    }
  }
  return result;
}

std::vector<double> coordinate_refine(const VectorFn& fn,
                                      std::span<const double> lo,
                                      std::span<const double> hi,
                                      std::span<const double> start,
                                      const CoordinateRefineConfig& cfg) {
  const std::size_t dim = lo.size();
  if (dim == 0 || hi.size() != dim || start.size() != dim)
    throw contract_error("coordinate refine needs matching non-empty bounds");
  std::vector<double> x(start.begin(), start.end());
  double fx = fn(x);
  for (int round = 0; round < cfg.rounds; ++round) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double keep = x[j];
      auto slice = [&](double xj) {
        x[j] = xj;
        const double v = fn(x);
        x[j] = keep;
        return v;
      };
      const ScalarMinimum m =
          grid_then_golden(slice, lo[j], hi[j], cfg.scan_points,
                           cfg.golden_iterations);
      if (m.value < fx) {
        x[j] = m.x;
        fx = m.value;
      }
    }
  }
  return x;
}

}  // namespace risopt
