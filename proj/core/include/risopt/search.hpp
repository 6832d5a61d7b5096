#pragma once

// Deterministic derivative-free minimizers used by the designer: dense grid
// plus golden-section refinement for 1-D capacitance searches, and seeded
// differential evolution with an optional incumbent for the 6-D geometry
// search.  All randomness comes from one serially-consumed std::mt19937_64,
// so a given seed replays exactly.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace risopt {

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(std::span<const double>)>;

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search on [lo, hi].  Exact for unimodal functions; on
// multimodal input it still returns the best point it evaluated.
ScalarMinimum golden_section_minimize(const ScalarFn& fn, double lo, double hi,
                                      int iterations = 80);

// Dense n_grid-point scan (endpoints included) followed by golden-section
// refinement inside the cells adjacent to the best grid point.
ScalarMinimum grid_then_golden(const ScalarFn& fn, double lo, double hi,
                               int n_grid, int golden_iterations = 80);

struct DeConfig {
  int population = 32;
  int generations = 200;
  double weight = 0.7;     // differential weight F
  double crossover = 0.9;  // binomial crossover probability CR
  std::uint64_t seed = 1;
};

struct DeResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::size_t evaluations = 0;
};

// DE/rand/1/bin over a box.  When an incumbent is given it joins the initial
// population, so the returned value can never be worse than the incumbent's.
DeResult differential_evolution(const VectorFn& fn, std::span<const double> lo,
                                std::span<const double> hi, const DeConfig& cfg,
                                std::optional<std::span<const double>> incumbent =
                                    std::nullopt);

// One pass of per-coordinate scan+golden refinement; returns the improved
// point.  Only accepts strict improvements, so the result never regresses.
struct CoordinateRefineConfig {
  int rounds = 2;
  int scan_points = 33;
  int golden_iterations = 60;
};

std::vector<double> coordinate_refine(const VectorFn& fn,
                                      std::span<const double> lo,
                                      std::span<const double> hi,
                                      std::span<const double> start,
                                      const CoordinateRefineConfig& cfg = {});

}  // namespace risopt
