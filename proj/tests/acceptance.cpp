// Acceptance suite: ten numbered criteria, each printed as a single
// PASS/FAIL line with its runtime.  The binary exits non-zero if any
// criterion fails.  All tolerances are pinned here as constants.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "risopt/designer.hpp"
#include "risopt/farfield.hpp"
#include "risopt/io_util.hpp"
#include "risopt/network.hpp"
#include "risopt/oracle.hpp"
#include "risopt/search.hpp"
#include "risopt/surrogate.hpp"

namespace {

using namespace risopt;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

// --- pinned tolerances and budgets -----------------------------------------
constexpr double kEq2RelTol = 1e-12;           // criterion 1
constexpr double kEq2BudgetS = 1.0;
constexpr double kLosslessTol = 1e-9;          // criterion 2
constexpr double kLosslessBudgetS = 1.0;
constexpr double kGradientTol = 1e-5;          // criterion 3
constexpr double kGradientStep = 1e-5;
constexpr double kGradientBudgetS = 10.0;
constexpr double kMseEnvelope = 0.1;           // criterion 4
constexpr double kMaeEnvelope = 0.07;
constexpr double kTrainBudgetS = 600.0;
constexpr double kPhaseTolDeg = 5.0;           // criteria 5 and 7
constexpr double kAmplitudeFloorDb = -3.0;
constexpr double kDesignBudgetS = 300.0;
constexpr double kGridGapFraction = 0.05;      // criterion 6
constexpr double kGridBudgetS = 120.0;
constexpr double kVerifyAmpTolDb = 0.5;        // criterion 7
constexpr double kVerifyBudgetS = 10.0;
constexpr double kPatternBudgetS = 5.0;        // criterion 8
constexpr double kLossPointTol = 1e-12;        // criterion 10
constexpr double kLossBudgetS = 1.0;

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

// State shared from criterion 5 to criterion 7.
DesignResult g_fixture_design;
DesignSpec g_fixture_spec;
bool g_fixture_design_ready = false;

std::string format_detail(const char* fmt, ...) {
  char buffer[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof buffer, fmt, args);
  va_end(args);
  return buffer;
}

// Independent route to S11 used as the criterion-1 oracle: T-equivalent
// ladder reduction instead of the closed-form input-impedance expression.
Complex s11_by_circuit_reduction(const ImpedanceMatrix& z, Complex za,
                                 double z0_ohm) {
  const Complex branch = (z.z22 - z.z12) + za;
  const Complex par = (z.z12 * branch) / (z.z12 + branch);
  const Complex zin = (z.z11 - z.z12) + par;
  return (zin - z0_ohm) / (zin + z0_ohm);
}

CriterionResult criterion_1_eq2_equivalence() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> re(0.5, 80.0);
  std::uniform_real_distribution<double> im(-150.0, 150.0);
  const Environment env;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
        {re(rng), im(rng)}, {re(rng), im(rng)}, {re(rng), im(rng)}, 3.0);
    const Complex za{re(rng), im(rng)};
    const Complex direct = s11_from_network(z, za, env);
    const Complex reduced = s11_by_circuit_reduction(z, za, env.z0_ohm);
    const double rel = std::abs(direct - reduced) /
                       std::max(std::abs(reduced), 1e-300);
    worst = std::max(worst, rel);
  }
  return {worst < kEq2RelTol,
          format_detail("max relative error %.2e over 1000 reciprocal cases "
                        "(tol %.0e)",
                        worst, kEq2RelTol)};
}

CriterionResult criterion_2_lossless_passivity() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-200.0, 200.0);
  std::uniform_real_distribution<double> cap(0.6, 2.6);
  std::uniform_real_distribution<double> freq(2.0, 4.0);
  DiodeModel lossless_diode;
  lossless_diode.r_series_ohm = 0.0;
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
        {0.0, x(rng)}, {0.0, x(rng)}, {0.0, x(rng)}, 3.0);
    const Complex za = diode_impedance(lossless_diode, cap(rng), freq(rng));
    if (std::abs(za + z.z22) < 0.5) continue;  // keep clear of the guard
    const Complex s11 = s11_from_network(z, za);
    worst = std::max(worst, std::abs(std::abs(s11) - 1.0));
    ++done;
  }
  return {worst < kLosslessTol,
          format_detail("max | |S11| - 1 | = %.2e over 1000 reactive cases "
                        "(tol %.0e)",
                        worst, kLosslessTol)};
}

CriterionResult criterion_3_gradient_check() {
  double worst = 0.0;
  for (std::uint64_t draw = 0; draw < 20; ++draw) {
    SurrogateModel model = make_mlp(7, 30, 8, 300 + draw);
    std::mt19937_64 rng(400 + draw);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    Batch batch;
    batch.inputs.resize(16, 7);
    batch.targets.resize(16, 8);
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 7; ++c) batch.inputs(r, c) = unit(rng);
      for (int c = 0; c < 8; ++c) batch.targets(r, c) = sym(rng);
    }
    const Gradients analytic = mlp_gradient(model, batch);

    std::vector<double*> slots;
    for (int r = 0; r < model.w_hidden.rows(); ++r)
      for (int c = 0; c < model.w_hidden.cols(); ++c)
        slots.push_back(&model.w_hidden(r, c));
    for (int r = 0; r < model.b_hidden.size(); ++r)
      slots.push_back(&model.b_hidden(r));
    for (int r = 0; r < model.w_output.rows(); ++r)
      for (int c = 0; c < model.w_output.cols(); ++c)
        slots.push_back(&model.w_output(r, c));
    for (int r = 0; r < model.b_output.size(); ++r)
      slots.push_back(&model.b_output(r));

    std::vector<double> flat;
    for (int r = 0; r < analytic.w_hidden.rows(); ++r)
      for (int c = 0; c < analytic.w_hidden.cols(); ++c)
        flat.push_back(analytic.w_hidden(r, c));
    for (int r = 0; r < analytic.b_hidden.size(); ++r)
      flat.push_back(analytic.b_hidden(r));
    for (int r = 0; r < analytic.w_output.rows(); ++r)
      for (int c = 0; c < analytic.w_output.cols(); ++c)
        flat.push_back(analytic.w_output(r, c));
    for (int r = 0; r < analytic.b_output.size(); ++r)
      flat.push_back(analytic.b_output(r));

    for (std::size_t i = 0; i < slots.size(); ++i) {
      const double saved = *slots[i];
      *slots[i] = saved + kGradientStep;
      const double up = batch_loss(model, batch);
      *slots[i] = saved - kGradientStep;
      const double down = batch_loss(model, batch);
      *slots[i] = saved;
      const double fd = (up - down) / (2.0 * kGradientStep);
      const double denom = std::max(1e-8, std::abs(flat[i]) + std::abs(fd));
      worst = std::max(worst, std::abs(flat[i] - fd) / denom);
    }
  }
  return {worst < kGradientTol,
          format_detail("max relative gradient error %.2e over 20 draws of a "
                        "7-30-8 network (tol %.0e)",
                        worst, kGradientTol)};
}

CriterionResult criterion_4_table2_envelope() {
  const auto records =
      generate_dataset(OracleConfig{}, 2000, FrequencyGrid{2.0, 4.0, 201}, 42);
  TrainConfig cfg;  // defaults: 80/20 split by geometry, 2000 epochs
  const TrainResult result = train(records, cfg);
  double worst_mse = 0.0, worst_mae = 0.0;
  for (int c = 0; c < 8; ++c) {
    worst_mse = std::max(worst_mse, result.metrics.test_normalized[c].mse);
    worst_mae = std::max(worst_mae, result.metrics.test_normalized[c].mae);
  }
  const bool pass = worst_mse < kMseEnvelope && worst_mae < kMaeEnvelope;
  return {pass,
          format_detail("2000x201 dataset: worst test MSE %.4f (< %.1f), "
                        "worst test MAE %.4f (< %.2f) across 8 components",
                        worst_mse, kMseEnvelope, worst_mae, kMaeEnvelope)};
}

CriterionResult criterion_5_three_bit_design() {
  const OracleConfig oracle = testfixture::oracle_config();

  // Brute-force attainability certificate at the documented fixed geometry.
  const auto cert = testfixture::certify_attainability(
      oracle, testfixture::geometry(), testfixture::kDesignFreqGhz, 3, 1024,
      kAmplitudeFloorDb, kPhaseTolDeg);
  if (!cert.attainable) {
    return {false,
            format_detail("fixture not attainable: brute-force worst phase "
                          "error %.2f deg, worst amplitude %.2f dB",
                          cert.worst_phase_error_deg, cert.worst_amplitude_db)};
  }

  // Train the surrogate on the fixture oracle and design through it.
  const auto records =
      generate_dataset(oracle, testfixture::kDatasetGeometries,
                       testfixture::frequency_grid(), testfixture::kDatasetSeed);
  TrainConfig tc;
  tc.seed = testfixture::kTrainSeed;
  const TrainResult trained = train(records, tc);

  const DesignSpec spec = testfixture::design_spec();
  const DesignResult design =
      design_nbit(make_surrogate_predictor(trained.model), spec);

  double worst_err = 0.0, worst_amp = 0.0;
  for (std::size_t k = 0; k < design.states.size(); ++k) {
    worst_err = std::max(
        worst_err, std::abs(wrap_phase_deg(design.states[k].rel_phase_deg -
                                           design.schedule.targets_deg[k])));
    worst_amp = std::min(worst_amp, design.states[k].amplitude_db);
  }
  const bool pass = design.states.size() == 8 && worst_err < kPhaseTolDeg &&
                    worst_amp > kAmplitudeFloorDb;
  if (pass) {
    g_fixture_design = design;
    g_fixture_spec = spec;
    g_fixture_design_ready = true;
  }
  return {pass,
          format_detail("certificate worst error %.2f deg; designed 8 states: "
                        "worst phase error %.2f deg (< %.0f), worst amplitude "
                        "%.2f dB (> %.0f)",
                        cert.worst_phase_error_deg, worst_err, kPhaseTolDeg,
                        worst_amp, kAmplitudeFloorDb)};
}

CriterionResult criterion_6_optimizer_vs_grid() {
  const ImpedanceFn fn = make_oracle_predictor(OracleConfig{});
  DesignSpec spec;
  spec.bits = 1;
  spec.freq_ghz = 3.0;
  const PhaseSchedule schedule = PhaseSchedule::full(1).prefix(1);
  const std::vector<double> caps{spec.initial_capacitance_pf};
  const auto loss_at = [&](const GeometryParams& g) {
    return evaluate_loss(fn, g, caps, schedule, spec);
  };

  // 4 levels per dimension, endpoints included: 4^6 = 4096 evaluations.
  const GeometryBounds box = spec.bounds;
  GeometryParams best_g{};
  double best_loss = 1e300;
  std::array<double, 6> values{};
  for (int i0 = 0; i0 < 4; ++i0)
    for (int i1 = 0; i1 < 4; ++i1)
      for (int i2 = 0; i2 < 4; ++i2)
        for (int i3 = 0; i3 < 4; ++i3)
          for (int i4 = 0; i4 < 4; ++i4)
            for (int i5 = 0; i5 < 4; ++i5) {
              const int idx[6] = {i0, i1, i2, i3, i4, i5};
              for (int d = 0; d < 6; ++d)
                values[d] =
                    box.lo[d] + (box.hi[d] - box.lo[d]) * idx[d] / 3.0;
              const GeometryParams g = GeometryParams::from_array(values);
              const double loss = loss_at(g);
              if (loss < best_loss) {
                best_loss = loss;
                best_g = g;
              }
            }

  // Local refinement of the best grid point.
  const auto vec_loss = [&](std::span<const double> x) {
    return loss_at(GeometryParams::from_array(x));
  };
  const auto start = best_g.to_array();
  const std::vector<double> refined = coordinate_refine(
      vec_loss, std::span<const double>(box.lo), std::span<const double>(box.hi),
      std::span<const double>(start), {});
  const double grid_loss = std::min(best_loss, vec_loss(refined));

  const GeometryParams opt = optimize_passive(fn, caps, schedule, spec);
  const double opt_loss = loss_at(opt);

  const bool pass =
      opt_loss <= grid_loss + kGridGapFraction * std::abs(grid_loss) + 1e-15;
  return {pass,
          format_detail("optimize_passive loss %.6f vs refined 4^6 grid loss "
                        "%.6f (allowed gap %.0f%%)",
                        opt_loss, grid_loss, kGridGapFraction * 100.0)};
}

CriterionResult criterion_7_verification_gap() {
  if (!g_fixture_design_ready)
    return {false, "criterion 5 design unavailable"};
  const VerificationReport report = verify_against_oracle(
      g_fixture_design, testfixture::oracle_config(), g_fixture_spec);
  const bool pass = report.max_phase_delta_deg < kPhaseTolDeg &&
                    report.max_amplitude_delta_db < kVerifyAmpTolDb;
  return {pass,
          format_detail("surrogate vs oracle over 8 states: max phase delta "
                        "%.3f deg (< %.0f), max amplitude delta %.3f dB "
                        "(< %.1f)",
                        report.max_phase_delta_deg, kPhaseTolDeg,
                        report.max_amplitude_delta_db, kVerifyAmpTolDb)};
}

CriterionResult criterion_8_farfield_consistency() {
  const ArrayGeometry geom;  // 16 columns, 27.25 mm, 3.5 GHz
  const auto grid = uniform_theta_grid(-90.0, 90.0, 0.01);

  const auto argmax_theta = [](const std::vector<PatternPoint>& p) {
    return std::max_element(p.begin(), p.end(),
                            [](const PatternPoint& a, const PatternPoint& b) {
                              return a.af_db < b.af_db;
                            })
        ->theta_deg;
  };
  const auto beamwidth = [](const std::vector<PatternPoint>& p) {
    const auto peak =
        std::max_element(p.begin(), p.end(),
                         [](const PatternPoint& a, const PatternPoint& b) {
                           return a.af_db < b.af_db;
                         });
    auto left = peak;
    while (left != p.begin() && left->af_db > peak->af_db - 3.0) --left;
    auto right = peak;
    while (right + 1 != p.end() && right->af_db > peak->af_db - 3.0) ++right;
    return right->theta_deg - left->theta_deg;
  };

  std::string detail;
  bool pass = true;
  for (const char* text : {"1111333355557777", "1133557711335577"}) {
    const CodingSequence code = CodingSequence::parse(text);
    const auto pattern = pattern_sweep(geom, code, grid);
    const double peak = argmax_theta(pattern);
    const double snell = beam_angle_snell(geom, code);
    const double hpbw = beamwidth(pattern);
    if (std::abs(peak - snell) >= 1.5 * hpbw) pass = false;
    detail += format_detail("%s: argmax %.2f vs Snell %.2f deg (1.5x HPBW "
                            "%.1f); ",
                            text, peak, snell, 1.5 * hpbw);
  }

  const auto uniform =
      pattern_sweep(geom, CodingSequence::parse("0000000000000000"), grid);
  const double broadside = argmax_theta(uniform);
  if (broadside != 0.0) pass = false;

  // |AF| <= 16 across every pattern evaluated directly.
  double max_af = 0.0;
  const std::vector<double> phases = code_to_phases(
      CodingSequence::parse("1133557711335577"));
  for (const double theta : grid)
    max_af = std::max(max_af, std::abs(array_factor(geom, phases, theta)));
  if (max_af > 16.0 * (1.0 + 1e-12)) pass = false;

  detail += format_detail("uniform peak %.2f deg; max |AF| %.4f", broadside,
                          max_af);
  return {pass, detail};
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(RISOPT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CriterionResult criterion_9_determinism() {
  std::string templ =
      (fs::path(fs::temp_directory_path()) / "risopt_accept_XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr)
    return {false, "could not create temp directory"};
  const fs::path dir(templ);

  const auto chain = [&](const std::string& tag) -> bool {
    const std::string data = (dir / ("data_" + tag + ".jsonl")).string();
    const std::string model = (dir / ("model_" + tag + ".json")).string();
    const std::string design = (dir / ("design_" + tag + ".json")).string();
    if (run_cli("--seed 7 gen-data -o " + data + " -n 40 --n-freq 11") != 0)
      return false;
    if (run_cli("--seed 9 train --data " + data + " -o " + model +
                " --epochs 40 --batch 32") != 0)
      return false;
    if (run_cli("--seed 11 design --model " + model + " -o " + design +
                " --bits 2 --freq 3.0 --population 12 --generations 40") != 0)
      return false;
    return true;
  };

  bool pass = chain("a") && chain("b");
  std::string detail;
  if (!pass) {
    detail = "a CLI invocation failed";
  } else {
    for (const char* leaf : {"data", "model", "design"}) {
      const std::string ext = std::string(leaf) == "data" ? ".jsonl" : ".json";
      const std::string a =
          read_text_file((dir / (std::string(leaf) + "_a" + ext)).string());
      const std::string b =
          read_text_file((dir / (std::string(leaf) + "_b" + ext)).string());
      if (a != b) {
        pass = false;
        detail += format_detail("%s artifacts differ; ", leaf);
      }
    }
    if (pass)
      detail = "gen-data, train, design reruns are byte-identical "
               "(dataset, model, design artifacts)";
  }
  fs::remove_all(dir);
  return {pass, detail};
}

CriterionResult criterion_10_loss_point_checks() {
  const DesignSpec spec;  // w1 = w2 = 0.5, floor -3 dB, saturating
  const std::vector<double> on_target{0.0, 45.0, 90.0, 135.0};
  const std::vector<double> zeros(4, 0.0);
  const double l0 = evaluate_loss(on_target, on_target, zeros, spec);
  const double l1 =
      evaluate_loss(std::vector<double>{10.0}, std::vector<double>{0.0},
                    std::vector<double>{-1.0}, spec);
  const double l2 =
      evaluate_loss(std::vector<double>{0.0}, std::vector<double>{0.0},
                    std::vector<double>{-5.0}, spec);
  const double l2b =
      evaluate_loss(std::vector<double>{0.0}, std::vector<double>{0.0},
                    std::vector<double>{-10.0}, spec);
  const bool pass = std::abs(l0 - 0.0) < kLossPointTol &&
                    std::abs(l1 - 50.5) < kLossPointTol &&
                    std::abs(l2 - 1.5) < kLossPointTol &&
                    std::abs(l2b - 1.5) < kLossPointTol;
  return {pass,
          format_detail("evaluate_loss -> %.1e, %.12g, %.12g (saturation "
                        "check %.12g), all within %.0e of 0, 50.5, 1.5",
                        l0, l1, l2, l2b, kLossPointTol)};
}

struct Criterion {
  int number;
  const char* title;
  double budget_s;
  std::function<CriterionResult()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "dual-port formula vs circuit reduction", kEq2BudgetS,
       criterion_1_eq2_equivalence},
      {2, "lossless passivity", kLosslessBudgetS,
       criterion_2_lossless_passivity},
      {3, "backpropagation vs finite differences", kGradientBudgetS,
       criterion_3_gradient_check},
      {4, "surrogate accuracy envelope", kTrainBudgetS,
       criterion_4_table2_envelope},
      {5, "3-bit design quality on the certified fixture", kDesignBudgetS,
       criterion_5_three_bit_design},
      {6, "optimizer vs refined brute-force grid", kGridBudgetS,
       criterion_6_optimizer_vs_grid},
      {7, "surrogate-vs-oracle verification gap", kVerifyBudgetS,
       criterion_7_verification_gap},
      {8, "far-field consistency", kPatternBudgetS,
       criterion_8_farfield_consistency},
      {9, "seeded CLI determinism", kTrainBudgetS + kDesignBudgetS,
       criterion_9_determinism},
      {10, "loss-function point checks", kLossBudgetS,
       criterion_10_loss_point_checks},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = clock_type::now();
    CriterionResult result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - start).count();
    const bool in_budget = elapsed < criterion.budget_s;
    const bool pass = result.pass && in_budget;
    if (!pass) ++failures;
    std::printf("CRITERION %2d: %s  (%.2f s%s)  %s — %s\n", criterion.number,
                pass ? "PASS" : "FAIL", elapsed,
                in_budget ? "" : ", OVER BUDGET", criterion.title,
                result.detail.c_str());
    std::fflush(stdout);
  }

  std::printf("ACCEPTANCE SUMMARY: %d/10 criteria passed\n",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
