#include "risopt/network.hpp"

#include <cmath>
#include <numbers>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace risopt {
namespace {

using testutil::complex_near;
using testutil::s11_by_circuit_reduction;

TEST(WrapPhase, PrincipalBranchExamples) {
  EXPECT_DOUBLE_EQ(wrap_phase_deg(370.0), 10.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(-190.0), 170.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(180.0), 180.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(-180.0), 180.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(540.0), 180.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(-540.0), 180.0);
  EXPECT_DOUBLE_EQ(wrap_phase_deg(0.0), 0.0);
  EXPECT_NEAR(wrap_phase_deg(359.5), -0.5, 1e-12);
}

TEST(WrapPhase, StaysOnPrincipalBranch) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-2000.0, 2000.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = angle(rng);
    const double w = wrap_phase_deg(a);
    EXPECT_GT(w, -180.0);
    EXPECT_LE(w, 180.0);
    // The wrap only removes whole turns.
    const double turns = (a - w) / 360.0;
    EXPECT_NEAR(turns, std::round(turns), 1e-9);
  }
}

TEST(AngularFrequency, OneGigahertz) {
  EXPECT_NEAR(angular_frequency_rad_s(1.0), 2.0 * std::numbers::pi * 1e9, 1e-3);
}

TEST(DiodeImpedance, FrozenPointValue) {
  // 2.68 GHz at maximum capacitance: wL = 11.786 ohm, 1/(wC) = 22.840 ohm.
  const Complex za = diode_impedance(DiodeModel{}, 2.6, 2.68);
  EXPECT_DOUBLE_EQ(za.real(), 0.3);
  EXPECT_NEAR(za.imag(), -11.054, 5e-4);
}

TEST(DiodeImpedance, SeriesResonanceAtMaxCapacitance) {
  // 1 / (2 pi sqrt(L C)) with L = 0.7 nH, C = 2.6 pF.
  const double f_res = 1.0 / (2.0 * std::numbers::pi * std::sqrt(0.7e-9 * 2.6e-12)) / 1e9;
  EXPECT_NEAR(f_res, 3.7305, 5e-4);
  EXPECT_NEAR(diode_impedance(DiodeModel{}, 2.6, f_res).imag(), 0.0, 1e-9);
  EXPECT_LT(diode_impedance(DiodeModel{}, 2.6, f_res - 0.1).imag(), 0.0);
  EXPECT_GT(diode_impedance(DiodeModel{}, 2.6, f_res + 0.1).imag(), 0.0);
}

TEST(DiodeImpedance, RejectsOutOfRangeInputs) {
  EXPECT_THROW(diode_impedance(DiodeModel{}, 0.5, 3.0), domain_error);
  EXPECT_THROW(diode_impedance(DiodeModel{}, 2.7, 3.0), domain_error);
  EXPECT_THROW(diode_impedance(DiodeModel{}, 1.0, 0.0), domain_error);
  EXPECT_THROW(diode_impedance(DiodeModel{}, 1.0, -2.0), domain_error);
}

TEST(DiodeModel, ValidateRejectsBadRanges) {
  DiodeModel bad;
  bad.c_min_pf = 2.6;
  bad.c_max_pf = 0.6;
  EXPECT_THROW(bad.validate(), domain_error);
  bad = DiodeModel{};
  bad.r_series_ohm = -0.1;
  EXPECT_THROW(bad.validate(), domain_error);
  EXPECT_NO_THROW(DiodeModel{}.validate());
}

TEST(ImpedanceMatrix, ComponentRoundTrip) {
  const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
      {1.0, 2.0}, {0.0, 5.0}, {0.25, -3.0}, 3.1);
  EXPECT_EQ(z.z12, z.z21);
  EXPECT_TRUE(z.is_reciprocal());
  const auto c = z.to_components();
  const ImpedanceMatrix back = ImpedanceMatrix::from_components(c, z.freq_ghz);
  EXPECT_EQ(back.z11, z.z11);
  EXPECT_EQ(back.z12, z.z12);
  EXPECT_EQ(back.z21, z.z21);
  EXPECT_EQ(back.z22, z.z22);
  EXPECT_EQ(back.freq_ghz, z.freq_ghz);
}

TEST(ImpedanceMatrix, ReciprocityToleranceIsHonoured) {
  ImpedanceMatrix z = ImpedanceMatrix::reciprocal({1, 1}, {0, 5}, {1, -1}, 3.0);
  z.z21 += Complex(1e-7, 0.0);
  EXPECT_FALSE(z.is_reciprocal());
  EXPECT_TRUE(z.is_reciprocal(1e-6));
}

TEST(S11FromNetwork, MatchesCircuitReductionOnReciprocalNetworks) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.5, 80.0);
  std::uniform_real_distribution<double> im(-150.0, 150.0);
  const Environment env;
  for (int i = 0; i < 100; ++i) {
    const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
        {re(rng), im(rng)}, {re(rng), im(rng)}, {re(rng), im(rng)}, 3.0);
    const Complex za{re(rng), im(rng)};
    const Complex direct = s11_from_network(z, za, env);
    const Complex reduced = s11_by_circuit_reduction(z, za, env.z0_ohm);
    EXPECT_TRUE(complex_near(direct, reduced, 1e-12 * (1.0 + std::abs(direct))));
  }
}

TEST(S11FromNetwork, DependsOnTransferProductOnly) {
  // Zin uses z12 * z21, so swapping the transfer terms cannot change S11
  // even for non-reciprocal matrices.
  ImpedanceMatrix z;
  z.z11 = {2.0, 40.0};
  z.z12 = {1.0, 120.0};
  z.z21 = {3.0, -55.0};
  z.z22 = {0.4, -20.0};
  z.freq_ghz = 3.0;
  const Complex za{0.3, -11.0};
  const Complex a = s11_from_network(z, za);
  std::swap(z.z12, z.z21);
  const Complex b = s11_from_network(z, za);
  EXPECT_EQ(a, b);
}

TEST(S11FromNetwork, LosslessNetworkIsUnimodular) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> x(-200.0, 200.0);
  for (int i = 0; i < 200; ++i) {
    const ImpedanceMatrix z = ImpedanceMatrix::reciprocal(
        {0.0, x(rng)}, {0.0, x(rng)}, {0.0, x(rng)}, 3.0);
    const Complex za{0.0, x(rng)};
    if (std::abs(za + z.z22) < 1.0) continue;  // keep clear of the guard
    const Complex s11 = s11_from_network(z, za);
    EXPECT_NEAR(std::abs(s11), 1.0, 1e-9);
  }
}

TEST(S11FromNetwork, GuardsSingularDenominators) {
  const ImpedanceMatrix z =
      ImpedanceMatrix::reciprocal({1.0, 10.0}, {0.0, 5.0}, {0.5, -20.0}, 3.0);
  EXPECT_THROW(s11_from_network(z, -z.z22), singularity_error);

  // z12 = 0 makes Zin = z11; placing z11 at -z0 hits the reflection guard.
  ImpedanceMatrix open;
  open.z11 = {-kFreeSpaceImpedanceOhm, 0.0};
  open.z12 = {0.0, 0.0};
  open.z21 = {0.0, 0.0};
  open.z22 = {1.0, 0.0};
  open.freq_ghz = 3.0;
  EXPECT_THROW(s11_from_network(open, Complex{1.0, 0.0}), singularity_error);
}

TEST(S11ToDbPhase, FrozenPointValue) {
  const DbPhase dp = s11_to_db_phase(Complex{0.0, -0.5});
  EXPECT_NEAR(dp.amplitude_db, -6.0206, 1e-4);
  EXPECT_DOUBLE_EQ(dp.phase_deg, -90.0);
}

TEST(S11ToDbPhase, ZeroMapsToSentinel) {
  const DbPhase dp = s11_to_db_phase(Complex{0.0, 0.0});
  EXPECT_TRUE(std::isinf(dp.amplitude_db));
  EXPECT_LT(dp.amplitude_db, 0.0);
  EXPECT_DOUBLE_EQ(dp.phase_deg, 0.0);
}

TEST(S11ToDbPhase, PhaseSitsOnPrincipalBranch) {
  const DbPhase dp = s11_to_db_phase(Complex{-1.0, 0.0});
  EXPECT_DOUBLE_EQ(dp.phase_deg, 180.0);
  EXPECT_NEAR(s11_to_db_phase(Complex{-1.0, -1e-12}).phase_deg, -180.0, 1e-6);
}

TEST(Environment, DefaultsToFreeSpace) {
  EXPECT_DOUBLE_EQ(Environment{}.z0_ohm, kFreeSpaceImpedanceOhm);
  EXPECT_DOUBLE_EQ(kFreeSpaceImpedanceOhm, 376.73);
}

}  // namespace
}  // namespace risopt
