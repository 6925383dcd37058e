#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "eacl/errors.hpp"
#include "eacl/identification.hpp"
#include "eacl/synthetic.hpp"

namespace eacl {
namespace {

const BenchConfig kSlipping{5.0, std::nullopt};
constexpr double kTraceDt = 0.01;

FitOptions serial() {
  FitOptions o;
  o.execution = Execution::serial;
  return o;
}

TorqueTrace ac_trace(const ClutchModel& m, double v, double freq, double on_for) {
  return run_program(single_activation(Signal::ac(v, freq), 1.0, 1.0 + on_for, on_for + 2.0), m, kSlipping,
                     kTraceDt);
}

double steady_value(const ClutchModel& m, double v, double freq) {
  return ring_torque(ac_steady_shear(v, m.ac_params(freq), m.stack), m.geometry);
}

std::vector<DcRun> dc_runs(const ClutchModel& m, std::initializer_list<double> volts, double noise,
                           std::uint64_t seed) {
  std::vector<DcRun> runs;
  for (double v : volts) {
    auto trace = run_program(single_activation(Signal::dc(v), 1.0, 121.0, 122.0), m, kSlipping, kTraceDt);
    if (noise > 0.0) trace = add_noise(std::move(trace), noise, seed++);
    runs.push_back({std::move(trace), v});
  }
  return runs;
}

// -- steady ------------------------------------------------------------------

TEST(FitAcSteady, NoiselessRecoversCurve) {
  const ClutchModel m = default_model();
  const auto data = make_steady_dataset(table_params_400hz(), m.geometry, m.stack, linspace(0, 340, 20), 0.0, 1);
  const auto r = fit_ac_steady(data, m.geometry, m.stack, serial());
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rmse, 1e-6);
  EXPECT_EQ(r.params.frequency, 400.0);
}

TEST(FitAcSteady, NoisyDataAcrossSeeds) {
  const ClutchModel m = default_model();
  const auto truth = table_params_300hz();
  const auto check = linspace(0, 250, 51);
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto data = make_steady_dataset(truth, m.geometry, m.stack, linspace(0, 340, 20), kDefaultNoiseStd, seed);
    const auto r = fit_ac_steady(data, m.geometry, m.stack);
    if (curve_rmse(r.params, truth, check, m.geometry, m.stack) <= 0.05) ++ok;
  }
  EXPECT_GE(ok, 18);
}

TEST(FitAcSteady, SingleVoltageIsRankDeficient) {
  const ClutchModel m = default_model();
  SteadyDataset data{300.0, std::vector<SteadyPoint>(8, SteadyPoint{200.0, 1.0})};
  EXPECT_THROW(fit_ac_steady(data, m.geometry, m.stack), RankDeficientData);
  data.points.resize(3);
  for (std::size_t i = 0; i < 3; ++i) data.points[i].v = 10.0 * i;
  EXPECT_THROW(fit_ac_steady(data, m.geometry, m.stack), InputError);
}

TEST(FitAcSteady, PointOrderDoesNotMatter) {
  const ClutchModel m = default_model();
  auto data = make_steady_dataset(table_params_500hz(), m.geometry, m.stack, linspace(0, 340, 20), 0.02, 9);
  const auto a = fit_ac_steady(data, m.geometry, m.stack, serial());
  std::shuffle(data.points.begin(), data.points.end(), std::mt19937_64(4));
  const auto b = fit_ac_steady(data, m.geometry, m.stack, serial());
  EXPECT_EQ(a.params.gain_K, b.params.gain_K);
  EXPECT_EQ(a.params.exponent_n1, b.params.exponent_n1);
  EXPECT_EQ(a.rmse, b.rmse);
}

TEST(FitAcSteady, ObjectiveHistoryNonIncreasing) {
  const ClutchModel m = default_model();
  const auto data = make_steady_dataset(table_params_300hz(), m.geometry, m.stack, linspace(0, 340, 20), 0.02, 3);
  const auto r = fit_ac_steady(data, m.geometry, m.stack);
  ASSERT_FALSE(r.objective_history.empty());
  for (std::size_t i = 1; i < r.objective_history.size(); ++i)
    EXPECT_LE(r.objective_history[i], r.objective_history[i - 1] * (1 + 1e-12));
}

TEST(FitAcSteady, RoundTripRandomParameters) {
  const ClutchModel m = default_model();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> logk(std::log(5e-5), std::log(3e-4)), n(3.0, 4.0), c(270.0, 310.0),
      d(5.0, 40.0);
  for (int i = 0; i < 8; ++i) {
    const AcSteadyParams truth{std::exp(logk(rng)), n(rng), c(rng), d(rng), 300.0};
    const auto data = make_steady_dataset(truth, m.geometry, m.stack, linspace(0, 340, 20), 0.0, 1);
    const auto r = fit_ac_steady(data, m.geometry, m.stack);
    EXPECT_LT(curve_rmse(r.params, truth, linspace(0, 340, 69), m.geometry, m.stack), 1e-3) << i;
  }
}

// -- transient ---------------------------------------------------------------

TEST(FitTransient, NoiselessWithinOnePercent) {
  const ClutchModel m = default_model();
  const auto trace = ac_trace(m, 250.0, 300.0, 120.0);
  const auto r = fit_transient(trace, steady_value(m, 250.0, 300.0));
  EXPECT_NEAR(r.params.alpha, 0.82, 0.01 * 0.82);
  EXPECT_NEAR(r.params.tau_1, 0.14, 0.01 * 0.14);
  EXPECT_NEAR(r.params.tau_2, 18.70, 0.01 * 18.70);
  EXPECT_TRUE(r.secondary_identifiable);
}

TEST(FitTransient, NoisyTraceKeepsSettledTorque) {
  const ClutchModel m = default_model();
  const double steady = steady_value(m, 250.0, 300.0);
  const auto trace = add_noise(ac_trace(m, 250.0, 300.0, 120.0), kDefaultNoiseStd, 5);
  const auto r = fit_transient(trace, steady);
  EXPECT_NEAR(steady * activation_envelope(100.0, r.params), steady * activation_envelope(100.0, m.transient),
              0.05);
  EXPECT_NEAR(r.rmse, kDefaultNoiseStd, 0.005);
}

TEST(FitTransient, SingleExponentialFlagsSlowTerm) {
  ClutchModel m = default_model();
  m.transient = {1.0, 0.5, 18.7};
  const auto r = fit_transient(ac_trace(m, 250.0, 300.0, 120.0), steady_value(m, 250.0, 300.0));
  EXPECT_FALSE(r.secondary_identifiable);
  EXPECT_NEAR(r.params.tau_1, 0.5, 0.005);
  EXPECT_LT(r.rmse, 1e-6);
}

TEST(FitTransient, ShortHorizonRejected) {
  const ClutchModel m = default_model();
  EXPECT_THROW(fit_transient(ac_trace(m, 250.0, 300.0, 30.0), steady_value(m, 250.0, 300.0)), InsufficientHorizon);
  EXPECT_THROW(fit_transient(ac_trace(m, 250.0, 300.0, 120.0), 0.0), InputError);
}

// -- DC ----------------------------------------------------------------------

TEST(FitDc, NoiselessMultiVoltageWithinOnePercent) {
  const ClutchModel m = default_model();
  const auto runs = dc_runs(m, {100.0, 150.0, 200.0}, 0.0, 0);
  const auto r = fit_dc(runs, m.geometry, m.stack, m.dc_base_params(), m.transient);
  EXPECT_TRUE(r.secondary_identifiable);
  EXPECT_NEAR(r.params.tau_d, 20.9, 0.01 * 20.9);
  EXPECT_NEAR(r.params.exponent_n2, 1.17, 0.01 * 1.17);
  EXPECT_NEAR(r.params.coeff_Cs, 0.0017, 0.01 * 0.0017);
}

TEST(FitDc, NoisyTauWithinFifteenPercent) {
  const ClutchModel m = default_model();
  const auto runs = dc_runs(m, {100.0, 150.0, 200.0}, kDefaultNoiseStd, 40);
  const auto r = fit_dc(runs, m.geometry, m.stack, m.dc_base_params(), m.transient);
  EXPECT_NEAR(r.params.tau_d, 20.9, 0.15 * 20.9);
}

TEST(FitDc, SingleVoltageHoldsExponent) {
  const ClutchModel m = default_model();
  const auto runs = dc_runs(m, {200.0}, 0.0, 0);
  const auto r = fit_dc(runs[0].trace, m.dc_base_params(), m.transient, 200.0, m.geometry, m.stack);
  EXPECT_FALSE(r.secondary_identifiable);
  EXPECT_EQ(r.params.exponent_n2, 1.17);
  EXPECT_NEAR(r.params.tau_d, 20.9, 0.01 * 20.9);
  EXPECT_NEAR(degradation_fraction(200.0, r.params), degradation_fraction(200.0, m.dc), 1e-3);
}

TEST(FitDc, NoDegradationGivesZeroCoefficient) {
  ClutchModel m = default_model();
  m.dc.coeff_Cs = 0.0;
  const auto runs = dc_runs(m, {100.0, 200.0}, 0.0, 0);
  const auto r = fit_dc(runs, m.geometry, m.stack, m.dc_base_params(), m.transient);
  EXPECT_LT(degradation_fraction(200.0, r.params), 1e-3);
  EXPECT_LT(r.rmse, 1e-4);
}

TEST(FitDc, ShortActivationRejected) {
  const ClutchModel m = default_model();
  const auto trace = run_program(single_activation(Signal::dc(200.0), 1.0, 30.0, 31.0), m, kSlipping, kTraceDt);
  EXPECT_THROW(fit_dc(trace, m.dc_base_params(), m.transient, 200.0, m.geometry, m.stack), InsufficientHorizon);
}

// -- scoring -----------------------------------------------------------------

TEST(PredictRmse, ZeroForTruthAndOffsetForShift) {
  const ClutchModel m = default_model();
  const auto p = table_params_300hz();
  auto data = make_steady_dataset(p, m.geometry, m.stack, linspace(0, 340, 20), 0.0, 1);
  EXPECT_LT(predict_rmse(p, data, m.geometry, m.stack), 1e-12);
  for (auto& pt : data.points) pt.torque_mean += 0.3;
  EXPECT_NEAR(predict_rmse(p, data, m.geometry, m.stack), 0.3, 1e-12);
  data.points.clear();
  EXPECT_THROW(predict_rmse(p, data, m.geometry, m.stack), InputError);
}

TEST(PredictRmse, TransientAndDcTruthScoreZero) {
  const ClutchModel m = default_model();
  EXPECT_LT(predict_rmse(m.transient, ac_trace(m, 250.0, 300.0, 60.0), steady_value(m, 250.0, 300.0)), 1e-9);
  const auto runs = dc_runs(m, {150.0}, 0.0, 0);
  EXPECT_LT(predict_rmse(m.dc, runs, m.geometry, m.stack, m.dc_base_params(), m.transient), 1e-9);
  ActivationProgram empty;
  empty.duration = 5.0;
  EXPECT_THROW(predict_rmse(m.transient, run_program(empty, m, kSlipping), 1.0), InputError);
}

TEST(ActivationWindow, RelativeTimesOverFirstActivation) {
  const ClutchModel m = default_model();
  const auto w = activation_window(ac_trace(m, 200.0, 300.0, 10.0));
  ASSERT_FALSE(w.empty());
  EXPECT_NEAR(w.front().t, 0.0, 1e-12);
  EXPECT_NEAR(w.back().t, 10.0 - kTraceDt, 1e-9);
  for (const auto& r : w) EXPECT_EQ(r.v_command, 200.0);
}

}  // namespace
}  // namespace eacl
