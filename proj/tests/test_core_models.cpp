#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eacl/core_models.hpp"
#include "eacl/errors.hpp"

namespace eacl {
namespace {

// Reference values below were computed with mpmath at 40 digits, directly
// from the closed forms, before the implementation existed.
constexpr double kRingConstant = 3.18348055563765714e-4;     // N*m per N/m^2
constexpr double kIdealShear300V = 2178.96028205625;          // eps_r 35, d 80 um
constexpr double kTorque300Hz250V = 3.31320145901188956;      // 300 Hz set
constexpr double kTorque400Hz250V = 3.51076294810281649;
constexpr double kTorque500Hz250V = 2.26605431813936482;
constexpr double kTorque300Hz340V = 7.30922942988832065;      // plateau value
constexpr double kKnee300Hz = 306.416539284519658;
constexpr double kVeffMax300Hz = 306.390489361382511;
constexpr double kEnvelopeAtTau1 = 0.519681419919511269;
constexpr double kDegradation200V = 0.836862324350344234;

ClutchGeometry default_geometry() { return {}; }

TEST(IdealConductorShear, ZeroFieldGivesZero) {
  EXPECT_EQ(ideal_conductor_shear(0.0, DielectricStack{}), 0.0);
}

TEST(IdealConductorShear, MatchesHandEvaluation) {
  EXPECT_NEAR(ideal_conductor_shear(300.0, DielectricStack{}), kIdealShear300V, 1e-9 * kIdealShear300V);
}

TEST(IdealConductorShear, QuadraticInVoltage) {
  const DielectricStack s;
  EXPECT_DOUBLE_EQ(ideal_conductor_shear(200.0, s) / ideal_conductor_shear(100.0, s), 4.0);
}

TEST(IdealConductorShear, FittedExponentExceedsTheQuadraticLaw) {
  for (const auto& p : {table_params_300hz(), table_params_400hz(), table_params_500hz()})
    EXPECT_GT(p.exponent_n1, 2.0);
}

TEST(RingTorque, Constant) {
  EXPECT_EQ(ring_torque(0.0, default_geometry()), 0.0);
  EXPECT_NEAR(ring_torque(1.0, default_geometry()), kRingConstant, 1e-12 * kRingConstant);
  EXPECT_NEAR(ring_torque(1.0e4, default_geometry()), 3.1835, 1e-4);
}

TEST(RingTorque, LinearProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a(0.0, 100.0), s(0.0, 2e4);
  for (int i = 0; i < 1000; ++i) {
    const double k = a(rng), sigma = s(rng);
    const double lhs = ring_torque(k * sigma, default_geometry());
    const double rhs = k * ring_torque(sigma, default_geometry());
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Softplus, StableAtExtremes) {
  EXPECT_DOUBLE_EQ(softplus(0.0), std::log(2.0));
  EXPECT_DOUBLE_EQ(softplus(1e4), 1e4);
  EXPECT_TRUE(std::isfinite(softplus(800.0)));
  EXPECT_LT(softplus(-800.0), 1e-300);
}

TEST(EffectiveVoltage, FarBelowSaturationIsIdentity) {
  const auto p = table_params_300hz();
  EXPECT_DOUBLE_EQ(effective_voltage(100.0, p), 100.0);
  // delta (v - c) <= -30 leaves v untouched to 1e-12 relative.
  const double v = p.sat_voltage_c - 30.0 / p.sharpness_delta;
  EXPECT_NEAR(effective_voltage(v, p), v, 1e-12 * v);
}

TEST(EffectiveVoltage, AtSaturationVoltageLosesLn2) {
  // Holds wherever c sits below the knee, i.e. delta <= 2. For sharper
  // saturation the clamp already caps the output before v reaches c.
  AcSteadyParams p = table_params_300hz();
  for (double delta : {0.05, 0.5, 1.0, 1.5, 2.0}) {
    p.sharpness_delta = delta;
    EXPECT_NEAR(effective_voltage(p.sat_voltage_c, p), p.sat_voltage_c - std::log(2.0), 1e-12);
  }
  p.sharpness_delta = 38.89;
  EXPECT_GT(effective_voltage(p.sat_voltage_c, p), p.sat_voltage_c - std::log(2.0));
}

TEST(EffectiveVoltage, KneeAndPlateau) {
  const auto p = table_params_300hz();
  EXPECT_NEAR(saturation_knee(p), kKnee300Hz, 1e-9);
  EXPECT_NEAR(effective_voltage(340.0, p), kVeffMax300Hz, 1e-9);
  EXPECT_TRUE(std::isinf(saturation_knee(AcSteadyParams{1e-4, 3.0, 300.0, 1.0, 1.0})));
}

TEST(EffectiveVoltage, BoundedByInputAndMonotoneOnDenseGrid) {
  for (const auto& p : {table_params_300hz(), table_params_400hz(), table_params_500hz()}) {
    double prev = -1e300;
    for (int i = 0; i <= 34000; ++i) {
      const double v = 0.01 * i;
      const double ve = effective_voltage(v, p);
      EXPECT_LE(ve, v);
      EXPECT_GE(ve, prev) << "frequency " << p.frequency << " v " << v;
      prev = ve;
    }
  }
}

TEST(AcSteadyShear, PreloadOnlyAtZeroVoltage) {
  EXPECT_NEAR(ac_steady_shear(0.0, table_params_300hz(), DielectricStack{}), 0.02, 1e-15);
}

TEST(AcSteadyShear, ParameterSetsAt250V) {
  const DielectricStack s;
  const auto g = default_geometry();
  EXPECT_NEAR(ring_torque(ac_steady_shear(250.0, table_params_300hz(), s), g), kTorque300Hz250V, 1e-9);
  EXPECT_NEAR(ring_torque(ac_steady_shear(250.0, table_params_400hz(), s), g), kTorque400Hz250V, 1e-9);
  EXPECT_NEAR(ring_torque(ac_steady_shear(250.0, table_params_500hz(), s), g), kTorque500Hz250V, 1e-9);
  EXPECT_NEAR(ac_steady_shear(250.0, table_params_300hz(), s), 1.040e4, 1e-3 * 1.040e4);
}

TEST(AcSteadyShear, MaximumWithinBracket) {
  const double t = ring_torque(ac_steady_shear(340.0, table_params_300hz(), DielectricStack{}), default_geometry());
  EXPECT_NEAR(t, kTorque300Hz340V, 1e-9);
  EXPECT_GE(t, 2.0);
  EXPECT_LE(t, 8.0);
}

TEST(AcSteadyShear, RejectsVoltageAboveLimit) {
  try {
    ac_steady_shear(341.0, table_params_300hz(), DielectricStack{});
    FAIL() << "expected VoltageOutOfDomain";
  } catch (const VoltageOutOfDomain& e) {
    EXPECT_EQ(e.limit(), 340.0);
  }
  EXPECT_THROW(ac_steady_shear(-1.0, table_params_300hz(), DielectricStack{}), VoltageOutOfDomain);
}

TEST(ActivationEnvelope, Values) {
  const TransientParams tp;
  EXPECT_EQ(activation_envelope(0.0, tp), 0.0);
  EXPECT_NEAR(activation_envelope(0.14, tp), kEnvelopeAtTau1, 1e-12);
  EXPECT_NEAR(activation_envelope(40.0 * tp.tau_2, tp), 1.0, 1e-9);
}

TEST(ActivationEnvelope, MonotoneAndBoundedProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double t1 = 0.01 + 5.0 * u(rng);
    const TransientParams tp{u(rng), t1, t1 + 50.0 * u(rng)};
    const double t = 200.0 * u(rng);
    const double dt = 0.5 * u(rng);
    const double a = activation_envelope(t, tp), b = activation_envelope(t + dt, tp);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
    EXPECT_LE(a, b);
  }
}

TEST(AcShear, EnvelopeScalesSteadyValue) {
  const auto m = default_model();
  EXPECT_EQ(ac_shear(0.0, 250.0, m, 300.0), 0.0);
  const double steady = ac_steady_shear(250.0, m.ac_params(300.0), m.stack);
  EXPECT_NEAR(ac_shear(40.0 * m.transient.tau_2, 250.0, m, 300.0), steady, 1e-9 * steady);
}

TEST(AcShear, UnknownFrequencyIsMissingParameterSet) {
  const auto m = default_model();
  EXPECT_THROW(ac_shear(1.0, 200.0, m, 350.0), MissingParameterSet);
}

TEST(DegradationFraction, HandValueAndClamp) {
  const DcDegradationParams dc;
  EXPECT_NEAR(degradation_fraction(200.0, dc), kDegradation200V, 1e-12);
  EXPECT_EQ(degradation_fraction(300.0, dc), 1.0);
  EXPECT_EQ(degradation_fraction(0.0, dc), 0.0);
}

TEST(DcShear, OnsetAndSettledFraction) {
  const auto m = default_model();
  EXPECT_EQ(dc_shear(0.0, 200.0, m), 0.0);
  const double t = 40.0 * m.transient.tau_2;
  const double ratio = dc_shear(t, 200.0, m) / ac_shear(t, 200.0, m, 300.0);
  EXPECT_NEAR(ratio, 1.0 - kDegradation200V, 1e-9);
}

TEST(DcShear, DegradationReaches63PercentAtTauD) {
  const auto m = default_model();
  const double t = m.dc.tau_d;
  const double lost = 1.0 - dc_shear(t, 200.0, m) / ac_shear(t, 200.0, m, 300.0);
  EXPECT_NEAR(lost / degradation_fraction(200.0, m.dc), 1.0 - std::exp(-1.0), 1e-12);
}

TEST(DcShear, BoundedByAcShearProperty) {
  const auto m = default_model();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tv(0.0, 300.0), vv(0.0, 340.0);
  for (int i = 0; i < 5000; ++i) {
    const double t = tv(rng), v = vv(rng);
    const double dc = dc_shear(t, v, m);
    EXPECT_GE(dc, 0.0);
    EXPECT_LE(dc, ac_shear(t, v, m, 300.0));
  }
}

TEST(ResidualShear, StartsAtDeficitAndDecays) {
  const auto m = default_model();
  for (double t : {0.0, 10.0, 100.0}) EXPECT_EQ(residual_shear(t, 300.0, 0.0, m), 0.0);

  const double steady = ac_steady_shear(200.0, m.dc_base_params(), m.stack);
  const double deficit = steady * (1.0 - std::exp(-180.0 / m.dc.tau_d)) * kDegradation200V;
  EXPECT_NEAR(residual_shear(0.0, 200.0, 180.0, m), deficit, 1e-9 * deficit);
  EXPECT_LT(residual_shear(5.0 * m.dc.tau_d, 200.0, 180.0, m), 0.01 * deficit);
}

TEST(CoreModels, PureFunctionsAreBitReproducible) {
  const auto m = default_model();
  for (int i = 0; i < 100; ++i) {
    const double v = 3.37 * i;
    EXPECT_EQ(dc_shear(0.7 * i, v, m), dc_shear(0.7 * i, v, m));
    EXPECT_EQ(effective_voltage(v, m.ac_params(400.0)), effective_voltage(v, m.ac_params(400.0)));
  }
}

TEST(ClutchModel, DefaultValidatesAndBadValuesThrow) {
  auto m = default_model();
  EXPECT_NO_THROW(m.validate());
  m.geometry.r_inner = 0.07;
  EXPECT_THROW(m.validate(), InputError);
  m = default_model();
  m.transient.tau_1 = 30.0;
  EXPECT_THROW(m.validate(), InputError);
}

}  // namespace
}  // namespace eacl
