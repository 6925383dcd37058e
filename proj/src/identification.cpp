#include "eacl/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "eacl/errors.hpp"

namespace eacl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double a) { return std::log(a / (1.0 - a)); }

// Lowest cost wins; equal costs resolve to the lower restart index.
std::size_t pick_best(const std::vector<LmResult>& results) {
  std::size_t best = 0;
  double best_cost = kInf;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (std::isfinite(results[i].cost) && results[i].cost < best_cost) {
      best_cost = results[i].cost;
      best = i;
    }
  }
  return best;
}

template <class P>
FitReport<P> make_report(const LmResult& lm, P params, std::size_t n_residuals,
                         std::size_t restarts, double torque_scale = 1.0) {
  FitReport<P> rep;
  rep.params = params;
  rep.rmse = torque_scale * std::sqrt(2.0 * lm.cost / static_cast<double>(n_residuals));
  rep.iterations = lm.iterations;
  rep.converged = lm.converged;
  rep.restarts_used = static_cast<int>(restarts);
  rep.objective_history = lm.cost_history;
  return rep;
}

// Sharpness is only seen through points near the knee; without a cap it can
// run off toward a hard min(v, c).
constexpr double kMaxSharpness = 1000.0;  // 1/V

AcSteadyParams decode_steady(const Eigen::VectorXd& x, double frequency) {
  return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), kMaxSharpness * logistic(x[3]), frequency};
}

TransientParams decode_transient(const Eigen::VectorXd& x) {
  return {logistic(x[0]), std::exp(x[1]), std::exp(x[2])};
}

// Orders the components fast-then-slow and folds a collapsed second
// exponential into a single-exponential form (alpha = 1, tau_2 = tau_1).
TransientParams canonical_transient(TransientParams p, bool& secondary_identifiable) {
  if (p.tau_1 > p.tau_2) {
    std::swap(p.tau_1, p.tau_2);
    p.alpha = 1.0 - p.alpha;
  }
  secondary_identifiable = true;
  if (p.alpha <= 0.01) {
    p.alpha = 1.0;
    p.tau_1 = p.tau_2;
    secondary_identifiable = false;
  } else if (std::abs(p.tau_2 - p.tau_1) <= 0.01 * p.tau_2) {
    p.alpha = 1.0;
    p.tau_2 = p.tau_1;
    secondary_identifiable = false;
  } else if (p.alpha >= 0.99) {
    secondary_identifiable = false;
  }
  return p;
}

struct DcSamples {
  std::vector<double> t;
  std::vector<double> base;  // frozen AC torque at the same instant
  std::vector<double> y;
  std::vector<double> log_v;
  std::vector<double> v;
};

DcSamples collect_dc(std::span<const DcRun> runs, const ClutchGeometry& geom,
                     const DielectricStack& stack, const AcSteadyParams& ac,
                     const TransientParams& transient, double min_horizon) {
  if (runs.empty()) throw InputError("DC fit needs at least one run");
  DcSamples s;
  for (const auto& run : runs) {
    if (!(run.volts > 0.0)) throw InputError("DC run voltage must be positive");
    const auto window = activation_window(run.trace);
    if (window.size() < 3 || window.back().t < min_horizon)
      throw InsufficientHorizon("DC activation shorter than 3 degradation time constants");
    const double steady = steady_torque(run.volts, ac, geom, stack);
    for (const auto& row : window) {
      s.t.push_back(row.t);
      s.base.push_back(steady * activation_envelope(row.t, transient));
      s.y.push_back(row.transmitted);
      s.log_v.push_back(std::log(run.volts));
      s.v.push_back(run.volts);
    }
  }
  return s;
}

double dc_prediction(const DcSamples& s, std::size_t i, const DcDegradationParams& p) {
  const double progress = -std::expm1(-s.t[i] / p.tau_d);
  return s.base[i] * (1.0 - progress * degradation_fraction(s.v[i], p));
}

}  // namespace

void SteadyDataset::validate() const {
  if (points.size() >= 2) {
    const bool same = std::all_of(points.begin(), points.end(),
                                  [&](const SteadyPoint& p) { return p.v == points.front().v; });
    if (same) throw RankDeficientData("steady dataset is rank deficient: all points share one voltage");
  }
  if (points.size() < 6) throw InputError("steady dataset needs at least 6 points");
  std::set<double> seen;
  for (const auto& p : points) {
    if (!(p.v >= 0.0 && p.v <= kDefaultVoltageLimit))
      throw InputError("steady dataset voltage outside [0, 340] V");
    if (!std::isfinite(p.torque_mean)) throw InputError("steady dataset torque is not finite");
    if (!seen.insert(p.v).second) throw InputError("steady dataset voltages must be distinct");
  }
}

double steady_torque(double v, const AcSteadyParams& p, const ClutchGeometry& geom,
                     const DielectricStack& stack) {
  return ring_torque(ac_steady_shear(v, p, stack, kInf), geom);
}

std::vector<TraceRow> activation_window(const TorqueTrace& trace) {
  std::vector<TraceRow> out;
  auto it = std::find_if(trace.rows.begin(), trace.rows.end(),
                         [](const TraceRow& r) { return r.v_command > 0.0; });
  if (it == trace.rows.end()) return out;
  const double onset = it->t;
  const double level = it->v_command;
  for (; it != trace.rows.end() && it->v_command == level; ++it) {
    TraceRow r = *it;
    r.t -= onset;
    out.push_back(r);
  }
  return out;
}

FitReport<AcSteadyParams> fit_ac_steady(const SteadyDataset& data, const ClutchGeometry& geom,
                                        const DielectricStack& stack, const FitOptions& opts) {
  data.validate();
  geom.validate();
  stack.validate();

  std::vector<SteadyPoint> pts = data.points;
  std::sort(pts.begin(), pts.end(),
            [](const SteadyPoint& a, const SteadyPoint& b) { return a.v < b.v; });
  const auto n = static_cast<Eigen::Index>(pts.size());
  const double freq = data.frequency;

  const ResidualFn residual = [&](const Eigen::VectorXd& x) {
    const AcSteadyParams p = decode_steady(x, freq);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i)
      r[i] = steady_torque(pts[i].v, p, geom, stack) - pts[i].torque_mean;
    return r;
  };

  // Gain seeded so each start passes through the mid-range sample.
  const SteadyPoint& mid = pts[pts.size() / 2];
  const double field = stack.eps_r * stack.eps_0 / (stack.thickness_d * stack.thickness_d);
  const double mid_shear =
      std::max(std::max(mid.torque_mean, 1e-3) / (ring_torque(1.0, geom) * stack.c_f) -
                   stack.sigma_0,
               1e-9);

  std::vector<Eigen::VectorXd> starts;
  for (double n1 : {2.0, 3.0, 4.0})
    for (double c : {250.0, 280.0, 310.0})
      for (double delta : {1.0, 10.0, 40.0}) {
        AcSteadyParams trial{1.0, n1, c, delta, freq};
        const double veff = std::max(effective_voltage(mid.v, trial), 1e-9);
        const double gain = std::max(mid_shear / (field * std::pow(veff, n1)), 1e-300);
        Eigen::VectorXd x(4);
        x << std::log(gain), std::log(n1), std::log(c), logit(delta / kMaxSharpness);
        starts.push_back(x);
      }

  const auto results = map_indices(
      starts.size(), [&](std::size_t i) { return levenberg_marquardt(residual, starts[i], opts.lm); },
      opts.execution);
  const LmResult& best = results[pick_best(results)];
  return make_report(best, decode_steady(best.x, freq), pts.size(), starts.size());
}

FitReport<TransientParams> fit_transient(const TorqueTrace& trace, double steady_value,
                                         const TransientFitOptions& opts) {
  if (!(steady_value > 0.0)) throw InputError("steady value must be positive");
  const auto window = activation_window(trace);
  if (window.size() < 3 || window.back().t < 3.0 * opts.tau2_guess)
    throw InsufficientHorizon("activation window shorter than 3 slow time constants");

  const auto n = static_cast<Eigen::Index>(window.size());
  Eigen::VectorXd t(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t[i] = window[i].t;
    y[i] = window[i].transmitted / steady_value;
  }

  const ResidualFn residual = [&](const Eigen::VectorXd& x) {
    const TransientParams p = decode_transient(x);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) r[i] = activation_envelope(t[i], p) - y[i];
    return r;
  };
  const JacobianFn jacobian = [&](const Eigen::VectorXd& x) {
    const TransientParams p = decode_transient(x);
    Eigen::MatrixXd J(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double e1 = std::exp(-t[i] / p.tau_1);
      const double e2 = std::exp(-t[i] / p.tau_2);
      J(i, 0) = p.alpha * (1.0 - p.alpha) * (e2 - e1);
      J(i, 1) = -p.alpha * e1 * t[i] / p.tau_1;
      J(i, 2) = -(1.0 - p.alpha) * e2 * t[i] / p.tau_2;
    }
    return J;
  };

  std::vector<Eigen::VectorXd> starts;
  for (double alpha : {0.5, 0.8})
    for (double tau1 : {0.05, 0.5})
      for (double tau2 : {5.0, 50.0}) {
        Eigen::VectorXd x(3);
        x << logit(alpha), std::log(tau1), std::log(tau2);
        starts.push_back(x);
      }

  const auto results = map_indices(
      starts.size(),
      [&](std::size_t i) { return levenberg_marquardt(residual, starts[i], opts.base.lm, jacobian); },
      opts.base.execution);
  const LmResult& best = results[pick_best(results)];
  bool identifiable = true;
  const TransientParams params = canonical_transient(decode_transient(best.x), identifiable);
  auto rep = make_report(best, params, window.size(), starts.size(), steady_value);
  rep.secondary_identifiable = identifiable;
  return rep;
}

FitReport<DcDegradationParams> fit_dc(std::span<const DcRun> runs, const ClutchGeometry& geom,
                                      const DielectricStack& stack, const AcSteadyParams& ac,
                                      const TransientParams& transient,
                                      const DcFitOptions& opts) {
  const DcSamples s = collect_dc(runs, geom, stack, ac, transient, 3.0 * opts.tau_d_guess);
  std::set<double> voltages;
  double v_ref = 0.0;
  for (const auto& run : runs) {
    voltages.insert(run.volts);
    v_ref = std::max(v_ref, run.volts);
  }
  const bool fit_n2 = voltages.size() >= 2;
  const auto n = static_cast<Eigen::Index>(s.t.size());

  const auto decode = [&](const Eigen::VectorXd& x) {
    return fit_n2 ? DcDegradationParams{std::exp(x[0]), x[1], std::exp(x[2])}
                  : DcDegradationParams{std::exp(x[0]), opts.fixed_n2, std::exp(x[1])};
  };

  const ResidualFn residual = [&](const Eigen::VectorXd& x) {
    const DcDegradationParams p = decode(x);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) r[i] = dc_prediction(s, i, p) - s.y[i];
    return r;
  };
  const JacobianFn jacobian = [&](const Eigen::VectorXd& x) {
    const DcDegradationParams p = decode(x);
    Eigen::MatrixXd J(n, x.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      const double decay = std::exp(-s.t[i] / p.tau_d);
      const double progress = -std::expm1(-s.t[i] / p.tau_d);
      const double raw_g = p.coeff_Cs * std::pow(s.v[i], p.exponent_n2);
      const double g = std::min(raw_g, 1.0);
      // Clamped region: only tau_d still moves the prediction.
      const double dg = raw_g < 1.0 ? raw_g : 0.0;
      J(i, 0) = s.base[i] * g * decay * s.t[i] / p.tau_d;
      if (fit_n2) {
        J(i, 1) = -s.base[i] * progress * dg * s.log_v[i];
        J(i, 2) = -s.base[i] * progress * dg;
      } else {
        J(i, 1) = -s.base[i] * progress * dg;
      }
    }
    return J;
  };

  std::vector<Eigen::VectorXd> starts;
  for (double tau_d : {5.0, 20.0, 60.0}) {
    const std::vector<double> n2_grid = fit_n2 ? std::vector<double>{0.5, 1.0, 2.0}
                                               : std::vector<double>{opts.fixed_n2};
    for (double n2 : n2_grid) {
      const double cs = 0.5 / std::pow(v_ref, n2);
      Eigen::VectorXd x(fit_n2 ? 3 : 2);
      if (fit_n2)
        x << std::log(tau_d), n2, std::log(cs);
      else
        x << std::log(tau_d), std::log(cs);
      starts.push_back(x);
    }
  }

  const auto results = map_indices(
      starts.size(),
      [&](std::size_t i) { return levenberg_marquardt(residual, starts[i], opts.base.lm, jacobian); },
      opts.base.execution);
  const LmResult& best = results[pick_best(results)];
  auto rep = make_report(best, decode(best.x), s.t.size(), starts.size());
  rep.secondary_identifiable = fit_n2;
  return rep;
}

FitReport<DcDegradationParams> fit_dc(const TorqueTrace& trace, const AcSteadyParams& ac,
                                      const TransientParams& transient, double v,
                                      const ClutchGeometry& geom, const DielectricStack& stack,
                                      const DcFitOptions& opts) {
  const DcRun run{trace, v};
  return fit_dc(std::span<const DcRun>(&run, 1), geom, stack, ac, transient, opts);
}

double predict_rmse(const AcSteadyParams& p, const SteadyDataset& data,
                    const ClutchGeometry& geom, const DielectricStack& stack) {
  if (data.points.empty()) throw InputError("cannot score an empty dataset");
  double sum = 0.0;
  for (const auto& pt : data.points) {
    const double d = steady_torque(pt.v, p, geom, stack) - pt.torque_mean;
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(data.points.size()));
}

double predict_rmse(const TransientParams& p, const TorqueTrace& trace, double steady_value) {
  const auto window = activation_window(trace);
  if (window.empty()) throw InputError("trace has no activation to score");
  double sum = 0.0;
  for (const auto& row : window) {
    const double d = steady_value * activation_envelope(row.t, p) - row.transmitted;
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(window.size()));
}

double predict_rmse(const DcDegradationParams& p, std::span<const DcRun> runs,
                    const ClutchGeometry& geom, const DielectricStack& stack,
                    const AcSteadyParams& ac, const TransientParams& transient) {
  const DcSamples s = collect_dc(runs, geom, stack, ac, transient, 0.0);
  if (s.t.empty()) throw InputError("no DC samples to score");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double d = dc_prediction(s, i, p) - s.y[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(s.t.size()));
}

double curve_rmse(const AcSteadyParams& a, const AcSteadyParams& b,
                  std::span<const double> voltages, const ClutchGeometry& geom,
                  const DielectricStack& stack) {
  if (voltages.empty()) throw InputError("curve comparison needs voltages");
  double sum = 0.0;
  for (double v : voltages) {
    const double d = steady_torque(v, a, geom, stack) - steady_torque(v, b, geom, stack);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(voltages.size()));
}

}  // namespace eacl
