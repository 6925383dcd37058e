#pragma once

// Small dense Levenberg-Marquardt solver for the identification fits.
// Problems here have 3-4 parameters and up to ~10^5 residuals, so the normal
// equations are formed explicitly and solved with LDLT.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace eacl {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

struct LmOptions {
  int max_iterations = 400;
  double gradient_tol = 1e-8;  // infinity norm of J^T r
  double step_tol = 1e-12;     // 2-norm of the accepted/attempted step
  double initial_lambda = 1e-3;
  double max_lambda = 1e16;
  double fd_relative_step = 1e-6;
};

struct LmResult {
  Eigen::VectorXd x;
  double cost = 0.0;  // 0.5 * ||r||^2
  int iterations = 0;
  bool converged = false;
  // Cost after every accepted step, starting with the initial cost.
  std::vector<double> cost_history;
};

// Central-difference Jacobian of `f` at x.
Eigen::MatrixXd numeric_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                                 double relative_step = 1e-6);

// Minimizes 0.5 * ||f(x)||^2 from x0. When `jac` is empty a central-difference
// Jacobian is used. Converged means the gradient or step criterion fired
// before the iteration budget ran out.
LmResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x0,
                             const LmOptions& opts = {}, const JacobianFn& jac = {});

}  // namespace eacl
