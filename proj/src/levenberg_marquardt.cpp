#include "eacl/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eacl {

Eigen::MatrixXd numeric_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                                 double relative_step) {
  Eigen::MatrixXd jac;
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = relative_step * std::max(std::abs(x[j]), 1.0);
    xp[j] = x[j] + h;
    const Eigen::VectorXd fp = f(xp);
    xp[j] = x[j] - h;
    const Eigen::VectorXd fm = f(xp);
    xp[j] = x[j];
    if (jac.size() == 0) jac.resize(fp.size(), x.size());
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x0, const LmOptions& opts,
                             const JacobianFn& jac) {
  LmResult res;
  res.x = std::move(x0);
  Eigen::VectorXd r = f(res.x);
  res.cost = all_finite(r) ? 0.5 * r.squaredNorm() : std::numeric_limits<double>::infinity();
  res.cost_history.push_back(res.cost);
  if (!std::isfinite(res.cost)) return res;

  double lambda = opts.initial_lambda;
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    const Eigen::MatrixXd J = jac ? jac(res.x) : numeric_jacobian(f, res.x, opts.fd_relative_step);
    const Eigen::VectorXd g = J.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tol) {
      res.converged = true;
      return res;
    }
    const Eigen::MatrixXd A = J.transpose() * J;
    Eigen::VectorXd scale = A.diagonal().cwiseMax(1e-12);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd H = A;
      H.diagonal() += lambda * scale;
      const Eigen::VectorXd h = H.ldlt().solve(-g);
      if (!all_finite(h) || h.norm() < opts.step_tol) {
        // The damped step has collapsed: no descent is left to find.
        res.converged = all_finite(h);
        return res;
      }
      const Eigen::VectorXd xn = res.x + h;
      const Eigen::VectorXd rn = f(xn);
      const double cost_n =
          all_finite(rn) ? 0.5 * rn.squaredNorm() : std::numeric_limits<double>::infinity();
      if (cost_n < res.cost) {
        res.x = xn;
        r = rn;
        res.cost = cost_n;
        res.cost_history.push_back(cost_n);
        lambda = std::max(lambda * 0.3, 1e-15);
        accepted = true;
      } else {
        lambda *= 10.0;
        if (lambda > opts.max_lambda) return res;
      }
    }
  }
  return res;
}

}  // namespace eacl
