#pragma once

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "htree/boundary.hpp"
#include "htree/tree_function.hpp"

namespace htree {

/// Nonincreasing rearrangement a_1 >= a_2 >= ... of |f| on counting measure.
Eigen::VectorXd decreasing_rearrangement(const Eigen::VectorXcd& values);

/// Lorentz functional for a step rearrangement whose k-th step has length
/// `step` (1 for counting measure).  r < inf:
///   (sum_k a_k^r ((k step)^{r/p} - ((k-1) step)^{r/p}))^{1/r};
/// r = inf: max_k (k step)^{1/p} a_k.
double lorentz_norm_sorted(const Eigen::VectorXd& sorted, double p, double r,
                           double step = 1.0);

/// ||f||_{p,r} on counting measure, p in [1, inf), r in [1, inf].
double lorentz_norm(const TreeFunction& f, double p, double r);
double lorentz_norm(const Eigen::VectorXcd& values, double p, double r);

/// ||F||_{L^p(Omega)}; p = inf is the max over cylinders.
template <typename Scalar>
double boundary_lp_norm(const BasicCylinderFunction<Scalar>& f, double p) {
  if (!(p >= 1)) throw DomainError("boundary norm exponent must be >= 1");
  const Eigen::VectorXd mag = f.values().cwiseAbs().template cast<double>();
  if (std::isinf(p)) return mag.maxCoeff();
  const double mean = mag.array().pow(p).mean();
  return std::pow(mean, 1.0 / p);
}

/// ||F||_{p,r} on (Omega, nu) for a simple function.
double boundary_lorentz_norm(const CylinderFunction& f, double p, double r);

struct WeakNormRow {
  int radius = 0;
  /// ||u||_{p,inf} on B(o, radius)
  double weak = 0;
  /// ||u||_{p,p} on B(o, radius)
  double strong = 0;
  /// (1/radius) sum_{B(o,radius)} |u|^p (0 for radius 0)
  double average = 0;
};

std::vector<WeakNormRow> weak_norm_growth(const TreeFunction& u, double p,
                                          const std::vector<int>& radii);

}  // namespace htree
