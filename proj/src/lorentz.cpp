#include "htree/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "htree/errors.hpp"
#include "htree/spectral.hpp"

namespace htree {

Eigen::VectorXd decreasing_rearrangement(const Eigen::VectorXcd& values) {
  Eigen::VectorXd sorted = values.cwiseAbs();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return sorted;
}

double lorentz_norm_sorted(const Eigen::VectorXd& sorted, double p, double r,
                           double step) {
  if (!(p >= 1) || std::isinf(p))
    throw DomainError("Lorentz exponent p must lie in [1, inf)");
  if (!(r >= 1)) throw DomainError("Lorentz index r must lie in [1, inf]");
  if (std::isinf(r)) {
    double best = 0;
    for (Eigen::Index k = 0; k < sorted.size(); ++k)
      best = std::max(best, std::pow((k + 1) * step, 1.0 / p) * sorted[k]);
    return best;
  }
  const double e = r / p;
  double sum = 0;
  for (Eigen::Index k = 0; k < sorted.size(); ++k) {
    if (sorted[k] == 0) break;
    sum += std::pow(sorted[k], r) *
           (std::pow((k + 1) * step, e) - std::pow(k * step, e));
  }
  return std::pow(sum, 1.0 / r);
}

double lorentz_norm(const Eigen::VectorXcd& values, double p, double r) {
  return lorentz_norm_sorted(decreasing_rearrangement(values), p, r);
}

double lorentz_norm(const TreeFunction& f, double p, double r) {
  return lorentz_norm(f.values(), p, r);
}

double boundary_lorentz_norm(const CylinderFunction& f, double p, double r) {
  return lorentz_norm_sorted(decreasing_rearrangement(f.values()), p, r,
                             to_double(cylinder_measure(f.tree(), f.depth())));
}

std::vector<WeakNormRow> weak_norm_growth(const TreeFunction& u, double p,
                                          const std::vector<int>& radii) {
  std::vector<WeakNormRow> rows;
  for (int radius : radii) {
    if (radius < 0 || radius > u.radius())
      throw DomainError("growth radius outside the function's ball");
    const Eigen::VectorXcd restricted = u.values().head(ball_size(u.tree(), radius));
    WeakNormRow row;
    row.radius = radius;
    row.weak = lorentz_norm(restricted, p, kInfinity);
    row.strong = lorentz_norm(restricted, p, p);
    row.average = radius == 0
                      ? 0.0
                      : restricted.cwiseAbs().array().pow(p).sum() / radius;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace htree
