#include "htree/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "htree/errors.hpp"
#include "htree/lorentz.hpp"
#include "htree/poisson.hpp"

namespace htree {

HeightProfile::HeightProfile(const TreeFunction& f, int depth)
    : tree_(f.tree()), radius_(f.radius()), depth_(std::max(depth, f.radius())) {
  check_level(tree_, depth_);
  const Eigen::Index cylinders = sphere_size(tree_, depth_);
  weights_ = Eigen::MatrixXcd::Zero(cylinders, 2 * radius_ + 1);

  // running sums per level: the descendants of a vertex are a contiguous block
  std::vector<Eigen::VectorXcd> partial(static_cast<std::size_t>(radius_ + 1));
  for (int k = 0; k <= radius_; ++k) {
    const auto lv = f.level(k);
    Eigen::VectorXcd acc(lv.size() + 1);
    acc[0] = 0;
    for (Eigen::Index i = 0; i < lv.size(); ++i) acc[i + 1] = acc[i] + lv[i];
    partial[static_cast<std::size_t>(k)] = std::move(acc);
  }
  // sum of f over level k below the level-l vertex with index a
  auto subtree = [&](int k, int l, std::int64_t a) {
    const std::int64_t b = descendant_count(tree_, l, k);
    const auto& acc = partial[static_cast<std::size_t>(k)];
    return acc[(a + 1) * b] - acc[a * b];
  };

  std::vector<std::int64_t> stride(static_cast<std::size_t>(radius_ + 2));
  for (int l = 0; l <= std::min(radius_ + 1, depth_); ++l)
    stride[static_cast<std::size_t>(l)] = descendant_count(tree_, l, depth_);

  for (Eigen::Index c = 0; c < cylinders; ++c) {
    for (int k = 0; k <= radius_; ++k) {
      for (int l = 0; l <= k; ++l) {
        Complex mass = subtree(k, l, c / stride[static_cast<std::size_t>(l)]);
        if (l < k) mass -= subtree(k, l + 1, c / stride[static_cast<std::size_t>(l + 1)]);
        weights_(c, 2 * l - k + radius_) += mass;
      }
    }
  }
}

CylinderFunction HeightProfile::evaluate(const SpectralParam& z) const {
  if (!(z.tree() == tree_)) throw DomainError("mismatched trees");
  Eigen::VectorXcd powers(2 * radius_ + 1);
  for (int h = -radius_; h <= radius_; ++h) powers[h + radius_] = kernel_power(z, h);
  return {tree_, depth_, weights_ * powers};
}

CylinderFunction hf_transform(const TreeFunction& f, const SpectralParam& z,
                              int depth) {
  return HeightProfile(f, depth).evaluate(z);
}

Complex spherical_transform(const TreeFunction& f, const SpectralParam& z) {
  const Eigen::VectorXcd profile = f.radial_profile();
  Complex sum = 0;
  for (int n = 0; n <= f.radius(); ++n)
    sum += profile[n] * static_cast<double>(sphere_size(f.tree(), n)) * spherical(z, n);
  return sum;
}

SpectralSample sample_spectrum(const PlancherelMeasure& measure, int points,
                               const TreeFunction* f) {
  SpectralSample out;
  out.grid = spectral_grid(measure.tree(), points);
  out.weights = measure.weights(points);
  if (f != nullptr) {
    const HeightProfile profile(*f);
    for (double s : out.grid)
      out.transforms.push_back(profile.evaluate(SpectralParam(measure.tree(), s)));
  }
  return out;
}

InversionReport invert(const TreeFunction& f, const PlancherelMeasure& measure,
                       int points) {
  const auto& tree = f.tree();
  if (!(measure.tree() == tree)) throw DomainError("mismatched trees");
  InversionReport report;
  report.points = points;
  if (points < 256 || !std::has_single_bit(static_cast<unsigned>(points)))
    report.grid_warning = "grid size " + std::to_string(points) +
                          " is not a power of two >= 256";

  const HeightProfile profile(f);
  const Eigen::VectorXd grid = spectral_grid(tree, points);
  const Eigen::VectorXd weights = measure.weights(points);
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(f.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const CylinderFunction g = profile.evaluate(SpectralParam(tree, grid[j]));
    sum += weights[j] *
           poisson_transform(SpectralParam(tree, -grid[j]), g, f.radius()).values();
  }
  report.reconstruction = TreeFunction(tree, f.radius(), std::move(sum));
  report.max_error =
      (report.reconstruction.values() - f.values()).cwiseAbs().maxCoeff();
  return report;
}

Eigen::VectorXcd invert_radial(const TreeFunction& f,
                               const PlancherelMeasure& measure, int points) {
  const auto& tree = f.tree();
  const Eigen::VectorXd grid = spectral_grid(tree, points);
  const Eigen::VectorXd weights = measure.weights(points);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(f.radius() + 1);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const Complex transform = spherical_transform(f, SpectralParam(tree, grid[j]));
    const SpectralParam minus(tree, -grid[j]);
    for (int n = 0; n <= f.radius(); ++n)
      out[n] += weights[j] * transform * spherical(minus, n);
  }
  return out;
}

ParsevalReport parseval(const TreeFunction& f1, const TreeFunction& f2,
                        const PlancherelMeasure& measure, int points) {
  const auto& tree = f1.tree();
  if (!(f2.tree() == tree) || !(measure.tree() == tree))
    throw DomainError("mismatched trees");
  const int radius = std::max(f1.radius(), f2.radius());
  const TreeFunction a = f1.resized(radius);
  const TreeFunction b = f2.resized(radius);

  ParsevalReport report;
  report.lhs = (a.values().array() * b.values().array().conjugate()).sum();

  const HeightProfile pa(a, radius);
  const HeightProfile pb(b, radius);
  const Eigen::VectorXd grid = spectral_grid(tree, points);
  const Eigen::VectorXd weights = measure.weights(points);
  Complex rhs = 0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const SpectralParam s(tree, grid[j]);
    rhs += weights[j] * inner(pa.evaluate(s), pb.evaluate(s));
  }
  report.rhs = rhs;
  report.residual = std::abs(report.lhs - report.rhs);
  const double scale = a.values().norm() * b.values().norm();
  report.relative = scale > 0 ? report.residual / scale : report.residual;
  return report;
}

double symmetry_residual(const CylinderFunction& g_plus,
                         const CylinderFunction& g_minus, const Vertex& x,
                         double s) {
  const auto& tree = g_plus.tree();
  validate(tree, x);
  const std::int64_t index = level_index(tree, x);
  const Complex left =
      poisson_transform_level(SpectralParam(tree, -s), g_plus, x.length())[index];
  const Complex right =
      poisson_transform_level(SpectralParam(tree, s), g_minus, x.length())[index];
  return std::abs(left - right);
}

double symmetry_residual(const TreeFunction& f, const Vertex& x, double s) {
  const HeightProfile profile(f);
  const auto& tree = f.tree();
  return symmetry_residual(profile.evaluate(SpectralParam(tree, s)),
                           profile.evaluate(SpectralParam(tree, -s)), x, s);
}

double restriction_lhs(const TreeFunction& f, const SpectralParam& z, double r) {
  return boundary_lp_norm(hf_transform(f, z), r);
}

}  // namespace htree
