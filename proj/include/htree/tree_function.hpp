#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>

#include "htree/tree.hpp"

namespace htree {

using Complex = std::complex<double>;

/// Complex function on the ball B(o, radius), zero outside it.
///
/// Values are stored in ball order: level by level, lexicographic within a
/// level, so level(n) is a contiguous segment of values().
class TreeFunction {
 public:
  TreeFunction() : TreeFunction(TreeParams{}, 0) {}
  TreeFunction(const TreeParams& tree, int radius);
  TreeFunction(const TreeParams& tree, int radius, Eigen::VectorXcd values);

  static TreeFunction delta(const TreeParams& tree, const Vertex& x,
                            int radius = -1);
  /// Radial function with value profile[n] on S(o, n).
  static TreeFunction radial(const TreeParams& tree,
                             const Eigen::VectorXcd& profile);
  static TreeFunction generate(const TreeParams& tree, int radius,
                               const std::function<Complex(const Vertex&)>& fn);

  const TreeParams& tree() const noexcept { return tree_; }
  int radius() const noexcept { return radius_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  const Eigen::VectorXcd& values() const noexcept { return values_; }
  Eigen::VectorXcd& values() noexcept { return values_; }

  auto level(int n) const {
    return values_.segment(ball_offset(tree_, n), sphere_size(tree_, n));
  }
  auto level(int n) {
    return values_.segment(ball_offset(tree_, n), sphere_size(tree_, n));
  }

  /// Zero for vertices outside the ball.
  Complex operator()(const Vertex& x) const;
  Complex& at(const Vertex& x);

  /// Truncates or zero-extends to B(o, radius).
  TreeFunction resized(int radius) const;

  /// Values depend only on |x| (exact comparison).
  bool is_radial() const;
  /// Value per level; requires is_radial().
  Eigen::VectorXcd radial_profile() const;

 private:
  TreeParams tree_;
  int radius_ = 0;
  Eigen::VectorXcd values_;
};

}  // namespace htree
