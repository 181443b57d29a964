#include "htree/tree_function.hpp"

#include "htree/errors.hpp"

namespace htree {

TreeFunction::TreeFunction(const TreeParams& tree, int radius)
    : tree_(tree), radius_(radius) {
  if (radius < 0) throw DomainError("tree function radius must be >= 0");
  check_level(tree_, radius_);
  values_ = Eigen::VectorXcd::Zero(ball_size(tree_, radius_));
}

TreeFunction::TreeFunction(const TreeParams& tree, int radius,
                           Eigen::VectorXcd values)
    : tree_(tree), radius_(radius), values_(std::move(values)) {
  if (radius < 0) throw DomainError("tree function radius must be >= 0");
  check_level(tree_, radius_);
  if (values_.size() != ball_size(tree_, radius_))
    throw DomainError("tree function needs ball_size(radius) values");
}

TreeFunction TreeFunction::delta(const TreeParams& tree, const Vertex& x,
                                 int radius) {
  validate(tree, x);
  TreeFunction f(tree, std::max(radius, x.length()));
  f.at(x) = 1.0;
  return f;
}

TreeFunction TreeFunction::radial(const TreeParams& tree,
                                  const Eigen::VectorXcd& profile) {
  if (profile.size() == 0) throw DomainError("radial profile is empty");
  TreeFunction f(tree, static_cast<int>(profile.size()) - 1);
  for (int n = 0; n <= f.radius(); ++n) f.level(n).setConstant(profile[n]);
  return f;
}

TreeFunction TreeFunction::generate(
    const TreeParams& tree, int radius,
    const std::function<Complex(const Vertex&)>& fn) {
  TreeFunction f(tree, radius);
  Eigen::Index i = 0;
  for (const auto& x : ball(tree, radius)) f.values_[i++] = fn(x);
  return f;
}

Complex TreeFunction::operator()(const Vertex& x) const {
  validate(tree_, x);
  if (x.length() > radius_) return 0.0;
  return values_[ball_offset(tree_, x.length()) + level_index(tree_, x)];
}

Complex& TreeFunction::at(const Vertex& x) {
  validate(tree_, x);
  if (x.length() > radius_) throw DomainError("vertex outside the ball");
  return values_[ball_offset(tree_, x.length()) + level_index(tree_, x)];
}

TreeFunction TreeFunction::resized(int radius) const {
  TreeFunction out(tree_, radius);
  const Eigen::Index common = std::min(out.size(), size());
  out.values_.head(common) = values_.head(common);
  return out;
}

bool TreeFunction::is_radial() const {
  for (int n = 0; n <= radius_; ++n) {
    const auto lv = level(n);
    if ((lv.array() != lv[0]).any()) return false;
  }
  return true;
}

Eigen::VectorXcd TreeFunction::radial_profile() const {
  if (!is_radial()) throw DomainError("function is not radial");
  Eigen::VectorXcd profile(radius_ + 1);
  for (int n = 0; n <= radius_; ++n) profile[n] = level(n)[0];
  return profile;
}

}  // namespace htree
