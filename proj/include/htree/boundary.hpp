#pragma once

// Simple functions on the boundary of the tree.
//
// A depth-n function is constant on each cylinder E(x), |x| = n, and is
// stored as one value per level-n vertex in lexicographic order.  The
// descendants of a level-m cylinder at level n >= m occupy a contiguous
// block of length descendant_count(m, n), so conditional expectations are
// column means of the value vector reshaped to (block x sphere_size(m)).

#include <Eigen/Core>
#include <boost/rational.hpp>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "htree/errors.hpp"
#include "htree/tree.hpp"

namespace htree {

using Rational = boost::rational<std::int64_t>;
using Complex = std::complex<double>;

template <typename Scalar>
class BasicCylinderFunction {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicCylinderFunction() : BasicCylinderFunction(TreeParams{}, 0) {}

  /// Zero function of the given depth.
  BasicCylinderFunction(const TreeParams& tree, int depth)
      : tree_(tree), depth_(depth) {
    check_level(tree_, depth_);
    values_ = Vector::Zero(sphere_size(tree_, depth_));
  }

  BasicCylinderFunction(const TreeParams& tree, int depth, Vector values)
      : tree_(tree), depth_(depth), values_(std::move(values)) {
    check_level(tree_, depth_);
    if (values_.size() != sphere_size(tree_, depth_))
      throw DomainError("cylinder function needs sphere_size(depth) values");
  }

  static BasicCylinderFunction constant(const TreeParams& tree, Scalar value,
                                        int depth = 0) {
    BasicCylinderFunction f(tree, depth);
    f.values_.setConstant(value);
    return f;
  }

  /// Indicator of E(x) as a function of depth max(|x|, depth).
  static BasicCylinderFunction indicator(const TreeParams& tree,
                                         const Vertex& x, int depth = 0) {
    validate(tree, x);
    BasicCylinderFunction f(tree, std::max(depth, x.length()));
    const std::int64_t block = descendant_count(tree, x.length(), f.depth());
    f.values_.segment(level_index(tree, x) * block, block).setConstant(Scalar(1));
    return f;
  }

  const TreeParams& tree() const noexcept { return tree_; }
  int depth() const noexcept { return depth_; }
  Eigen::Index size() const noexcept { return values_.size(); }
  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }

  Scalar operator[](Eigen::Index cylinder) const { return values_[cylinder]; }

  /// Value on any boundary point whose ray passes through x (|x| >= depth).
  Scalar at(const Vertex& x) const {
    if (x.length() < depth_)
      throw DomainError("vertex is shallower than the function's depth");
    return values_[level_index(tree_, x.prefix(depth_))];
  }

 private:
  TreeParams tree_;
  int depth_ = 0;
  Vector values_;
};

using CylinderFunction = BasicCylinderFunction<Complex>;
using RealCylinderFunction = BasicCylinderFunction<double>;

/// nu(E(x)) for |x| = level: 1 at level 0, q / ((q+1) q^level) otherwise.
inline Rational cylinder_measure(const TreeParams& tree, int level) {
  if (level == 0) return Rational(1);
  // (q+1) q^level = q * sphere_size(level)
  return Rational(tree.q, tree.q * sphere_size(tree, level));
}

inline Rational cylinder_measure(const TreeParams& tree, const Vertex& x) {
  validate(tree, x);
  return cylinder_measure(tree, x.length());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

template <typename Scalar>
Scalar integrate(const BasicCylinderFunction<Scalar>& f) {
  const Rational w = cylinder_measure(f.tree(), f.depth());
  return f.values().sum() * static_cast<double>(w.numerator()) /
         static_cast<double>(w.denominator());
}

template <typename Scalar>
BasicCylinderFunction<Scalar> refine(const BasicCylinderFunction<Scalar>& f,
                                     int depth) {
  if (depth < f.depth())
    throw DomainError("refine: target depth below the function's depth");
  if (depth == f.depth()) return f;
  const Eigen::Index block = descendant_count(f.tree(), f.depth(), depth);
  using Vector = typename BasicCylinderFunction<Scalar>::Vector;
  Vector out = f.values().transpose().replicate(block, 1).reshaped();
  return {f.tree(), depth, std::move(out)};
}

template <typename Scalar>
BasicCylinderFunction<Scalar> cond_expect(const BasicCylinderFunction<Scalar>& f,
                                          int level) {
  if (level < 0) throw DomainError("conditional expectation level must be >= 0");
  if (level >= f.depth()) return refine(f, level);
  const Eigen::Index block = descendant_count(f.tree(), level, f.depth());
  const Eigen::Index count = sphere_size(f.tree(), level);
  using Vector = typename BasicCylinderFunction<Scalar>::Vector;
  Vector out = f.values().reshaped(block, count).colwise().mean().transpose();
  return {f.tree(), level, std::move(out)};
}

/// Averages of f on every level 0..depth(f); entry n has sphere_size(n) values.
template <typename Scalar>
std::vector<typename BasicCylinderFunction<Scalar>::Vector> level_averages(
    const BasicCylinderFunction<Scalar>& f) {
  std::vector<typename BasicCylinderFunction<Scalar>::Vector> out(
      static_cast<std::size_t>(f.depth() + 1));
  for (int n = 0; n <= f.depth(); ++n) out[static_cast<std::size_t>(n)] =
      cond_expect(f, n).values();
  return out;
}

/// Delta_n = E_n - E_{n-1}, with E_{-1} = 0.
template <typename Scalar>
BasicCylinderFunction<Scalar> diff(const BasicCylinderFunction<Scalar>& f,
                                   int n) {
  if (n < 0) throw DomainError("difference index must be >= 0");
  auto out = cond_expect(f, n);
  if (n == 0) return out;
  out.values() -= refine(cond_expect(f, n - 1), n).values();
  return out;
}

template <typename Scalar>
Scalar inner(const BasicCylinderFunction<Scalar>& f,
             const BasicCylinderFunction<Scalar>& g) {
  if (!(f.tree() == g.tree())) throw DomainError("inner: mismatched trees");
  const int depth = std::max(f.depth(), g.depth());
  const auto a = refine(f, depth);
  const auto b = refine(g, depth);
  BasicCylinderFunction<Scalar> prod(
      f.tree(), depth, a.values().cwiseProduct(b.values().conjugate()));
  return integrate(prod);
}

/// sup_n |E_n f| as a depth(f) function; exact since E_n f = f for n >= depth.
template <typename Scalar>
RealCylinderFunction maximal(const BasicCylinderFunction<Scalar>& f) {
  Eigen::VectorXd best = f.values().cwiseAbs().template cast<double>();
  for (int n = 0; n < f.depth(); ++n) {
    const Eigen::VectorXd level =
        refine(cond_expect(f, n), f.depth()).values().cwiseAbs().template cast<double>();
    best = best.cwiseMax(level);
  }
  return {f.tree(), f.depth(), std::move(best)};
}

/// Compatible sequence (F_0, ..., F_N) with depth(F_n) = n.
struct Martingale {
  std::vector<CylinderFunction> entries;

  static Martingale from_function(const CylinderFunction& f, int levels) {
    Martingale m;
    for (int n = 0; n <= levels; ++n) m.entries.push_back(cond_expect(f, n));
    return m;
  }

  int levels() const noexcept { return static_cast<int>(entries.size()) - 1; }

  /// max_{m <= n} |E_m(F_n) - F_m|_inf.
  double compatibility_defect() const {
    double worst = 0;
    for (std::size_t n = 0; n < entries.size(); ++n)
      for (std::size_t m = 0; m <= n; ++m) {
        const auto projected = cond_expect(entries[n], static_cast<int>(m));
        worst = std::max(worst, (projected.values() - entries[m].values())
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    return worst;
  }
};

}  // namespace htree
