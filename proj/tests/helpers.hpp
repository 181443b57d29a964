#pragma once

#include <Eigen/Core>

#include <complex>
#include <random>
#include <vector>

#include "htree/boundary.hpp"
#include "htree/tree_function.hpp"
#include "oracles.hpp"

namespace test {

inline std::vector<std::complex<double>> to_std(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

inline Eigen::VectorXcd to_eigen(const std::vector<std::complex<double>>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double max_gap(const Eigen::VectorXcd& a, const std::vector<std::complex<double>>& b) {
  return (a - to_eigen(b)).cwiseAbs().maxCoeff();
}

inline htree::CylinderFunction random_cylinder(const htree::TreeParams& tree, int depth,
                                               std::mt19937_64& rng) {
  const auto v = oracle::gaussian(rng, static_cast<std::size_t>(htree::sphere_size(tree, depth)));
  return {tree, depth, to_eigen(v)};
}

inline htree::TreeFunction random_function(const htree::TreeParams& tree, int radius,
                                           std::mt19937_64& rng) {
  const auto v = oracle::gaussian(rng, static_cast<std::size_t>(htree::ball_size(tree, radius)));
  return {tree, radius, to_eigen(v)};
}

}  // namespace test
