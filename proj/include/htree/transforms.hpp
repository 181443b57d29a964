#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "htree/boundary.hpp"
#include "htree/spectral.hpp"
#include "htree/tree_function.hpp"

namespace htree {

/// Helgason-Fourier transform of a fixed tree function, factored by height.
///
/// f~(z, omega) = sum_x f(x) q^{(1/2+iz) h_omega(x)} depends on z only through
/// the 2R+1 kernel powers at heights -R..R, so f~(z, .) = W v(z) with
/// W(c, h) = sum of f(x) over the x of height h relative to cylinder c.
class HeightProfile {
 public:
  /// depth defaults to the support radius of f.
  explicit HeightProfile(const TreeFunction& f, int depth = -1);

  const TreeParams& tree() const noexcept { return tree_; }
  int radius() const noexcept { return radius_; }
  int depth() const noexcept { return depth_; }
  const Eigen::MatrixXcd& weights() const noexcept { return weights_; }

  CylinderFunction evaluate(const SpectralParam& z) const;

 private:
  TreeParams tree_;
  int radius_;
  int depth_;
  Eigen::MatrixXcd weights_;
};

/// f~(z, .) as a depth-max(R, depth) cylinder function.
CylinderFunction hf_transform(const TreeFunction& f, const SpectralParam& z,
                              int depth = -1);

/// f^(z) = sum_n f(n) #S(o,n) phi_z(n); throws DomainError if f is not radial.
Complex spherical_transform(const TreeFunction& f, const SpectralParam& z);

/// Quadrature nodes, Plancherel weights and (optionally) transforms per node.
struct SpectralSample {
  Eigen::VectorXd grid;
  Eigen::VectorXd weights;
  std::vector<CylinderFunction> transforms;
};

SpectralSample sample_spectrum(const PlancherelMeasure& measure, int points,
                               const TreeFunction* f = nullptr);

struct InversionReport {
  TreeFunction reconstruction;
  double max_error = 0;
  int points = 0;
  /// Set when the grid is not a power of two >= 256; the result is still
  /// computed.
  std::string grid_warning;
};

/// f(x) = int_T int_Omega f~(s, w) p^{1/2-is}(x, w) dnu(w) dmu(s).  The inner
/// integral is an exact cylinder sum; the outer one a periodic trapezoidal
/// rule on `points` midpoint-shifted nodes.
InversionReport invert(const TreeFunction& f, const PlancherelMeasure& measure,
                       int points);

/// Radial inversion int_T f^(s) phi_{-s}(n) dmu(s), per level n.
Eigen::VectorXcd invert_radial(const TreeFunction& f,
                               const PlancherelMeasure& measure, int points);

struct ParsevalReport {
  Complex lhs;
  Complex rhs;
  double residual = 0;
  /// residual / (||f1||_2 ||f2||_2)
  double relative = 0;
};

ParsevalReport parseval(const TreeFunction& f1, const TreeFunction& f2,
                        const PlancherelMeasure& measure, int points);

/// |int p^{1/2-is}(x,.) g_plus dnu - int p^{1/2+is}(x,.) g_minus dnu| where
/// g_plus = g(s, .) and g_minus = g(-s, .).
double symmetry_residual(const CylinderFunction& g_plus,
                         const CylinderFunction& g_minus, const Vertex& x,
                         double s);
/// The same with g = f~.
double symmetry_residual(const TreeFunction& f, const Vertex& x, double s);

/// (int_Omega |f~(z, w)|^r dnu)^{1/r}; r = inf gives the max over cylinders.
double restriction_lhs(const TreeFunction& f, const SpectralParam& z, double r);

}  // namespace htree
