#pragma once

#include <Eigen/Core>

#include <complex>
#include <limits>

#include "htree/tree.hpp"

namespace htree {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Conjugate exponent p' with 1/p + 1/p' = 1 (1 <-> infinity).
double conjugate_exponent(double p);

/// Integrability strip S_p = {z : |Im z| <= |delta_p|}, delta_p = 1/p - 1/2.
struct StripParams {
  double p = 2;

  explicit StripParams(double exponent);
  double delta() const noexcept;
  bool contains(Complex z) const noexcept;
  bool contains_interior(Complex z) const noexcept;
};

/// delta_p for p in [1, infinity]; delta_1 = 1/2, delta_inf = -1/2.
double strip_delta(double p);

/// Complex spectral parameter z together with its torus reduction.
///
/// Every spectral map is tau-periodic in Re z; evaluation always uses the
/// representative with Re z in [-tau/2, tau/2).
class SpectralParam {
 public:
  static constexpr double kTolerance = 1e-12;

  SpectralParam(const TreeParams& tree, Complex z);

  const TreeParams& tree() const noexcept { return tree_; }
  Complex value() const noexcept { return z_; }
  Complex reduced() const noexcept { return reduced_; }
  double tau() const noexcept { return tau_; }

  /// z in tau*Z.
  bool at_period() const noexcept { return at_period_; }
  /// z in tau/2 + tau*Z.
  bool at_half_period() const noexcept { return at_half_period_; }
  /// z in (tau/2)Z: spherical function takes its degenerate form, c has a pole.
  bool degenerate() const noexcept { return at_period_ || at_half_period_; }
  /// z = (k tau + i)/2: the Poisson transform collapses to rank one.
  bool pole_point() const noexcept { return pole_point_; }

  SpectralParam negated() const { return {tree_, -z_}; }

 private:
  TreeParams tree_;
  Complex z_;
  Complex reduced_;
  double tau_;
  bool at_period_ = false;
  bool at_half_period_ = false;
  bool pole_point_ = false;
};

/// q^w = exp(w log q).
Complex q_pow(const TreeParams& tree, Complex w);

/// Laplacian eigenvalue gamma(z) = (q^{1/2+iz} + q^{1/2-iz}) / (q+1).
Complex gamma(const SpectralParam& z);

/// Harish-Chandra type c-function; throws PoleError on (tau/2)Z.
Complex c_function(const SpectralParam& z);

/// Radial spherical function phi_z at distance n from o.
Complex spherical(const SpectralParam& z, int n);
Eigen::VectorXcd spherical_table(const SpectralParam& z, int nmax);

/// Midpoint-shifted uniform grid of `points` nodes on [-tau/2, tau/2).
Eigen::VectorXd spectral_grid(const TreeParams& tree, int points);

/// Plancherel measure C_G |c(s)|^{-2} ds on the torus [-tau/2, tau/2).
class PlancherelMeasure {
 public:
  static constexpr double kStability = 1e-12;

  /// Fixes C_G so that the measure has unit mass, refining a periodic
  /// trapezoidal rule until two successive grids agree to kStability.
  static PlancherelMeasure calibrate(const TreeParams& tree);

  /// q log q / (4 pi (q+1)), the closed form of the calibrated constant.
  static double closed_form_constant(const TreeParams& tree);

  const TreeParams& tree() const noexcept { return tree_; }
  double constant() const noexcept { return constant_; }
  int calibration_points() const noexcept { return calibration_points_; }

  /// Vanishes at the poles {0, +-tau/2} of c.
  double density(double s) const;
  /// density(s_j) * tau / M on spectral_grid(M).
  Eigen::VectorXd weights(int points) const;

 private:
  PlancherelMeasure(const TreeParams& tree, double constant, int points)
      : tree_(tree), constant_(constant), calibration_points_(points) {}

  TreeParams tree_;
  double constant_;
  int calibration_points_;
};

}  // namespace htree
