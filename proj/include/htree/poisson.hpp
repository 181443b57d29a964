#pragma once

#include <Eigen/Core>

#include <vector>

#include "htree/boundary.hpp"
#include "htree/spectral.hpp"
#include "htree/tree_function.hpp"

namespace htree {

/// q^{(1/2 + iz) h}: the kernel power at height h.
Complex kernel_power(const SpectralParam& z, int height);

/// Height of x relative to any ray through the level-`depth` cylinder
/// `cylinder`: 2 min(lcp, |x|) - |x|.
int height(const TreeParams& tree, const Vertex& x, int depth,
           std::int64_t cylinder);

/// p^{1/2+iz}(x, .) as a depth-`depth` cylinder function (depth >= |x|),
/// evaluated from the height of x with respect to each cylinder.
CylinderFunction poisson_kernel_pow(const SpectralParam& z, const Vertex& x,
                                    int depth);

/// Same function assembled shell by shell: sum_j q^{(1/2+iz)(2j-|x|)}
/// (1_{E_j(x)} - 1_{E_{j+1}(x)}), with E_j(x) = E(x_j) and E_{|x|+1}(x) empty.
CylinderFunction poisson_kernel_pow_by_shells(const SpectralParam& z,
                                              const Vertex& x, int depth);

/// P_z F on B(o, radius).  Each value is an exact finite sum over the
/// cylinder integrals of F along the geodesic from o to x.
TreeFunction poisson_transform(const SpectralParam& z, const CylinderFunction& f,
                               int radius);
/// P_z F restricted to the level-`level` sphere.
Eigen::VectorXcd poisson_transform_level(const SpectralParam& z,
                                         const CylinderFunction& f, int level);

/// Nearest-neighbour average (1/(q+1)) sum_{d(x,y)=1} u(y) on B(o, radius-1).
TreeFunction laplacian(const TreeFunction& u);
/// max over B(o, N-1) of |L u - gamma(z) u|.
double eigen_residual(const TreeFunction& u, const SpectralParam& z);

/// Sector average over S(n, x); identity on B(o, n).
TreeFunction epsilon_n(const TreeFunction& u, int n);
/// max over 0 <= n <= |x| of |epsilon_n u(x)| (real-valued).
TreeFunction epsilon_star(const TreeFunction& u);

enum class BallExtension {
  /// Every ball B(x, r), r <= rmax, must lie inside the domain.
  strict,
  /// u is taken to vanish outside its ball.
  zero,
};

/// Truncated ball maximal function max_{0<=r<=rmax} #B(x,r)^{-1/2}
/// sum_{B(x,r)} |u|.  #B(x, r) is the full count in the tree.
double ball_maximal(const TreeFunction& u, const Vertex& x, int rmax,
                    BallExtension extension = BallExtension::strict);

/// B(n, m, s) for real s: the scalar by which P_s maps the n-th martingale
/// difference to the level-m values along a ray.
struct BCoeff {
  int n = 0;
  int m = 0;
  Complex value;
  /// q^{m/2} value.
  Complex prime_value;
};

BCoeff b_coeff(const TreeParams& tree, int n, int m, double s);
/// sum_{m=n}^{N} |B'(n, m, s)|^2 by direct summation.
double b_prime_sumsq(const TreeParams& tree, int n, int terms, double s);
/// The same partial sum through its closed geometric-series form.
double b_prime_sumsq_closed(const TreeParams& tree, int n, int terms, double s);

/// max over rays of |P_z(Delta_n F)(omega_m) - B(n, m, z) Delta_n F(omega)|.
double poisson_of_diff_residual(const SpectralParam& z, const CylinderFunction& f,
                                int n, int m);

struct MartingaleRecovery {
  Martingale martingale;
  double eigen_residual = 0;
  /// |P_z F_n - epsilon_n u|_inf on B(o, N), per level n.
  std::vector<double> level_residuals;
};

/// Recovers (F_0..F_N) from an eigenfunction u on B(o, N).  Level n solves
/// sum_c nu(E(c)) q^{(1/2+iz) h(x,c)} F_n(c) = u(x) for |x| = n together with
/// E_{n-1} F_n = F_{n-1} (column-pivoted QR, least squares).
/// Throws NotEigenfunction if the Laplacian residual exceeds
/// eigen_tolerance * max(1, |u|_inf), SingularSystem on a vanishing pivot.
MartingaleRecovery martingale_from_eigenfunction(const TreeFunction& u,
                                                 const SpectralParam& z,
                                                 double eigen_tolerance = 1e-10);

}  // namespace htree
