#include "htree/poisson.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

#include "htree/errors.hpp"

namespace htree {

namespace {

constexpr Complex kI{0.0, 1.0};

// Longest common prefix of the level-k vertex with index xi and the
// level-d vertex with index ci (k <= d).
int common_prefix(const TreeParams& tree, int k, std::int64_t xi, int d,
                  std::int64_t ci) {
  for (int l = k; l > 0; --l) {
    if (xi / descendant_count(tree, l, k) == ci / descendant_count(tree, l, d))
      return l;
  }
  return 0;
}

// kernel_power(z, h) for h in [-radius, radius], stored at h + radius.
Eigen::VectorXcd kernel_table(const SpectralParam& z, int radius) {
  Eigen::VectorXcd table(2 * radius + 1);
  for (int h = -radius; h <= radius; ++h) table[h + radius] = kernel_power(z, h);
  return table;
}

Eigen::VectorXd level_measures(const TreeParams& tree, int levels) {
  Eigen::VectorXd nu(levels + 1);
  for (int j = 0; j <= levels; ++j) nu[j] = to_double(cylinder_measure(tree, j));
  return nu;
}

Eigen::VectorXcd transform_level(const TreeParams& tree, int k,
                                 const std::vector<Eigen::VectorXcd>& averages,
                                 const Eigen::VectorXd& nu,
                                 const Eigen::VectorXcd& kernel, int kernel_radius) {
  const int depth = static_cast<int>(averages.size()) - 1;
  std::vector<std::int64_t> stride(static_cast<std::size_t>(k + 1));
  for (int j = 0; j <= k; ++j)
    stride[static_cast<std::size_t>(j)] = descendant_count(tree, std::min(j, depth), k);

  const std::int64_t count = sphere_size(tree, k);
  Eigen::VectorXcd out(count);
  for (std::int64_t i = 0; i < count; ++i) {
    // shell integral of F over E_j(x) \ E_{j+1}(x), accumulated from the top
    Complex sum = 0;
    Complex upper = 0;  // integral over E_{k+1}(x) = empty set
    for (int j = k; j >= 0; --j) {
      const int l = std::min(j, depth);
      const Complex integral =
          nu[j] * averages[static_cast<std::size_t>(l)][i / stride[static_cast<std::size_t>(j)]];
      sum += kernel[2 * j - k + kernel_radius] * (integral - upper);
      upper = integral;
    }
    out[i] = sum;
  }
  return out;
}

}  // namespace

Complex kernel_power(const SpectralParam& z, int height) {
  return q_pow(z.tree(), (0.5 + kI * z.reduced()) * static_cast<double>(height));
}

int height(const TreeParams& tree, const Vertex& x, int depth,
           std::int64_t cylinder) {
  if (depth < x.length()) throw DomainError("height needs depth >= |x|");
  const int k = x.length();
  return 2 * common_prefix(tree, k, level_index(tree, x), depth, cylinder) - k;
}

CylinderFunction poisson_kernel_pow(const SpectralParam& z, const Vertex& x,
                                    int depth) {
  const auto& tree = z.tree();
  validate(tree, x);
  if (depth < x.length())
    throw DomainError("kernel depth must be at least |x|");
  CylinderFunction out(tree, depth);
  const Eigen::VectorXcd kernel = kernel_table(z, x.length());
  for (Eigen::Index c = 0; c < out.size(); ++c)
    out.values()[c] = kernel[height(tree, x, depth, c) + x.length()];
  return out;
}

CylinderFunction poisson_kernel_pow_by_shells(const SpectralParam& z,
                                              const Vertex& x, int depth) {
  const auto& tree = z.tree();
  validate(tree, x);
  if (depth < x.length())
    throw DomainError("kernel depth must be at least |x|");
  const int k = x.length();
  CylinderFunction out(tree, depth);
  for (int j = 0; j <= k; ++j) {
    CylinderFunction shell = CylinderFunction::indicator(tree, x.prefix(j), depth);
    if (j < k)
      shell.values() -= CylinderFunction::indicator(tree, x.prefix(j + 1), depth).values();
    out.values() += kernel_power(z, 2 * j - k) * shell.values();
  }
  return out;
}

TreeFunction poisson_transform(const SpectralParam& z, const CylinderFunction& f,
                               int radius) {
  const auto& tree = z.tree();
  if (!(f.tree() == tree)) throw DomainError("poisson_transform: mismatched trees");
  TreeFunction out(tree, radius);
  const auto averages = level_averages(f);
  const Eigen::VectorXd nu = level_measures(tree, radius);
  const Eigen::VectorXcd kernel = kernel_table(z, radius);
  for (int k = 0; k <= radius; ++k)
    out.level(k) = transform_level(tree, k, averages, nu, kernel, radius);
  return out;
}

Eigen::VectorXcd poisson_transform_level(const SpectralParam& z,
                                         const CylinderFunction& f, int level) {
  const auto& tree = z.tree();
  if (!(f.tree() == tree)) throw DomainError("poisson_transform: mismatched trees");
  if (level < 0) throw DomainError("level must be >= 0");
  check_level(tree, level);
  return transform_level(tree, level, level_averages(f), level_measures(tree, level),
                         kernel_table(z, level), level);
}

TreeFunction laplacian(const TreeFunction& u) {
  if (u.radius() == 0) throw DomainError("laplacian needs a ball of radius >= 1");
  const auto& tree = u.tree();
  const int q = tree.q;
  TreeFunction out(tree, u.radius() - 1);
  out.level(0)[0] = u.level(1).sum() / static_cast<double>(q + 1);
  for (int k = 1; k < u.radius(); ++k) {
    const auto here = u.level(k);
    const auto up = u.level(k - 1);
    const auto down = u.level(k + 1);
    auto target = out.level(k);
    for (Eigen::Index i = 0; i < here.size(); ++i) {
      const Complex parent = k == 1 ? up[0] : up[i / q];
      target[i] = (parent + down.segment(i * q, q).sum()) / static_cast<double>(q + 1);
    }
  }
  return out;
}

double eigen_residual(const TreeFunction& u, const SpectralParam& z) {
  const TreeFunction lu = laplacian(u);
  const Complex g = gamma(z);
  return (lu.values() - g * u.values().head(lu.size())).cwiseAbs().maxCoeff();
}

TreeFunction epsilon_n(const TreeFunction& u, int n) {
  if (n < 0) throw DomainError("sector index must be >= 0");
  const auto& tree = u.tree();
  TreeFunction out = u;
  for (int k = n + 1; k <= u.radius(); ++k) {
    const Eigen::Index block = descendant_count(tree, n, k);
    const Eigen::Index count = sphere_size(tree, n);
    const Eigen::RowVectorXcd means = u.level(k).reshaped(block, count).colwise().mean();
    out.level(k) = means.replicate(block, 1).reshaped();
  }
  return out;
}

TreeFunction epsilon_star(const TreeFunction& u) {
  const auto& tree = u.tree();
  TreeFunction out(tree, u.radius());
  for (int k = 0; k <= u.radius(); ++k) {
    Eigen::VectorXd best = u.level(k).cwiseAbs();
    for (int n = 0; n < k; ++n) {
      const Eigen::Index block = descendant_count(tree, n, k);
      const Eigen::Index count = sphere_size(tree, n);
      const Eigen::RowVectorXd means =
          u.level(k).reshaped(block, count).colwise().mean().cwiseAbs();
      best = best.cwiseMax(Eigen::VectorXd(means.replicate(block, 1).reshaped()));
    }
    out.level(k) = best.cast<Complex>();
  }
  return out;
}

double ball_maximal(const TreeFunction& u, const Vertex& x, int rmax,
                    BallExtension extension) {
  const auto& tree = u.tree();
  validate(tree, x);
  if (rmax < 0) throw DomainError("ball radius must be >= 0");
  if (x.length() > u.radius()) throw DomainError("centre lies outside the domain");
  if (extension == BallExtension::strict && x.length() + rmax > u.radius())
    throw DomainError("ball B(x, rmax) exceeds the domain of u");

  // |u| mass at each distance from x
  Eigen::VectorXd shells = Eigen::VectorXd::Zero(x.length() + u.radius() + 1);
  const auto vertices = ball(tree, u.radius());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int d = x.length() + vertices[i].length() -
                  2 * common_prefix_length(x, vertices[i]);
    shells[d] += std::abs(u.values()[static_cast<Eigen::Index>(i)]);
  }

  double best = 0;
  double mass = 0;
  for (int r = 0; r <= rmax; ++r) {
    if (r < shells.size()) mass += shells[r];
    best = std::max(best, mass / std::sqrt(static_cast<double>(ball_size(tree, r))));
  }
  return best;
}

namespace {

struct BContext {
  Complex c;
  double log_q;
};

BContext b_context(const TreeParams& tree, double s) {
  const SpectralParam z(tree, s);
  if (z.degenerate()) throw PoleError("B coefficients need s outside (tau/2)Z");
  return {c_function(z), tree.log_q()};
}

// q^{i s k}
Complex qis(const BContext& ctx, double s, double k) {
  return std::exp(kI * s * k * ctx.log_q);
}

Complex b_prime(const BContext& ctx, int n, int m, double s) {
  if (m < n) return 0.0;
  if (n == 0) return qis(ctx, s, -m) + ctx.c * (qis(ctx, s, m) - qis(ctx, s, -m));
  const int k = m - n + 1;
  return ctx.c * qis(ctx, s, n - 1) * (qis(ctx, s, k) - qis(ctx, s, -k));
}

}  // namespace

BCoeff b_coeff(const TreeParams& tree, int n, int m, double s) {
  if (n < 0 || m < 0) throw DomainError("B coefficient indices must be >= 0");
  const BContext ctx = b_context(tree, s);
  BCoeff out;
  out.n = n;
  out.m = m;
  out.prime_value = b_prime(ctx, n, m, s);
  out.value = std::pow(static_cast<double>(tree.q), -0.5 * m) * out.prime_value;
  return out;
}

double b_prime_sumsq(const TreeParams& tree, int n, int terms, double s) {
  if (n < 0) throw DomainError("B coefficient index must be >= 0");
  const BContext ctx = b_context(tree, s);
  double sum = 0;
  for (int m = n; m <= terms; ++m) sum += std::norm(b_prime(ctx, n, m, s));
  return sum;
}

double b_prime_sumsq_closed(const TreeParams& tree, int n, int terms, double s) {
  if (n < 0) throw DomainError("B coefficient index must be >= 0");
  const BContext ctx = b_context(tree, s);
  if (terms < n) return 0;
  const Complex w = qis(ctx, s, 2);
  const Complex wbar = qis(ctx, s, -2);
  const double c2 = std::norm(ctx.c);
  if (n == 0) {
    const double big_n = terms;
    const Complex up = w * (1.0 - std::pow(w, terms)) / (1.0 - w);
    const Complex down = wbar * (1.0 - std::pow(wbar, terms)) / (1.0 - wbar);
    const Complex total = (big_n + 1) + c2 * (2 * big_n - up - down) +
                          ctx.c * (up - big_n) + std::conj(ctx.c) * (down - big_n);
    return total.real();
  }
  const int k = terms - n + 1;
  const Complex total =
      c2 * (2.0 * k - w / (1.0 - w) * (1.0 - std::pow(w, k)) -
            wbar / (1.0 - wbar) * (1.0 - std::pow(wbar, k)));
  return total.real();
}

double poisson_of_diff_residual(const SpectralParam& z, const CylinderFunction& f,
                                int n, int m) {
  const auto& tree = z.tree();
  if (n < 0 || m < 0) throw DomainError("indices must be >= 0");
  if (std::abs(z.value().imag()) > SpectralParam::kTolerance)
    throw DomainError("the B-coefficient identity needs a real parameter");
  const BCoeff b = b_coeff(tree, n, m, z.reduced().real());
  const CylinderFunction piece = diff(f, n);
  const Eigen::VectorXcd level = poisson_transform_level(z, piece, m);
  const int depth = std::max({m, n, f.depth()});
  check_level(tree, depth);
  const std::int64_t to_m = descendant_count(tree, m, depth);
  const std::int64_t to_n = descendant_count(tree, n, depth);
  double worst = 0;
  for (std::int64_t c = 0; c < sphere_size(tree, depth); ++c) {
    const Complex predicted = b.value * piece.values()[c / to_n];
    worst = std::max(worst, std::abs(level[c / to_m] - predicted));
  }
  return worst;
}

MartingaleRecovery martingale_from_eigenfunction(const TreeFunction& u,
                                                 const SpectralParam& z,
                                                 double eigen_tolerance) {
  const auto& tree = u.tree();
  const int levels = u.radius();
  MartingaleRecovery out;
  if (levels >= 1) {
    out.eigen_residual = eigen_residual(u, z);
    const double scale = std::max(1.0, u.values().cwiseAbs().maxCoeff());
    if (out.eigen_residual > eigen_tolerance * scale)
      throw NotEigenfunction(out.eigen_residual,
                             "input is not a gamma(z)-eigenfunction of the Laplacian");
  }

  const Eigen::VectorXcd kernel = kernel_table(z, levels);
  for (int n = 0; n <= levels; ++n) {
    const Eigen::Index size = sphere_size(tree, n);
    const Eigen::Index parents = n == 0 ? 0 : sphere_size(tree, n - 1);
    const double nu = to_double(cylinder_measure(tree, n));
    // Poisson rows, then the martingale rows E_{n-1} F_n = F_{n-1}.  The square
    // Poisson block alone can be singular off the pole points (q = 2, z = tau/8,
    // n = 4); the stacked system loses rank only when P_z kills Delta_n.
    Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(size + parents, size);
    Eigen::VectorXcd rhs(size + parents);
    for (Eigen::Index x = 0; x < size; ++x)
      for (Eigen::Index c = 0; c < size; ++c)
        system(x, c) = nu * kernel[2 * common_prefix(tree, n, x, n, c) - n + levels];
    rhs.head(size) = u.level(n);
    if (parents > 0) {
      const Eigen::Index block = size / parents;
      for (Eigen::Index a = 0; a < parents; ++a)
        system.block(size + a, a * block, 1, block).setConstant(1.0 / static_cast<double>(block));
      rhs.tail(parents) = out.martingale.entries.back().values();
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(system);
    const Eigen::VectorXd pivots = qr.matrixR().diagonal().cwiseAbs();
    if (pivots.minCoeff() < 1e-12 * pivots.maxCoeff())
      throw SingularSystem(n, "Poisson system is singular at level " +
                                  std::to_string(n));
    out.martingale.entries.emplace_back(tree, n, qr.solve(rhs));
  }

  for (int n = 0; n <= levels; ++n) {
    const TreeFunction forward =
        poisson_transform(z, out.martingale.entries[static_cast<std::size_t>(n)], levels);
    const TreeFunction target = epsilon_n(u, n);
    out.level_residuals.push_back(
        (forward.values() - target.values()).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace htree
