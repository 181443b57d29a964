// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "htree/errors.hpp"
#include "htree/experiments.hpp"
#include "htree/lorentz.hpp"
#include "htree/poisson.hpp"
#include "htree/spectral.hpp"
#include "htree/transforms.hpp"

using namespace htree;

namespace {

const Complex I(0, 1);

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::VectorXcd spherical_profile(const SpectralParam& z, int radius) {
  Eigen::VectorXcd profile(radius + 1);
  for (int n = 0; n <= radius; ++n) profile[n] = spherical(z, n);
  return profile;
}

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// 1. exact identities, no quadrature
Outcome exact_identities() {
  const auto start = Clock::now();
  double duality = 0, eq17 = 0, ortho = 0, telescoping = 0, kernel = 0, phi = 0, eigen = 0;
  for (int q : {2, 3}) {
    const TreeParams tree(q);
    std::uint64_t stream = 0;
    for (Complex zv : {Complex(tree.tau() / 8), Complex(0.7, 0.2), Complex(1.9, -0.35)}) {
      const SpectralParam z(tree, zv);
      for (int depth = 0; depth <= 5; ++depth) {
        const auto f = random_cylinder_function(tree, depth, 101, stream++);

        // duality: int f~ F dnu = sum_x f(x) P_z F(x)
        const auto g = random_tree_function(tree, 5, 102, stream++);
        const auto gt = hf_transform(g, z, depth);
        const auto fr = refine(f, gt.depth());
        const CylinderFunction prod(tree, gt.depth(), gt.values().cwiseProduct(fr.values()));
        const Complex lhs = integrate(prod);
        const Complex rhs = (g.values().array() * poisson_transform(z, f, 5).values().array()).sum();
        duality = std::max(duality, std::abs(lhs - rhs));

        const auto u = poisson_transform(z, f, 8);
        for (int n = 0; n <= 5; ++n)
          eq17 = std::max(eq17, max_abs(epsilon_n(u, n).values() -
                                        poisson_transform(z, cond_expect(f, n), 8).values()));
        eigen = std::max(eigen, eigen_residual(u, z));

        for (int n = 0; n <= depth; ++n) {
          Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(sphere_size(tree, n));
          for (int j = 0; j <= n; ++j) {
            sum += refine(diff(f, j), n).values();
            if (j != n) ortho = std::max(ortho, std::abs(inner(diff(f, j), diff(f, n))));
          }
          telescoping = std::max(telescoping, max_abs(sum - cond_expect(f, n).values()));
        }
      }
      for (const auto& x : ball(tree, 5))
        kernel = std::max(kernel, max_abs(poisson_kernel_pow(z, x, 5).values() -
                                          poisson_kernel_pow_by_shells(z, x, 5).values()));
      const auto one = poisson_transform(z, CylinderFunction::constant(tree, 1.0, 3), 8);
      phi = std::max(phi, max_abs(one.values() -
                                  TreeFunction::radial(tree, spherical_profile(z, 8)).values()));
    }
  }
  const double elapsed = seconds_since(start);
  const double worst = std::max({duality, eq17, ortho, telescoping, kernel, phi, eigen});
  return {worst < 1e-12 && elapsed < 10,
          fmt::format("duality {:.2e}, eps_n {:.2e}, ortho {:.2e}, telescoping {:.2e}, "
                      "kernel routes {:.2e}, P1=phi {:.2e}, eigen {:.2e}; {:.2f} s",
                      duality, eq17, ortho, telescoping, kernel, phi, eigen, elapsed)};
}

// 2. inversion round trip
Outcome inversion() {
  const auto start = Clock::now();
  double e2048 = 0, e4096 = 0;
  double time2048 = 0;
  for (int q : {2, 3}) {
    const TreeParams tree(q);
    const auto mu = PlancherelMeasure::calibrate(tree);
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto f = random_tree_function(tree, 4, 201, k);
      const auto t = Clock::now();
      e2048 = std::max(e2048, invert(f, mu, 2048).max_error);
      time2048 += seconds_since(t);
      e4096 = std::max(e4096, invert(f, mu, 4096).max_error);
    }
  }
  const double elapsed = seconds_since(start);
  const bool reduced = e4096 * 10 <= e2048;
  return {e2048 < 1e-8 && reduced && time2048 < 5,
          fmt::format("max error M=2048 {:.2e}, M=4096 {:.2e}, reduction x{:.2f} (need >= 10); "
                      "{:.2f} s at M=2048, {:.2f} s total",
                      e2048, e4096, e2048 / e4096, time2048, elapsed)};
}

// 3. Parseval
Outcome parseval_check() {
  double worst = 0, weights = 0;
  for (int q : {2, 3}) {
    const TreeParams tree(q);
    const auto mu = PlancherelMeasure::calibrate(tree);
    weights = std::max(weights, std::abs(mu.weights(2048).sum() - 1));
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto f1 = random_tree_function(tree, 4, 301, 2 * k);
      const auto f2 = random_tree_function(tree, 4, 301, 2 * k + 1);
      worst = std::max(worst, parseval(f1, f2, mu, 2048).relative);
    }
  }
  return {worst < 1e-8 && weights <= 1e-10,
          fmt::format("max relative residual {:.2e} on 50 pairs per q, |sum w - 1| {:.2e}",
                      worst, weights)};
}

// 4. p = 1 endpoint with constant 1
Outcome endpoint() {
  const TreeParams tree(2);
  double worst = 0;
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> alpha(-tree.tau() / 2, tree.tau() / 2);
  for (double r : {1.0, 2.0, 4.0, kInfinity}) {
    const double delta = strip_delta(conjugate_exponent(r));
    for (std::uint64_t k = 0; k < 1000; ++k) {
      const SpectralParam z(tree, Complex(alpha(rng), delta));
      const auto f = random_tree_function(tree, static_cast<int>(1 + k % 4), 402, k);
      worst = std::max(worst, restriction_lhs(f, z, r) / lorentz_norm(f, 1, 1));
    }
  }
  return {worst <= 1 + 1e-12,
          fmt::format("max LHS/|f|_1 = {:.15f} over 1000 f for each r in {{1,2,4,inf}}", worst)};
}

// 5. B-coefficient Cesaro limit
Outcome b_coefficients() {
  const auto start = Clock::now();
  const TreeParams tree(2);
  const double s = tree.tau() / 8;
  const double target = 2 * std::norm(c_function(SpectralParam(tree, s)));
  double cesaro = 0, gap = 0;
  for (int n : {0, 1, 5}) {
    const double direct = b_prime_sumsq(tree, n, 20000, s);
    const double closed = b_prime_sumsq_closed(tree, n, 20000, s);
    cesaro = std::max(cesaro, std::abs(direct / 20000 / target - 1));
    gap = std::max(gap, std::abs(direct - closed) / direct);
  }
  const double elapsed = seconds_since(start);
  return {cesaro < 0.02 && gap < 1e-9 && elapsed < 5,
          fmt::format("max |cesaro/target - 1| {:.4f}, closed vs direct {:.2e}; {:.2f} s", cesaro,
                      gap, elapsed)};
}

// 6. martingale recovery
Outcome martingale_recovery() {
  double worst = 0;
  bool singular = true;
  for (int q : {2, 3}) {
    const TreeParams tree(q);
    const SpectralParam z(tree, tree.tau() / 8);
    for (int depth = 0; depth <= 4; ++depth) {
      const auto f = random_cylinder_function(tree, depth, 601, static_cast<std::uint64_t>(depth));
      const auto rec = martingale_from_eigenfunction(poisson_transform(z, f, depth), z);
      for (int n = 0; n <= depth; ++n)
        worst = std::max(worst, max_abs(rec.martingale.entries[static_cast<std::size_t>(n)].values() -
                                        cond_expect(f, n).values()));
    }
    const SpectralParam pole(tree, I / 2.0);
    for (int radius = 1; radius <= 4; ++radius) {
      const auto f = random_cylinder_function(tree, radius, 602, static_cast<std::uint64_t>(radius));
      try {
        martingale_from_eigenfunction(poisson_transform(pole, f, radius), pole);
        singular = false;
      } catch (const SingularSystem& e) {
        singular = singular && e.level() == 1;
      }
    }
  }
  return {worst < 1e-9 && singular,
          fmt::format("round-trip error {:.2e} at z=tau/8, depth <= 4; SingularSystem at level 1 "
                      "for z=i/2: {}",
                      worst, singular ? "yes" : "no")};
}

// 7. spherical function trichotomy
Outcome trichotomy() {
  const TreeParams tree(2);
  const double tau = tree.tau();
  auto growth = [&](Complex zv, double p, int small, int large) {
    const SpectralParam z(tree, zv);
    const auto u = TreeFunction::radial(tree, spherical_profile(z, large));
    return weak_norm_growth(u, p, {small, large});
  };
  // (a) l^{p'} sums of phi_z inside the strip, p = 4/3
  const auto a = growth(Complex(tau / 8, 1.0 / 8), 4, 12, 14);
  const double increment = std::pow(a[1].strong / a[0].strong, 4) - 1;
  // (b), (c) weak L^2 statistic
  const auto b = growth(0.0, 2, 8, 14);
  const auto c = growth(tau / 8, 2, 10, 14);
  const double grow = b[1].weak / b[0].weak;
  const double stable = c[1].weak / c[0].weak;
  return {increment < 0.01 && grow >= 1.2 && std::abs(stable - 1) <= 0.1,
          fmt::format("(a) l^4 sum increment N=12->14 {:.4f}; (b) z=0 weak growth N=8->14 x{:.3f}; "
                      "(c) z=tau/8 N=10->14 x{:.4f}",
                      increment, grow, stable)};
}

// 8. weak-type proxies for random Poisson transforms
Outcome weak_type() {
  const TreeParams tree(2);
  const double tau = tree.tau();
  double worst = 0;
  std::string detail;
  const std::vector<std::pair<Complex, double>> cases = {
      {Complex(tau / 8, strip_delta(4)), 4.0}, {Complex(0.9, strip_delta(4)), 4.0},
      {Complex(tau / 8), 2.0}};
  for (const auto& [zv, exponent] : cases) {
    const SpectralParam z(tree, zv);
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto f = random_cylinder_function(tree, 4, 801, k);
      const auto rows = weak_norm_growth(poisson_transform(z, f, 14), exponent, {12, 14});
      const double inc = rows[1].weak / rows[0].weak - 1;
      worst = std::max(worst, inc);
    }
    detail += fmt::format("z=({:.3f},{:.3f}) |.|_{{{:g},inf}} ", zv.real(), zv.imag(), exponent);
  }
  return {worst < 0.05, fmt::format("max increment N=12->14 {:.4f} for {}", worst, detail)};
}

// 9. Lorentz functionals
Outcome lorentz() {
  const TreeParams tree(2);
  double lp = 0, indicator = 0;
  bool nested = true;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto f = random_tree_function(tree, 4, 901, k);
    for (double p : {1.0, 4.0 / 3, 2.0, 3.0}) {
      const double plain = std::pow(f.values().cwiseAbs().array().pow(p).sum(), 1 / p);
      lp = std::max(lp, std::abs(lorentz_norm(f, p, p) - plain) / plain);
    }
    for (double p : {4.0 / 3, 2.0}) {
      const double weak = lorentz_norm(f, p, kInfinity);
      const double two = lorentz_norm(f, p, 2);
      const double one = lorentz_norm(f, p, 1);
      nested = nested && weak <= two && two <= one;
    }
  }
  for (int n = 1; n <= 500; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(600);
    v.head(n).setOnes();
    indicator = std::max(indicator, std::abs(lorentz_norm(v, 2, 1) - std::sqrt(static_cast<double>(n))));
  }
  return {lp < 1e-12 && indicator < 1e-12 && nested,
          fmt::format("|.|_(p,p) vs l^p {:.2e}; L^(2,1) indicator vs sqrt(k) {:.2e}; nesting {}",
                      lp, indicator, nested ? "holds" : "violated")};
}

// 10. thread-count independence
Outcome determinism() {
  ExperimentConfig c;
  c.q = 2;
  c.samples = 200;
  c.support_radius = 4;
  c.p = 4.0 / 3;
  c.r = 2;
  c.seed = 1001;
  c.threads = 1;
  const auto one = cmd_restriction(c);
  c.threads = 4;
  const auto four = cmd_restriction(c);
  const bool same = one.output == four.output && one.summary == four.summary;
  return {same, fmt::format("{} CSV bytes, threads 1 vs 4 {}", one.output.size(),
                            same ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact identities", exact_identities},
      {"inversion round trip", inversion},
      {"Plancherel / Parseval", parseval_check},
      {"p=1 endpoint, C=1", endpoint},
      {"B-coefficient Cesaro limit", b_coefficients},
      {"martingale recovery", martingale_recovery},
      {"spherical trichotomy", trichotomy},
      {"weak-type stability", weak_type},
      {"Lorentz functionals", lorentz},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.passed ? 0 : 1;
    std::cout << fmt::format("[{}] {:2d} {}: {}\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, outcome.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures,
                           criteria.size());
  return failures == 0 ? 0 : 1;
}
