#include "htree/spectral.hpp"

#include <cmath>
#include <numbers>

#include "htree/errors.hpp"

namespace htree {

namespace {

constexpr Complex kI{0.0, 1.0};

// Distance from x to the nearest multiple of period.
double lattice_offset(double x, double period) {
  return std::abs(x - period * std::round(x / period));
}

}  // namespace

double conjugate_exponent(double p) {
  if (!(p >= 1)) throw DomainError("exponent must lie in [1, infinity]");
  if (p == 1) return kInfinity;
  if (std::isinf(p)) return 1;
  return p / (p - 1);
}

double strip_delta(double p) {
  if (!(p >= 1)) throw DomainError("exponent must lie in [1, infinity]");
  if (std::isinf(p)) return -0.5;
  return 1.0 / p - 0.5;
}

StripParams::StripParams(double exponent) : p(exponent) { strip_delta(p); }

double StripParams::delta() const noexcept { return strip_delta(p); }

bool StripParams::contains(Complex z) const noexcept {
  return std::abs(z.imag()) <= std::abs(delta());
}

bool StripParams::contains_interior(Complex z) const noexcept {
  return std::abs(z.imag()) < std::abs(delta());
}

SpectralParam::SpectralParam(const TreeParams& tree, Complex z)
    : tree_(tree), z_(z), tau_(tree.tau()) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("spectral parameter must be finite");
  double re = z.real() - tau_ * std::floor((z.real() + tau_ / 2) / tau_);
  if (re >= tau_ / 2) re -= tau_;
  reduced_ = {re, z.imag()};

  const bool real_axis = std::abs(z.imag()) <= kTolerance;
  at_period_ = real_axis && lattice_offset(re, tau_) <= kTolerance;
  at_half_period_ = real_axis && !at_period_ &&
                    lattice_offset(re, tau_ / 2) <= kTolerance;
  pole_point_ = std::abs(z.imag() - 0.5) <= kTolerance &&
                lattice_offset(re, tau_ / 2) <= kTolerance;
}

Complex q_pow(const TreeParams& tree, Complex w) {
  return std::exp(w * tree.log_q());
}

Complex gamma(const SpectralParam& z) {
  const auto& tree = z.tree();
  const Complex w = z.reduced();
  return (q_pow(tree, 0.5 + kI * w) + q_pow(tree, 0.5 - kI * w)) /
         static_cast<double>(tree.q + 1);
}

Complex c_function(const SpectralParam& z) {
  if (z.degenerate())
    throw PoleError("c-function is singular on (tau/2)Z");
  const auto& tree = z.tree();
  const double q = tree.q;
  const Complex w = z.reduced();
  const Complex numerator = q_pow(tree, 0.5 + kI * w) - q_pow(tree, -0.5 - kI * w);
  const Complex denominator = q_pow(tree, kI * w) - q_pow(tree, -kI * w);
  return std::sqrt(q) / (q + 1) * numerator / denominator;
}

Complex spherical(const SpectralParam& z, int n) {
  if (n < 0) throw DomainError("spherical function needs n >= 0");
  if (n == 0) return 1.0;
  const auto& tree = z.tree();
  const double q = tree.q;
  if (z.degenerate()) {
    const double value = ((q - 1) / (q + 1) * n + 1) * std::pow(q, -0.5 * n);
    return z.at_half_period() && n % 2 == 1 ? -value : value;
  }
  const Complex w = z.reduced();
  const Complex c_plus = c_function(z);
  const Complex c_minus = c_function(z.negated());
  return c_plus * q_pow(tree, (kI * w - 0.5) * static_cast<double>(n)) +
         c_minus * q_pow(tree, (-kI * w - 0.5) * static_cast<double>(n));
}

Eigen::VectorXcd spherical_table(const SpectralParam& z, int nmax) {
  Eigen::VectorXcd out(nmax + 1);
  for (int n = 0; n <= nmax; ++n) out[n] = spherical(z, n);
  return out;
}

Eigen::VectorXd spectral_grid(const TreeParams& tree, int points) {
  if (points < 1) throw DomainError("spectral grid needs at least one point");
  const double tau = tree.tau();
  return Eigen::VectorXd::LinSpaced(points, 0, points - 1)
      .unaryExpr([&](double j) { return -tau / 2 + (j + 0.5) * tau / points; });
}

double PlancherelMeasure::closed_form_constant(const TreeParams& tree) {
  const double q = tree.q;
  return q * tree.log_q() / (4 * std::numbers::pi * (q + 1));
}

namespace {

double inverse_c_squared(const TreeParams& tree, double s) {
  const SpectralParam z(tree, s);
  if (z.degenerate()) return 0;
  return 1.0 / std::norm(c_function(z));
}

double trapezoid_mass(const TreeParams& tree, int points) {
  const Eigen::VectorXd grid = spectral_grid(tree, points);
  double sum = 0;
  for (double s : grid) sum += inverse_c_squared(tree, s);
  return sum * tree.tau() / points;
}

}  // namespace

PlancherelMeasure PlancherelMeasure::calibrate(const TreeParams& tree) {
  constexpr int kMaxPoints = 1 << 22;
  int points = 16;
  double previous = trapezoid_mass(tree, points);
  while (points < kMaxPoints) {
    points *= 2;
    const double current = trapezoid_mass(tree, points);
    if (std::abs(current - previous) <= kStability * std::abs(current))
      return {tree, 1.0 / current, points};
    previous = current;
  }
  throw CalibrationError("Plancherel calibration did not stabilise");
}

double PlancherelMeasure::density(double s) const {
  return constant_ * inverse_c_squared(tree_, s);
}

Eigen::VectorXd PlancherelMeasure::weights(int points) const {
  const double step = tree_.tau() / points;
  return spectral_grid(tree_, points).unaryExpr([&](double s) {
    return density(s) * step;
  });
}

}  // namespace htree
