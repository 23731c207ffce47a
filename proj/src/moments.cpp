#include "besovseq/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace besovseq {

double gaussian_abs_moment(double u) {
  if (u < 0.0) throw std::invalid_argument("gaussian_abs_moment: u must be >= 0");
  return std::exp2(u / 2.0) * std::tgamma((u + 1.0) / 2.0) /
         std::sqrt(std::numbers::pi);
}

namespace {

double abs_moment_integrand(double x, double u) {
  return std::pow(x, u) * std::exp(-x * x / 2.0);
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, double u) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = abs_moment_integrand(lm, u);
  const double frm = abs_moment_integrand(rm, u);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2.0, depth - 1, u) +
         adaptive_simpson(m, b, fm, frm, fb, right, tol / 2.0, depth - 1, u);
}

}  // namespace

double gaussian_abs_moment_quadrature(double u, double tol) {
  if (u < 0.0) throw std::invalid_argument("gaussian_abs_moment_quadrature: u >= 0");
  // 2/sqrt(2 pi) * int_0^inf x^u exp(-x^2/2) dx; the tail past 42 is below
  // double precision for the exponents used here.
  const double a = 0.0, b = 42.0;
  const double fa = abs_moment_integrand(a, u);
  const double fb = abs_moment_integrand(b, u);
  const double fm = abs_moment_integrand(0.5 * (a + b), u);
  const double whole = simpson(a, b, fa, fm, fb);
  const double integral =
      adaptive_simpson(a, b, fa, fm, fb, whole, tol, 48, u);
  return integral * 2.0 / std::sqrt(2.0 * std::numbers::pi);
}

double binomial_real(double p, int u) {
  if (u < 0) throw std::invalid_argument("binomial_real: u must be >= 0");
  double c = 1.0;
  for (int i = 0; i < u; ++i) c *= (p - i) / (i + 1);
  return c;
}

int floor_even(double p) {
  if (!(p >= 0.0)) throw std::invalid_argument("floor_even: p must be >= 0");
  const double fl = std::floor(p);
  if (fl == p && static_cast<long long>(fl) % 2 == 0) {
    return static_cast<int>(fl);
  }
  int e = static_cast<int>(fl);
  if (e % 2 != 0) e -= 1;
  return e;
}

MomentTable::MomentTable(double p) : p_(p), floor_even_(floor_even(p)) {
  if (!(p >= 2.0)) throw std::invalid_argument("MomentTable: p must be >= 2");
  // Cross-check the Gamma closed form against quadrature on the exponents
  // the recursion touches.
  for (int u = 2; u <= floor_even_; u += 2) {
    const double closed = gaussian_abs_moment(u);
    const double quad = gaussian_abs_moment_quadrature(u);
    if (std::abs(closed - quad) > 1e-10 * std::max(1.0, closed)) {
      throw std::runtime_error("MomentTable: moment cross-check failed");
    }
  }
  const double closed = gaussian_abs_moment(p);
  const double quad = gaussian_abs_moment_quadrature(p);
  if (std::abs(closed - quad) > 1e-10 * std::max(1.0, closed)) {
    throw std::runtime_error("MomentTable: moment cross-check failed");
  }
}

double MomentTable::moment_pow(double u) const { return gaussian_abs_moment(u); }

double fhat_even(int u, double a_hat, double n) {
  if (u < 0 || u % 2 != 0) {
    throw std::invalid_argument("fhat_even: u must be a nonnegative even integer");
  }
  if (!(n > 0.0)) throw std::invalid_argument("fhat_even: n must be > 0");
  std::vector<double> f(u / 2 + 1);
  f[0] = 1.0;
  for (int v = 2; v <= u; v += 2) {
    double correction = 0.0;
    for (int i = 0; i <= v - 2; i += 2) {
      correction += binomial_real(v, i) *
                    gaussian_abs_moment(v - i) / std::pow(n, (v - i) / 2.0) *
                    f[i / 2];
    }
    f[v / 2] = std::pow(a_hat, v) - correction;
  }
  return f[u / 2];
}

double fhat_p(double p, double a_hat, double n) {
  if (!(p >= 2.0)) throw std::invalid_argument("fhat_p: p must be >= 2");
  if (!(n > 0.0)) throw std::invalid_argument("fhat_p: n must be > 0");
  const int fe = floor_even(p);
  if (fe == p) return fhat_even(fe, a_hat, n);
  double correction = 0.0;
  for (int u = 0; u <= fe - 2; u += 2) {
    correction += binomial_real(p, u) *
                  gaussian_abs_moment(p - u) / std::pow(n, (p - u) / 2.0) *
                  fhat_even(u, a_hat, n);
  }
  return std::pow(std::abs(a_hat), p) - correction;
}

LevelStatistic level_statistic(const CoeffField& obs, int l, double p, double n) {
  if (l < 0 || l > obs.max_level()) {
    throw std::out_of_range("level_statistic: level out of range");
  }
  const double weight = std::exp2(l * p * (0.5 - 1.0 / p));
  LevelStatistic out;
  out.level = l;
  const auto& slice = obs.level(l);
  out.contributions.reserve(slice.size());
  for (double a_hat : slice) {
    const double term = weight * fhat_p(p, a_hat, n);
    out.contributions.push_back(term);
    out.value += term;
  }
  return out;
}

double infimum_statistic(const CoeffField& obs, const BesovBall& ball, int j_s,
                         NormMode mode) {
  if (j_s > obs.max_level()) {
    throw std::invalid_argument("infimum_statistic: j_s exceeds the field resolution");
  }
  return ball_distance(project_levels(obs, j_s), ball, j_s, mode);
}

double fhat_split_product(double p, std::span<const double> a_hats) {
  if (!(p >= 2.0)) throw std::invalid_argument("fhat_split_product: p must be >= 2");
  const int fe = floor_even(p);
  const bool fractional = fe != p;
  const std::size_t want = static_cast<std::size_t>(fe) + (fractional ? 1 : 0);
  if (a_hats.size() != want) {
    throw std::invalid_argument("fhat_split_product: expected " +
                                std::to_string(want) + " estimates, got " +
                                std::to_string(a_hats.size()));
  }
  double prod = 1.0;
  for (int i = 0; i < fe; ++i) prod *= a_hats[i];
  if (fractional) prod *= std::pow(std::abs(a_hats[fe]), p - fe);
  return prod;
}

}  // namespace besovseq
