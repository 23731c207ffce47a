#include "besovseq/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace besovseq {

std::string to_string(NormMode mode) {
  return mode == NormMode::seq_pp ? "0pp" : "0p2";
}

NormMode norm_mode_from_string(const std::string& s) {
  if (s == "0pp") return NormMode::seq_pp;
  if (s == "0p2") return NormMode::seq_p2;
  throw std::invalid_argument("unknown norm mode '" + s + "' (expected 0pp or 0p2)");
}

BesovBall::BesovBall(double r_, double p_, double B_) : r(r_), p(p_), B(B_) {
  if (!(r > 0.0)) throw std::invalid_argument("BesovBall: r must be > 0");
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw std::invalid_argument("BesovBall: p must be finite and >= 2");
  }
  if (!(B > 0.0)) throw std::invalid_argument("BesovBall: B must be > 0");
}

double BesovBall::level_radius(int l) const {
  if (l == 0) return B;
  return B * std::exp2(-l * (r + 0.5 - 1.0 / p));
}

double slice_lp_norm(const std::vector<double>& v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

double besov_seq_norm(const CoeffField& c, double r, double p, double h) {
  if (!(p >= 1.0)) throw std::invalid_argument("besov_seq_norm: p must be >= 1");
  if (!(h >= 1.0)) throw std::invalid_argument("besov_seq_norm: h must be >= 1");
  if (!(r >= 0.0)) throw std::invalid_argument("besov_seq_norm: r must be >= 0");

  if (std::isinf(h)) {
    double m = slice_lp_norm(c.level(0), p);
    for (int l = 1; l <= c.max_level(); ++l) {
      const double w = std::exp2(l * (r + 0.5 - 1.0 / p));
      m = std::max(m, w * slice_lp_norm(c.level(l), p));
    }
    return m;
  }

  double s = std::pow(slice_lp_norm(c.level(0), p), h);
  for (int l = 1; l <= c.max_level(); ++l) {
    const double w = std::exp2(l * (r + 0.5 - 1.0 / p));
    s += std::pow(w * slice_lp_norm(c.level(l), p), h);
  }
  return std::pow(s, 1.0 / h);
}

bool ball_contains(const CoeffField& c, const BesovBall& ball) {
  return besov_seq_norm(c, ball.r, ball.p, std::numeric_limits<double>::infinity()) <=
         ball.B;
}

double ball_distance(const CoeffField& c, const BesovBall& ball, int j_cut,
                     NormMode mode) {
  if (j_cut < 0) throw std::invalid_argument("ball_distance: j_cut must be >= 0");
  const double p = ball.p;
  const int top = std::min(j_cut, c.max_level());
  double acc = 0.0;
  for (int l = 0; l <= top; ++l) {
    const double excess =
        std::max(slice_lp_norm(c.level(l), p) - ball.level_radius(l), 0.0);
    if (excess <= 0.0) continue;
    const double w = l == 0 ? 1.0 : std::exp2(l * (0.5 - 1.0 / p));
    const double term = w * excess;
    acc += mode == NormMode::seq_pp ? std::pow(term, p) : term * term;
  }
  return mode == NormMode::seq_pp ? std::pow(acc, 1.0 / p) : std::sqrt(acc);
}

double seq_norm(const CoeffField& c, double p, NormMode mode) {
  return besov_seq_norm(c, 0.0, p, mode == NormMode::seq_pp ? p : 2.0);
}

double seq_distance(const CoeffField& a, const CoeffField& b, double p, NormMode mode) {
  return seq_norm(field_difference(a, b), p, mode);
}

}  // namespace besovseq
