#pragma once

#include <span>
#include <vector>

#include "besovseq/besov.hpp"
#include "besovseq/coeff_field.hpp"

namespace besovseq {

//! E|G|^u for G ~ N(0,1) and real u >= 0, via 2^{u/2} Gamma((u+1)/2) / sqrt(pi).
double gaussian_abs_moment(double u);

//! Same moment by adaptive Simpson quadrature; used to cross-check the closed
//! form (and as the independent oracle in tests).
double gaussian_abs_moment_quadrature(double u, double tol = 1e-12);

//! Generalised binomial coefficient p(p-1)...(p-u+1) / u! for real p.
double binomial_real(double p, int u);

//! The bias-correction convention for the integrability index: the largest
//! even integer strictly below p when p is not an even integer, p itself
//! otherwise. This controls the depth of the correction recursion.
int floor_even(double p);

//! Gaussian absolute moments m_u^u = E|G|^u cached for one value of p, with
//! a quadrature cross-check at construction (1e-10).
class MomentTable {
public:
  explicit MomentTable(double p);

  double p() const { return p_; }
  int floor_even_p() const { return floor_even_; }
  //! m_u^u for the exponents the recursion needs (even u <= floor_even(p),
  //! and the fractional exponents p, p - u for even u).
  double moment_pow(double u) const;

private:
  double p_;
  int floor_even_;
};

//! Bias-corrected estimate of a^u from a single observation a_hat ~ N(a, 1/n),
//! for even u >= 0. F_0 = 1; the recursion subtracts the Gaussian-moment
//! correction terms so that E F_u = a^u exactly.
double fhat_even(int u, double a_hat, double n);

//! Extension to real p >= 2. Even integers delegate to fhat_even; otherwise
//! |a_hat|^p minus the correction sum over even u <= floor_even(p) - 2.
double fhat_p(double p, double a_hat, double n);

//! Level aggregate of the bias-corrected p-th powers with the Besov weight
//! 2^{lp(1/2-1/p)}; detects coefficient energy at resolution l.
struct LevelStatistic {
  int level = 0;
  double value = 0.0;
  std::vector<double> contributions;  //!< per-coefficient weighted terms
};

LevelStatistic level_statistic(const CoeffField& obs, int l, double p, double n);

//! Distance of the coarse projection (levels <= j_s) of the observation to
//! the smooth ball, in the configured sequence norm.
double infimum_statistic(const CoeffField& obs, const BesovBall& ball, int j_s,
                         NormMode mode = NormMode::seq_pp);

//! Split-sample product estimator of |a|^p: the product of the first
//! floor_even(p) independent estimates times |last|^{p - floor_even(p)}.
//! Expects floor_even(p) estimates for even p, one more otherwise.
double fhat_split_product(double p, std::span<const double> a_hats);

}  // namespace besovseq
