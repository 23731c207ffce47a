#pragma once

#include "besovseq/besov.hpp"
#include "besovseq/coeff_field.hpp"

namespace besovseq {

//! Resolution-selector configuration. The selector keeps the smallest cutoff
//! whose projections stay within a noise-scaled band of every finer one.
struct LepskiConfig {
  double p = 2.0;
  double n = 1024.0;
  int j_max = 10;            //!< search ceiling
  double Dp_prime = 1.0;     //!< selector constant D'_p
  NormMode norm_mode = NormMode::seq_pp;

  void validate() const;
  //!< Band width at comparison level l: 4 (D'_p + 1) 2^{l/2} / sqrt(n).
  double band(int l) const;
};

//! Smallest j such that || Pi_{V_j} obs - Pi_{V_l} obs || <= band(l) for all
//! j < l <= j_max; j_max when no level qualifies.
int lepski_select(const CoeffField& obs, const LepskiConfig& cfg);

//! The adaptive estimate: the observation projected at the selected cutoff.
CoeffField adaptive_estimate(const CoeffField& obs, const LepskiConfig& cfg);

//! Oracle cutoff (diagnostic, needs the ball the truth lives near): smallest
//! j where the stochastic error bound sigma(j, n) = Dp 2^{j/2} / sqrt(n)
//! dominates the approximation bound 2 eps + Cp B 2^{-jr}.
int oracle_jstar(const BesovBall& ball, double n, double eps, double Dp = 1.0,
                 double Cp = 1.0);

}  // namespace besovseq
