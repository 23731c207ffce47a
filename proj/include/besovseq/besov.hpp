#pragma once

#include <string>

#include "besovseq/coeff_field.hpp"

namespace besovseq {

//! Sequence norm used wherever the algorithms need an L_p surrogate.
//! seq_pp is the (0,p,p) norm, seq_p2 the (0,p,2) norm; both sandwich L_p
//! for p >= 2, with equivalence constants absorbed into calibration.
enum class NormMode { seq_pp, seq_p2 };

std::string to_string(NormMode mode);
NormMode norm_mode_from_string(const std::string& s);

//! Besov ball of smoothness r, integrability p and radius B: all fields whose
//! weighted level norms 2^{l(r+1/2-1/p)} |c_l|_{l_p} stay <= B uniformly in l.
struct BesovBall {
  double r;
  double p;
  double B;

  BesovBall(double r_, double p_, double B_);

  //! Level-l l_p-radius admitted by the ball (level 0 has weight one).
  double level_radius(int l) const;
};

//! Weighted sequence norm with smoothness r, inner index p, outer index h
//! (h = infinity gives the sup form). Levels above the field's max enter as
//! zero. Requires p >= 1, h >= 1, r >= 0.
double besov_seq_norm(const CoeffField& c, double r, double p, double h);

//! Membership test: besov_seq_norm(c, r, p, inf) <= B.
bool ball_contains(const CoeffField& c, const BesovBall& ball);

//! Distance, in the requested sequence norm, from c (read up to level j_cut)
//! to the ball. Computed in closed form: the per-level minimiser is the radial
//! shrinkage of the level slice onto the admitted l_p radius.
double ball_distance(const CoeffField& c, const BesovBall& ball, int j_cut,
                     NormMode mode = NormMode::seq_pp);

//! Norm of c in the requested mode, i.e. besov_seq_norm with r = 0 and
//! h = p (seq_pp) or h = 2 (seq_p2).
double seq_norm(const CoeffField& c, double p, NormMode mode = NormMode::seq_pp);

//! seq_norm of a - b with level-wise zero padding.
double seq_distance(const CoeffField& a, const CoeffField& b, double p,
                    NormMode mode = NormMode::seq_pp);

//! l_p norm of one coefficient slice.
double slice_lp_norm(const std::vector<double>& v, double p);

}  // namespace besovseq
