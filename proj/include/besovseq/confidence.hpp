#pragma once

#include <optional>
#include <string>

#include "besovseq/besov.hpp"
#include "besovseq/coeff_field.hpp"
#include "besovseq/estimation.hpp"
#include "besovseq/testing.hpp"

namespace besovseq {

enum class Regime { two_point_high_s, low_s_full_model, segment };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& s);

struct NormDescriptor {
  double p = 2.0;
  NormMode mode = NormMode::seq_pp;
};

//! Intensional confidence set: a norm ball around the adaptive estimate,
//! optionally intersected with a Besov ball constraint.
struct ConfidenceSet {
  CoeffField center;
  double radius = 0.0;
  NormDescriptor norm;
  Regime regime = Regime::two_point_high_s;
  bool regime_ok = true;   //!< false when built outside its intended regime
  std::optional<BesovBall> constraint;  //!< extra membership requirement
  int test_decision = 0;   //!< the test value that selected the radius
  double r_hat = 0.0;      //!< segment regime only
};

//! Default selector derived from a test configuration.
LepskiConfig default_lepski(const TestConfig& cfg, int obs_max_level);

//! Two-point construction for the s(1-1/p) > t regime: radius
//! (1/Delta) Up n^{-s/(2s+1)} when the test accepts, (1/Delta) Up n^{-t/(2t+1)}
//! when it rejects, around the adaptive estimate.
ConfidenceSet confset_two_point(const CoeffField& obs, const TestConfig& cfg,
                                double Up);

//! Full-model construction for s(1-1/p) <= t: the same two radii scaled by
//! D / alpha, intersected with the (t, B) ball.
ConfidenceSet confset_low_smoothness(const CoeffField& obs, const TestConfig& cfg,
                                     double D);

//! Segment construction: radius (1/alpha) Upp n^{-rhat/(2 rhat + 1)} with the
//! smoothness estimate rhat from the monotone test family.
ConfidenceSet confset_segment(const CoeffField& obs, const TestConfig& cfg,
                              double Upp, int grid_resolution);

//! Membership: within radius of the center in the set's norm, and inside the
//! constraint ball when one is attached (checked up to the field resolution).
bool confset_contains(const ConfidenceSet& cs, const CoeffField& f);

//! Diameter of a norm ball: twice the radius.
double confset_diameter(const ConfidenceSet& cs);

//! JSON view {regime, radius, norm, center_ref}; the center itself is stored
//! wherever center_ref points.
std::string confset_to_json(const ConfidenceSet& cs, const std::string& center_ref,
                            int indent = -1);

}  // namespace besovseq
