#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "besovseq/besov.hpp"
#include "besovseq/coeff_field.hpp"
#include "besovseq/observation.hpp"

namespace besovseq {

//! Configuration of the composite smoothness test: sample size, the two
//! smoothness exponents (null s, alternative t), integrability p, ball radius
//! B, target level alpha and the calibration constants E1, E2, Cprime.
struct TestConfig {
  double n = 1024.0;
  double s = 2.0;
  double t = 1.0;
  double p = 2.0;
  double B = 1.0;
  double alpha = 0.05;
  double E1 = 1.0;
  double E2 = 1.0;
  double Cprime = 1.0;
  NormMode norm_mode = NormMode::seq_pp;

  void validate() const;

  //! Coarse cutoff j_s with 2^{j_s} ~ n^{1/(2s+1)} (base-2 logs).
  int coarse_level() const { return family_coarse_level(s); }
  //! Fine cutoff j with 2^j ~ n^{1/(2t+1-1/p)}.
  int fine_level() const;
  //! Coarse cutoff of the family member at smoothness r.
  int family_coarse_level(double r) const;
  //! Per-type error budget: type I and type II are each bounded by
  //! 2*delta = alpha/2.
  double delta() const { return alpha / 4.0; }
  //! Default simulation cutoff: two levels above the fine cutoff.
  int default_sim_level() const { return fine_level() + 2; }
};

std::string test_config_to_json(const TestConfig& cfg, int indent = -1);
TestConfig test_config_from_json(const std::string& text);

//! Threshold set for one family member: per-level thresholds t_n(l) for
//! first_level <= l <= last_level, the infimum threshold, and the separation
//! radius rho_n the test is consistent against.
struct TestThresholds {
  int first_level = 0;
  int last_level = 0;
  std::vector<double> level_thresholds;
  double infimum_threshold = 0.0;
  double separation = 0.0;

  double at(int l) const { return level_thresholds.at(l - first_level); }
};

TestThresholds thresholds(const TestConfig& cfg);
//! Thresholds of the family member with smoothness r in place of s.
TestThresholds thresholds_at(const TestConfig& cfg, double r);

//! Full record of one test evaluation: the decision, every level comparison
//! and the infimum comparison.
struct TestOutcome {
  int decision = 0;
  TestThresholds thr;
  std::vector<double> level_stats;        //!< T_n(l), aligned with thr levels
  std::vector<std::uint8_t> level_exceeded;
  double infimum_stat = 0.0;
  bool infimum_exceeded = false;
};

//! The composite test: reject iff some level statistic exceeds t_n(l)^p or
//! the infimum statistic exceeds its threshold.
TestOutcome run_test(const CoeffField& obs, const TestConfig& cfg);

//! Member of the monotone test family at smoothness r in [t, s].
TestOutcome test_family_at(const CoeffField& obs, const TestConfig& cfg, double r);

//! Smoothness estimate: infimum of the rejection region of r -> decision(r)
//! on a uniform grid with step (s - t)/grid_resolution, located by bisection.
//! Returns s when the whole grid accepts.
double estimate_rhat(const CoeffField& obs, const TestConfig& cfg,
                     int grid_resolution);

struct CalibrationOptions {
  int replications = 1000;
  std::uint64_t seed = 1;
  std::vector<double> grid;       //!< default {2^-2, ..., 2^8}
  bool ensure_monotone = false;   //!< audit the r-family and raise E2 if needed
  int monotone_grid = 50;
  int monotone_observations = 100;
};

struct CalibrationResult {
  double E1 = 1.0;
  double E2 = 1.0;
  double Cprime = 1.0;
  double null_rejection_rate = 0.0;
};

//! Smallest (E1, E2) on the geometric grid keeping the empirical null
//! rejection rate under the supplied null generator at or below alpha / 2.
//! Cprime is level-neutral and passes through from the template. Deterministic
//! given the seed; throws with diagnostics when no grid point reaches level.
CalibrationResult calibrate_constants(
    const TestConfig& cfg_template,
    const std::function<CoeffField(std::uint64_t)>& null_generator,
    const CalibrationOptions& opts);

//! Deterministic least-favourable null: the boundary function of the (s, B)
//! ball at level j_s.
std::function<CoeffField(std::uint64_t)> boundary_null_generator(const TestConfig& cfg);

//! Largest sequence-norm distance from the (s, B) ball attainable inside the
//! (t, B) ball using detail levels 1..max_level.
double max_separation(const TestConfig& cfg, int max_level);

//! Truth inside the (t, B) ball at the requested distance from the (s, B)
//! ball: the boundary field saturating levels 1..min(fine level, max_level),
//! radially scaled. Throws when the distance is unattainable.
CoeffField make_separated_alternative(const TestConfig& cfg, double separation,
                                      int max_level);

}  // namespace besovseq
