#include "besovseq/confidence.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace besovseq {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::two_point_high_s: return "two_point_high_s";
    case Regime::low_s_full_model: return "low_s_full_model";
    case Regime::segment: return "segment";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& s) {
  if (s == "two_point_high_s") return Regime::two_point_high_s;
  if (s == "low_s_full_model") return Regime::low_s_full_model;
  if (s == "segment") return Regime::segment;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

LepskiConfig default_lepski(const TestConfig& cfg, int obs_max_level) {
  LepskiConfig lep;
  lep.p = cfg.p;
  lep.n = cfg.n;
  lep.j_max = std::min(obs_max_level,
                       static_cast<int>(std::ceil(std::log2(cfg.n))));
  lep.norm_mode = cfg.norm_mode;
  return lep;
}

namespace {

bool high_s_regime(const TestConfig& cfg) {
  return cfg.s * (1.0 - 1.0 / cfg.p) > cfg.t;
}

}  // namespace

ConfidenceSet confset_two_point(const CoeffField& obs, const TestConfig& cfg,
                                double Up) {
  cfg.validate();
  const TestOutcome outcome = run_test(obs, cfg);
  ConfidenceSet cs;
  cs.regime = Regime::two_point_high_s;
  cs.regime_ok = high_s_regime(cfg);
  cs.center = adaptive_estimate(obs, default_lepski(cfg, obs.max_level()));
  cs.norm = NormDescriptor{cfg.p, cfg.norm_mode};
  cs.test_decision = outcome.decision;
  const double rate = outcome.decision == 0
                          ? std::pow(cfg.n, -cfg.s / (2.0 * cfg.s + 1.0))
                          : std::pow(cfg.n, -cfg.t / (2.0 * cfg.t + 1.0));
  cs.radius = Up * rate / cfg.delta();
  return cs;
}

ConfidenceSet confset_low_smoothness(const CoeffField& obs, const TestConfig& cfg,
                                     double D) {
  cfg.validate();
  const TestOutcome outcome = run_test(obs, cfg);
  ConfidenceSet cs;
  cs.regime = Regime::low_s_full_model;
  cs.regime_ok = !high_s_regime(cfg);
  cs.center = adaptive_estimate(obs, default_lepski(cfg, obs.max_level()));
  cs.norm = NormDescriptor{cfg.p, cfg.norm_mode};
  cs.test_decision = outcome.decision;
  const double rate = outcome.decision == 0
                          ? std::pow(cfg.n, -cfg.s / (2.0 * cfg.s + 1.0))
                          : std::pow(cfg.n, -cfg.t / (2.0 * cfg.t + 1.0));
  cs.radius = D * rate / cfg.alpha;
  cs.constraint = BesovBall(cfg.t, cfg.p, cfg.B);
  return cs;
}

ConfidenceSet confset_segment(const CoeffField& obs, const TestConfig& cfg,
                              double Upp, int grid_resolution) {
  cfg.validate();
  ConfidenceSet cs;
  cs.regime = Regime::segment;
  cs.regime_ok = !high_s_regime(cfg);
  cs.center = adaptive_estimate(obs, default_lepski(cfg, obs.max_level()));
  cs.norm = NormDescriptor{cfg.p, cfg.norm_mode};
  cs.r_hat = estimate_rhat(obs, cfg, grid_resolution);
  cs.test_decision = cs.r_hat < cfg.s ? 1 : 0;
  cs.radius = Upp * std::pow(cfg.n, -cs.r_hat / (2.0 * cs.r_hat + 1.0)) / cfg.alpha;
  return cs;
}

bool confset_contains(const ConfidenceSet& cs, const CoeffField& f) {
  if (cs.constraint && !ball_contains(f, *cs.constraint)) return false;
  return seq_distance(cs.center, f, cs.norm.p, cs.norm.mode) <= cs.radius;
}

double confset_diameter(const ConfidenceSet& cs) { return 2.0 * cs.radius; }

std::string confset_to_json(const ConfidenceSet& cs, const std::string& center_ref,
                            int indent) {
  nlohmann::json j;
  j["regime"] = to_string(cs.regime);
  j["radius"] = cs.radius;
  j["norm"] = {{"p", cs.norm.p}, {"mode", to_string(cs.norm.mode)}};
  j["center_ref"] = center_ref;
  if (cs.regime == Regime::segment) j["r_hat"] = cs.r_hat;
  if (cs.constraint) {
    j["constraint"] = {{"r", cs.constraint->r},
                       {"p", cs.constraint->p},
                       {"B", cs.constraint->B}};
  }
  return j.dump(indent);
}

}  // namespace besovseq
