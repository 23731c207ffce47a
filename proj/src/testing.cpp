#include "besovseq/testing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "besovseq/moments.hpp"

namespace besovseq {

void TestConfig::validate() const {
  if (!(n > 0.0)) throw std::invalid_argument("TestConfig: n must be > 0");
  if (!(t >= 0.5)) throw std::invalid_argument("TestConfig: t must be >= 1/2");
  if (!(s > t)) throw std::invalid_argument("TestConfig: s must exceed t");
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw std::invalid_argument("TestConfig: p must be finite and >= 2");
  }
  if (!(B > 0.0)) throw std::invalid_argument("TestConfig: B must be > 0");
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("TestConfig: alpha must lie in (0, 1]");
  }
  if (E1 < 0.0 || E2 < 0.0 || Cprime < 0.0) {
    throw std::invalid_argument("TestConfig: calibration constants must be >= 0");
  }
  if (coarse_level() < 1) {
    throw std::invalid_argument("TestConfig: n too small, coarse cutoff below 1");
  }
  if (coarse_level() > fine_level()) {
    throw std::invalid_argument("TestConfig: coarse cutoff exceeds fine cutoff");
  }
}

int TestConfig::fine_level() const {
  return static_cast<int>(std::floor(std::log2(n) / (2.0 * t + 1.0 - 1.0 / p)));
}

int TestConfig::family_coarse_level(double r) const {
  return static_cast<int>(std::floor(std::log2(n) / (2.0 * r + 1.0)));
}

std::string test_config_to_json(const TestConfig& cfg, int indent) {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["s"] = cfg.s;
  j["t"] = cfg.t;
  j["p"] = cfg.p;
  j["B"] = cfg.B;
  j["alpha"] = cfg.alpha;
  j["E1"] = cfg.E1;
  j["E2"] = cfg.E2;
  j["Cprime"] = cfg.Cprime;
  j["norm_mode"] = to_string(cfg.norm_mode);
  return j.dump(indent);
}

TestConfig test_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TestConfig cfg;
  cfg.n = j.at("n").get<double>();
  cfg.s = j.at("s").get<double>();
  cfg.t = j.at("t").get<double>();
  cfg.p = j.at("p").get<double>();
  cfg.B = j.at("B").get<double>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.E1 = j.at("E1").get<double>();
  cfg.E2 = j.at("E2").get<double>();
  cfg.Cprime = j.at("Cprime").get<double>();
  cfg.norm_mode = norm_mode_from_string(j.at("norm_mode").get<std::string>());
  cfg.validate();
  return cfg;
}

namespace {

//! The four-term per-level threshold at smoothness r (E1 factored out).
double level_threshold_unit(const TestConfig& cfg, int l, double r) {
  const double p = cfg.p;
  const double n = cfg.n;
  const int fe = floor_even(p);
  const int j = cfg.fine_level();
  const double term1 = std::exp2(-l * r * (p - 1.0) / p) *
                       std::pow(std::exp2(l * (1.0 - 1.0 / p)) / n, 1.0 / (2.0 * p));
  const double term2 = std::exp2(-fe * l * r / p) *
                       std::pow(std::exp2(static_cast<double>(l)) / n,
                                (p - fe) / (2.0 * p));
  const double term3 = std::exp2(-l * r);
  const double term4 =
      std::sqrt(std::exp2((p - 1.0) * (j + l) / (2.0 * p)) / n);
  return term1 + term2 + term3 + term4;
}

}  // namespace

TestThresholds thresholds_at(const TestConfig& cfg, double r) {
  cfg.validate();
  if (r < cfg.t || r > cfg.s) {
    throw std::invalid_argument("thresholds_at: r must lie in [t, s]");
  }
  TestThresholds out;
  out.first_level = cfg.family_coarse_level(r);
  out.last_level = cfg.fine_level();
  out.level_thresholds.reserve(out.last_level - out.first_level + 1);
  double sum = 0.0;
  for (int l = out.first_level; l <= out.last_level; ++l) {
    const double tl = cfg.E1 * level_threshold_unit(cfg, l, r);
    out.level_thresholds.push_back(tl);
    sum += tl;
  }
  out.infimum_threshold = cfg.E2 * std::sqrt(std::exp2(out.first_level) / cfg.n);
  out.separation = 4.0 * ((cfg.B + 1.0) * cfg.Cprime *
                              std::exp2(-cfg.fine_level() * cfg.t) +
                          2.0 * sum + 2.0 * out.infimum_threshold);
  return out;
}

TestThresholds thresholds(const TestConfig& cfg) { return thresholds_at(cfg, cfg.s); }

TestOutcome test_family_at(const CoeffField& obs, const TestConfig& cfg, double r) {
  TestOutcome out;
  out.thr = thresholds_at(cfg, r);
  if (obs.max_level() < out.thr.last_level) {
    throw std::invalid_argument("test: observation resolution below the fine cutoff");
  }
  bool reject = false;
  for (int l = out.thr.first_level; l <= out.thr.last_level; ++l) {
    const double stat = level_statistic(obs, l, cfg.p, cfg.n).value;
    const bool exceeded = stat > std::pow(out.thr.at(l), cfg.p);
    out.level_stats.push_back(stat);
    out.level_exceeded.push_back(exceeded ? 1 : 0);
    reject = reject || exceeded;
  }
  const BesovBall ball(r, cfg.p, cfg.B);
  out.infimum_stat =
      infimum_statistic(obs, ball, out.thr.first_level, cfg.norm_mode);
  out.infimum_exceeded = out.infimum_stat > out.thr.infimum_threshold;
  reject = reject || out.infimum_exceeded;
  out.decision = reject ? 1 : 0;
  return out;
}

TestOutcome run_test(const CoeffField& obs, const TestConfig& cfg) {
  return test_family_at(obs, cfg, cfg.s);
}

double estimate_rhat(const CoeffField& obs, const TestConfig& cfg,
                     int grid_resolution) {
  if (grid_resolution < 2) {
    throw std::invalid_argument("estimate_rhat: grid_resolution must be >= 2");
  }
  const double step = (cfg.s - cfg.t) / grid_resolution;
  auto r_at = [&](int i) { return i == grid_resolution ? cfg.s : cfg.t + i * step; };
  auto decide = [&](int i) { return test_family_at(obs, cfg, r_at(i)).decision; };

  if (decide(0) == 1) return cfg.t;
  if (decide(grid_resolution) == 0) return cfg.s;
  // Trajectories are nondecreasing in r, so the first rejecting grid point is
  // located by bisection; ties resolve toward smaller r.
  int lo = 0, hi = grid_resolution;  // decision(lo) = 0, decision(hi) = 1
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (decide(mid) == 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return r_at(hi);
}

std::function<CoeffField(std::uint64_t)> boundary_null_generator(const TestConfig& cfg) {
  TruthParams params;
  params.max_level = cfg.default_sim_level();
  params.r = cfg.s;
  params.B = cfg.B;
  params.level = cfg.coarse_level();
  return [params](std::uint64_t) { return make_truth(TruthKind::boundary, params); };
}

namespace {

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int k = -2; k <= 8; ++k) g.push_back(std::exp2(k));
  return g;
}

//! Per-replication minimal constants that keep the replication accepted.
struct ReplicationRequirement {
  double e1 = 0.0;
  double e2 = 0.0;
};

ReplicationRequirement requirement_for(const CoeffField& obs, const TestConfig& cfg) {
  ReplicationRequirement req;
  const int j_s = cfg.coarse_level();
  const int j = cfg.fine_level();
  for (int l = j_s; l <= j; ++l) {
    const double stat = level_statistic(obs, l, cfg.p, cfg.n).value;
    if (stat <= 0.0) continue;
    const double unit = level_threshold_unit(cfg, l, cfg.s);
    req.e1 = std::max(req.e1, std::pow(stat, 1.0 / cfg.p) / unit);
  }
  const BesovBall ball(cfg.s, cfg.p, cfg.B);
  const double inf_stat = infimum_statistic(obs, ball, j_s, cfg.norm_mode);
  req.e2 = inf_stat / std::sqrt(std::exp2(j_s) / cfg.n);
  return req;
}

int count_monotonicity_violations(const CoeffField& obs, const TestConfig& cfg,
                                  int grid_points) {
  int violations = 0;
  int previous = -1;
  for (int i = 0; i <= grid_points; ++i) {
    const double r = cfg.t + (cfg.s - cfg.t) * i / grid_points;
    const int d = test_family_at(obs, cfg, r).decision;
    if (previous > d) ++violations;
    previous = d;
  }
  return violations;
}

}  // namespace

CalibrationResult calibrate_constants(
    const TestConfig& cfg_template,
    const std::function<CoeffField(std::uint64_t)>& null_generator,
    const CalibrationOptions& opts) {
  cfg_template.validate();
  if (opts.replications < 500) {
    throw std::invalid_argument("calibrate_constants: needs >= 500 replications");
  }
  const std::vector<double> grid = opts.grid.empty() ? default_grid() : opts.grid;
  const int L = cfg_template.default_sim_level();

  std::vector<ReplicationRequirement> reqs;
  reqs.reserve(opts.replications);
  for (int i = 0; i < opts.replications; ++i) {
    const std::uint64_t rep_seed = derive_seed(opts.seed, 0xCA11, i);
    const CoeffField truth = null_generator(rep_seed);
    const ObservationModel model(cfg_template.n, derive_seed(rep_seed, 1), L);
    const CoeffField obs = simulate_observation(truth, model);
    reqs.push_back(requirement_for(obs, cfg_template));
  }

  const double target = cfg_template.alpha / 2.0;
  auto rejection_rate = [&](double e1, double e2) {
    int rejected = 0;
    for (const auto& req : reqs) {
      if (req.e1 > e1 || req.e2 > e2) ++rejected;
    }
    return static_cast<double>(rejected) / reqs.size();
  };

  for (double e1 : grid) {
    for (double e2 : grid) {
      const double rate = rejection_rate(e1, e2);
      if (rate <= target) {
        CalibrationResult result;
        result.E1 = e1;
        result.E2 = e2;
        result.Cprime = cfg_template.Cprime;
        result.null_rejection_rate = rate;

        if (opts.ensure_monotone) {
          TestConfig cal = cfg_template;
          cal.E1 = result.E1;
          // Raise E2 along the grid until the family trajectories are
          // monotone on an audit set of observations.
          std::size_t e2_idx =
              std::find(grid.begin(), grid.end(), e2) - grid.begin();
          for (; e2_idx < grid.size(); ++e2_idx) {
            cal.E2 = grid[e2_idx];
            int violations = 0;
            for (int i = 0; i < opts.monotone_observations; ++i) {
              const std::uint64_t rep_seed = derive_seed(opts.seed, 0x3010, i);
              CoeffField truth;
              switch (i % 3) {
                case 0: truth = null_generator(rep_seed); break;
                case 1: truth = CoeffField(L); break;
                default: {
                  TruthParams params;
                  params.max_level = L;
                  params.r = 0.5 * (cfg_template.s + cfg_template.t);
                  params.B = cfg_template.B;
                  params.seed = rep_seed;
                  truth = make_truth(TruthKind::random_signs, params);
                }
              }
              const ObservationModel model(cfg_template.n, derive_seed(rep_seed, 2), L);
              violations += count_monotonicity_violations(
                  simulate_observation(truth, model), cal, opts.monotone_grid);
            }
            if (violations == 0) break;
          }
          if (e2_idx == grid.size()) {
            throw std::runtime_error(
                "calibrate_constants: no grid value of E2 makes the family "
                "monotone on the audit set");
          }
          result.E2 = grid[e2_idx];
          result.null_rejection_rate = rejection_rate(result.E1, result.E2);
        }
        return result;
      }
    }
  }

  std::ostringstream diag;
  diag << "calibrate_constants: level " << target
       << " unreachable on the grid; best rejection rate "
       << rejection_rate(grid.back(), grid.back()) << " at E1 = E2 = "
       << grid.back();
  throw std::runtime_error(diag.str());
}

double max_separation(const TestConfig& cfg, int max_level) {
  const BesovBall sball(cfg.s, cfg.p, cfg.B);
  const BesovBall tball(cfg.t, cfg.p, cfg.B);
  const int top = std::min(max_level, cfg.fine_level());
  double acc = 0.0;
  for (int l = 1; l <= top; ++l) {
    const double gap = tball.level_radius(l) - sball.level_radius(l);
    const double w = std::exp2(l * (0.5 - 1.0 / cfg.p));
    const double term = w * gap;
    acc += cfg.norm_mode == NormMode::seq_pp ? std::pow(term, cfg.p) : term * term;
  }
  return cfg.norm_mode == NormMode::seq_pp ? std::pow(acc, 1.0 / cfg.p)
                                           : std::sqrt(acc);
}

CoeffField make_separated_alternative(const TestConfig& cfg, double separation,
                                      int max_level) {
  if (!(separation >= 0.0)) {
    throw std::invalid_argument("make_separated_alternative: separation >= 0 required");
  }
  const int top = std::min(max_level, cfg.fine_level());
  CoeffField base(max_level);
  for (int l = 1; l <= top; ++l) {
    const double v = cfg.B * std::exp2(-l * (cfg.t + 0.5));
    for (double& x : base.level(l)) x = v;
  }
  const BesovBall sball(cfg.s, cfg.p, cfg.B);
  auto distance_at = [&](double lambda) {
    return ball_distance(field_scaled(base, lambda), sball, max_level, cfg.norm_mode);
  };
  const double reachable = distance_at(1.0);
  if (separation > reachable) {
    throw std::invalid_argument(
        "make_separated_alternative: separation " + std::to_string(separation) +
        " exceeds the attainable maximum " + std::to_string(reachable));
  }
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (distance_at(mid) < separation) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return field_scaled(base, hi);
}

}  // namespace besovseq
