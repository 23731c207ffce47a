#include "besovseq/estimation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace besovseq {

void LepskiConfig::validate() const {
  if (!(p >= 2.0)) throw std::invalid_argument("LepskiConfig: p must be >= 2");
  if (!(n > 0.0)) throw std::invalid_argument("LepskiConfig: n must be > 0");
  if (j_max < 1) throw std::invalid_argument("LepskiConfig: j_max must be >= 1");
  if (!(Dp_prime > 0.0)) throw std::invalid_argument("LepskiConfig: D'_p must be > 0");
}

double LepskiConfig::band(int l) const {
  return 4.0 * (Dp_prime + 1.0) * std::exp2(l / 2.0) / std::sqrt(n);
}

int lepski_select(const CoeffField& obs, const LepskiConfig& cfg) {
  cfg.validate();
  if (obs.max_level() < cfg.j_max) {
    throw std::invalid_argument("lepski_select: observation resolution below j_max");
  }
  // || Pi_{V_j} obs - Pi_{V_l} obs ||^h accumulates the per-level weighted
  // norms over levels j+1..l, so prefix sums give every pairwise distance.
  const double h = cfg.norm_mode == NormMode::seq_pp ? cfg.p : 2.0;
  std::vector<double> level_pow(cfg.j_max + 1, 0.0);
  for (int l = 1; l <= cfg.j_max; ++l) {
    const double w = std::exp2(l * (0.5 - 1.0 / cfg.p));
    level_pow[l] = std::pow(w * slice_lp_norm(obs.level(l), cfg.p), h);
  }
  std::vector<double> prefix(cfg.j_max + 2, 0.0);
  for (int l = 1; l <= cfg.j_max; ++l) prefix[l + 1] = prefix[l] + level_pow[l];

  for (int j = 0; j <= cfg.j_max; ++j) {
    bool ok = true;
    for (int l = j + 1; l <= cfg.j_max; ++l) {
      const double dist = std::pow(prefix[l + 1] - prefix[j + 1], 1.0 / h);
      if (dist > cfg.band(l)) {
        ok = false;
        break;
      }
    }
    if (ok) return j;
  }
  return cfg.j_max;
}

CoeffField adaptive_estimate(const CoeffField& obs, const LepskiConfig& cfg) {
  return project_levels(obs, lepski_select(obs, cfg));
}

int oracle_jstar(const BesovBall& ball, double n, double eps, double Dp, double Cp) {
  if (!(n > 0.0)) throw std::invalid_argument("oracle_jstar: n must be > 0");
  if (eps < 0.0) throw std::invalid_argument("oracle_jstar: eps must be >= 0");
  if (!(Dp > 0.0) || !(Cp > 0.0)) {
    throw std::invalid_argument("oracle_jstar: constants must be > 0");
  }
  // sigma grows and the approximation bound shrinks in j, so the first
  // crossing is found by a forward scan.
  for (int j = 0; j <= 200; ++j) {
    const double sigma = Dp * std::exp2(j / 2.0) / std::sqrt(n);
    const double approx = 2.0 * eps + Cp * ball.B * std::exp2(-j * ball.r);
    if (sigma >= approx) return j;
  }
  throw std::runtime_error("oracle_jstar: no crossing below level 200");
}

}  // namespace besovseq
