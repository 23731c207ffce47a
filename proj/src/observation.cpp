#include "besovseq/observation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace besovseq {

ObservationModel::ObservationModel(double n_, std::uint64_t seed_, int max_level_,
                                   double noise_scale_)
    : n(n_), seed(seed_), max_level(max_level_), noise_scale(noise_scale_) {
  if (!(n > 0.0)) throw std::invalid_argument("ObservationModel: n must be > 0");
  if (max_level < 1) throw std::invalid_argument("ObservationModel: max_level must be >= 1");
  if (noise_scale < 0.0) {
    throw std::invalid_argument("ObservationModel: noise_scale must be >= 0");
  }
}

double GaussianStream::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from 0 so log stays finite.
  const double u1 = uniform() + 0x1.0p-54;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(base ^ mix(a + 0x632be59bd9b4e019ull) ^ mix(b + 0x9e6c63d0876a9a62ull));
}

CoeffField simulate_observation(const CoeffField& truth, const ObservationModel& model) {
  if (truth.max_level() > model.max_level) {
    throw std::invalid_argument(
        "simulate_observation: truth resolution exceeds the model cutoff");
  }
  const double sigma = model.noise_scale / std::sqrt(model.n);
  CoeffField obs = truth.padded_to(model.max_level);
  GaussianStream g(model.seed);
  for (int l = 0; l <= obs.max_level(); ++l) {
    for (double& v : obs.level(l)) v += sigma * g.next();
  }
  return obs;
}

CoeffField make_truth(TruthKind kind, const TruthParams& params) {
  switch (kind) {
    case TruthKind::zero:
      return CoeffField(params.max_level);
    case TruthKind::boundary: {
      if (params.level < 0 || params.level > params.max_level) {
        throw std::invalid_argument("make_truth: boundary level out of range");
      }
      if (!(params.B > 0.0) || !(params.r > 0.0)) {
        throw std::invalid_argument("make_truth: boundary needs r > 0 and B > 0");
      }
      CoeffField c(params.max_level);
      const int l = params.level;
      // |c_l|_p = B 2^{-l(r+1/2-1/p)} for every p once all entries share the
      // magnitude B 2^{-l(r+1/2)}.
      const double v = l == 0 ? params.B : params.B * std::exp2(-l * (params.r + 0.5));
      for (double& x : c.level(l)) x = v;
      return c;
    }
    case TruthKind::random_signs: {
      if (!(params.B > 0.0) || !(params.r > 0.0)) {
        throw std::invalid_argument("make_truth: random kind needs r > 0 and B > 0");
      }
      CoeffField c(params.max_level);
      std::mt19937_64 rng(params.seed);
      for (int l = 0; l <= params.max_level; ++l) {
        const double v = l == 0 ? params.B : params.B * std::exp2(-l * (params.r + 0.5));
        for (double& x : c.level(l)) x = (rng() & 1u) ? v : -v;
      }
      return c;
    }
  }
  throw std::invalid_argument("make_truth: unknown kind");
}

CoeffField make_truth(const std::string& kind, const TruthParams& params) {
  if (kind == "zero") return make_truth(TruthKind::zero, params);
  if (kind == "boundary") return make_truth(TruthKind::boundary, params);
  if (kind == "random") return make_truth(TruthKind::random_signs, params);
  throw std::invalid_argument("make_truth: unknown kind '" + kind + "'");
}

}  // namespace besovseq
