#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "besovseq/coeff_field.hpp"

namespace besovseq {

//! White-noise observation scheme in coefficient space: every coefficient is
//! observed plus an independent N(0, 1/n) draw.
struct ObservationModel {
  double n;            //!< effective sample size, noise std is 1/sqrt(n)
  std::uint64_t seed;  //!< RNG seed; replications derive their own seeds
  int max_level;       //!< simulation cutoff level
  double noise_scale = 1.0;  //!< diagnostic multiplier; 0 disables the noise

  ObservationModel(double n_, std::uint64_t seed_, int max_level_,
                   double noise_scale_ = 1.0);
};

//! Deterministic standard normal stream: 53-bit uniforms from mt19937_64
//! pushed through the Box-Muller transform. Not tied to the C++ library's
//! normal_distribution so streams reproduce exactly across toolchains.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next();
  double uniform();  //!< uniform on [0, 1) with 53 random bits

private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

//! Mixes (base, a, b) into a well-spread 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

//! Observation of `truth` (zero-padded above its own max level) under the
//! model. Output has the model's max_level.
CoeffField simulate_observation(const CoeffField& truth, const ObservationModel& model);

//! Test-function generators.
enum class TruthKind {
  zero,          //!< all-zero field
  boundary,      //!< saturates one level of the (r, B) ball exactly
  random_signs,  //!< every level saturated, coefficient signs i.i.d. uniform
};

struct TruthParams {
  int max_level = 1;
  double r = 1.0;
  double B = 1.0;
  int level = 1;              //!< boundary kind: the saturated level
  std::uint64_t seed = 0;     //!< random kind
};

CoeffField make_truth(TruthKind kind, const TruthParams& params);
//! String dispatch ("zero" | "boundary" | "random"); unknown kinds throw.
CoeffField make_truth(const std::string& kind, const TruthParams& params);

}  // namespace besovseq
