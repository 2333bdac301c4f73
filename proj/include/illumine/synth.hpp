#pragma once

#include <cstdint>

#include "illumine/image.hpp"

namespace illumine {

struct DegradeSettings {
  double gamma = 1.0;
  double noise_sigma = 0.0;  // unit scale; 0 disables noise
  std::uint64_t seed = 0;
};

// Synthetic low-light degradation: with sbar the scalar mean over all
// samples, x = (1 - sbar)^(3*gamma) * s^(2*gamma), optionally followed by
// clamped Gaussian noise. gamma = 0 degenerates to an all-ones image.
ImageF degrade(const ImageF& s, const DegradeSettings& settings);

}  // namespace illumine
