#pragma once

#include <vector>

#include "illumine/image.hpp"
#include "illumine/noise.hpp"

namespace illumine {

struct DenoiseSettings {
  double eta = 2.0;         // TV weight multiplier in w = eta * sigma_hat
  double tv_epsilon = 1e-3;  // isotropic smoothing of the TV kernel
  int max_iters = 200;
  double step = 0.1;
  double rel_tol = 1e-6;  // stop when the relative energy decrease falls below
};

// Smoothed isotropic total variation:
//   sum over pixels and channels of sqrt(dx^2 + dy^2 + epsilon^2) - epsilon
// with forward differences (dx, dy taken as 0 on the last column/row).
// The -epsilon term makes constant images score exactly zero.
double tv(const ImageF& img, double epsilon);

struct DenoiseResult {
  ImageF u;  // denoised image, clamped to [0,1]
  ImageF v;  // noise map, x - u
  std::vector<double> energy_trace;  // per-sample-normalized energy, non-increasing
};

// Minimizes ||u - x||^2/N + eta * sigma_hat * TV(u)/N by fixed-step gradient
// descent from u0 = x. When the gate does not fire, returns u = x
// bit-identically and v = 0. Steps that would increase the energy are
// rejected and end the iteration; a non-finite energy raises DivergenceError.
DenoiseResult denoise(const ImageF& x, const NoiseEstimate& estimate,
                      const NoiseGate& gate, const DenoiseSettings& settings);

}  // namespace illumine
