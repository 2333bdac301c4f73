#pragma once

#include <vector>

#include "illumine/config.hpp"
#include "illumine/image.hpp"
#include "illumine/noise.hpp"

namespace illumine {

// Coarse interpolation-factor field: a G x G x C grid of unconstrained
// parameters, squashed through the logistic function into (0, 1) and
// bilinearly upsampled to the image resolution. The implied second factor is
// beta = 1 - alpha, so alpha + beta = 1 holds exactly at every pixel.
struct InterpolationField {
  int grid_size = 1;
  int channels = 3;
  std::vector<double> params;  // grid_size * grid_size * channels, row-major

  double& at(int gy, int gx, int ch) {
    return params[(static_cast<std::size_t>(gy) * grid_size + gx) * channels + ch];
  }
  double at(int gy, int gx, int ch) const {
    return params[(static_cast<std::size_t>(gy) * grid_size + gx) * channels + ch];
  }

  // Squash each parameter, then upsample to height x width (align-corners
  // bilinear). Every output value lies strictly inside (0, 1).
  ImageF upsample(int height, int width) const;
};

struct IllumResult {
  ImageF y;      // illumination map
  ImageF s;      // reflectance, u / max(y, epsilon_div)
  ImageF alpha;  // effective full-resolution interpolation factor
  std::vector<double> loss_trace;  // per-iteration loss (optimized variant only)
};

// Parameter-free variant: per channel, g = 1 - mean(u), y = g*u + (1-g).
IllumResult mean_interpolate(const ImageF& u, double epsilon_div = 1e-4);

// y = u*alpha + (1-alpha) with a caller-supplied factor map in [0, 1].
IllumResult interpolate_with_alpha(const ImageF& u, const ImageF& alpha,
                                   double epsilon_div = 1e-4);

// Objective of the optimized variant at a given field:
// lambda_srr * srr_loss(s(alpha)). When `grad` is non-null it receives the
// analytic gradient with respect to the raw grid parameters, chained through
// the logistic squash, the bilinear upsample, y = 1 + alpha*(u - 1) and
// s = u / y (ds/dalpha = u*(1-u)/y^2).
double interpolation_loss(const InterpolationField& field, const ImageF& u,
                          const PipelineConfig& config,
                          std::vector<double>* grad = nullptr);

// Per-image optimization of the grid parameters under the recovery loss.
// The grid is initialized so the squashed field equals the mean-interpolator
// factor, then descends interpolation_loss by fixed-step gradient descent.
// Returns the best-loss iterate, never worse than the initialization.
IllumResult optimize_alpha(const ImageF& u, const PipelineConfig& config);

struct EnhanceResult {
  ImageF u, v, y, s, alpha;
  NoiseEstimate estimate;
  int gate_fired = 0;
  std::vector<double> loss_trace;
};

// Full pipeline: estimate noise, gated TV denoise, then the configured
// illumination variant. Gray inputs are promoted to three channels here.
EnhanceResult enhance(const ImageF& x, const PipelineConfig& config,
                      bool skip_denoise = false);

}  // namespace illumine
