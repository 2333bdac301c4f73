#pragma once

#include <optional>
#include <string>

#include "illumine/image.hpp"

namespace illumine {

double mse(const ImageF& a, const ImageF& b);

// 10*log10(1/MSE) on the unit range; identical images give +infinity.
double psnr(const ImageF& a, const ImageF& b);

// Single-scale SSIM, 11x11 Gaussian window sigma 1.5, K1 = 0.01, K2 = 0.03,
// dynamic range 1. Computed per channel over valid window positions, then
// averaged. Requires both extents >= 11.
double ssim(const ImageF& a, const ImageF& b);

// Lightness order error. Lightness is the per-pixel max over channels; both
// maps are nearest-neighbor downsampled until the larger extent is <= 100.
// For every position, order inversions against every other position are
// counted in both directions; the result is the mean count per position.
double loe(const ImageF& original, const ImageF& enhanced);

struct DiffHeatmap {
  ImageF map;        // 10*(s1-s2)^2 clamped to [0, 1]
  double mse = 0.0;  // unclamped mean squared difference
};
DiffHeatmap diff_heatmap(const ImageF& s1, const ImageF& s2);

struct IllumDiagnostics {
  double tv_y = 0.0;              // mean |forward difference| pooled over both axes
  double shifted_fidelity = 0.0;  // mean squared difference after per-channel mean centering
};
IllumDiagnostics illum_diagnostics(const ImageF& x, const ImageF& y);

struct MetricsReport {
  std::optional<double> psnr;
  std::optional<double> ssim;
  std::optional<double> loe;
  std::optional<double> mse;
  std::optional<double> tv_y;
  std::optional<double> shifted_fidelity;

  // Single JSON object, lowercase keys, absent metrics omitted; an infinite
  // PSNR serializes as the string "inf".
  std::string to_json() const;
};

}  // namespace illumine
