#pragma once

// Brute-force reference implementations, kept deliberately independent of the
// library code paths they check.

#include <cmath>
#include <vector>

#include "illumine/image.hpp"

namespace oracles {

using illumine::ImageF;

inline double binom(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - i + 1) / i;
  return v;
}

// Direct binomial expansion of the n-th forward difference:
// sum_k (-1)^k C(n,k) x(p+k) along the axis.
inline ImageF gradient_binomial(const ImageF& img, int n, illumine::Axis axis) {
  const bool horiz = axis == illumine::Axis::Horizontal;
  const int oh = horiz ? img.height() : img.height() - n;
  const int ow = horiz ? img.width() - n : img.width();
  ImageF out(oh, ow, img.channels());
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c)
      for (int ch = 0; ch < img.channels(); ++ch) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
          const double v = horiz ? img(r, c + k, ch) : img(r + k, c, ch);
          acc += (k % 2 ? -1.0 : 1.0) * binom(n, k) * v;
        }
        out(r, c, ch) = acc;
      }
  return out;
}

inline double tv_reference(const ImageF& img, double eps) {
  double total = 0.0;
  for (int ch = 0; ch < img.channels(); ++ch)
    for (int r = 0; r < img.height(); ++r)
      for (int c = 0; c < img.width(); ++c) {
        double dx = 0.0, dy = 0.0;
        if (c + 1 < img.width()) dx = img(r, c + 1, ch) - img(r, c, ch);
        if (r + 1 < img.height()) dy = img(r + 1, c, ch) - img(r, c, ch);
        total += std::sqrt(dx * dx + dy * dy + eps * eps) - eps;
      }
  return total;
}

// Sliding-window SSIM with explicit per-window loops.
inline double ssim_reference(const ImageF& a, const ImageF& b) {
  const int win = 11;
  const double c1 = 1e-4, c2 = 9e-4, sigma = 1.5;

  double kernel[11][11];
  double ksum = 0.0;
  for (int i = 0; i < win; ++i)
    for (int j = 0; j < win; ++j) {
      const double di = i - 5.0, dj = j - 5.0;
      kernel[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
      ksum += kernel[i][j];
    }
  for (int i = 0; i < win; ++i)
    for (int j = 0; j < win; ++j) kernel[i][j] /= ksum;

  double total = 0.0;
  int count = 0;
  for (int ch = 0; ch < a.channels(); ++ch)
    for (int r = 0; r + win <= a.height(); ++r)
      for (int c = 0; c + win <= a.width(); ++c) {
        double ma = 0.0, mb = 0.0;
        for (int i = 0; i < win; ++i)
          for (int j = 0; j < win; ++j) {
            ma += kernel[i][j] * a(r + i, c + j, ch);
            mb += kernel[i][j] * b(r + i, c + j, ch);
          }
        double va = 0.0, vb = 0.0, cov = 0.0;
        for (int i = 0; i < win; ++i)
          for (int j = 0; j < win; ++j) {
            const double da = a(r + i, c + j, ch);
            const double db = b(r + i, c + j, ch);
            va += kernel[i][j] * da * da;
            vb += kernel[i][j] * db * db;
            cov += kernel[i][j] * da * db;
          }
        va -= ma * ma;
        vb -= mb * mb;
        cov -= ma * mb;
        total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                 ((ma * ma + mb * mb + c1) * (va + vb + c2));
        ++count;
      }
  return total / count;
}

// Pair enumeration straight from the definition: for each position, count
// order inversions against every other position in both directions. Callers
// use images small enough that no downsampling happens.
inline double loe_reference(const ImageF& original, const ImageF& enhanced) {
  const int h = original.height(), w = original.width();
  std::vector<double> lo(h * w), le(h * w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      double a = original(r, c, 0), b = enhanced(r, c, 0);
      for (int k = 1; k < original.channels(); ++k) {
        a = std::max(a, original(r, c, k));
        b = std::max(b, enhanced(r, c, k));
      }
      lo[r * w + c] = a;
      le[r * w + c] = b;
    }
  const int m = h * w;
  double total = 0.0;
  for (int p = 0; p < m; ++p) {
    double rd = 0.0;
    for (int q = 0; q < m; ++q) {
      if (((lo[p] >= lo[q]) != (le[p] >= le[q]))) rd += 1.0;
      if (((lo[q] >= lo[p]) != (le[q] >= le[p]))) rd += 1.0;
    }
    total += rd;
  }
  return total / m;
}

}  // namespace oracles
