#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "illumine/image.hpp"

namespace illumine {

// Estimated Gaussian noise level on the unit intensity scale. When shown to
// users (CLI, CSV) sigmas are multiplied by 255.
struct NoiseEstimate {
  std::vector<double> per_channel_sigma;
  double aggregate_sigma = 0.0;  // mean of the per-channel values
  int order = 1;                 // gradient order the estimate used
};

struct NoiseGate {
  double threshold = 0.01;  // sigma_g, unit scale
};

// sqrt(2 * sum_k C(n,k)^2) = sqrt(2 * C(2n,n)). Valid for 1 <= n <= 16.
double binom_denominator(int order);

// sigma_hat = sqrt(pi) * E|grad^n x| / binom_denominator(n), with horizontal
// and vertical order-n gradients pooled into one absolute-value mean.
NoiseEstimate estimate_sigma(const ImageF& img, int order);

// 1 when the estimate strictly exceeds the threshold, else 0. Equality does
// not fire: sign(relu(0)) = 0.
int gate(const NoiseEstimate& estimate, const NoiseGate& gate);

// SplitMix64: fixed algorithm so noise streams reproduce bit-exactly across
// platforms and languages.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Standard normal deviates via Box-Muller over a SplitMix64 stream. Two
// uniforms produce a (cos, sin) pair; the sin deviate is served second.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - rng_.next_unit();  // (0, 1], keeps log finite
    const double u2 = rng_.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed from a base seed and up to three cell
// coordinates (image, sigma, trial). Pure function of its inputs, so
// validation cells are schedule independent.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c);

// Adds i.i.d. N(0, sigma^2) per sample in row-major order. Identical
// (img, sigma, seed) give bit-identical output. Clamps to [0,1] only when
// `clamp` is set.
ImageF add_gaussian_noise(const ImageF& img, double sigma, std::uint64_t seed,
                          bool clamp);

struct ValidationRow {
  double sigma_ref = 0.0;  // unit scale
  int order = 1;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;
};

// Monte-Carlo estimator validation: inject noise at each sigma into each
// corpus image `trials` times, estimate with each order, and aggregate
// |sigma_hat - sigma_ref| / sigma_ref per (sigma, order) cell. The same noisy
// realization is shared by all orders of a cell.
std::vector<ValidationRow> validate_estimator(const std::vector<ImageF>& corpus,
                                              const std::vector<double>& sigmas,
                                              const std::vector<int>& orders,
                                              int trials, std::uint64_t seed);

// CSV with header sigma_ref,order,mean_rel_error,std_rel_error; sigma_ref in
// 255 scale.
std::string validation_csv(const std::vector<ValidationRow>& rows);

}  // namespace illumine
