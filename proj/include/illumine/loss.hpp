#pragma once

#include <array>

#include "illumine/image.hpp"

namespace illumine {

// Target channel means and tolerance band for the recovery loss. Defaults
// are the ImageNet channel statistics.
struct SrrConstants {
  std::array<double, 3> eta1{0.485, 0.456, 0.406};
  std::array<double, 3> eta2{0.229, 0.224, 0.225};
};

struct LossWeights {
  double lambda_srr = 1.0;
  double lambda_nr = 1.0;
};

// Per channel c: exp(relu(|mean_c(s) - eta1_c| - eta2_c)) - 1, averaged over
// the three channels. Zero exactly while every channel mean sits inside the
// eta2 band around eta1.
double srr_loss(const ImageF& s, const SrrConstants& constants = {});

// ||u - x||^2 / N + eta * sigma * TV(u) / N with N the total sample count.
// The per-sample normalization makes eta resolution independent. `epsilon`
// is the smoothing constant of the TV term.
double nr_loss(const ImageF& u, const ImageF& x, double sigma, double eta,
               double epsilon);

double total_loss(const ImageF& s, const ImageF& u, const ImageF& x,
                  const LossWeights& weights, const SrrConstants& constants,
                  double sigma, double eta, double tv_epsilon = 1e-3);

}  // namespace illumine
