#include "illumine/loss.hpp"

#include <cmath>

#include "illumine/denoise.hpp"
#include "illumine/error.hpp"

namespace illumine {

double srr_loss(const ImageF& s, const SrrConstants& constants) {
  if (s.channels() != 3)
    throw ParamError("recovery loss needs a 3-channel image, got " +
                     std::to_string(s.channels()) + " channel(s)");
  const std::vector<double> mean = channel_mean(s);
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double excess = std::fabs(mean[k] - constants.eta1[k]) - constants.eta2[k];
    acc += std::exp(std::max(0.0, excess)) - 1.0;
  }
  return acc / 3.0;
}

double nr_loss(const ImageF& u, const ImageF& x, double sigma, double eta,
               double epsilon) {
  if (!u.same_shape(x)) throw ParamError("noise-removal loss needs same-shape images");
  if (!(sigma >= 0.0)) throw ParamError("sigma must be >= 0");
  long double fid = 0.0L;
  const double* pu = u.data();
  const double* px = x.data();
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pu[i] - px[i];
    fid += static_cast<long double>(d) * d;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return static_cast<double>(fid) * inv_n + eta * sigma * tv(u, epsilon) * inv_n;
}

double total_loss(const ImageF& s, const ImageF& u, const ImageF& x,
                  const LossWeights& weights, const SrrConstants& constants,
                  double sigma, double eta, double tv_epsilon) {
  return weights.lambda_srr * srr_loss(s, constants) +
         weights.lambda_nr * nr_loss(u, x, sigma, eta, tv_epsilon);
}

}  // namespace illumine
