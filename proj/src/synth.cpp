#include "illumine/synth.hpp"

#include <cmath>

#include "illumine/error.hpp"
#include "illumine/noise.hpp"

namespace illumine {

ImageF degrade(const ImageF& s, const DegradeSettings& settings) {
  if (!(settings.gamma >= 0.0) || !std::isfinite(settings.gamma))
    throw ParamError("gamma must be finite and >= 0");
  if (!(settings.noise_sigma >= 0.0))
    throw ParamError("noise sigma must be >= 0");

  long double acc = 0.0L;
  const double* p = s.data();
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) acc += p[i];
  const double sbar = static_cast<double>(acc / n);

  const double dark = std::pow(1.0 - sbar, 3.0 * settings.gamma);
  ImageF x = s;
  double* px = x.data();
  for (std::size_t i = 0; i < n; ++i)
    px[i] = dark * std::pow(px[i], 2.0 * settings.gamma);

  if (settings.noise_sigma > 0.0)
    x = add_gaussian_noise(x, settings.noise_sigma, settings.seed, /*clamp=*/true);
  x.clamp01();
  return x;
}

}  // namespace illumine
