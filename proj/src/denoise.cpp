#include "illumine/denoise.hpp"

#include <cmath>

#include "illumine/error.hpp"
#include "illumine/loss.hpp"

namespace illumine {
namespace {

void check_settings(const DenoiseSettings& s) {
  if (!(s.eta > 0.0)) throw ParamError("eta must be > 0");
  if (!(s.tv_epsilon > 0.0)) throw ParamError("tv_epsilon must be > 0");
  if (!(s.step > 0.0)) throw ParamError("step must be > 0");
  if (s.max_iters < 1) throw ParamError("max_iters must be >= 1");
  if (!(s.rel_tol >= 0.0)) throw ParamError("rel_tol must be >= 0");
}

// Gradient of the smoothed TV term. Each pixel's sqrt(dx^2+dy^2+eps^2) couples
// it to its right and bottom neighbors; the adjoint scatters back.
ImageF tv_gradient(const ImageF& u, double epsilon) {
  const int h = u.height(), w = u.width(), ch = u.channels();
  ImageF g(h, w, ch, 0.0);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < ch; ++k) {
        const double dx = c + 1 < w ? u(r, c + 1, k) - u(r, c, k) : 0.0;
        const double dy = r + 1 < h ? u(r + 1, c, k) - u(r, c, k) : 0.0;
        const double phi = std::sqrt(dx * dx + dy * dy + epsilon * epsilon);
        if (c + 1 < w) {
          g(r, c, k) -= dx / phi;
          g(r, c + 1, k) += dx / phi;
        }
        if (r + 1 < h) {
          g(r, c, k) -= dy / phi;
          g(r + 1, c, k) += dy / phi;
        }
      }
  return g;
}

}  // namespace

double tv(const ImageF& img, double epsilon) {
  if (!(epsilon > 0.0)) throw ParamError("tv epsilon must be > 0");
  const int h = img.height(), w = img.width(), ch = img.channels();
  long double acc = 0.0L;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < ch; ++k) {
        const double dx = c + 1 < w ? img(r, c + 1, k) - img(r, c, k) : 0.0;
        const double dy = r + 1 < h ? img(r + 1, c, k) - img(r, c, k) : 0.0;
        acc += std::sqrt(dx * dx + dy * dy + epsilon * epsilon) - epsilon;
      }
  return static_cast<double>(acc);
}

DenoiseResult denoise(const ImageF& x, const NoiseEstimate& estimate,
                      const NoiseGate& noise_gate, const DenoiseSettings& settings) {
  check_settings(settings);

  if (gate(estimate, noise_gate) == 0)
    return {x, constant_like(x, 0.0), {}};

  const double sigma = estimate.aggregate_sigma;
  const double weight = settings.eta * sigma;
  const std::size_t n = x.size();

  // Energy values come from nr_loss, the single definition of this objective.
  // The descent direction is the gradient of the unnormalized energy
  // ||u-x||^2 + weight*TV(u), so the step size is resolution independent.
  ImageF u = x;
  double energy = nr_loss(u, x, sigma, settings.eta, settings.tv_epsilon);
  std::vector<double> trace{energy};

  for (int iter = 1; iter <= settings.max_iters; ++iter) {
    const ImageF tvg = tv_gradient(u, settings.tv_epsilon);
    ImageF cand = u;
    double* pc = cand.data();
    const double* px = x.data();
    const double* pg = tvg.data();
    for (std::size_t i = 0; i < n; ++i)
      pc[i] -= settings.step * (2.0 * (pc[i] - px[i]) + weight * pg[i]);

    const double next = nr_loss(cand, x, sigma, settings.eta, settings.tv_epsilon);
    if (!std::isfinite(next))
      throw DivergenceError("denoise energy became non-finite, reduce the step", iter);
    if (next > energy) break;  // reject the step, keep the best iterate
    u = std::move(cand);
    trace.push_back(next);
    const double decrease = energy - next;
    energy = next;
    if (decrease < settings.rel_tol * std::max(energy, 1e-300)) break;
  }

  u.clamp01();
  ImageF v = x;
  double* pv = v.data();
  const double* pu = u.data();
  for (std::size_t i = 0; i < n; ++i) pv[i] -= pu[i];
  return {std::move(u), std::move(v), std::move(trace)};
}

}  // namespace illumine
