#include "illumine/illum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "illumine/denoise.hpp"
#include "illumine/error.hpp"
#include "illumine/loss.hpp"

namespace illumine {
namespace {

// Keeping |params| <= 8 bounds alpha inside [logistic(-8), logistic(8)],
// which keeps logistic gradients alive and y away from zero.
constexpr double kParamClamp = 8.0;

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

// Align-corners axis map: output index -> (left grid node, fraction).
struct AxisMap {
  std::vector<int> node;
  std::vector<double> frac;
};

AxisMap make_axis_map(int grid_n, int out_n) {
  AxisMap m;
  m.node.resize(out_n);
  m.frac.resize(out_n);
  for (int o = 0; o < out_n; ++o) {
    if (grid_n == 1 || out_n == 1) {
      m.node[o] = 0;
      m.frac[o] = 0.0;
      continue;
    }
    const double t = static_cast<double>(o) * (grid_n - 1) / (out_n - 1);
    int i = std::min(static_cast<int>(t), grid_n - 2);
    m.node[o] = i;
    m.frac[o] = t - i;
  }
  return m;
}

ImageF divide_guarded(const ImageF& u, const ImageF& y, double epsilon_div) {
  ImageF s = u;
  double* ps = s.data();
  const double* py = y.data();
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) ps[i] /= std::max(py[i], epsilon_div);
  return s;
}

struct GridEval {
  ImageF alpha, y, s;
  double loss = 0.0;
  std::vector<double> sbar;
};

GridEval forward(const InterpolationField& field, const ImageF& u,
                 const PipelineConfig& config, const SrrConstants& constants) {
  GridEval ev;
  ev.alpha = field.upsample(u.height(), u.width());
  ev.y = u;
  double* py = ev.y.data();
  const double* pa = ev.alpha.data();
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) py[i] = 1.0 + pa[i] * (py[i] - 1.0);
  ev.s = divide_guarded(u, ev.y, config.epsilon_div);
  ev.sbar = channel_mean(ev.s);
  ev.loss = config.lambda_srr * srr_loss(ev.s, constants);
  return ev;
}

// d loss / d grid params at the current field; reuses the forward pass.
std::vector<double> backward(const InterpolationField& field, const ImageF& u,
                             const GridEval& ev, const PipelineConfig& config,
                             const SrrConstants& constants) {
  const int h = u.height(), w = u.width(), ch = u.channels();
  const int g = field.grid_size;

  // d loss / d sbar_c; zero inside the eta2 band.
  std::array<double, 3> dls{};
  for (int k = 0; k < 3; ++k) {
    const double dev = ev.sbar[k] - constants.eta1[k];
    const double excess = std::fabs(dev) - constants.eta2[k];
    if (excess > 0.0)
      dls[k] = config.lambda_srr / 3.0 * std::exp(excess) * (dev > 0.0 ? 1.0 : -1.0);
  }

  const AxisMap ry = make_axis_map(g, h);
  const AxisMap rx = make_axis_map(g, w);
  const double inv_pixels = 1.0 / (static_cast<double>(h) * w);

  std::vector<double> grid_grad(field.params.size(), 0.0);
  for (int r = 0; r < h; ++r) {
    const int gy = ry.node[r];
    const double fy = ry.frac[r];
    for (int c = 0; c < w; ++c) {
      const int gx = rx.node[c];
      const double fx = rx.frac[c];
      for (int k = 0; k < ch; ++k) {
        if (dls[k] == 0.0) continue;
        const double uv = u(r, c, k);
        const double yv = ev.y(r, c, k);
        if (yv < config.epsilon_div) continue;  // guarded division, flat there
        const double dsda = uv * (1.0 - uv) / (yv * yv);
        const double dl_da = dls[k] * inv_pixels * dsda;
        const std::size_t base = (static_cast<std::size_t>(gy) * g + gx) * ch + k;
        grid_grad[base] += (1.0 - fy) * (1.0 - fx) * dl_da;
        if (gx + 1 < g) grid_grad[base + ch] += (1.0 - fy) * fx * dl_da;
        if (gy + 1 < g) {
          const std::size_t below = base + static_cast<std::size_t>(g) * ch;
          grid_grad[below] += fy * (1.0 - fx) * dl_da;
          if (gx + 1 < g) grid_grad[below + ch] += fy * fx * dl_da;
        }
      }
    }
  }

  // chain through the logistic squash
  for (std::size_t i = 0; i < grid_grad.size(); ++i) {
    const double a = logistic(field.params[i]);
    grid_grad[i] *= a * (1.0 - a);
  }
  return grid_grad;
}

}  // namespace

double interpolation_loss(const InterpolationField& field, const ImageF& u,
                          const PipelineConfig& config, std::vector<double>* grad) {
  const SrrConstants constants;
  const GridEval ev = forward(field, u, config, constants);
  if (grad) *grad = backward(field, u, ev, config, constants);
  return ev.loss;
}

ImageF InterpolationField::upsample(int height, int width) const {
  const AxisMap ry = make_axis_map(grid_size, height);
  const AxisMap rx = make_axis_map(grid_size, width);

  std::vector<double> squashed(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) squashed[i] = logistic(params[i]);

  ImageF out(height, width, channels);
  const int g = grid_size;
  auto node = [&](int gy, int gx, int k) {
    return squashed[(static_cast<std::size_t>(gy) * g + gx) * channels + k];
  };
  for (int r = 0; r < height; ++r) {
    const int gy = ry.node[r];
    const double fy = ry.frac[r];
    for (int c = 0; c < width; ++c) {
      const int gx = rx.node[c];
      const double fx = rx.frac[c];
      for (int k = 0; k < channels; ++k) {
        const double top = g > 1 && gx + 1 < g
                               ? (1.0 - fx) * node(gy, gx, k) + fx * node(gy, gx + 1, k)
                               : node(gy, gx, k);
        double v = top;
        if (gy + 1 < g) {
          const double bot = gx + 1 < g
                                 ? (1.0 - fx) * node(gy + 1, gx, k) + fx * node(gy + 1, gx + 1, k)
                                 : node(gy + 1, gx, k);
          v = (1.0 - fy) * top + fy * bot;
        }
        out(r, c, k) = v;
      }
    }
  }
  return out;
}

IllumResult mean_interpolate(const ImageF& u, double epsilon_div) {
  const std::vector<double> mean = channel_mean(u);
  IllumResult res;
  res.alpha = ImageF(u.height(), u.width(), u.channels());
  res.y = u;
  for (int r = 0; r < u.height(); ++r)
    for (int c = 0; c < u.width(); ++c)
      for (int k = 0; k < u.channels(); ++k) {
        const double g = 1.0 - mean[k];
        res.alpha(r, c, k) = g;
        res.y(r, c, k) = g * u(r, c, k) + (1.0 - g);
      }
  res.s = divide_guarded(u, res.y, epsilon_div);
  return res;
}

IllumResult interpolate_with_alpha(const ImageF& u, const ImageF& alpha,
                                   double epsilon_div) {
  if (!u.same_shape(alpha))
    throw ParamError("alpha must have the same shape as the input");
  const double* pa = alpha.data();
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!(pa[i] >= 0.0 && pa[i] <= 1.0))
      throw ConstraintError("interpolation factor outside [0, 1]");

  IllumResult res;
  res.alpha = alpha;
  res.y = u;
  double* py = res.y.data();
  for (std::size_t i = 0; i < u.size(); ++i) py[i] = pa[i] * py[i] + (1.0 - pa[i]);
  res.s = divide_guarded(u, res.y, epsilon_div);
  return res;
}

IllumResult optimize_alpha(const ImageF& u, const PipelineConfig& config) {
  validate_config(config);
  const SrrConstants constants;
  const int g = config.alpha_grid;

  InterpolationField field;
  field.grid_size = g;
  field.channels = u.channels();
  field.params.resize(static_cast<std::size_t>(g) * g * u.channels());

  // Start from the mean interpolator: squashed value = 1 - channel mean.
  const std::vector<double> mean = channel_mean(u);
  for (int gy = 0; gy < g; ++gy)
    for (int gx = 0; gx < g; ++gx)
      for (int k = 0; k < u.channels(); ++k)
        field.at(gy, gx, k) =
            std::clamp(logit(1.0 - mean[k]), -kParamClamp, kParamClamp);

  GridEval ev = forward(field, u, config, constants);
  std::vector<double> trace{ev.loss};
  InterpolationField best = field;
  double best_loss = ev.loss;

  for (int iter = 1; iter <= config.opt_iters; ++iter) {
    const std::vector<double> grad = backward(field, u, ev, config, constants);
    for (std::size_t i = 0; i < field.params.size(); ++i)
      field.params[i] = std::clamp(field.params[i] - config.opt_step * grad[i],
                                   -kParamClamp, kParamClamp);
    ev = forward(field, u, config, constants);
    if (!std::isfinite(ev.loss))
      throw DivergenceError("interpolation loss became non-finite", iter);
    trace.push_back(ev.loss);
    if (ev.loss < best_loss) {
      best_loss = ev.loss;
      best = field;
    }
  }

  GridEval final_ev = forward(best, u, config, constants);
  IllumResult res;
  res.alpha = std::move(final_ev.alpha);
  res.y = std::move(final_ev.y);
  res.s = std::move(final_ev.s);
  res.loss_trace = std::move(trace);
  return res;
}

EnhanceResult enhance(const ImageF& x0, const PipelineConfig& config,
                      bool skip_denoise) {
  validate_config(config);
  const ImageF x = promote3(x0);
  if (!x.is_finite()) throw ParamError("input image has non-finite samples");

  EnhanceResult out;
  out.estimate = estimate_sigma(x, config.order);
  const NoiseGate ng{config.sigma_gate};

  if (skip_denoise) {
    out.u = x;
    out.v = constant_like(x, 0.0);
    out.gate_fired = 0;
  } else {
    DenoiseSettings ds;
    ds.eta = config.eta;
    ds.tv_epsilon = config.tv_epsilon;
    ds.max_iters = config.denoise_iters;
    ds.step = config.denoise_step;
    ds.rel_tol = config.rel_tol;
    DenoiseResult dr = denoise(x, out.estimate, ng, ds);
    out.u = std::move(dr.u);
    out.v = std::move(dr.v);
    out.gate_fired = gate(out.estimate, ng);
  }

  IllumResult ir = config.variant == IllumVariant::Mean
                       ? mean_interpolate(out.u, config.epsilon_div)
                       : optimize_alpha(out.u, config);
  out.y = std::move(ir.y);
  out.s = std::move(ir.s);
  out.alpha = std::move(ir.alpha);
  out.loss_trace = std::move(ir.loss_trace);
  return out;
}

}  // namespace illumine
