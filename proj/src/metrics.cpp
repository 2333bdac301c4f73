#include "illumine/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "illumine/error.hpp"

namespace illumine {
namespace {

constexpr int kWindow = 11;
constexpr double kC1 = 0.01 * 0.01;  // (K1 * L)^2, L = 1
constexpr double kC2 = 0.03 * 0.03;
constexpr int kLoeMaxExtent = 100;

void require_same_shape(const ImageF& a, const ImageF& b) {
  if (!a.same_shape(b)) throw ParamError("images must have the same shape");
}

std::array<double, kWindow> gaussian_window() {
  std::array<double, kWindow> k{};
  const double sigma = 1.5;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - (kWindow - 1) / 2.0;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Valid-region separable convolution with the 11-tap window.
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w,
                                 const std::array<double, kWindow>& k) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> horiz(static_cast<std::size_t>(h) * ow);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[i] * src[std::size_t(r) * w + c + i];
      horiz[std::size_t(r) * ow + c] = acc;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int r = 0; r < oh; ++r)
    for (int c = 0; c < ow; ++c) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[i] * horiz[std::size_t(r + i) * ow + c];
      out[std::size_t(r) * ow + c] = acc;
    }
  return out;
}

std::vector<double> lightness(const ImageF& img) {
  std::vector<double> out(static_cast<std::size_t>(img.height()) * img.width());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      double m = img(r, c, 0);
      for (int k = 1; k < img.channels(); ++k) m = std::max(m, img(r, c, k));
      out[std::size_t(r) * img.width() + c] = m;
    }
  return out;
}

// Center-aligned nearest neighbor, shrinking until max(h, w) <= kLoeMaxExtent.
void downsample_nn(std::vector<double>& map, int& h, int& w) {
  const int longest = std::max(h, w);
  if (longest <= kLoeMaxExtent) return;
  const double scale = static_cast<double>(kLoeMaxExtent) / longest;
  const int oh = std::max(1, static_cast<int>(h * scale));
  const int ow = std::max(1, static_cast<int>(w * scale));
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int r = 0; r < oh; ++r) {
    const int sr = std::min(h - 1, static_cast<int>((r + 0.5) * h / oh));
    for (int c = 0; c < ow; ++c) {
      const int sc = std::min(w - 1, static_cast<int>((c + 0.5) * w / ow));
      out[std::size_t(r) * ow + c] = map[std::size_t(sr) * w + sc];
    }
  }
  map = std::move(out);
  h = oh;
  w = ow;
}

}  // namespace

double mse(const ImageF& a, const ImageF& b) {
  require_same_shape(a, b);
  long double acc = 0.0L;
  const double* pa = a.data();
  const double* pb = b.data();
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pa[i] - pb[i];
    acc += static_cast<long double>(d) * d;
  }
  return static_cast<double>(acc / n);
}

double psnr(const ImageF& a, const ImageF& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / m);
}

double ssim(const ImageF& a, const ImageF& b) {
  require_same_shape(a, b);
  if (a.height() < kWindow || a.width() < kWindow)
    throw ParamError("ssim needs both extents >= 11");

  const auto win = gaussian_window();
  const int h = a.height(), w = a.width();
  const std::size_t plane = static_cast<std::size_t>(h) * w;

  long double total = 0.0L;
  std::size_t count = 0;
  std::vector<double> pa(plane), pb(plane), paa(plane), pbb(plane), pab(plane);
  for (int k = 0; k < a.channels(); ++k) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        const std::size_t i = std::size_t(r) * w + c;
        pa[i] = a(r, c, k);
        pb[i] = b(r, c, k);
        paa[i] = pa[i] * pa[i];
        pbb[i] = pb[i] * pb[i];
        pab[i] = pa[i] * pb[i];
      }
    const std::vector<double> ma = filter_valid(pa, h, w, win);
    const std::vector<double> mb = filter_valid(pb, h, w, win);
    const std::vector<double> maa = filter_valid(paa, h, w, win);
    const std::vector<double> mbb = filter_valid(pbb, h, w, win);
    const std::vector<double> mab = filter_valid(pab, h, w, win);
    for (std::size_t i = 0; i < ma.size(); ++i) {
      const double va = maa[i] - ma[i] * ma[i];
      const double vb = mbb[i] - mb[i] * mb[i];
      const double cov = mab[i] - ma[i] * mb[i];
      const double num = (2.0 * ma[i] * mb[i] + kC1) * (2.0 * cov + kC2);
      const double den = (ma[i] * ma[i] + mb[i] * mb[i] + kC1) * (va + vb + kC2);
      total += num / den;
      ++count;
    }
  }
  return static_cast<double>(total / count);
}

double loe(const ImageF& original, const ImageF& enhanced) {
  require_same_shape(original, enhanced);
  std::vector<double> lo = lightness(original);
  std::vector<double> le = lightness(enhanced);
  int h = original.height(), w = original.width();
  int h2 = h, w2 = w;
  downsample_nn(lo, h, w);
  downsample_nn(le, h2, w2);

  const std::size_t m = lo.size();
  std::size_t inversions = 0;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p + 1; q < m; ++q) {
      if ((lo[p] >= lo[q]) != (le[p] >= le[q])) ++inversions;
      if ((lo[q] >= lo[p]) != (le[q] >= le[p])) ++inversions;
    }
  // Each position sees inversions against every other position in both
  // directions, so each discordant ordered pair contributes twice.
  return 2.0 * static_cast<double>(inversions) / static_cast<double>(m);
}

DiffHeatmap diff_heatmap(const ImageF& s1, const ImageF& s2) {
  require_same_shape(s1, s2);
  DiffHeatmap out;
  out.mse = mse(s1, s2);
  out.map = s1;
  double* pm = out.map.data();
  const double* p2 = s2.data();
  for (std::size_t i = 0; i < out.map.size(); ++i) {
    const double d = pm[i] - p2[i];
    pm[i] = std::clamp(10.0 * d * d, 0.0, 1.0);
  }
  return out;
}

IllumDiagnostics illum_diagnostics(const ImageF& x, const ImageF& y) {
  require_same_shape(x, y);
  IllumDiagnostics d;

  long double abs_acc = 0.0L;
  std::size_t grad_count = 0;
  for (int r = 0; r < y.height(); ++r)
    for (int c = 0; c < y.width(); ++c)
      for (int k = 0; k < y.channels(); ++k) {
        if (c + 1 < y.width()) {
          abs_acc += std::fabs(y(r, c, k) - y(r, c + 1, k));
          ++grad_count;
        }
        if (r + 1 < y.height()) {
          abs_acc += std::fabs(y(r, c, k) - y(r + 1, c, k));
          ++grad_count;
        }
      }
  d.tv_y = grad_count ? static_cast<double>(abs_acc / grad_count) : 0.0;

  const std::vector<double> mx = channel_mean(x);
  const std::vector<double> my = channel_mean(y);
  long double sq_acc = 0.0L;
  for (int r = 0; r < x.height(); ++r)
    for (int c = 0; c < x.width(); ++c)
      for (int k = 0; k < x.channels(); ++k) {
        const double diff = (x(r, c, k) - mx[k]) - (y(r, c, k) - my[k]);
        sq_acc += static_cast<long double>(diff) * diff;
      }
  d.shifted_fidelity = static_cast<double>(sq_acc / x.size());
  return d;
}

std::string MetricsReport::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  if (psnr) {
    if (std::isinf(*psnr))
      j["psnr"] = "inf";
    else
      j["psnr"] = *psnr;
  }
  if (ssim) j["ssim"] = *ssim;
  if (loe) j["loe"] = *loe;
  if (mse) j["mse"] = *mse;
  if (tv_y) j["tv_y"] = *tv_y;
  if (shifted_fidelity) j["shifted_fidelity"] = *shifted_fidelity;
  return j.dump();
}

}  // namespace illumine
