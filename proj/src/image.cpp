#include "illumine/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "illumine/error.hpp"

namespace illumine {

ImageF::ImageF(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
  if (height < 1 || width < 1)
    throw ParamError("image dimensions must be at least 1x1, got " +
                     std::to_string(height) + "x" + std::to_string(width));
  if (channels != 1 && channels != 3)
    throw ParamError("channel count must be 1 or 3, got " + std::to_string(channels));
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

bool ImageF::is_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void ImageF::clamp01() {
  for (double& v : data_) v = std::clamp(v, 0.0, 1.0);
}

GradientField gradient(const ImageF& img, int order, Axis axis) {
  if (order < 1) throw ParamError("gradient order must be >= 1");
  const int extent = axis == Axis::Horizontal ? img.width() : img.height();
  if (extent <= order)
    throw ParamError("image extent " + std::to_string(extent) +
                     " along the differenced axis must exceed gradient order " +
                     std::to_string(order));

  ImageF cur = img;
  for (int step = 0; step < order; ++step) {
    const int h = axis == Axis::Vertical ? cur.height() - 1 : cur.height();
    const int w = axis == Axis::Horizontal ? cur.width() - 1 : cur.width();
    ImageF next(h, w, cur.channels());
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        for (int k = 0; k < cur.channels(); ++k) {
          const double ahead = axis == Axis::Horizontal ? cur(r, c + 1, k) : cur(r + 1, c, k);
          next(r, c, k) = cur(r, c, k) - ahead;
        }
    cur = std::move(next);
  }
  return {std::move(cur), order, axis};
}

std::vector<double> channel_mean(const ImageF& img) {
  std::vector<long double> acc(img.channels(), 0.0L);
  const double* p = img.data();
  const std::size_t n = img.size();
  const int ch = img.channels();
  for (std::size_t i = 0; i < n; i += ch)
    for (int k = 0; k < ch; ++k) acc[k] += p[i + k];

  const long double count = static_cast<long double>(img.height()) * img.width();
  std::vector<double> mean(img.channels());
  for (int k = 0; k < ch; ++k) mean[k] = static_cast<double>(acc[k] / count);
  return mean;
}

ImageF promote3(const ImageF& img) {
  if (img.channels() == 3) return img;
  ImageF out(img.height(), img.width(), 3);
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      const double v = img(r, c, 0);
      out(r, c, 0) = v;
      out(r, c, 1) = v;
      out(r, c, 2) = v;
    }
  return out;
}

ImageF constant_like(const ImageF& img, double value) {
  return ImageF(img.height(), img.width(), img.channels(), value);
}

}  // namespace illumine
