#pragma once

#include <cstddef>
#include <vector>

namespace illumine {

enum class Axis { Horizontal, Vertical };

// Row-major H x W x C raster of doubles on the unit intensity scale.
// Channel count is 1 (gray) or 3 (RGB). Values are unconstrained between
// operations; clamp01() projects back onto [0, 1].
class ImageF {
 public:
  ImageF() = default;
  ImageF(int height, int width, int channels, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }  // total sample count

  double& operator()(int row, int col, int ch = 0) {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * channels_ + ch];
  }
  double operator()(int row, int col, int ch = 0) const {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * channels_ + ch];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool same_shape(const ImageF& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  bool is_finite() const;
  void clamp01();

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// n-th order forward-difference field. The shape equals the source shape
// minus `order` along `axis`.
struct GradientField {
  ImageF values;
  int order = 1;
  Axis axis = Axis::Horizontal;
};

// Order-1 difference is x(p) - x(p+1); higher orders apply the same
// difference recursively, dropping the last sample along the axis each time.
GradientField gradient(const ImageF& img, int order, Axis axis);

// Per-channel arithmetic mean, accumulated in extended precision in a fixed
// row-major order so the result is platform independent.
std::vector<double> channel_mean(const ImageF& img);

// Gray images replicated to three identical channels; RGB passes through.
ImageF promote3(const ImageF& img);

ImageF constant_like(const ImageF& img, double value);

}  // namespace illumine
