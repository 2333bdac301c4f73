#include "illumine/noise.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "illumine/error.hpp"

namespace illumine {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// C(2n, n) fits in 64 bits for n <= 16 (C(32,16) = 601080390).
std::uint64_t central_binomial(int n) {
  std::uint64_t v = 1;
  for (int k = 1; k <= n; ++k) v = v * (n + k) / k;
  return v;
}

}  // namespace

double binom_denominator(int order) {
  if (order < 1 || order > 16)
    throw ParamError("gradient order must be in [1, 16], got " + std::to_string(order));
  return std::sqrt(2.0 * static_cast<double>(central_binomial(order)));
}

NoiseEstimate estimate_sigma(const ImageF& img, int order) {
  const double denom = binom_denominator(order);
  const GradientField gh = gradient(img, order, Axis::Horizontal);
  const GradientField gv = gradient(img, order, Axis::Vertical);

  const int ch = img.channels();
  std::vector<long double> abs_sum(ch, 0.0L);
  for (int r = 0; r < gh.values.height(); ++r)
    for (int c = 0; c < gh.values.width(); ++c)
      for (int k = 0; k < ch; ++k) abs_sum[k] += std::fabs(gh.values(r, c, k));
  for (int r = 0; r < gv.values.height(); ++r)
    for (int c = 0; c < gv.values.width(); ++c)
      for (int k = 0; k < ch; ++k) abs_sum[k] += std::fabs(gv.values(r, c, k));

  const long double positions =
      static_cast<long double>(gh.values.height()) * gh.values.width() +
      static_cast<long double>(gv.values.height()) * gv.values.width();

  NoiseEstimate est;
  est.order = order;
  est.per_channel_sigma.resize(ch);
  long double agg = 0.0L;
  for (int k = 0; k < ch; ++k) {
    const double mean_abs = static_cast<double>(abs_sum[k] / positions);
    est.per_channel_sigma[k] = std::sqrt(kPi) * mean_abs / denom;
    agg += est.per_channel_sigma[k];
  }
  est.aggregate_sigma = static_cast<double>(agg / ch);
  return est;
}

int gate(const NoiseEstimate& estimate, const NoiseGate& g) {
  if (g.threshold < 0) throw ParamError("gate threshold must be >= 0");
  return estimate.aggregate_sigma > g.threshold ? 1 : 0;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ (a + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (b + 0xBF58476D1CE4E5B9ull));
  h = mix64(h ^ (c + 0x94D049BB133111EBull));
  return h;
}

ImageF add_gaussian_noise(const ImageF& img, double sigma, std::uint64_t seed,
                          bool clamp) {
  if (!(sigma >= 0.0)) throw ParamError("noise sigma must be >= 0");
  ImageF out = img;
  if (sigma > 0.0) {
    GaussianStream gauss(seed);
    double* p = out.data();
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) p[i] += sigma * gauss.next();
  }
  if (clamp) out.clamp01();
  return out;
}

std::vector<ValidationRow> validate_estimator(const std::vector<ImageF>& corpus,
                                              const std::vector<double>& sigmas,
                                              const std::vector<int>& orders,
                                              int trials, std::uint64_t seed) {
  if (corpus.empty()) throw ParamError("validation corpus is empty");
  if (trials < 1) throw ParamError("trial count must be >= 1");
  if (sigmas.empty() || orders.empty())
    throw ParamError("sigma and order lists must be nonempty");
  for (double s : sigmas)
    if (!(s > 0.0)) throw ParamError("validation sigmas must be > 0");
  for (int n : orders) binom_denominator(n);

  // rel_errors[sigma][order] over all images and trials
  std::vector<std::vector<std::vector<double>>> rel(
      sigmas.size(), std::vector<std::vector<double>>(orders.size()));

  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < sigmas.size(); ++j)
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t cell_seed = derive_stream_seed(seed, i, j, t);
        const ImageF noisy =
            add_gaussian_noise(corpus[i], sigmas[j], cell_seed, /*clamp=*/false);
        for (std::size_t o = 0; o < orders.size(); ++o) {
          const double hat = estimate_sigma(noisy, orders[o]).aggregate_sigma;
          rel[j][o].push_back(std::fabs(hat - sigmas[j]) / sigmas[j]);
        }
      }

  std::vector<ValidationRow> rows;
  for (std::size_t j = 0; j < sigmas.size(); ++j)
    for (std::size_t o = 0; o < orders.size(); ++o) {
      const std::vector<double>& v = rel[j][o];
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
      double var = 0.0;
      for (double e : v) var += (e - mean) * (e - mean);
      const double stdev = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
      rows.push_back({sigmas[j], orders[o], mean, stdev});
    }
  return rows;
}

std::string validation_csv(const std::vector<ValidationRow>& rows) {
  std::string out = "sigma_ref,order,mean_rel_error,std_rel_error\n";
  char line[128];
  for (const ValidationRow& r : rows) {
    std::snprintf(line, sizeof(line), "%.6g,%d,%.6g,%.6g\n", r.sigma_ref * 255.0,
                  r.order, r.mean_rel_error, r.std_rel_error);
    out += line;
  }
  return out;
}

}  // namespace illumine
