#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "illumine/denoise.hpp"
#include "illumine/error.hpp"
#include "illumine/metrics.hpp"
#include "illumine/noise.hpp"
#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace illumine;

namespace {

NoiseEstimate forced_estimate(double sigma) {
  NoiseEstimate est;
  est.per_channel_sigma = {sigma, sigma, sigma};
  est.aggregate_sigma = sigma;
  est.order = 1;
  return est;
}

}  // namespace

TEST_CASE("tv: constant image scores exactly zero") {
  CHECK(tv(testutil::constant(7, 9, 3, 0.6), 1e-3) == 0.0);
}

TEST_CASE("tv: two unit column jumps") {
  ImageF img(2, 2, 1);
  img(0, 0) = 0.0;
  img(0, 1) = 1.0;
  img(1, 0) = 0.0;
  img(1, 1) = 1.0;
  CHECK(tv(img, 1e-9) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("tv matches the brute-force reference") {
  for (int i = 0; i < 5; ++i) {
    const ImageF img = testutil::uniform_random(8, 8, i % 2 ? 3 : 1, 60 + i);
    for (double eps : {1e-3, 1e-2}) {
      CHECK(std::fabs(tv(img, eps) - oracles::tv_reference(img, eps)) < 1e-10);
    }
  }
}

TEST_CASE("tv rejects non-positive epsilon") {
  CHECK_THROWS_AS(tv(testutil::constant(2, 2, 1, 0.0), 0.0), ParamError);
  CHECK_THROWS_AS(tv(testutil::constant(2, 2, 1, 0.0), -1.0), ParamError);
}

TEST_CASE("gate off: bit-exact passthrough") {
  const ImageF x = testutil::uniform_random(24, 24, 3, 8, 0.1, 0.9);
  const DenoiseResult res = denoise(x, forced_estimate(0.005), NoiseGate{0.01}, {});
  CHECK(testutil::bit_identical(res.u, x));
  for (std::size_t i = 0; i < res.v.size(); ++i) CHECK(res.v.data()[i] == 0.0);
  CHECK(res.energy_trace.empty());
}

TEST_CASE("vanishing TV weight keeps the fidelity minimizer at x") {
  const ImageF x = testutil::uniform_random(16, 16, 3, 4, 0.2, 0.8);
  // sigma barely above a zero threshold: gate fires but the TV term is ~0
  const DenoiseResult res = denoise(x, forced_estimate(1e-12), NoiseGate{0.0}, {});
  CHECK(testutil::max_abs_diff(res.u, x) < 1e-9);
}

TEST_CASE("denoiser lifts PSNR by at least 3 dB on seeded corruption") {
  const ImageF clean = testutil::constant(64, 64, 1, 0.5);
  const ImageF noisy = add_gaussian_noise(clean, 25.0 / 255.0, 42, true);
  const NoiseEstimate est = estimate_sigma(noisy, 1);
  REQUIRE(gate(est, NoiseGate{0.01}) == 1);

  const DenoiseResult res = denoise(noisy, est, NoiseGate{0.01}, {});
  CHECK(psnr(res.u, clean) >= psnr(noisy, clean) + 3.0);

  // u + v reassembles the input
  for (std::size_t i = 0; i < noisy.size(); ++i)
    CHECK(res.u.data()[i] + res.v.data()[i] ==
          doctest::Approx(noisy.data()[i]).epsilon(1e-12));
}

TEST_CASE("energy trace is non-increasing and TV contracts") {
  const ImageF x =
      add_gaussian_noise(testutil::dark_textured(48, 48, 3), 20.0 / 255.0, 3, true);
  const NoiseEstimate est = estimate_sigma(x, 1);
  REQUIRE(gate(est, NoiseGate{0.01}) == 1);
  const DenoiseSettings settings;
  const DenoiseResult res = denoise(x, est, NoiseGate{0.01}, settings);

  REQUIRE(res.energy_trace.size() >= 2);
  for (std::size_t i = 1; i < res.energy_trace.size(); ++i)
    CHECK(res.energy_trace[i] <= res.energy_trace[i - 1]);

  CHECK(tv(res.u, settings.tv_epsilon) <= tv(x, settings.tv_epsilon) + 1e-9);
}

TEST_CASE("denoise output stays in the unit interval") {
  const ImageF x =
      add_gaussian_noise(testutil::constant(24, 24, 3, 0.05), 30.0 / 255.0, 6, true);
  const DenoiseResult res = denoise(x, estimate_sigma(x, 1), NoiseGate{0.01}, {});
  for (std::size_t i = 0; i < res.u.size(); ++i) {
    CHECK(res.u.data()[i] >= 0.0);
    CHECK(res.u.data()[i] <= 1.0);
  }
}

TEST_CASE("denoise is deterministic") {
  const ImageF x =
      add_gaussian_noise(testutil::dark_textured(32, 32, 1), 25.0 / 255.0, 5, true);
  const NoiseEstimate est = estimate_sigma(x, 1);
  const DenoiseResult a = denoise(x, est, NoiseGate{0.01}, {});
  const DenoiseResult b = denoise(x, est, NoiseGate{0.01}, {});
  CHECK(testutil::bit_identical(a.u, b.u));
  CHECK(a.energy_trace == b.energy_trace);
}

TEST_CASE("absurd step raises a divergence error naming the iteration") {
  const ImageF x = add_gaussian_noise(testutil::constant(16, 16, 1, 0.5), 0.1, 2, true);
  DenoiseSettings settings;
  settings.step = 1e200;
  try {
    denoise(x, estimate_sigma(x, 1), NoiseGate{0.01}, settings);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.iteration() == 1);
  }
}

TEST_CASE("settings validation") {
  const ImageF x = testutil::constant(8, 8, 1, 0.5);
  const NoiseEstimate est = forced_estimate(0.1);
  DenoiseSettings s;
  s.eta = 0.0;
  CHECK_THROWS_AS(denoise(x, est, NoiseGate{0.01}, s), ParamError);
  s = {};
  s.max_iters = 0;
  CHECK_THROWS_AS(denoise(x, est, NoiseGate{0.01}, s), ParamError);
  s = {};
  s.step = -0.1;
  CHECK_THROWS_AS(denoise(x, est, NoiseGate{0.01}, s), ParamError);
  s = {};
  s.tv_epsilon = 0.0;
  CHECK_THROWS_AS(denoise(x, est, NoiseGate{0.01}, s), ParamError);
}
