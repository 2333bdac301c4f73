#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "illumine/error.hpp"
#include "illumine/synth.hpp"
#include "support/testutil.hpp"

using namespace illumine;

TEST_CASE("degrade: closed-form values at gamma 1") {
  // s = 0.5: (1-0.5)^3 * 0.5^2 = 0.03125
  const ImageF half = degrade(testutil::constant(8, 8, 3, 0.5), {1.0, 0.0, 0});
  for (std::size_t i = 0; i < half.size(); ++i)
    CHECK(half.data()[i] == doctest::Approx(0.03125).epsilon(1e-9));

  // s = 0.8: 0.2^3 * 0.8^2 = 0.00512
  const ImageF bright = degrade(testutil::constant(8, 8, 3, 0.8), {1.0, 0.0, 0});
  for (std::size_t i = 0; i < bright.size(); ++i)
    CHECK(bright.data()[i] == doctest::Approx(0.00512).epsilon(1e-9));
}

TEST_CASE("degrade: all-ones input annihilates for any positive gamma") {
  for (double g : {0.5, 1.0, 2.0}) {
    const ImageF out = degrade(testutil::constant(4, 4, 1, 1.0), {g, 0.0, 0});
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.data()[i] == 0.0);
  }
}

TEST_CASE("degrade: gamma 0 degenerates to the all-ones image") {
  const ImageF s = testutil::uniform_random(6, 6, 3, 3);
  const ImageF out = degrade(s, {0.0, 0.0, 0});
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.data()[i] == 1.0);
}

TEST_CASE("degrade darkens every non-degenerate image") {
  for (int i = 0; i < 5; ++i) {
    const ImageF s = testutil::clean_scene(24, 24, 70 + i);
    const ImageF x = degrade(s, {1.0, 0.0, 0});
    CHECK(channel_mean(x)[0] < channel_mean(s)[0]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(x.data()[j] >= 0.0);
      CHECK(x.data()[j] <= 1.0);
    }
  }
}

TEST_CASE("degrade preserves pixel order within one image") {
  const ImageF s = testutil::uniform_random(10, 10, 1, 17);
  const ImageF x = degrade(s, {1.3, 0.0, 0});
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s.data()[a] <= s.data()[b]) CHECK(x.data()[a] <= x.data()[b] + 1e-15);
}

TEST_CASE("degrade with noise is deterministic under a fixed seed") {
  const ImageF s = testutil::clean_scene(16, 16, 2);
  const ImageF a = degrade(s, {1.0, 10.0 / 255.0, 77});
  const ImageF b = degrade(s, {1.0, 10.0 / 255.0, 77});
  const ImageF c = degrade(s, {1.0, 10.0 / 255.0, 78});
  CHECK(testutil::bit_identical(a, b));
  CHECK_FALSE(testutil::bit_identical(a, c));
}

TEST_CASE("degrade parameter validation") {
  const ImageF s = testutil::constant(4, 4, 1, 0.5);
  CHECK_THROWS_AS(degrade(s, {-1.0, 0.0, 0}), ParamError);
  CHECK_THROWS_AS(degrade(s, {1.0, -0.1, 0}), ParamError);
}
