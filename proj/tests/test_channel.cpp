#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "uavloc/channel.hpp"
#include "uavloc/rng.hpp"

using namespace uavloc;

TEST_CASE("distance basics", "[channel]") {
  CHECK(distance({0, 100}, {0, 0}) == 100.0);
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({30, 40}, {0, 0}) == 50.0);
  CHECK(distance({1, 2}, {4, 6}) == 5.0);
}

TEST_CASE("expected_rss closed-form values", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 0.0};

  // log10(100) = 2 exactly
  CHECK(expected_rss({0, 100}, {0, 0}, params, 1.0) == -50.0);

  // at the reference distance the mean RSS is p0
  CHECK(expected_rss({0, 1}, {0, 0}, params, 1.0) == 10.0);

  // frozen from an independent scalar evaluation: 10 - 30*log10(50)
  CHECK(expected_rss({30, 40}, {0, 0}, params, 1.0) ==
        Catch::Approx(-40.96910013008056).epsilon(1e-12));
}

TEST_CASE("expected_rss reference-distance scaling is exact for d0 = 1", "[channel]") {
  const ChannelParams params{7.5, 2.7, 1.0, 0.0};
  RngStream rng(2024);
  for (int i = 0; i < 200; ++i) {
    const double c = 1.0 + 400.0 * rng.uniform01();
    const double direct = params.p0_dbm - 10.0 * params.beta * std::log10(c);
    CHECK(expected_rss({c, 0}, {0, 0}, params, 0.5) == direct);
  }
}

TEST_CASE("expected_rss is strictly decreasing beyond the clamp", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 0.0};
  const double d_min = 1.0;
  RngStream rng(99);
  for (int i = 0; i < 500; ++i) {
    const double d1 = d_min + 300.0 * rng.uniform01();
    const double d2 = d1 + 1e-3 + 100.0 * rng.uniform01();
    CHECK(expected_rss({d1, 0}, {0, 0}, params, d_min) >
          expected_rss({d2, 0}, {0, 0}, params, d_min));
  }
}

TEST_CASE("d_min clamp removes the singularity", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 0.0};
  const double at_clamp = expected_rss({1, 0}, {0, 0}, params, 1.0);
  CHECK(expected_rss({0.2, 0}, {0, 0}, params, 1.0) == at_clamp);
  CHECK(expected_rss({0, 0}, {0, 0}, params, 1.0) == at_clamp);
  CHECK(std::isfinite(at_clamp));
}

TEST_CASE("sample_rss with zero sigma equals expected_rss", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 0.0};
  RngStream rng = RngStream::measurement_stream(7, 0, 0, 0);
  const Measurement m = sample_rss({0, 100}, {0, 0}, params, rng, 1.0, 3, 9);
  CHECK(m.rss_dbm == expected_rss({0, 100}, {0, 0}, params, 1.0));
  CHECK(m.uav_id == 3);
  CHECK(m.epoch == 9);
  CHECK(m.uav_pos == Point2{0, 100});
}

TEST_CASE("identical stream keys reproduce samples bit-exactly", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 6.0};
  RngStream a = RngStream::measurement_stream(42, 5, 2, 11);
  RngStream b = RngStream::measurement_stream(42, 5, 2, 11);
  const Measurement ma = sample_rss({25, -60}, {3, 4}, params, a, 1.0);
  const Measurement mb = sample_rss({25, -60}, {3, 4}, params, b, 1.0);
  CHECK(ma.rss_dbm == mb.rss_dbm);

  RngStream c = RngStream::measurement_stream(42, 5, 2, 12);
  const Measurement mc = sample_rss({25, -60}, {3, 4}, params, c, 1.0);
  CHECK(mc.rss_dbm != ma.rss_dbm);
}

TEST_CASE("shadowing noise matches its normal model", "[channel]") {
  const ChannelParams params{10.0, 3.0, 1.0, 6.0};
  const Point2 uav{0, 100};
  const Point2 target{0, 0};
  const double mean_rss = expected_rss(uav, target, params, 1.0);

  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::measurement_stream(123, 0, 0, static_cast<std::uint64_t>(i));
    const double noise = sample_rss(uav, target, params, rng, 1.0).rss_dbm - mean_rss;
    sum += noise;
    sum_sq += noise * noise;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum_sq / n - mean * mean);
  CHECK(std::fabs(mean) < 0.1);
  CHECK(stddev == Catch::Approx(6.0).epsilon(0.02));
}

TEST_CASE("channel parameter validation", "[channel]") {
  ChannelParams params{10.0, 3.0, 1.0, 6.0};
  CHECK_NOTHROW(params.validate());
  params.beta = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.beta = 3.0;
  params.d0_m = -1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.d0_m = 1.0;
  params.sigma_db = -0.5;
  CHECK_THROWS_AS(params.validate(), ConfigError);
}
