#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cpds/sampling.hpp"

using namespace cpds;

namespace {

// Kolmogorov-Smirnov statistic of a sample against a CDF.
double ks_statistic(std::vector<double> sample, double (*cdf)(double, double),
                    double param) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i], param);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double exp_cdf_hours(double t_h, double lambda_per_year) {
  return 1.0 - std::exp(-lambda_per_year * t_h / kHoursPerYear);
}

}  // namespace

TEST_CASE("exponential inversion kernel") {
  CHECK(exponential_from_uniform(0.1, 1.0) == 0.0);
  CHECK(exponential_from_uniform(0.1, std::exp(-0.1)) ==
        doctest::Approx(kHoursPerYear).epsilon(1e-12));
  CHECK_THROWS_AS(exponential_from_uniform(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(exponential_from_uniform(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("box-muller kernel") {
  CHECK(box_muller(1.0, 0.25) == 0.0);
  CHECK(box_muller(std::exp(-0.5), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(box_muller(std::exp(-0.5), 0.5) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("time-to-failure mean over many draws") {
  RandomStream s(2024);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += sample_time_to_failure(0.1, s);
  }
  const double mean_years = sum / n / kHoursPerYear;
  CHECK(mean_years == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("exponential sampler empirical CDF") {
  RandomStream s(5150);
  std::vector<double> sample;
  sample.reserve(100000);
  for (int i = 0; i < 100000; ++i) {
    sample.push_back(sample_time_to_failure(0.1, s));
  }
  CHECK(ks_statistic(std::move(sample), exp_cdf_hours, 0.1) < 0.01);
}

TEST_CASE("box-muller moments") {
  RandomStream s(77);
  const int n = 1000000;
  double sum = 0.0;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_standard_normal(s);
    sum += x;
    ss += x * x;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(ss / n - mean * mean);
  CHECK(std::abs(mean) < 0.01);
  CHECK(stddev > 0.99);
  CHECK(stddev < 1.01);
}

TEST_CASE("repair time composition and moments") {
  const ComponentReliability rel{0.1, 3.0, 0.6};
  SUBCASE("kernel cases") {
    // X = 0 and X = 1 via explicit uniforms.
    CHECK(box_muller(1.0, 0.0) * rel.repair_std_h + rel.repair_mean_h == 3.0);
    CHECK(box_muller(std::exp(-0.5), 0.0) * rel.repair_std_h + rel.repair_mean_h ==
          doctest::Approx(3.6).epsilon(1e-12));
  }
  SUBCASE("moments and positivity") {
    RandomStream s(31337);
    const int n = 1000000;
    double sum = 0.0;
    double ss = 0.0;
    double min_seen = 1e9;
    for (int i = 0; i < n; ++i) {
      const double t = sample_repair_time(rel, s);
      min_seen = std::min(min_seen, t);
      sum += t;
      ss += t * t;
    }
    const double mean = sum / n;
    const double stddev = std::sqrt(ss / n - mean * mean);
    CHECK(min_seen > 0.0);
    CHECK(mean == doctest::Approx(3.0).epsilon(0.01 / 3.0));
    CHECK(stddev == doctest::Approx(0.6).epsilon(0.01 / 0.6));
  }
}

TEST_CASE("response time sampling") {
  SUBCASE("zero mean consumes no draws and returns exactly zero") {
    RandomStream s(11);
    const RandomStream before = s;
    CHECK(sample_rto_minutes({0.0, 0.0}, s) == 0.0);
    CHECK(s == before);
    CHECK(s.draws() == 0);
  }
  SUBCASE("degenerate sigma returns the mean") {
    RandomStream s(11);
    CHECK(sample_rto_minutes({10.0, 0.0}, s) == 10.0);
    CHECK(s.draws() == 2);  // one normal draw still consumed
  }
  SUBCASE("moments") {
    RandomStream s(12);
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = sample_rto_minutes({60.0, 12.0}, s);
      REQUIRE(t >= 0.0);
      sum += t;
    }
    CHECK(sum / n == doctest::Approx(60.0).epsilon(0.1 / 60.0));
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW((ComponentReliability{0.0, 3.0, 0.6}).validate("x"));
  CHECK_THROWS_AS((ComponentReliability{-0.1, 3.0, 0.6}).validate("x"),
                  std::invalid_argument);
  CHECK_THROWS_AS((ComponentReliability{0.1, 0.0, 0.0}).validate("x"),
                  std::invalid_argument);
  CHECK_THROWS_AS((ComponentReliability{0.1, 3.0, -0.1}).validate("x"),
                  std::invalid_argument);
  CHECK_THROWS_AS((ComponentReliability{0.1, 3.0, 3.0}).validate("x"),
                  std::invalid_argument);
  CHECK_NOTHROW((RtoParameters{10.0, 2.0}).validate());
  CHECK_NOTHROW((RtoParameters{0.0, 0.0}).validate());
  CHECK_THROWS_AS((RtoParameters{0.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((RtoParameters{-1.0, 0.0}).validate(), std::invalid_argument);
}
