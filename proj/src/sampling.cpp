#include "cpds/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpds {

void ComponentReliability::validate(const std::string& what) const {
  if (!(lambda_per_year >= 0.0)) {
    throw std::invalid_argument(what + ": failure rate must be >= 0");
  }
  if (!(repair_mean_h > 0.0)) {
    throw std::invalid_argument(what + ": repair mean must be > 0 hours");
  }
  if (!(repair_std_h >= 0.0)) {
    throw std::invalid_argument(what + ": repair std must be >= 0 hours");
  }
  if (!(repair_std_h < repair_mean_h)) {
    throw std::invalid_argument(what + ": repair std must be < repair mean");
  }
}

void RtoParameters::validate() const {
  if (!(mu_min >= 0.0)) {
    throw std::invalid_argument("response time mean must be >= 0 minutes");
  }
  if (!(sigma_min >= 0.0)) {
    throw std::invalid_argument("response time std must be >= 0 minutes");
  }
  if (mu_min == 0.0 && sigma_min != 0.0) {
    throw std::invalid_argument("response time std must be 0 when the mean is 0");
  }
}

double exponential_from_uniform(double lambda_per_year, double u) {
  if (!(lambda_per_year > 0.0)) {
    throw std::invalid_argument("time-to-failure sampling requires a rate > 0");
  }
  return -(kHoursPerYear / lambda_per_year) * std::log(u);
}

double box_muller(double u1, double u2) {
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double sample_time_to_failure(double lambda_per_year, RandomStream& stream) {
  return exponential_from_uniform(lambda_per_year, stream.uniform_open_closed());
}

double sample_standard_normal(RandomStream& stream) {
  const double u1 = stream.uniform_open_closed();
  const double u2 = stream.uniform_closed_open();
  return box_muller(u1, u2);
}

double sample_repair_time(const ComponentReliability& params, RandomStream& stream) {
  for (;;) {
    const double t = sample_standard_normal(stream) * params.repair_std_h +
                     params.repair_mean_h;
    if (t > 0.0) {
      return t;
    }
  }
}

double sample_rto_minutes(const RtoParameters& params, RandomStream& stream) {
  if (params.mu_min == 0.0) {
    return 0.0;
  }
  for (;;) {
    const double t = sample_standard_normal(stream) * params.sigma_min +
                     params.mu_min;
    if (t >= 0.0) {
      return t;
    }
  }
}

}  // namespace cpds
