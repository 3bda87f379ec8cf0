#pragma once

#include <string>

#include "cpds/random.hpp"

namespace cpds {

inline constexpr double kHoursPerYear = 8760.0;
inline constexpr double kMinutesPerHour = 60.0;
// Ring reconfiguration time when a live alternate communication path exists.
inline constexpr double kRstpReconfigHours = 30.0 / 3600.0;

// Failure rate plus Normal repair-time parameters for one component class.
// All repair parameters are hours; lambda is failures per year.
struct ComponentReliability {
  double lambda_per_year = 0.0;
  double repair_mean_h = 0.0;
  double repair_std_h = 0.0;

  bool never_fails() const { return lambda_per_year == 0.0; }
  // Throws std::invalid_argument naming `what` on violated invariants
  // (lambda >= 0, mean > 0, 0 <= std < mean).
  void validate(const std::string& what) const;

  bool operator==(const ComponentReliability&) const = default;
};

// Operator response time, Normal(mu, sigma^2), in minutes.
struct RtoParameters {
  double mu_min = 0.0;
  double sigma_min = 0.0;

  void validate() const;

  bool operator==(const RtoParameters&) const = default;
};

// Inverse-transform exponential. Returns hours; u in (0,1].
double exponential_from_uniform(double lambda_per_year, double u);

// Box-Muller, cosine branch. u1 in (0,1], u2 in [0,1).
double box_muller(double u1, double u2);

// Hours until the next failure of a component with rate lambda (per year).
// lambda must be > 0.
double sample_time_to_failure(double lambda_per_year, RandomStream& stream);

double sample_standard_normal(RandomStream& stream);

// Repair duration in hours; resampled until strictly positive.
double sample_repair_time(const ComponentReliability& params, RandomStream& stream);

// Response time in minutes. mu_min == 0 returns 0 and consumes no draws;
// otherwise resampled until nonnegative.
double sample_rto_minutes(const RtoParameters& params, RandomStream& stream);

}  // namespace cpds
