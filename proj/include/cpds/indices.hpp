#pragma once

#include <vector>

#include "cpds/engine.hpp"

namespace cpds {

// Reliability indices of one replication. availability is a fraction in
// [0,1]; saidi in hours per system customer per year; saifi in interruptions
// per system customer per year.
struct ReliabilityIndices {
  double failure_rate = 0.0;
  double availability = 1.0;
  double nines = 0.0;
  double saidi = 0.0;
  double saifi = 0.0;

  bool operator==(const ReliabilityIndices&) const = default;
};

ReliabilityIndices compute_indices(const ReplicationResult& result,
                                   const ElectricalNetwork& net,
                                   double horizon_years);

// -log10(1 - availability); availability == 1 maps to +infinity.
double number_of_nines(double availability);

struct SampleStats {
  std::vector<double> samples;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double p5 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
};

struct IndexDistribution {
  SampleStats failure_rate;
  SampleStats availability;
  SampleStats nines;
  SampleStats saidi;
  SampleStats saifi;
};

IndexDistribution aggregate(const std::vector<ReliabilityIndices>& samples);

ReliabilityIndices distribution_means(const IndexDistribution& dist);

// Relative changes against a baseline: SAIDI on its own scale, availability
// on the number-of-nines scale (positive when the variant is less available).
struct PercentDifferences {
  double availability_nines_pct = 0.0;
  double saidi_pct = 0.0;
};

PercentDifferences percent_difference(const ReliabilityIndices& baseline_means,
                                      const ReliabilityIndices& variant_means);

}  // namespace cpds
