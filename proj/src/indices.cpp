#include "cpds/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpds {

ReliabilityIndices compute_indices(const ReplicationResult& result,
                                   const ElectricalNetwork& net,
                                   double horizon_years) {
  if (!(horizon_years > 0.0)) {
    throw std::invalid_argument("horizon must be > 0 years");
  }
  ReliabilityIndices out;
  out.failure_rate = result.system_failures / horizon_years;
  out.availability =
      1.0 - result.system_down_hours / (horizon_years * kHoursPerYear);
  out.nines = number_of_nines(out.availability);

  const int total_customers = net.total_customers();
  double saidi = 0.0;
  double saifi = 0.0;
  if (total_customers > 0) {
    for (const LoadPointTally& tally : result.tallies) {
      const double annual_hours = tally.outage_hours / horizon_years;
      const double annual_count = tally.interruptions / horizon_years;
      saidi += annual_hours * tally.customers;
      saifi += annual_count * tally.customers;
    }
    saidi /= total_customers;
    saifi /= total_customers;
  }
  out.saidi = saidi;
  out.saifi = saifi;
  return out;
}

double number_of_nines(double availability) {
  if (!(availability >= 0.0) || availability > 1.0) {
    throw std::invalid_argument("availability must lie in [0, 1]");
  }
  if (availability == 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return -std::log10(1.0 - availability);
}

namespace {

SampleStats stats_of(std::vector<double> samples) {
  SampleStats stats;
  stats.samples = std::move(samples);
  const std::size_t n = stats.samples.size();
  double sum = 0.0;
  for (double v : stats.samples) {
    sum += v;
  }
  stats.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : stats.samples) {
    const double d = v - stats.mean;
    ss += d * d;
  }
  stats.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

  std::vector<double> sorted = stats.samples;
  std::sort(sorted.begin(), sorted.end());
  auto percentile = [&](double p) {
    const double rank = p / 100.0 * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
  };
  stats.p5 = percentile(5.0);
  stats.p50 = percentile(50.0);
  stats.p95 = percentile(95.0);
  return stats;
}

}  // namespace

IndexDistribution aggregate(const std::vector<ReliabilityIndices>& samples) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot aggregate an empty sample list");
  }
  std::vector<double> fr;
  std::vector<double> avail;
  std::vector<double> nines;
  std::vector<double> saidi;
  std::vector<double> saifi;
  fr.reserve(samples.size());
  avail.reserve(samples.size());
  nines.reserve(samples.size());
  saidi.reserve(samples.size());
  saifi.reserve(samples.size());
  for (const ReliabilityIndices& s : samples) {
    fr.push_back(s.failure_rate);
    avail.push_back(s.availability);
    nines.push_back(s.nines);
    saidi.push_back(s.saidi);
    saifi.push_back(s.saifi);
  }
  IndexDistribution dist;
  dist.failure_rate = stats_of(std::move(fr));
  dist.availability = stats_of(std::move(avail));
  dist.nines = stats_of(std::move(nines));
  dist.saidi = stats_of(std::move(saidi));
  dist.saifi = stats_of(std::move(saifi));
  return dist;
}

ReliabilityIndices distribution_means(const IndexDistribution& dist) {
  ReliabilityIndices means;
  means.failure_rate = dist.failure_rate.mean;
  means.availability = dist.availability.mean;
  means.nines = dist.nines.mean;
  means.saidi = dist.saidi.mean;
  means.saifi = dist.saifi.mean;
  return means;
}

PercentDifferences percent_difference(const ReliabilityIndices& baseline_means,
                                      const ReliabilityIndices& variant_means) {
  if (baseline_means.saidi == 0.0) {
    throw std::invalid_argument("baseline SAIDI is zero");
  }
  if (!(baseline_means.nines > 0.0) || std::isinf(baseline_means.nines)) {
    throw std::invalid_argument("baseline number of nines must be finite nonzero");
  }
  PercentDifferences out;
  out.saidi_pct = 100.0 * (variant_means.saidi - baseline_means.saidi) /
                  baseline_means.saidi;
  out.availability_nines_pct = 100.0 *
                               (baseline_means.nines - variant_means.nines) /
                               baseline_means.nines;
  return out;
}

}  // namespace cpds
