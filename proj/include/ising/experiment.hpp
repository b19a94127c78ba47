#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ising/knuth.hpp"
#include "ising/solver.hpp"

namespace ising {

/// Bootstrap over an empty sample.
struct EmptySampleError : Error {
  using Error::Error;
};

/// One batched decomposability measurement: for each net in the family,
/// `trials_per_net` independently seeded local-update runs down to the
/// known ground energy, then a median with a smoothed-bootstrap CI.
struct CampaignSpec {
  std::vector<KnuthDims> net_family;
  long long trials_per_net = 10000;
  FigureStrategy strategy;
  long long max_updates = 100000;
  std::uint64_t master_seed = 0;
  long long bootstrap_resamples = 1000;
  double confidence = 0.95;
  int enumeration_cap = kDefaultEnumerationCap;
  int threads = 0;  ///< 0 = hardware concurrency
  /// When set, the product bits are frozen to this value for every net:
  /// the factoring-style variant of the measurement. Runs can then only
  /// terminate when the value is a valid product at the given widths.
  std::optional<unsigned long long> clamp_product;
};

/// One run's record; serialized as a CSV row.
struct TrialRecord {
  std::string net_id;
  std::uint64_t seed = 0;
  std::string strategy;
  long long updates = 0;
  bool reached_ground = false;
  Energy final_energy = 0;
};

struct DecompSummary {
  KnuthDims dims;
  long long net_size = 0;  ///< 2nm + n + m
  long long trials = 0;
  long long successes = 0;
  long long failures = 0;  ///< budget-exhausted runs, excluded from the median
  double median_updates = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool errored = false;  ///< per-net error (e.g. figure above the cap)
  std::string error_message;
};

struct CampaignResult {
  std::vector<DecompSummary> summaries;
  std::vector<TrialRecord> trials;  ///< by net, then by trial index
};

/// Runs the whole campaign. Per-trial seeds derive deterministically from
/// the master seed, trials execute concurrently, and results are reduced
/// by trial index, so identical specs give bit-identical results. Per-net
/// failures are recorded in the summary and the campaign continues.
CampaignResult run_campaign(const CampaignSpec& spec);

/// Percentile interval for the median: `resamples` bootstrap resamples,
/// each value perturbed by Gaussian noise with Silverman's bandwidth
/// 0.9 * min(sd, IQR/1.34) * n^(-1/5), then the (1-c)/2 and 1-(1-c)/2
/// empirical quantiles of the resample medians. A constant sample has
/// bandwidth 0 and yields the degenerate interval.
std::pair<double, double> smoothed_bootstrap_median_ci(
    const std::vector<long long>& samples, long long resamples,
    double confidence, std::uint64_t seed);

/// Sorted-sample median (mean of the middle pair for even sizes).
double median_of(std::vector<long long> samples);

enum class PlotScale { Semilog, LogLog };

struct PlotData {
  std::string csv;      ///< net_size,label,median,ci_low,ci_high
  std::string gnuplot;  ///< companion script selecting the axis scaling
};

/// Plot-ready data, rows sorted by ascending net size. Labels are
/// "n x m" (columns x rows of multiplier cells).
PlotData emit_plot_data(const std::vector<DecompSummary>& summaries,
                        PlotScale scale,
                        const std::string& csv_filename = "decomp.csv");

/// Per-run rows: net_id,seed,strategy,updates,reached_ground,final_energy.
std::string runs_csv(const std::vector<TrialRecord>& trials);

/// Second differences of log(median) against size and against log(size),
/// reported for eyeballing curvature; no thresholds are asserted.
std::string trend_report(const std::vector<DecompSummary>& summaries);

/// Sidecar JSON recording the spec, the PRNG algorithm, and the library
/// version, so outputs are replayable.
std::string campaign_metadata_json(const CampaignSpec& spec);

}  // namespace ising
