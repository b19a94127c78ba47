#include "ising/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "ising/version.hpp"

namespace ising {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xB0075743ull;

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw EmptySampleError("quantile of empty sample");
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double median_sorted(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  return (sorted[(n - 1) / 2] + sorted[n / 2]) / 2.0;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string dims_label(const KnuthDims& dims) {
  return std::to_string(dims.n) + " x " + std::to_string(dims.m);
}

}  // namespace

double median_of(std::vector<long long> samples) {
  if (samples.empty()) throw EmptySampleError("median of empty sample");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return (static_cast<double>(samples[(n - 1) / 2]) +
          static_cast<double>(samples[n / 2])) /
         2.0;
}

std::pair<double, double> smoothed_bootstrap_median_ci(
    const std::vector<long long>& samples, long long resamples,
    double confidence, std::uint64_t seed) {
  if (samples.empty()) {
    throw EmptySampleError("bootstrap over an empty sample");
  }
  if (resamples < 100) {
    throw DomainError("bootstrap needs at least 100 resamples, got " +
                      std::to_string(resamples));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }

  const std::size_t n = samples.size();
  double mean = 0.0;
  for (long long v : samples) mean += static_cast<double>(v);
  mean /= static_cast<double>(n);
  double sd = 0.0;
  if (n > 1) {
    double ss = 0.0;
    for (long long v : samples) {
      const double d = static_cast<double>(v) - mean;
      ss += d * d;
    }
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr =
      quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double bandwidth = 0.9 * std::min(sd, iqr / 1.34) *
                           std::pow(static_cast<double>(n), -0.2);

  Rng rng(seed);
  std::vector<double> medians(resamples);
  std::vector<double> resample(n);
  for (long long r = 0; r < resamples; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double value = static_cast<double>(samples[rng.below(n)]);
      resample[k] = value + bandwidth * rng.normal();
    }
    std::sort(resample.begin(), resample.end());
    medians[r] = median_sorted(resample);
  }
  std::sort(medians.begin(), medians.end());
  const double tail = (1.0 - confidence) / 2.0;
  return {quantile_sorted(medians, tail), quantile_sorted(medians, 1.0 - tail)};
}

namespace {

DecompSummary run_one_net(const CampaignSpec& spec, std::size_t net_index,
                          std::vector<TrialRecord>& trials_out) {
  const KnuthDims dims = spec.net_family[net_index];
  DecompSummary summary;
  summary.dims = dims;
  summary.trials = spec.trials_per_net;

  const KnuthNet knet = build_knuth(dims);
  summary.net_size = static_cast<long long>(knet.net.size());
  const std::string net_id =
      "knuth-" + std::to_string(dims.n) + "x" + std::to_string(dims.m);
  const Energy target = knet.ground_energy();

  std::optional<Configuration> frozen;
  if (spec.clamp_product) {
    Configuration input;
    const std::size_t bits = knet.product_vertices.size();
    const unsigned long long value = *spec.clamp_product;
    if (bits < 64 && value >= (1ull << bits)) {
      throw DomainError("clamped product does not fit in " +
                        std::to_string(bits) + " bits");
    }
    for (std::size_t k = 0; k < bits; ++k) {
      input.set(knet.product_vertices[k],
                spin_from_bit(static_cast<int>((value >> (bits - 1 - k)) & 1u)));
    }
    frozen = std::move(input);
  }

  const long long trials = spec.trials_per_net;
  std::vector<TrialRecord> records(trials);

  if (spec.max_updates <= 0) {
    // Zero budget: every run is recorded as exhausted without sampling.
    for (long long t = 0; t < trials; ++t) {
      records[t] = TrialRecord{net_id, Rng::derive(spec.master_seed, net_index, t),
                               spec.strategy.name(), 0, false, 0};
    }
    summary.failures = trials;
    trials_out.insert(trials_out.end(), records.begin(), records.end());
    return summary;
  }

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));

  std::atomic<long long> next{0};
  std::atomic<bool> aborted{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (true) {
      const long long t = next.fetch_add(1);
      if (t >= trials || aborted.load()) return;
      const std::uint64_t seed = Rng::derive(spec.master_seed, net_index, t);
      try {
        RunOutcome run = local_update_run(
            knet.net, target, spec.strategy, spec.max_updates, seed,
            spec.enumeration_cap, &knet, frozen ? &*frozen : nullptr);
        records[t] = TrialRecord{net_id,       seed,
                                 spec.strategy.name(), run.updates,
                                 run.reached_ground,   run.final_energy};
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) first_error = e.what();
        aborted.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (aborted.load()) throw Error(first_error);

  std::vector<long long> successes;
  successes.reserve(trials);
  for (const auto& record : records) {
    if (record.reached_ground) {
      successes.push_back(record.updates);
    } else {
      ++summary.failures;
    }
  }
  summary.successes = static_cast<long long>(successes.size());
  if (!successes.empty()) {
    summary.median_updates = median_of(successes);
    auto [lo, hi] = smoothed_bootstrap_median_ci(
        successes, spec.bootstrap_resamples, spec.confidence,
        Rng::derive(spec.master_seed, net_index, kBootstrapStream));
    summary.ci_low = lo;
    summary.ci_high = hi;
  }
  trials_out.insert(trials_out.end(), records.begin(), records.end());
  return summary;
}

}  // namespace

CampaignResult run_campaign(const CampaignSpec& spec) {
  if (spec.trials_per_net < 1) {
    throw DomainError("campaign needs at least one trial per net");
  }
  if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }
  CampaignResult result;
  for (std::size_t k = 0; k < spec.net_family.size(); ++k) {
    try {
      result.summaries.push_back(run_one_net(spec, k, result.trials));
    } catch (const std::exception& e) {
      DecompSummary summary;
      summary.dims = spec.net_family[k];
      const KnuthDims d = spec.net_family[k];
      summary.net_size = 2ll * d.n * d.m + d.n + d.m;
      summary.trials = spec.trials_per_net;
      summary.errored = true;
      summary.error_message = e.what();
      result.summaries.push_back(std::move(summary));
    }
  }
  return result;
}

PlotData emit_plot_data(const std::vector<DecompSummary>& summaries,
                        PlotScale scale, const std::string& csv_filename) {
  std::vector<const DecompSummary*> rows;
  for (const auto& s : summaries) {
    if (!s.errored) rows.push_back(&s);
  }
  std::sort(rows.begin(), rows.end(),
            [](const DecompSummary* a, const DecompSummary* b) {
              if (a->net_size != b->net_size) return a->net_size < b->net_size;
              return dims_label(a->dims) < dims_label(b->dims);
            });

  std::ostringstream csv;
  csv << "net_size,label,median,ci_low,ci_high\n";
  for (const DecompSummary* s : rows) {
    csv << s->net_size << "," << dims_label(s->dims) << ",";
    if (s->successes > 0) {
      csv << format_double(s->median_updates) << ","
          << format_double(s->ci_low) << "," << format_double(s->ci_high);
    } else {
      csv << ",,";
    }
    csv << "\n";
  }

  std::ostringstream script;
  script << "set datafile separator ','\n";
  script << "set xlabel 'net size (spins)'\n";
  script << "set ylabel 'median local updates'\n";
  if (scale == PlotScale::Semilog) {
    script << "set logscale y\n";
  } else {
    script << "set logscale xy\n";
  }
  script << "set grid\n";
  script << "plot '" << csv_filename
         << "' skip 1 using 1:3:4:5 with yerrorbars pt 7 "
            "title 'median local updates (95% CI)'\n";
  return PlotData{csv.str(), script.str()};
}

std::string runs_csv(const std::vector<TrialRecord>& trials) {
  std::ostringstream out;
  out << "net_id,seed,strategy,updates,reached_ground,final_energy\n";
  for (const auto& t : trials) {
    out << t.net_id << "," << t.seed << "," << t.strategy << "," << t.updates
        << "," << (t.reached_ground ? 1 : 0) << "," << t.final_energy << "\n";
  }
  return out.str();
}

std::string trend_report(const std::vector<DecompSummary>& summaries) {
  std::vector<const DecompSummary*> rows;
  for (const auto& s : summaries) {
    if (!s.errored && s.successes > 0 && s.median_updates > 0.0) {
      rows.push_back(&s);
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const DecompSummary* a, const DecompSummary* b) {
              return a->net_size < b->net_size;
            });

  std::ostringstream out;
  out << "trend report (second differences of log median; negative = "
         "concave down)\n";
  if (rows.size() < 3) {
    out << "  not enough data points (need 3 nets with successes)\n";
    return out.str();
  }
  auto second_differences = [&rows](auto x_of) {
    std::vector<double> diffs;
    std::vector<double> slopes;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
      const double x0 = x_of(rows[k]);
      const double x1 = x_of(rows[k + 1]);
      const double y0 = std::log(rows[k]->median_updates);
      const double y1 = std::log(rows[k + 1]->median_updates);
      slopes.push_back((y1 - y0) / (x1 - x0));
    }
    for (std::size_t k = 0; k + 1 < slopes.size(); ++k) {
      diffs.push_back(slopes[k + 1] - slopes[k]);
    }
    return diffs;
  };

  out << "  semilog (x = net size):";
  for (double d : second_differences([](const DecompSummary* s) {
         return static_cast<double>(s->net_size);
       })) {
    out << " " << format_double(d);
  }
  out << "\n  loglog  (x = log net size):";
  for (double d : second_differences([](const DecompSummary* s) {
         return std::log(static_cast<double>(s->net_size));
       })) {
    out << " " << format_double(d);
  }
  out << "\n";
  return out.str();
}

std::string campaign_metadata_json(const CampaignSpec& spec) {
  nlohmann::ordered_json doc;
  doc["dims"] = nlohmann::ordered_json::array();
  for (const auto& d : spec.net_family) {
    doc["dims"].push_back(nlohmann::ordered_json::array({d.n, d.m}));
  }
  doc["trials_per_net"] = spec.trials_per_net;
  doc["strategy"] = spec.strategy.name();
  doc["max_updates"] = spec.max_updates;
  doc["master_seed"] = spec.master_seed;
  doc["bootstrap_resamples"] = spec.bootstrap_resamples;
  doc["confidence"] = spec.confidence;
  doc["enumeration_cap"] = spec.enumeration_cap;
  if (spec.clamp_product) {
    doc["clamp_product"] = *spec.clamp_product;
  } else {
    doc["clamp_product"] = nullptr;
  }
  doc["prng"] = Rng::algorithm_name();
  doc["version"] = kVersion;
  return doc.dump(2) + "\n";
}

}  // namespace ising
