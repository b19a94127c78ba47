#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ising/core.hpp"
#include "ising/rng.hpp"

namespace ising {

struct KnuthNet;

/// Non-positive update budget.
struct BudgetError : Error {
  using Error::Error;
};

enum class FigureKind {
  RandomHalf,       ///< figure = uniformly random ceil(fraction*|I|) vertices
  UnsatMultiplier,  ///< figure drawn from unsatisfied multiplier cells
};

/// How local-update figures are chosen. The fraction is an exact rational;
/// figure size is ceil(fraction * |I|). UnsatMultiplier needs the Knuth
/// cell structure and falls back to RandomHalf when every cell is locally
/// satisfied. `rng_seed` is folded into the run seed; leave 0 to use the
/// run seed alone.
struct FigureStrategy {
  FigureKind kind = FigureKind::RandomHalf;
  long long fraction_num = 1;
  long long fraction_den = 2;
  std::uint64_t rng_seed = 0;

  std::size_t figure_size(std::size_t net_size) const;
  std::string name() const;
};

struct RunOutcome {
  bool reached_ground = false;
  long long updates = 0;  ///< figure minimizations performed (oracle calls)
  Energy final_energy = 0;
  Configuration final_config;
};

/// Snapshot passed to the optional per-step observer: spins are in the
/// net's canonical (sorted-vertex) order. Called once after initialization
/// and once after every update.
struct LocalUpdateState {
  std::span<const Spin> spins;
  Energy energy = 0;
  long long updates_done = 0;
};

using StepObserver = std::function<void(const LocalUpdateState&)>;

/// Runs one seeded local-update search:
///   0. draw the initial configuration uniformly at random;
///   1. select a figure per the strategy;
///   2. clamp everything outside the figure to its current value and
///      enumerate the figure's ground states exactly;
///   3. overwrite the figure with one minimum chosen uniformly at random.
/// Stops as soon as the energy reaches `target_energy` (checked before the
/// first update, so a lucky initial draw costs zero updates) or after
/// `max_updates` minimizations. The energy trace is non-increasing.
///
/// `context` must point at the owning KnuthNet for UnsatMultiplier figures.
/// `frozen`, when given, pins those vertices for the whole run: they take
/// the given spins in the initial draw and never enter a figure. Running
/// with frozen vertices is equivalent to running on the clamped net while
/// keeping whole-net vertex names (the figure budget counts free vertices
/// only).
RunOutcome local_update_run(const IsingNet& net, Energy target_energy,
                            const FigureStrategy& strategy,
                            long long max_updates, std::uint64_t seed,
                            int cap = kDefaultEnumerationCap,
                            const KnuthNet* context = nullptr,
                            const Configuration* frozen = nullptr,
                            const StepObserver& observer = {});

/// Vertices of every multiplier cell whose local state violates the
/// ab + c + d = 2e + f relation; uniformly subsampled down to `budget`
/// when the pool is larger. Empty pool means the configuration is a ground
/// state (for Knuth nets) and the caller should fall back to random
/// figures; this function then returns a random figure of size `budget`.
std::vector<std::string> unsat_multiplier_figure(const KnuthNet& knet,
                                                 const Configuration& config,
                                                 Rng& rng, std::size_t budget);

}  // namespace ising
