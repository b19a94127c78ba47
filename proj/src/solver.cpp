#include "ising/solver.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <set>

#include "ising/knuth.hpp"

namespace ising {

std::size_t FigureStrategy::figure_size(std::size_t net_size) const {
  if (fraction_num < 1 || fraction_den < 1 || fraction_num > fraction_den) {
    throw DomainError("figure fraction must be a rational in (0, 1], got " +
                      std::to_string(fraction_num) + "/" +
                      std::to_string(fraction_den));
  }
  const unsigned long long num = static_cast<unsigned long long>(fraction_num);
  const unsigned long long den = static_cast<unsigned long long>(fraction_den);
  return static_cast<std::size_t>((num * net_size + den - 1) / den);
}

std::string FigureStrategy::name() const {
  std::string base = kind == FigureKind::RandomHalf ? "random_half"
                                                    : "unsat_multiplier";
  return base + ":" + std::to_string(fraction_num) + "/" +
         std::to_string(fraction_den);
}

namespace {

Energy flip_delta(const CompiledNet& net, const std::vector<Spin>& spins,
                  int vertex) {
  Energy local = net.field(vertex);
  for (const auto& [j, w] : net.neighbors(vertex)) {
    local += w * spin_value(spins[j]);
  }
  return Energy{-2} * spin_value(spins[vertex]) * local;
}

Energy full_energy(const CompiledNet& net, const std::vector<Spin>& spins) {
  Energy e = net.constant();
  for (int i = 0; i < net.size(); ++i) {
    e += net.field(i) * spin_value(spins[i]);
    for (const auto& [j, w] : net.neighbors(i)) {
      if (j > i) e += w * spin_value(spins[i]) * spin_value(spins[j]);
    }
  }
  return e;
}

// Exact minimization over the figure's subcube with everything else held
// at its current value; overwrites the figure with a ground state chosen
// uniformly among all minima. Returns the new total energy.
Energy minimize_figure(const CompiledNet& net, std::vector<Spin>& spins,
                       Energy e, std::span<const int> figure, Rng& rng) {
  for (int v : figure) {
    if (spins[v] == Spin::Up) {
      e += flip_delta(net, spins, v);
      spins[v] = Spin::Down;
    }
  }
  Energy best = e;
  std::vector<std::uint64_t> best_masks{0};
  std::uint64_t mask = 0;
  const std::uint64_t total = std::uint64_t{1} << figure.size();
  for (std::uint64_t k = 1; k < total; ++k) {
    const int b = std::countr_zero(k);
    const int v = figure[b];
    e += flip_delta(net, spins, v);
    spins[v] = flipped(spins[v]);
    mask ^= std::uint64_t{1} << b;
    if (e < best) {
      best = e;
      best_masks.assign(1, mask);
    } else if (e == best) {
      best_masks.push_back(mask);
    }
  }
  std::sort(best_masks.begin(), best_masks.end());
  const std::uint64_t chosen = best_masks[rng.below(best_masks.size())];
  for (std::size_t b = 0; b < figure.size(); ++b) {
    const Spin want = spin_from_bit((chosen >> b) & 1u);
    const int v = figure[b];
    if (spins[v] != want) {
      e += flip_delta(net, spins, v);
      spins[v] = want;
    }
  }
  assert(e == best);
  return best;
}

// k distinct entries of `candidates`, ascending. Partial Fisher-Yates on a
// scratch copy.
std::vector<int> sample_distinct(const std::vector<int>& candidates,
                                 std::size_t k, Rng& rng) {
  std::vector<int> scratch = candidates;
  k = std::min(k, scratch.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(scratch.size() - i);
    std::swap(scratch[i], scratch[j]);
  }
  scratch.resize(k);
  std::sort(scratch.begin(), scratch.end());
  return scratch;
}

}  // namespace

std::vector<std::string> unsat_multiplier_figure(const KnuthNet& knet,
                                                 const Configuration& config,
                                                 Rng& rng,
                                                 std::size_t budget) {
  std::set<std::string> pool;
  for (const auto& [key, cell] : knet.cells) {
    if (cell_satisfied(cell, config)) continue;
    pool.insert(cell.a);
    pool.insert(cell.b);
    if (cell.c) pool.insert(*cell.c);
    if (cell.d) pool.insert(*cell.d);
    pool.insert(cell.e);
    pool.insert(cell.f);
  }
  std::vector<std::string> names(pool.begin(), pool.end());
  if (names.empty()) {
    // All cells locally satisfied: random-half fallback.
    const std::vector<std::string> all = knet.net.sorted_vertices();
    std::vector<int> indices(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) indices[i] = static_cast<int>(i);
    std::vector<std::string> out;
    for (int i : sample_distinct(indices, budget, rng)) out.push_back(all[i]);
    return out;
  }
  if (names.size() > budget) {
    std::vector<int> indices(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) indices[i] = static_cast<int>(i);
    std::vector<std::string> out;
    for (int i : sample_distinct(indices, budget, rng)) out.push_back(names[i]);
    return out;
  }
  return names;
}

RunOutcome local_update_run(const IsingNet& net, Energy target_energy,
                            const FigureStrategy& strategy,
                            long long max_updates, std::uint64_t seed,
                            int cap, const KnuthNet* context,
                            const Configuration* frozen,
                            const StepObserver& observer) {
  if (max_updates <= 0) {
    throw BudgetError("local update budget must be positive, got " +
                      std::to_string(max_updates));
  }
  if (strategy.kind == FigureKind::UnsatMultiplier) {
    if (context == nullptr) {
      throw DomainError(
          "unsat_multiplier figures need the owning knuth net as context");
    }
    if (context->net != net) {
      throw DomainError(
          "unsat_multiplier context does not match the net being solved");
    }
  }

  const CompiledNet compiled(net);
  const int n = compiled.size();

  std::vector<bool> is_frozen(n, false);
  if (frozen) {
    for (const auto& [v, unused] : frozen->values()) {
      is_frozen[compiled.index_of(v)] = true;
    }
  }
  std::vector<int> free_indices;
  for (int i = 0; i < n; ++i) {
    if (!is_frozen[i]) free_indices.push_back(i);
  }

  const std::size_t figure_budget = strategy.figure_size(free_indices.size());
  if (figure_budget > static_cast<std::size_t>(cap)) {
    throw EnumerationCapError("figure size " + std::to_string(figure_budget) +
                              " exceeds enumeration cap " +
                              std::to_string(cap));
  }

  const std::uint64_t effective_seed =
      strategy.rng_seed == 0 ? seed : Rng::derive(seed, strategy.rng_seed);
  Rng rng(effective_seed);

  std::vector<Spin> spins(n);
  for (int i = 0; i < n; ++i) {
    spins[i] = is_frozen[i] ? frozen->at(compiled.vertices()[i])
                            : spin_from_bit(rng.below(2));
  }
  Energy e = full_energy(compiled, spins);

  long long updates = 0;
  auto notify = [&] {
    if (observer) observer(LocalUpdateState{spins, e, updates});
  };
  notify();

  while (e != target_energy && updates < max_updates &&
         !free_indices.empty()) {
    std::vector<int> figure;
    if (strategy.kind == FigureKind::RandomHalf) {
      figure = sample_distinct(free_indices, figure_budget, rng);
    } else {
      Configuration current;
      for (int i = 0; i < n; ++i) current.set(compiled.vertices()[i], spins[i]);
      for (const auto& name :
           unsat_multiplier_figure(*context, current, rng, figure_budget)) {
        const int v = compiled.index_of(name);
        if (!is_frozen[v]) figure.push_back(v);
      }
      std::sort(figure.begin(), figure.end());
      if (figure.empty()) {
        figure = sample_distinct(free_indices, figure_budget, rng);
      }
    }
    e = minimize_figure(compiled, spins, e, figure, rng);
    ++updates;
    notify();
  }

  RunOutcome outcome;
  outcome.reached_ground = (e == target_energy);
  outcome.updates = updates;
  outcome.final_energy = e;
  std::map<std::string, Spin> values;
  for (int i = 0; i < n; ++i) values[compiled.vertices()[i]] = spins[i];
  outcome.final_config = Configuration(std::move(values));
  return outcome;
}

}  // namespace ising
