#include "ising/knuth.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <json.hpp>
#include <limits>
#include <set>

#include "ising/gates.hpp"

namespace ising {

namespace {

std::string r_name(int i) { return "r." + std::to_string(i); }
std::string g_name(int j) { return "g." + std::to_string(j); }
std::string cell_name(char t, int i, int j) {
  return std::string(1, t) + "." + std::to_string(i) + "." + std::to_string(j);
}

struct UnionFind {
  std::map<std::string, std::string> parent;

  const std::string& find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) it = parent.emplace(x, x).first;
    if (it->second == x) return it->first;
    const std::string root = find(it->second);  // path compression
    it->second = root;
    return parent.find(x)->second;
  }

  void unite(const std::string& x, const std::string& y) {
    const std::string rx = find(x);
    const std::string ry = find(y);
    if (rx != ry) parent[ry] = rx;
  }
};

void validate_dims(const KnuthDims& dims) {
  if (dims.n < 1 || dims.m < 1) {
    throw DomainError("knuth dims must be at least 1 x 1, got " +
                      std::to_string(dims.n) + " x " + std::to_string(dims.m));
  }
}

}  // namespace

KnuthNet build_knuth(const KnuthDims& dims) {
  validate_dims(dims);
  const int n = dims.n;
  const int m = dims.m;

  // One union-find pass over the 6nm raw vertices plus the r/g symbols.
  UnionFind uf;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      uf.unite(r_name(i), cell_name('a', i, j));
      uf.unite(g_name(j), cell_name('b', i, j));
    }
  }
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i < n; ++i) {
      uf.unite(cell_name('c', i + 1, j), cell_name('e', i, j));
    }
  }
  for (int j = 1; j < m; ++j) {
    for (int i = 1; i < n; ++i) {
      uf.unite(cell_name('d', i, j + 1), cell_name('f', i + 1, j));
    }
    uf.unite(cell_name('e', n, j), cell_name('d', n, j + 1));
  }

  // Canonical class names: the r/g symbol when present, otherwise the
  // lexicographically earliest member.
  std::map<std::string, std::string> class_name;
  {
    std::map<std::string, std::vector<std::string>> members;
    std::vector<std::string> keys;
    for (const auto& [x, unused] : uf.parent) keys.push_back(x);
    for (const auto& x : keys) members[uf.find(x)].push_back(x);
    for (auto& [root, mem] : members) {
      std::string best;
      for (const auto& x : mem) {
        if (x[0] == 'r' || x[0] == 'g') {
          best = x;
          break;
        }
        if (best.empty() || x < best) best = x;
      }
      for (const auto& x : mem) class_name[x] = best;
    }
  }
  auto canon = [&class_name, &uf](const std::string& x) -> const std::string& {
    auto it = class_name.find(x);
    if (it == class_name.end()) {
      it = class_name.emplace(x, uf.find(x)).first;
    }
    return it->second;
  };

  // Materialize the glued form directly; couplings that collapse onto the
  // same merged pair accumulate, exactly as sequential gluing would.
  QuadraticForm form;
  const std::array<std::string, 6> unit_labels = {"a", "b", "c", "d", "e", "f"};
  const IsingNet unit = full_multiplier(unit_labels);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      std::map<std::string, std::string> rename;
      for (const auto& t : unit_labels) {
        rename[t] = canon(cell_name(t[0], i, j));
      }
      for (const auto& [v, a] : unit.form().fields()) {
        form.add_field(rename.at(v), a);
      }
      for (const auto& [key, b] : unit.form().couplings()) {
        form.add_coupling(rename.at(key.first), rename.at(key.second), b);
      }
    }
  }
  std::set<std::string> vertices;
  for (const auto& [x, name] : class_name) vertices.insert(name);
  IsingNet glued(std::move(vertices), std::move(form));

  // Initialization clamp: the unmatched carry-in of each row and the
  // accumulator inputs of the first row are pinned to zero.
  Configuration init;
  for (int j = 1; j <= m; ++j) init.set(canon(cell_name('c', 1, j)), Spin::Down);
  for (int i = 1; i <= n; ++i) init.set(canon(cell_name('d', i, 1)), Spin::Down);

  KnuthNet out;
  out.net = clamp(glued, init);
  out.dims = dims;

  const std::size_t expected = 2ull * n * m + n + m;
  if (out.net.size() != expected) {
    throw Error("knuth net construction audit failed: " +
                std::to_string(out.net.size()) + " vertices, expected " +
                std::to_string(expected));
  }

  for (int i = 1; i <= n; ++i) out.r_vertices.push_back(r_name(i));
  for (int j = 1; j <= m; ++j) out.g_vertices.push_back(g_name(j));

  // Product bits, most significant first:
  // e_{n,m}, f_{n,m}, ..., f_{1,m}, f_{1,m-1}, ..., f_{1,1}.
  out.product_vertices.push_back(canon(cell_name('e', n, m)));
  for (int i = n; i >= 1; --i) {
    out.product_vertices.push_back(canon(cell_name('f', i, m)));
  }
  for (int j = m - 1; j >= 1; --j) {
    out.product_vertices.push_back(canon(cell_name('f', 1, j)));
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      KnuthCell cell;
      cell.a = canon(cell_name('a', i, j));
      cell.b = canon(cell_name('b', i, j));
      if (i > 1) cell.c = canon(cell_name('c', i, j));
      if (j > 1) cell.d = canon(cell_name('d', i, j));
      cell.e = canon(cell_name('e', i, j));
      cell.f = canon(cell_name('f', i, j));
      out.cells[{i, j}] = std::move(cell);
    }
  }
  return out;
}

Program factoring_program(const KnuthNet& knet) {
  std::vector<std::string> outputs = knet.r_vertices;
  outputs.insert(outputs.end(), knet.g_vertices.begin(),
                 knet.g_vertices.end());
  return Program(knet.net, knet.product_vertices, std::move(outputs));
}

namespace {

std::pair<long long, long long> decode_factors(const KnuthNet& knet,
                                               const Configuration& state) {
  long long r = 0, g = 0;
  for (std::size_t i = 0; i < knet.r_vertices.size(); ++i) {
    r |= static_cast<long long>(spin_bit(state.at(knet.r_vertices[i]))) << i;
  }
  for (std::size_t j = 0; j < knet.g_vertices.size(); ++j) {
    g |= static_cast<long long>(spin_bit(state.at(knet.g_vertices[j]))) << j;
  }
  return {r, g};
}

Configuration product_clamp(const KnuthNet& knet, unsigned long long target) {
  const std::size_t bits = knet.product_vertices.size();
  if (bits < 64 && target >= (1ull << bits)) {
    throw DomainError("target " + std::to_string(target) +
                      " does not fit in " + std::to_string(bits) +
                      " product bits");
  }
  Configuration input;
  for (std::size_t k = 0; k < bits; ++k) {
    const int bit = static_cast<int>((target >> (bits - 1 - k)) & 1u);
    input.set(knet.product_vertices[k], spin_from_bit(bit));
  }
  return input;
}

FactoringOutcome factor_exact(const KnuthNet& knet, unsigned long long target,
                              const FactorOptions& options) {
  ExecutionResult result =
      execute(factoring_program(knet), product_clamp(knet, target),
              options.cap);
  FactoringOutcome outcome;
  outcome.achieved_energy = result.achieved_energy;
  if (result.achieved_energy == knet.ground_energy()) {
    outcome.status = FactorStatus::Factored;
    for (const auto& state : result.output_states) {
      outcome.factor_pairs.push_back(decode_factors(knet, state));
    }
    std::sort(outcome.factor_pairs.begin(), outcome.factor_pairs.end());
  } else {
    outcome.status = FactorStatus::Infeasible;
  }
  return outcome;
}

FactoringOutcome factor_local(const KnuthNet& knet, unsigned long long target,
                              const FactorOptions& options) {
  // The product bits stay frozen for the whole run; this is the clamped
  // minimization problem with whole-net vertex names, so cell heuristics
  // still see the grid.
  const Configuration input = product_clamp(knet, target);
  const Energy target_energy = knet.ground_energy();

  const int attempts = std::max(options.attempts, 1);
  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(attempts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t seed = Rng::derive(options.seed, 0x66616374u, attempt);
    futures.push_back(std::async(std::launch::async, [&, seed] {
      return local_update_run(knet.net, target_energy, options.strategy,
                              options.max_updates, seed, options.cap, &knet,
                              &input);
    }));
  }

  FactoringOutcome outcome;
  outcome.status = FactorStatus::BudgetExhausted;
  outcome.achieved_energy = std::numeric_limits<Energy>::max();
  std::set<std::pair<long long, long long>> pairs;
  for (auto& f : futures) {
    RunOutcome run = f.get();
    outcome.achieved_energy =
        std::min(outcome.achieved_energy, run.final_energy);
    if (run.reached_ground) {
      outcome.status = FactorStatus::Factored;
      pairs.insert(decode_factors(knet, run.final_config));
    }
  }
  outcome.factor_pairs.assign(pairs.begin(), pairs.end());
  return outcome;
}

}  // namespace

FactoringOutcome factor(unsigned long long target, const KnuthDims& dims,
                        const FactorOptions& options) {
  const KnuthNet knet = build_knuth(dims);
  switch (options.backend) {
    case FactorBackend::Exact:
      return factor_exact(knet, target, options);
    case FactorBackend::LocalUpdate:
      return factor_local(knet, target, options);
  }
  throw DomainError("unknown factor backend");
}

std::string factoring_outcome_to_json(const FactoringOutcome& outcome) {
  nlohmann::ordered_json doc;
  switch (outcome.status) {
    case FactorStatus::Factored:
      doc["status"] = "factored";
      break;
    case FactorStatus::Infeasible:
      doc["status"] = "infeasible";
      break;
    case FactorStatus::BudgetExhausted:
      doc["status"] = "budget_exhausted";
      break;
  }
  doc["energy"] = outcome.achieved_energy;
  doc["pairs"] = nlohmann::ordered_json::array();
  for (const auto& [r, g] : outcome.factor_pairs) {
    doc["pairs"].push_back(nlohmann::ordered_json::array({r, g}));
  }
  return doc.dump(2) + "\n";
}

KnuthDims general_dims(int p) {
  if (p < 3) {
    throw TrivialSizeError("general factoring dims need p >= 3 bits, got " +
                           std::to_string(p));
  }
  return KnuthDims{p / 2, p - 2};
}

bool cell_satisfied(const KnuthCell& cell, const Configuration& config) {
  const int a = spin_bit(config.at(cell.a));
  const int b = spin_bit(config.at(cell.b));
  const int c = cell.c ? spin_bit(config.at(*cell.c)) : 0;
  const int d = cell.d ? spin_bit(config.at(*cell.d)) : 0;
  const int e = spin_bit(config.at(cell.e));
  const int f = spin_bit(config.at(cell.f));
  return a * b + c + d == 2 * e + f;
}

std::vector<std::pair<int, int>> unsatisfied_cells(const KnuthNet& knet,
                                                   const Configuration& config) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, cell] : knet.cells) {
    if (!cell_satisfied(cell, config)) out.push_back(key);
  }
  return out;
}

}  // namespace ising
