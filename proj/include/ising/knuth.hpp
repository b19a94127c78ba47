#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ising/algebra.hpp"
#include "ising/core.hpp"
#include "ising/solver.hpp"

namespace ising {

/// Requested factor widths are below the smallest useful size.
struct TrivialSizeError : Error {
  using Error::Error;
};

/// Grid dimensions: n bits for factor r (columns), m bits for factor g
/// (rows).
struct KnuthDims {
  int n = 1;
  int m = 1;

  friend bool operator==(const KnuthDims&, const KnuthDims&) = default;
};

/// Post-identification vertex ids of one multiplier cell. `c` and `d` are
/// absent for cells whose carry-in or accumulator-in is pinned Down by the
/// initialization clamp.
struct KnuthCell {
  std::string a;
  std::string b;
  std::optional<std::string> c;
  std::optional<std::string> d;
  std::string e;
  std::string f;
};

/// An n x m grid of full multipliers wired into binary long multiplication.
///
/// Ground states are exactly the triples (r, g, r*g) with r < 2^n and
/// g < 2^m; the ground energy is -15*n*m and the vertex count 2nm + n + m.
struct KnuthNet {
  IsingNet net;
  KnuthDims dims;
  std::vector<std::string> r_vertices;        ///< r.1 .. r.n, least significant first
  std::vector<std::string> g_vertices;        ///< g.1 .. g.m, least significant first
  std::vector<std::string> product_vertices;  ///< m+n product bits, big-endian
  std::map<std::pair<int, int>, KnuthCell> cells;  ///< key (i, j), 1-based

  Energy ground_energy() const { return Energy{-15} * dims.n * dims.m; }
};

/// Builds the multiplication net for the given dims. Cells are glued by a
/// single union-find pass over the 6nm raw cell vertices:
///   - all a_{i,j} become r_i and all b_{i,j} become g_j;
///   - carry chains along each row: c_{i+1,j} = e_{i,j} for i < n;
///   - partial-sum shifts between rows: d_{i,j+1} = f_{i+1,j} for i < n,
///     j < m, and d_{n,j+1} = e_{n,j} for j < m;
///   - finally the unmatched inputs c_{1,j} and d_{i,1} are clamped Down
///     (registers initialized to zero).
/// Merged vertices take the lexicographically earliest member name, except
/// that r/g classes use their symbol names.
KnuthNet build_knuth(const KnuthDims& dims);

/// The multiplication program read backwards: inputs are the product bits
/// (big-endian), outputs are the factor bits.
Program factoring_program(const KnuthNet& knet);

enum class FactorStatus {
  Factored,         ///< ground energy reached; factor_pairs lists all (r, g)
  Infeasible,       ///< exact search proved no factorization at these widths
  BudgetExhausted,  ///< local-update search gave out; nothing is proved
};

struct FactoringOutcome {
  FactorStatus status = FactorStatus::Infeasible;
  Energy achieved_energy = 0;
  std::vector<std::pair<long long, long long>> factor_pairs;  ///< sorted (r, g)
};

/// JSON rendering with keys `status`, `energy`, `pairs`.
std::string factoring_outcome_to_json(const FactoringOutcome& outcome);

enum class FactorBackend { Exact, LocalUpdate };

struct FactorOptions {
  FactorBackend backend = FactorBackend::Exact;
  int cap = kDefaultEnumerationCap;
  /// Local-update backend only:
  FigureStrategy strategy;
  long long max_updates = 100000;
  std::uint64_t seed = 0;
  int attempts = 4;  ///< independently seeded runs; successes are merged
};

/// Clamps `target` (big-endian) onto the product bits and searches for
/// ground states of the clamped net. The exact backend decides feasibility;
/// the local-update backend reports BudgetExhausted instead of guessing.
FactoringOutcome factor(unsigned long long target, const KnuthDims& dims,
                        const FactorOptions& options = {});

/// Dims able to factor any composite p-bit number: floor(p/2) by p - 2.
/// The resulting net has O(p^2) spins.
KnuthDims general_dims(int p);

/// True iff the cell's six spins satisfy ab + c + d = 2e + f as bits.
/// Clamped inputs count as 0. `config` must assign the cell's vertices.
bool cell_satisfied(const KnuthCell& cell, const Configuration& config);

/// Cells violating their local relation, in row-major (i, j) order.
std::vector<std::pair<int, int>> unsatisfied_cells(const KnuthNet& knet,
                                                   const Configuration& config);

}  // namespace ising
