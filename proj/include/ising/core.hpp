#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ising {

/// Exact integer energy. All coefficients and energies in this library are
/// integers; nets are audited at construction so that no configuration sum
/// can overflow this type (see IsingNet).
using Energy = long long;

/// Default ceiling on exhaustive enumeration (2^26 evaluations).
inline constexpr int kDefaultEnumerationCap = 26;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configuration is missing a net vertex or mentions a foreign one.
struct TotalAssignmentError : Error {
  using Error::Error;
};

/// A brute-force request exceeds the configured enumeration cap.
struct EnumerationCapError : Error {
  using Error::Error;
};

/// Coefficients too large for exact evaluation in Energy.
struct OverflowError : Error {
  using Error::Error;
};

/// Malformed serialized data.
struct FormatError : Error {
  using Error::Error;
};

/// Invalid argument at the domain level (bad dims, out-of-range target, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Spin orientation; Down evaluates to -1 and Up to +1.
enum class Spin : int { Down = -1, Up = +1 };

constexpr int spin_value(Spin s) { return static_cast<int>(s); }

/// Bit convention used everywhere: 0 <-> Down <-> -1, 1 <-> Up <-> +1.
constexpr int spin_bit(Spin s) { return s == Spin::Up ? 1 : 0; }
constexpr Spin spin_from_bit(int bit) { return bit ? Spin::Up : Spin::Down; }

Spin flipped(Spin s);

/// Total or partial assignment of spins to named vertices.
///
/// Vertices are identified by strings; the map is kept sorted by id, which
/// is also the canonical enumeration order (first vertex = lowest mask bit).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::map<std::string, Spin> values)
      : values_(std::move(values)) {}

  /// Decodes a bit mask over `sorted_vertices` (bit k belongs to vertex k).
  static Configuration from_mask(const std::vector<std::string>& sorted_vertices,
                                 std::uint64_t mask);

  void set(const std::string& vertex, Spin s) { values_[vertex] = s; }
  Spin at(const std::string& vertex) const;
  bool contains(const std::string& vertex) const {
    return values_.count(vertex) != 0;
  }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::map<std::string, Spin>& values() const { return values_; }

  /// Keeps only the given vertices; each must be present.
  Configuration restricted_to(const std::vector<std::string>& vertices) const;

  /// Union of two assignments; overlapping vertices must agree.
  Configuration combined_with(const Configuration& other) const;

  /// Global spin flip.
  Configuration flipped() const;

  std::uint64_t mask_over(const std::vector<std::string>& sorted_vertices) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::map<std::string, Spin> values_;
};

/// 2-local energy function: constant + per-vertex fields + couplings on
/// unordered pairs of distinct vertices. Zero coefficients are not stored,
/// so equal forms compare equal; pair keys are kept with first < second.
class QuadraticForm {
 public:
  using PairKey = std::pair<std::string, std::string>;

  Energy constant() const { return constant_; }
  void set_constant(Energy value) { constant_ = value; }
  void add_constant(Energy value) { constant_ += value; }

  Energy field(const std::string& vertex) const;
  void set_field(const std::string& vertex, Energy value);
  void add_field(const std::string& vertex, Energy value);

  Energy coupling(const std::string& u, const std::string& v) const;
  void set_coupling(const std::string& u, const std::string& v, Energy value);
  void add_coupling(const std::string& u, const std::string& v, Energy value);

  const std::map<std::string, Energy>& fields() const { return fields_; }
  const std::map<PairKey, Energy>& couplings() const { return couplings_; }

  /// Every vertex mentioned by a nonzero field or coupling.
  std::set<std::string> referenced_vertices() const;

  /// |constant| + sum of |field| + sum of |coupling|: a bound on |energy|
  /// over every configuration.
  unsigned long long coefficient_reach() const;

  static PairKey make_pair_key(const std::string& u, const std::string& v);

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  Energy constant_ = 0;
  std::map<std::string, Energy> fields_;
  std::map<PairKey, Energy> couplings_;
};

/// A named vertex set with a 2-local energy function over it.
///
/// Immutable after construction and safe to share across threads. The
/// constructor checks that the form only references net vertices and that
/// worst-case energies fit in Energy exactly.
class IsingNet {
 public:
  IsingNet() = default;
  IsingNet(std::set<std::string> vertices, QuadraticForm form);

  const std::set<std::string>& vertices() const { return vertices_; }
  const QuadraticForm& form() const { return form_; }
  std::size_t size() const { return vertices_.size(); }
  bool has_vertex(const std::string& v) const { return vertices_.count(v) != 0; }

  /// Vertex ids in canonical (sorted) order; index = mask bit position.
  std::vector<std::string> sorted_vertices() const;

  friend bool operator==(const IsingNet&, const IsingNet&) = default;

 private:
  std::set<std::string> vertices_;
  QuadraticForm form_;
};

/// Exact energy of a total configuration:
/// gamma + sum_i alpha_i s(i) + sum_{i<j} beta_{ij} s(i) s(j).
Energy energy(const IsingNet& net, const Configuration& config);

struct GroundSolution {
  Energy energy = 0;
  /// All minimizing configurations, in ascending canonical-mask order.
  std::vector<Configuration> states;
};

/// Exhaustive minimization over all 2^|vertices| configurations.
/// Throws EnumerationCapError when the net is larger than `cap`.
GroundSolution ground_energy_and_states(const IsingNet& net,
                                        int cap = kDefaultEnumerationCap);

/// Index-compiled view of a net for mask-based evaluation and Gray-code
/// enumeration. Vertex k is the k-th id in sorted order.
class CompiledNet {
 public:
  explicit CompiledNet(const IsingNet& net);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  int index_of(const std::string& vertex) const;

  Energy constant() const { return constant_; }
  Energy field(int vertex) const { return fields_[vertex]; }
  const std::vector<std::pair<int, Energy>>& neighbors(int vertex) const {
    return adjacency_[vertex];
  }

  /// Energy of the configuration encoded by `mask` (bit k set = vertex k Up).
  Energy energy_of_mask(std::uint64_t mask) const;

  struct Ground {
    Energy energy = 0;
    std::vector<std::uint64_t> masks;  // ascending
  };

  /// Gray-code sweep over all 2^size configurations; collects every minimum.
  Ground enumerate_ground(int cap = kDefaultEnumerationCap) const;

 private:
  std::vector<std::string> vertices_;
  std::map<std::string, int> index_;
  Energy constant_ = 0;
  std::vector<Energy> fields_;
  std::vector<std::vector<std::pair<int, Energy>>> adjacency_;
};

}  // namespace ising
