#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ising/algebra.hpp"
#include "ising/core.hpp"

namespace ising {

/// Net with an explicit energy table instead of a quadratic form. Only the
/// checks in this header need it: the fibration construction produces 0/1
/// indicator energies, which are not 2-local in general.
class TableNet {
 public:
  TableNet() = default;
  /// `energies[mask]` is the energy of the configuration encoded by mask
  /// over the sorted vertex list; must have exactly 2^|vertices| entries.
  TableNet(std::vector<std::string> sorted_vertices,
           std::vector<Energy> energies);

  const std::vector<std::string>& vertices() const { return vertices_; }
  Energy energy_of_mask(std::uint64_t mask) const { return energies_.at(mask); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Energy> energies_;
};

/// Either energy representation; every check below works on both.
using NetView = std::variant<IsingNet, TableNet>;

std::vector<std::string> view_vertices(const NetView& view);

/// Ground energy and all minimizing masks (ascending) of either view.
CompiledNet::Ground view_ground(const NetView& view,
                                int cap = kDefaultEnumerationCap);

/// A candidate morphism: an injective vertex map from source to target.
/// Whether it actually is a morphism (restriction along the map carries
/// every target ground state to a source ground state) is decided by
/// is_morphism.
struct NetMorphism {
  NetView source;
  NetView target;
  std::map<std::string, std::string> map;  ///< source vertex -> target vertex
};

/// Checks injectivity and that the map covers source vertices with target
/// vertices; throws DomainError otherwise.
void validate_morphism_shape(const NetMorphism& candidate);

/// True iff every ground state of the target restricts (along the map) to
/// a ground state of the source. Exhaustive.
bool is_morphism(const NetMorphism& candidate,
                 int cap = kDefaultEnumerationCap);

/// Composite candidate g . f (f: A -> B, g: B -> C).
NetMorphism compose_morphisms(const NetMorphism& f, const NetMorphism& g);

/// Two quadratic nets seen through a common apex of shared vertices.
struct Span {
  IsingNet apex;
  IsingNet left;
  IsingNet right;
  std::map<std::string, std::string> left_leg;   ///< apex vertex -> left vertex
  std::map<std::string, std::string> right_leg;  ///< apex vertex -> right vertex
};

/// True iff some apex ground state is simultaneously the restriction of a
/// left ground state and of a right ground state.
bool is_admissible(const Span& span, int cap = kDefaultEnumerationCap);

/// Gluing induced by the legs (left vertex identified with right vertex
/// whenever both are images of one apex vertex), or nothing when the span
/// is not admissible. Non-admissibility is an answer, not an error.
std::optional<IsingNet> pushout(const Span& span,
                                int cap = kDefaultEnumerationCap);

/// The induced glue spec itself, for comparing pushout() against glue().
GlueSpec span_glue_spec(const Span& span);

/// Reindexing along an injection f: B -> vertices(target): the table net on
/// B whose energy is 0 on restrictions of target ground states and 1
/// elsewhere. f is then a morphism from the result to the target, with the
/// largest possible ground set.
TableNet fibration_net(const std::vector<std::string>& source_vertices,
                       const std::map<std::string, std::string>& map,
                       const IsingNet& target,
                       int cap = kDefaultEnumerationCap);

}  // namespace ising
