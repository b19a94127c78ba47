#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ising/core.hpp"

namespace ising {

/// Invalid glue specification (unknown vertex, repeated endpoint, ...).
struct GlueSpecError : Error {
  using Error::Error;
};

/// Distinct vertex ids collide after the glue renaming.
struct VertexCollisionError : Error {
  using Error::Error;
};

/// A partial configuration or program subset references a foreign vertex.
struct BadSubsetError : Error {
  using Error::Error;
};

/// compose() was asked to join programs whose nets share no ground state
/// on the identified overlap.
struct IncompatibleProgramsError : Error {
  using Error::Error;
};

/// One identified pair of vertices: `left` in the left net becomes one
/// vertex with `right` in the right net, named `merged` (left id by default).
struct Identification {
  std::string left;
  std::string right;
  std::optional<std::string> merged;

  const std::string& merged_name() const { return merged ? *merged : left; }

  friend bool operator==(const Identification&, const Identification&) = default;
};

/// The overlap along which two nets are glued. Each left vertex and each
/// right vertex may appear in at most one identification.
struct GlueSpec {
  std::vector<Identification> pairs;

  friend bool operator==(const GlueSpec&, const GlueSpec&) = default;
};

/// Glues two nets along the identified overlap: the vertex sets are merged,
/// and constants, fields, and couplings add coefficient-wise. The result is
/// 2-local by construction. Non-identified ids must be disjoint after
/// renaming; violations raise VertexCollisionError.
IsingNet glue(const IsingNet& left, const IsingNet& right,
              const GlueSpec& spec);

/// Fixes the spins named by `partial` and folds their contribution into the
/// remaining net's constant and fields. For every completion t of the
/// remaining vertices, energy(clamp(net, s), t) == energy(net, <s, t>).
IsingNet clamp(const IsingNet& net, const Configuration& partial);

/// True iff some ground state of `left` and some ground state of `right`
/// agree on the identified overlap. Decided by exhaustive enumeration of
/// both nets; fails loudly above the cap rather than sampling.
bool compatible(const IsingNet& left, const IsingNet& right,
                const GlueSpec& spec, int cap = kDefaultEnumerationCap);

/// An (input set, output set) pair over a net. The sets may overlap; the
/// direction is a bookkeeping choice, not a property of the net.
class Program {
 public:
  Program() = default;
  Program(IsingNet net, std::vector<std::string> inputs,
          std::vector<std::string> outputs);

  const IsingNet& net() const { return net_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  IsingNet net_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

struct ExecutionResult {
  /// Ground energy of the input-clamped net. Equals the full-net energy of
  /// every state in `full_states`; when it exceeds a known ground bound the
  /// input is incompatible with every net ground state.
  Energy achieved_energy = 0;
  /// Minimizing completions recombined with the input (total on the net).
  std::vector<Configuration> full_states;
  /// Restrictions of full_states to the output set, deduplicated.
  std::vector<Configuration> output_states;
};

/// Clamps the program's inputs to `input`, minimizes the rest exhaustively,
/// and reads the outputs. `input` must assign exactly the input set.
ExecutionResult execute(const Program& program, const Configuration& input,
                        int cap = kDefaultEnumerationCap);

/// Composes p:(S,T) with q:(T,U) along a glue spec that identifies p's
/// outputs with inputs of q. Refuses incompatible programs. Inputs of q
/// that are not identified join the composite input set.
Program compose(const Program& p, const Program& q, const GlueSpec& spec,
                int cap = kDefaultEnumerationCap);

}  // namespace ising
