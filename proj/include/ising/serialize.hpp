#pragma once

#include <string>

#include "ising/algebra.hpp"
#include "ising/core.hpp"

namespace ising {

/// Net file schema: {"vertices": [...], "constant": n,
/// "fields": {id: n, ...}, "couplings": [[u, v, n], ...]} with u < v and
/// couplings sorted; only nonzero coefficients are written. All values are
/// integers and round-trip exactly. Unknown top-level keys are ignored on
/// input so callers can carry extra metadata alongside the net.
std::string net_to_json(const IsingNet& net);
IsingNet net_from_json(const std::string& text);

/// Glue spec schema: {"identify": [[left, right, merged], ...]}.
std::string glue_spec_to_json(const GlueSpec& spec);
GlueSpec glue_spec_from_json(const std::string& text);

}  // namespace ising
