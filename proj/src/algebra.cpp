#include "ising/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ising {

namespace {

void validate_spec(const IsingNet& left, const IsingNet& right,
                   const GlueSpec& spec) {
  std::set<std::string> seen_left, seen_right, seen_merged;
  for (const auto& id : spec.pairs) {
    if (!left.has_vertex(id.left)) {
      throw GlueSpecError("glue spec names '" + id.left +
                          "' which is not a left-net vertex");
    }
    if (!right.has_vertex(id.right)) {
      throw GlueSpecError("glue spec names '" + id.right +
                          "' which is not a right-net vertex");
    }
    if (!seen_left.insert(id.left).second) {
      throw GlueSpecError("left vertex '" + id.left + "' identified twice");
    }
    if (!seen_right.insert(id.right).second) {
      throw GlueSpecError("right vertex '" + id.right + "' identified twice");
    }
    if (!seen_merged.insert(id.merged_name()).second) {
      throw VertexCollisionError("merged vertex id '" + id.merged_name() +
                                 "' produced by two identifications");
    }
  }
}

// Renaming maps for both sides, with collision checks on the union.
struct Renaming {
  std::map<std::string, std::string> left;
  std::map<std::string, std::string> right;
};

Renaming build_renaming(const IsingNet& left, const IsingNet& right,
                        const GlueSpec& spec) {
  Renaming ren;
  for (const auto& v : left.vertices()) ren.left[v] = v;
  for (const auto& v : right.vertices()) ren.right[v] = v;
  for (const auto& id : spec.pairs) {
    ren.left[id.left] = id.merged_name();
    ren.right[id.right] = id.merged_name();
  }

  std::set<std::string> merged_names;
  for (const auto& id : spec.pairs) merged_names.insert(id.merged_name());

  // Each final id must have exactly one origin per side, and an id shared
  // by both sides must come from an identification.
  std::map<std::string, int> left_count, right_count;
  for (const auto& [from, to] : ren.left) ++left_count[to];
  for (const auto& [from, to] : ren.right) ++right_count[to];
  for (const auto& [to, c] : left_count) {
    if (c > 1) {
      throw VertexCollisionError("left-net ids collide on '" + to +
                                 "' after renaming");
    }
  }
  for (const auto& [to, c] : right_count) {
    if (c > 1) {
      throw VertexCollisionError("right-net ids collide on '" + to +
                                 "' after renaming");
    }
  }
  for (const auto& [to, c] : left_count) {
    if (right_count.count(to) && !merged_names.count(to)) {
      throw VertexCollisionError("vertex id '" + to +
                                 "' appears in both nets without being "
                                 "identified");
    }
  }
  return ren;
}

void add_renamed(QuadraticForm& target, const QuadraticForm& source,
                 const std::map<std::string, std::string>& ren) {
  target.add_constant(source.constant());
  for (const auto& [v, a] : source.fields()) target.add_field(ren.at(v), a);
  for (const auto& [key, b] : source.couplings()) {
    target.add_coupling(ren.at(key.first), ren.at(key.second), b);
  }
}

std::vector<std::uint64_t> overlap_masks(const IsingNet& net,
                                         const std::vector<std::string>& overlap,
                                         int cap) {
  CompiledNet compiled(net);
  CompiledNet::Ground ground = compiled.enumerate_ground(cap);
  std::vector<int> positions;
  positions.reserve(overlap.size());
  for (const auto& v : overlap) positions.push_back(compiled.index_of(v));
  std::vector<std::uint64_t> out;
  out.reserve(ground.masks.size());
  for (std::uint64_t mask : ground.masks) {
    std::uint64_t restricted = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if ((mask >> positions[k]) & 1u) restricted |= std::uint64_t{1} << k;
    }
    out.push_back(restricted);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

IsingNet glue(const IsingNet& left, const IsingNet& right,
              const GlueSpec& spec) {
  validate_spec(left, right, spec);
  Renaming ren = build_renaming(left, right, spec);

  std::set<std::string> vertices;
  for (const auto& [from, to] : ren.left) vertices.insert(to);
  for (const auto& [from, to] : ren.right) vertices.insert(to);

  QuadraticForm form;
  add_renamed(form, left.form(), ren.left);
  add_renamed(form, right.form(), ren.right);
  return IsingNet(std::move(vertices), std::move(form));
}

IsingNet clamp(const IsingNet& net, const Configuration& partial) {
  for (const auto& [v, unused] : partial.values()) {
    if (!net.has_vertex(v)) {
      throw BadSubsetError("clamp references unknown vertex '" + v + "'");
    }
  }
  auto clamped_value = [&partial](const std::string& v) -> int {
    return partial.contains(v) ? spin_value(partial.at(v)) : 0;
  };

  std::set<std::string> vertices;
  for (const auto& v : net.vertices()) {
    if (!partial.contains(v)) vertices.insert(v);
  }

  const QuadraticForm& old = net.form();
  QuadraticForm form;
  form.set_constant(old.constant());
  for (const auto& [v, a] : old.fields()) {
    if (int s = clamped_value(v); s != 0) {
      form.add_constant(a * s);
    } else {
      form.add_field(v, a);
    }
  }
  for (const auto& [key, b] : old.couplings()) {
    const int su = clamped_value(key.first);
    const int sv = clamped_value(key.second);
    if (su != 0 && sv != 0) {
      form.add_constant(b * su * sv);
    } else if (su != 0) {
      form.add_field(key.second, b * su);
    } else if (sv != 0) {
      form.add_field(key.first, b * sv);
    } else {
      form.add_coupling(key.first, key.second, b);
    }
  }
  return IsingNet(std::move(vertices), std::move(form));
}

bool compatible(const IsingNet& left, const IsingNet& right,
                const GlueSpec& spec, int cap) {
  validate_spec(left, right, spec);
  std::vector<std::string> left_overlap, right_overlap;
  for (const auto& id : spec.pairs) {
    left_overlap.push_back(id.left);
    right_overlap.push_back(id.right);
  }
  std::vector<std::uint64_t> lhs = overlap_masks(left, left_overlap, cap);
  std::vector<std::uint64_t> rhs = overlap_masks(right, right_overlap, cap);
  std::vector<std::uint64_t> both;
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                        std::back_inserter(both));
  return !both.empty();
}

Program::Program(IsingNet net, std::vector<std::string> inputs,
                 std::vector<std::string> outputs)
    : net_(std::move(net)), inputs_(std::move(inputs)),
      outputs_(std::move(outputs)) {
  auto check = [this](const std::vector<std::string>& subset,
                      const char* what) {
    std::set<std::string> seen;
    for (const auto& v : subset) {
      if (!net_.has_vertex(v)) {
        throw BadSubsetError(std::string(what) + " vertex '" + v +
                             "' is not in the net");
      }
      if (!seen.insert(v).second) {
        throw BadSubsetError(std::string(what) + " vertex '" + v +
                             "' listed twice");
      }
    }
  };
  check(inputs_, "input");
  check(outputs_, "output");
}

ExecutionResult execute(const Program& program, const Configuration& input,
                        int cap) {
  if (input.size() != program.inputs().size()) {
    throw TotalAssignmentError("execution input assigns " +
                               std::to_string(input.size()) +
                               " vertices, program has " +
                               std::to_string(program.inputs().size()) +
                               " inputs");
  }
  for (const auto& v : program.inputs()) {
    if (!input.contains(v)) {
      throw TotalAssignmentError("execution input misses vertex '" + v + "'");
    }
  }

  IsingNet clamped = clamp(program.net(), input);
  GroundSolution ground = ground_energy_and_states(clamped, cap);

  ExecutionResult result;
  result.achieved_energy = ground.energy;
  result.full_states.reserve(ground.states.size());
  std::set<Configuration> outputs;
  for (const auto& completion : ground.states) {
    Configuration full = completion.combined_with(input);
    outputs.insert(full.restricted_to(program.outputs()));
    result.full_states.push_back(std::move(full));
  }
  result.output_states.assign(outputs.begin(), outputs.end());
  return result;
}

Program compose(const Program& p, const Program& q, const GlueSpec& spec,
                int cap) {
  std::set<std::string> identified_left, identified_right;
  for (const auto& id : spec.pairs) {
    identified_left.insert(id.left);
    identified_right.insert(id.right);
  }
  std::set<std::string> p_outputs(p.outputs().begin(), p.outputs().end());
  if (identified_left != p_outputs) {
    throw GlueSpecError(
        "composition spec must identify exactly the first program's outputs");
  }
  std::set<std::string> q_inputs(q.inputs().begin(), q.inputs().end());
  for (const auto& v : identified_right) {
    if (!q_inputs.count(v)) {
      throw GlueSpecError("composition spec identifies '" + v +
                          "' which is not an input of the second program");
    }
  }
  if (!compatible(p.net(), q.net(), spec, cap)) {
    throw IncompatibleProgramsError(
        "programs have no ground states agreeing on the identified overlap");
  }

  std::map<std::string, std::string> ren_left, ren_right;
  for (const auto& v : p.net().vertices()) ren_left[v] = v;
  for (const auto& v : q.net().vertices()) ren_right[v] = v;
  for (const auto& id : spec.pairs) {
    ren_left[id.left] = id.merged_name();
    ren_right[id.right] = id.merged_name();
  }

  std::vector<std::string> inputs;
  std::set<std::string> seen;
  for (const auto& v : p.inputs()) {
    const std::string& name = ren_left.at(v);
    if (seen.insert(name).second) inputs.push_back(name);
  }
  for (const auto& v : q.inputs()) {
    if (identified_right.count(v)) continue;
    const std::string& name = ren_right.at(v);
    if (seen.insert(name).second) inputs.push_back(name);
  }
  std::vector<std::string> outputs;
  outputs.reserve(q.outputs().size());
  for (const auto& v : q.outputs()) outputs.push_back(ren_right.at(v));

  return Program(glue(p.net(), q.net(), spec), std::move(inputs),
                 std::move(outputs));
}

}  // namespace ising
