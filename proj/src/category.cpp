#include "ising/category.hpp"

#include <algorithm>
#include <set>

namespace ising {

TableNet::TableNet(std::vector<std::string> sorted_vertices,
                   std::vector<Energy> energies)
    : vertices_(std::move(sorted_vertices)), energies_(std::move(energies)) {
  if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
      std::adjacent_find(vertices_.begin(), vertices_.end()) !=
          vertices_.end()) {
    throw DomainError("table net vertices must be sorted and distinct");
  }
  if (vertices_.size() >= 63 ||
      energies_.size() != (std::uint64_t{1} << vertices_.size())) {
    throw DomainError("table net needs exactly 2^|vertices| energies");
  }
}

std::vector<std::string> view_vertices(const NetView& view) {
  if (const auto* net = std::get_if<IsingNet>(&view)) {
    return net->sorted_vertices();
  }
  return std::get<TableNet>(view).vertices();
}

CompiledNet::Ground view_ground(const NetView& view, int cap) {
  if (const auto* net = std::get_if<IsingNet>(&view)) {
    return CompiledNet(*net).enumerate_ground(cap);
  }
  const TableNet& table = std::get<TableNet>(view);
  const int n = static_cast<int>(table.vertices().size());
  if (n > cap) {
    throw EnumerationCapError("net has " + std::to_string(n) +
                              " vertices, enumeration cap is " +
                              std::to_string(cap));
  }
  CompiledNet::Ground ground;
  ground.energy = table.energy_of_mask(0);
  ground.masks = {0};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const Energy e = table.energy_of_mask(mask);
    if (e < ground.energy) {
      ground.energy = e;
      ground.masks.assign(1, mask);
    } else if (e == ground.energy) {
      ground.masks.push_back(mask);
    }
  }
  return ground;
}

namespace {

// Bit positions in the target mask for each source vertex (sorted order).
std::vector<int> restriction_positions(
    const std::vector<std::string>& source_vertices,
    const std::vector<std::string>& target_vertices,
    const std::map<std::string, std::string>& map) {
  std::vector<int> positions;
  positions.reserve(source_vertices.size());
  for (const auto& sv : source_vertices) {
    auto it = map.find(sv);
    if (it == map.end()) {
      throw DomainError("vertex map misses source vertex '" + sv + "'");
    }
    auto pos = std::find(target_vertices.begin(), target_vertices.end(),
                         it->second);
    if (pos == target_vertices.end()) {
      throw DomainError("vertex map sends '" + sv + "' to unknown vertex '" +
                        it->second + "'");
    }
    positions.push_back(
        static_cast<int>(std::distance(target_vertices.begin(), pos)));
  }
  return positions;
}

std::uint64_t restrict_mask(std::uint64_t target_mask,
                            const std::vector<int>& positions) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if ((target_mask >> positions[k]) & 1u) out |= std::uint64_t{1} << k;
  }
  return out;
}

std::vector<std::uint64_t> restricted_ground_masks(
    const std::vector<std::string>& source_vertices, const NetView& target,
    const std::map<std::string, std::string>& map, int cap) {
  const std::vector<std::string> target_vertices = view_vertices(target);
  const std::vector<int> positions =
      restriction_positions(source_vertices, target_vertices, map);
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask : view_ground(target, cap).masks) {
    out.push_back(restrict_mask(mask, positions));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void validate_morphism_shape(const NetMorphism& candidate) {
  const std::vector<std::string> source = view_vertices(candidate.source);
  const std::vector<std::string> target = view_vertices(candidate.target);
  std::set<std::string> images;
  for (const auto& sv : source) {
    auto it = candidate.map.find(sv);
    if (it == candidate.map.end()) {
      throw DomainError("morphism map misses source vertex '" + sv + "'");
    }
    if (std::find(target.begin(), target.end(), it->second) == target.end()) {
      throw DomainError("morphism map sends '" + sv +
                        "' outside the target net");
    }
    if (!images.insert(it->second).second) {
      throw DomainError("morphism map is not injective at '" + it->second +
                        "'");
    }
  }
}

bool is_morphism(const NetMorphism& candidate, int cap) {
  validate_morphism_shape(candidate);
  const std::vector<std::string> source_vertices =
      view_vertices(candidate.source);
  const std::vector<std::uint64_t> source_ground =
      view_ground(candidate.source, cap).masks;
  for (std::uint64_t restricted : restricted_ground_masks(
           source_vertices, candidate.target, candidate.map, cap)) {
    if (!std::binary_search(source_ground.begin(), source_ground.end(),
                            restricted)) {
      return false;
    }
  }
  return true;
}

NetMorphism compose_morphisms(const NetMorphism& f, const NetMorphism& g) {
  NetMorphism out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [sv, mid] : f.map) {
    auto it = g.map.find(mid);
    if (it == g.map.end()) {
      throw DomainError("morphism composition: '" + mid +
                        "' has no image in the outer map");
    }
    out.map[sv] = it->second;
  }
  return out;
}

bool is_admissible(const Span& span, int cap) {
  const std::vector<std::string> apex_vertices = span.apex.sorted_vertices();
  const std::vector<std::uint64_t> apex_ground =
      CompiledNet(span.apex).enumerate_ground(cap).masks;
  const std::vector<std::uint64_t> from_left = restricted_ground_masks(
      apex_vertices, NetView{span.left}, span.left_leg, cap);
  const std::vector<std::uint64_t> from_right = restricted_ground_masks(
      apex_vertices, NetView{span.right}, span.right_leg, cap);
  for (std::uint64_t mask : apex_ground) {
    if (std::binary_search(from_left.begin(), from_left.end(), mask) &&
        std::binary_search(from_right.begin(), from_right.end(), mask)) {
      return true;
    }
  }
  return false;
}

GlueSpec span_glue_spec(const Span& span) {
  GlueSpec spec;
  for (const auto& v : span.apex.sorted_vertices()) {
    auto lit = span.left_leg.find(v);
    auto rit = span.right_leg.find(v);
    if (lit == span.left_leg.end() || rit == span.right_leg.end()) {
      throw DomainError("span legs miss apex vertex '" + v + "'");
    }
    spec.pairs.push_back(Identification{lit->second, rit->second, {}});
  }
  return spec;
}

std::optional<IsingNet> pushout(const Span& span, int cap) {
  if (!is_admissible(span, cap)) return std::nullopt;
  return glue(span.left, span.right, span_glue_spec(span));
}

TableNet fibration_net(const std::vector<std::string>& source_vertices,
                       const std::map<std::string, std::string>& map,
                       const IsingNet& target, int cap) {
  std::vector<std::string> sorted = source_vertices;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<std::uint64_t> ground_restrictions =
      restricted_ground_masks(sorted, NetView{target}, map, cap);
  const std::uint64_t total = std::uint64_t{1} << sorted.size();
  std::vector<Energy> energies(total, 1);
  for (std::uint64_t mask : ground_restrictions) energies[mask] = 0;
  return TableNet(std::move(sorted), std::move(energies));
}

}  // namespace ising
