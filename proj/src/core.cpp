#include "ising/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ising {

namespace {

// Worst-case |energy| must stay clear of Energy's range; Gray-code deltas
// take one more factor of 4.
constexpr unsigned long long kReachLimit = 1ull << 60;

unsigned long long abs_ull(Energy v) {
  return v < 0 ? -static_cast<unsigned long long>(v)
               : static_cast<unsigned long long>(v);
}

}  // namespace

Spin flipped(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }

Configuration Configuration::from_mask(
    const std::vector<std::string>& sorted_vertices, std::uint64_t mask) {
  Configuration config;
  for (std::size_t k = 0; k < sorted_vertices.size(); ++k) {
    config.set(sorted_vertices[k], spin_from_bit((mask >> k) & 1u));
  }
  return config;
}

Spin Configuration::at(const std::string& vertex) const {
  auto it = values_.find(vertex);
  if (it == values_.end()) {
    throw TotalAssignmentError("configuration has no vertex '" + vertex + "'");
  }
  return it->second;
}

Configuration Configuration::restricted_to(
    const std::vector<std::string>& vertices) const {
  Configuration out;
  for (const auto& v : vertices) out.set(v, at(v));
  return out;
}

Configuration Configuration::combined_with(const Configuration& other) const {
  Configuration out = *this;
  for (const auto& [v, s] : other.values_) {
    auto it = out.values_.find(v);
    if (it != out.values_.end() && it->second != s) {
      throw TotalAssignmentError("conflicting assignments for vertex '" + v +
                                 "'");
    }
    out.values_[v] = s;
  }
  return out;
}

Configuration Configuration::flipped() const {
  Configuration out;
  for (const auto& [v, s] : values_) out.set(v, ising::flipped(s));
  return out;
}

std::uint64_t Configuration::mask_over(
    const std::vector<std::string>& sorted_vertices) const {
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < sorted_vertices.size(); ++k) {
    if (at(sorted_vertices[k]) == Spin::Up) mask |= std::uint64_t{1} << k;
  }
  return mask;
}

QuadraticForm::PairKey QuadraticForm::make_pair_key(const std::string& u,
                                                    const std::string& v) {
  if (u == v) {
    throw DomainError("self-coupling on vertex '" + u + "' is not 2-local");
  }
  return u < v ? PairKey{u, v} : PairKey{v, u};
}

Energy QuadraticForm::field(const std::string& vertex) const {
  auto it = fields_.find(vertex);
  return it == fields_.end() ? 0 : it->second;
}

void QuadraticForm::set_field(const std::string& vertex, Energy value) {
  if (value == 0) {
    fields_.erase(vertex);
  } else {
    fields_[vertex] = value;
  }
}

void QuadraticForm::add_field(const std::string& vertex, Energy value) {
  set_field(vertex, field(vertex) + value);
}

Energy QuadraticForm::coupling(const std::string& u,
                               const std::string& v) const {
  auto it = couplings_.find(make_pair_key(u, v));
  return it == couplings_.end() ? 0 : it->second;
}

void QuadraticForm::set_coupling(const std::string& u, const std::string& v,
                                 Energy value) {
  PairKey key = make_pair_key(u, v);
  if (value == 0) {
    couplings_.erase(key);
  } else {
    couplings_[key] = value;
  }
}

void QuadraticForm::add_coupling(const std::string& u, const std::string& v,
                                 Energy value) {
  set_coupling(u, v, coupling(u, v) + value);
}

std::set<std::string> QuadraticForm::referenced_vertices() const {
  std::set<std::string> out;
  for (const auto& [v, unused] : fields_) out.insert(v);
  for (const auto& [key, unused] : couplings_) {
    out.insert(key.first);
    out.insert(key.second);
  }
  return out;
}

unsigned long long QuadraticForm::coefficient_reach() const {
  unsigned long long reach = abs_ull(constant_);
  for (const auto& [v, a] : fields_) reach += abs_ull(a);
  for (const auto& [key, b] : couplings_) reach += abs_ull(b);
  return reach;
}

IsingNet::IsingNet(std::set<std::string> vertices, QuadraticForm form)
    : vertices_(std::move(vertices)), form_(std::move(form)) {
  for (const auto& v : form_.referenced_vertices()) {
    if (!vertices_.count(v)) {
      throw DomainError("energy form references vertex '" + v +
                        "' which is not in the net");
    }
  }
  if (form_.coefficient_reach() > kReachLimit) {
    throw OverflowError(
        "coefficient magnitudes exceed the exact integer evaluation range");
  }
}

std::vector<std::string> IsingNet::sorted_vertices() const {
  return {vertices_.begin(), vertices_.end()};
}

Energy energy(const IsingNet& net, const Configuration& config) {
  if (config.size() != net.size()) {
    throw TotalAssignmentError(
        "configuration has " + std::to_string(config.size()) +
        " vertices, net has " + std::to_string(net.size()));
  }
  for (const auto& [v, unused] : config.values()) {
    if (!net.has_vertex(v)) {
      throw TotalAssignmentError("configuration assigns foreign vertex '" + v +
                                 "'");
    }
  }
  const QuadraticForm& form = net.form();
  Energy e = form.constant();
  for (const auto& [v, a] : form.fields()) {
    e += a * spin_value(config.at(v));
  }
  for (const auto& [key, b] : form.couplings()) {
    e += b * spin_value(config.at(key.first)) *
         spin_value(config.at(key.second));
  }
  return e;
}

CompiledNet::CompiledNet(const IsingNet& net)
    : vertices_(net.sorted_vertices()), constant_(net.form().constant()) {
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    index_[vertices_[k]] = static_cast<int>(k);
  }
  fields_.assign(vertices_.size(), 0);
  adjacency_.assign(vertices_.size(), {});
  for (const auto& [v, a] : net.form().fields()) fields_[index_.at(v)] = a;
  for (const auto& [key, b] : net.form().couplings()) {
    int i = index_.at(key.first);
    int j = index_.at(key.second);
    adjacency_[i].emplace_back(j, b);
    adjacency_[j].emplace_back(i, b);
  }
}

int CompiledNet::index_of(const std::string& vertex) const {
  auto it = index_.find(vertex);
  if (it == index_.end()) {
    throw DomainError("net has no vertex '" + vertex + "'");
  }
  return it->second;
}

Energy CompiledNet::energy_of_mask(std::uint64_t mask) const {
  Energy e = constant_;
  for (int i = 0; i < size(); ++i) {
    int si = (mask >> i) & 1u ? 1 : -1;
    e += fields_[i] * si;
    for (const auto& [j, w] : adjacency_[i]) {
      if (j > i) e += w * si * ((mask >> j) & 1u ? 1 : -1);
    }
  }
  return e;
}

CompiledNet::Ground CompiledNet::enumerate_ground(int cap) const {
  const int n = size();
  if (n > cap) {
    throw EnumerationCapError("net has " + std::to_string(n) +
                              " vertices, enumeration cap is " +
                              std::to_string(cap));
  }
  Ground out;
  if (n == 0) {
    out.energy = constant_;
    out.masks = {0};
    return out;
  }

  // Gray-code sweep: configuration k is gray(k) = k ^ (k >> 1); step k
  // flips exactly the vertex countr_zero(k).
  std::vector<int> spins(n, -1);
  Energy e = constant_;
  for (int i = 0; i < n; ++i) e -= fields_[i];
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, w] : adjacency_[i]) {
      if (j > i) e += w;  // both endpoints down
    }
  }
  std::uint64_t mask = 0;
  out.energy = e;
  out.masks = {mask};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int b = std::countr_zero(k);
    Energy local = fields_[b];
    for (const auto& [j, w] : adjacency_[b]) local += w * spins[j];
    e += Energy{-2} * spins[b] * local;
    spins[b] = -spins[b];
    mask ^= std::uint64_t{1} << b;
    if (e < out.energy) {
      out.energy = e;
      out.masks.assign(1, mask);
    } else if (e == out.energy) {
      out.masks.push_back(mask);
    }
  }
  std::sort(out.masks.begin(), out.masks.end());
  return out;
}

GroundSolution ground_energy_and_states(const IsingNet& net, int cap) {
  CompiledNet compiled(net);
  CompiledNet::Ground ground = compiled.enumerate_ground(cap);
  GroundSolution out;
  out.energy = ground.energy;
  out.states.reserve(ground.masks.size());
  for (std::uint64_t mask : ground.masks) {
    out.states.push_back(Configuration::from_mask(compiled.vertices(), mask));
  }
  return out;
}

}  // namespace ising
