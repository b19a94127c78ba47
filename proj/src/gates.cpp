#include "ising/gates.hpp"

#include <set>

namespace ising {

namespace {

void require_distinct(const std::set<std::string>& seen, std::size_t count) {
  if (seen.size() != count) {
    throw LabelError("gate labels must be pairwise distinct");
  }
}

}  // namespace

IsingNet and_gate(const std::string& a, const std::string& b,
                  const std::string& c) {
  require_distinct({a, b, c}, 3);
  QuadraticForm form;
  form.set_field(a, -1);
  form.set_field(b, -1);
  form.set_field(c, 2);
  form.set_coupling(a, b, 1);
  form.set_coupling(a, c, -2);
  form.set_coupling(b, c, -2);
  return IsingNet({a, b, c}, std::move(form));
}

IsingNet full_multiplier(const std::array<std::string, 6>& labels) {
  require_distinct({labels.begin(), labels.end()}, 6);
  const auto& [a, b, c, d, e, f] = labels;
  QuadraticForm form;
  form.set_field(a, -1);
  form.set_field(b, -1);
  form.set_field(c, -2);
  form.set_field(d, -2);
  form.set_field(e, 4);
  form.set_field(f, 2);
  form.set_coupling(a, b, 1);
  form.set_coupling(a, c, 2);
  form.set_coupling(a, d, 2);
  form.set_coupling(b, c, 2);
  form.set_coupling(b, d, 2);
  form.set_coupling(c, d, 4);
  form.set_coupling(a, e, -4);
  form.set_coupling(b, e, -4);
  form.set_coupling(c, e, -8);
  form.set_coupling(d, e, -8);
  form.set_coupling(a, f, -2);
  form.set_coupling(b, f, -2);
  form.set_coupling(c, f, -4);
  form.set_coupling(d, f, -4);
  form.set_coupling(e, f, 8);
  return IsingNet({a, b, c, d, e, f}, std::move(form));
}

}  // namespace ising
