#include "ising/serialize.hpp"

#include <json.hpp>

namespace ising {

namespace {

using ordered_json = nlohmann::ordered_json;

Energy require_integer(const ordered_json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    throw FormatError("net json: '" + where + "' must be an integer");
  }
  return value.get<Energy>();
}

}  // namespace

std::string net_to_json(const IsingNet& net) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  for (const auto& v : net.vertices()) doc["vertices"].push_back(v);
  doc["constant"] = net.form().constant();
  doc["fields"] = ordered_json::object();
  for (const auto& [v, a] : net.form().fields()) doc["fields"][v] = a;
  doc["couplings"] = ordered_json::array();
  for (const auto& [key, b] : net.form().couplings()) {
    doc["couplings"].push_back(ordered_json::array({key.first, key.second, b}));
  }
  return doc.dump(2) + "\n";
}

IsingNet net_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("net json: ") + e.what());
  }
  for (const char* key : {"vertices", "constant", "fields", "couplings"}) {
    if (!doc.contains(key)) {
      throw FormatError(std::string("net json: missing key '") + key + "'");
    }
  }

  std::set<std::string> vertices;
  if (!doc["vertices"].is_array()) {
    throw FormatError("net json: 'vertices' must be an array of strings");
  }
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) {
      throw FormatError("net json: 'vertices' must be an array of strings");
    }
    if (!vertices.insert(v.get<std::string>()).second) {
      throw FormatError("net json: duplicate vertex '" + v.get<std::string>() +
                        "'");
    }
  }

  QuadraticForm form;
  form.set_constant(require_integer(doc["constant"], "constant"));

  if (!doc["fields"].is_object()) {
    throw FormatError("net json: 'fields' must be an object");
  }
  for (const auto& [v, a] : doc["fields"].items()) {
    if (!vertices.count(v)) {
      throw FormatError("net json: field on unknown vertex '" + v + "'");
    }
    form.set_field(v, require_integer(a, "fields." + v));
  }

  if (!doc["couplings"].is_array()) {
    throw FormatError("net json: 'couplings' must be an array");
  }
  for (const auto& entry : doc["couplings"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_string() ||
        !entry[1].is_string()) {
      throw FormatError("net json: 'couplings' entries must be [u, v, weight]");
    }
    const std::string u = entry[0].get<std::string>();
    const std::string v = entry[1].get<std::string>();
    if (!vertices.count(u) || !vertices.count(v)) {
      throw FormatError("net json: coupling on unknown vertex pair [" + u +
                        ", " + v + "]");
    }
    if (!(u < v)) {
      throw FormatError("net json: coupling endpoints must satisfy u < v, got ["
                        + u + ", " + v + "]");
    }
    if (form.coupling(u, v) != 0) {
      throw FormatError("net json: duplicate coupling [" + u + ", " + v + "]");
    }
    form.set_coupling(u, v, require_integer(entry[2], "couplings"));
  }
  return IsingNet(std::move(vertices), std::move(form));
}

std::string glue_spec_to_json(const GlueSpec& spec) {
  ordered_json doc;
  doc["identify"] = ordered_json::array();
  for (const auto& id : spec.pairs) {
    doc["identify"].push_back(
        ordered_json::array({id.left, id.right, id.merged_name()}));
  }
  return doc.dump(2) + "\n";
}

GlueSpec glue_spec_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("glue spec json: ") + e.what());
  }
  if (!doc.contains("identify") || !doc["identify"].is_array()) {
    throw FormatError("glue spec json: missing 'identify' array");
  }
  GlueSpec spec;
  for (const auto& entry : doc["identify"]) {
    if (!entry.is_array() || entry.size() < 2 || entry.size() > 3) {
      throw FormatError(
          "glue spec json: entries must be [left, right] or "
          "[left, right, merged]");
    }
    for (const auto& item : entry) {
      if (!item.is_string()) {
        throw FormatError("glue spec json: identification ids must be strings");
      }
    }
    Identification id;
    id.left = entry[0].get<std::string>();
    id.right = entry[1].get<std::string>();
    if (entry.size() == 3) id.merged = entry[2].get<std::string>();
    spec.pairs.push_back(std::move(id));
  }
  return spec;
}

}  // namespace ising
