#include "drdist/spec.hpp"

#include <fstream>
#include <sstream>

#include "drdist/errors.hpp"
#include "drdist/registry.hpp"
#include "json.hpp"

namespace drdist {

namespace {

ParamValue to_param(const nlohmann::json& value, const std::string& where) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_float()) return value.get<double>();
  if (value.is_string()) return value.get<std::string>();
  throw ConfigError(where + " must be a number or a string");
}

}  // namespace

MeasureSpec parse_spec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("spec must be a JSON array of entries");

  MeasureSpec spec;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const auto where = "spec entry " + std::to_string(i);
    if (!item.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, _] : item.items()) {
      if (key != "id" && key != "params") {
        throw ConfigError(where + " has unexpected key '" + key + "'");
      }
    }
    if (!item.contains("id") || !item["id"].is_string()) {
      throw ConfigError(where + " needs a string \"id\"");
    }
    SpecEntry entry;
    entry.id = item["id"].get<std::string>();
    const auto& descriptor = lookup(entry.id);
    if (item.contains("params")) {
      const auto& params = item["params"];
      if (!params.is_object()) throw ConfigError(where + " \"params\" must be an object");
      for (const auto& [name, value] : params.items()) {
        entry.params.emplace(name, to_param(value, where + " param '" + name + "'"));
      }
    }
    try {
      validate_params(descriptor, entry.params);
    } catch (const Error& e) {
      rethrow_with_context(e, where);
    }
    spec.entries.push_back(std::move(entry));
  }
  return spec;
}

MeasureSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str());
}

std::string serialize_spec(const MeasureSpec& spec) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& entry : spec.entries) {
    nlohmann::ordered_json item;
    item["id"] = entry.id;
    item["params"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : entry.params) {
      std::visit([&](const auto& v) { item["params"][name] = v; }, value);
    }
    doc.push_back(std::move(item));
  }
  return doc.dump(2);
}

}  // namespace drdist
