#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "drdist/params.hpp"

namespace drdist {

struct SpecEntry {
  std::string id;
  ParamMap params;

  bool operator==(const SpecEntry&) const = default;
};

/// Ordered list of measures to run, e.g.
///   [{"id": "tnc", "params": {"k": 20}}, {"id": "snc", "params": {"k": 30}}]
struct MeasureSpec {
  std::vector<SpecEntry> entries;

  bool operator==(const MeasureSpec&) const = default;
};

/// Parses and validates against the registry: unknown ids raise
/// NotFoundError, undeclared or mistyped params raise ParamError, malformed
/// JSON or entry shape raises ConfigError.
MeasureSpec parse_spec(std::string_view json_text);
MeasureSpec load_spec(const std::filesystem::path& path);

std::string serialize_spec(const MeasureSpec& spec);

}  // namespace drdist
