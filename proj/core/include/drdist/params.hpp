#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace drdist {

using ParamValue = std::variant<std::int64_t, double, std::string>;
using ParamMap = std::map<std::string, ParamValue, std::less<>>;

std::string to_string(const ParamValue& value);

}  // namespace drdist
