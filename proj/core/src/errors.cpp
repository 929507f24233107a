#include "drdist/errors.hpp"

namespace drdist {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Value: return "ValueError";
    case ErrorKind::TooSmall: return "TooSmallError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::MissingLabels: return "MissingLabelsError";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::NotFound: return "NotFoundError";
    case ErrorKind::DegenerateInput: return "DegenerateInputError";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometryError";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Input: return "InputError";
  }
  return "Error";
}

void throw_error(ErrorKind kind, const std::string& message) {
  switch (kind) {
    case ErrorKind::Format: throw FormatError(message);
    case ErrorKind::Value: throw ValueError(message);
    case ErrorKind::TooSmall: throw TooSmallError(message);
    case ErrorKind::Io: throw IoError(message);
    case ErrorKind::Config: throw ConfigError(message);
    case ErrorKind::Param: throw ParamError(message);
    case ErrorKind::MissingLabels: throw MissingLabelsError(message);
    case ErrorKind::Shape: throw ShapeError(message);
    case ErrorKind::NotFound: throw NotFoundError(message);
    case ErrorKind::DegenerateInput: throw DegenerateInputError(message);
    case ErrorKind::DegenerateGeometry: throw DegenerateGeometryError(message);
    case ErrorKind::Dimension: throw DimensionError(message);
    case ErrorKind::Input: throw InputError(message);
  }
  throw Error(kind, message);
}

void rethrow_with_context(const Error& e, std::string_view context) {
  std::string message(context);
  message += ": ";
  message += e.what();
  throw_error(e.kind(), message);
}

}  // namespace drdist
