#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drdist {

enum class ErrorKind {
  Format,
  Value,
  TooSmall,
  Io,
  Config,
  Param,
  MissingLabels,
  Shape,
  NotFound,
  DegenerateInput,
  DegenerateGeometry,
  Dimension,
  Input,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind selects the concrete
/// subclass and maps onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define DRDIST_DECLARE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(Kind, message) {}   \
  };

DRDIST_DECLARE_ERROR(FormatError, ErrorKind::Format)
DRDIST_DECLARE_ERROR(ValueError, ErrorKind::Value)
DRDIST_DECLARE_ERROR(TooSmallError, ErrorKind::TooSmall)
DRDIST_DECLARE_ERROR(IoError, ErrorKind::Io)
DRDIST_DECLARE_ERROR(ConfigError, ErrorKind::Config)
DRDIST_DECLARE_ERROR(ParamError, ErrorKind::Param)
DRDIST_DECLARE_ERROR(MissingLabelsError, ErrorKind::MissingLabels)
DRDIST_DECLARE_ERROR(ShapeError, ErrorKind::Shape)
DRDIST_DECLARE_ERROR(NotFoundError, ErrorKind::NotFound)
DRDIST_DECLARE_ERROR(DegenerateInputError, ErrorKind::DegenerateInput)
DRDIST_DECLARE_ERROR(DegenerateGeometryError, ErrorKind::DegenerateGeometry)
DRDIST_DECLARE_ERROR(DimensionError, ErrorKind::Dimension)
DRDIST_DECLARE_ERROR(InputError, ErrorKind::Input)

#undef DRDIST_DECLARE_ERROR

/// Throws the subclass matching `kind` with the given message.
[[noreturn]] void throw_error(ErrorKind kind, const std::string& message);

/// Rethrows `e` as the same concrete type with `context` prepended.
[[noreturn]] void rethrow_with_context(const Error& e, std::string_view context);

}  // namespace drdist
