#pragma once

#include <stdexcept>
#include <string>

namespace latmed {

// Numeric values are part of the C API contract (latmed.h) and of the CLI
// exit-code mapping: format/invalid-argument exit 2, capacity/precondition
// exit 3. Value 1 is reserved for check failures, which are verdicts, not
// errors.
enum class Status : int {
  Ok = 0,
  Format = 2,
  Capacity = 3,
  Precondition = 4,
  InvalidArgument = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const noexcept { return code_; }

private:
  Status code_;
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(Status::Format, what) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(Status::Capacity, what) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(Status::Precondition, what) {}
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what) : Error(Status::InvalidArgument, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(Status::Internal, what) {}
};

}  // namespace latmed
