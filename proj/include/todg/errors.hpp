#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace todg {

// Base class for every error raised by the toolkit. `kind()` is a stable
// machine-readable tag; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TODG_DEFINE_ERROR(Name)                       \
  class Name : public Error {                         \
   public:                                            \
    explicit Name(const std::string& message)         \
        : Error(#Name, message) {}                    \
  }

TODG_DEFINE_ERROR(ParseError);
TODG_DEFINE_ERROR(SchemaError);
TODG_DEFINE_ERROR(IoError);
TODG_DEFINE_ERROR(DanglingPlaceholder);
TODG_DEFINE_ERROR(TranslatorError);
TODG_DEFINE_ERROR(LengthMismatch);
TODG_DEFINE_ERROR(EmptyDomainError);
TODG_DEFINE_ERROR(MissingAttribute);
TODG_DEFINE_ERROR(MissingComponent);
TODG_DEFINE_ERROR(AlignmentError);
TODG_DEFINE_ERROR(DegenerateInput);
TODG_DEFINE_ERROR(ShapeMismatch);
TODG_DEFINE_ERROR(EmptyTally);
TODG_DEFINE_ERROR(ConfigError);

#undef TODG_DEFINE_ERROR

// Non-fatal findings (annotation noise, empty domains, ...). Operations that
// can warn take an optional Warnings sink; passing nullptr drops them.
struct Warning {
  std::string kind;     // e.g. "ValueNotFound", "AmbiguousMatch", "EmptyDomain"
  std::string context;  // dialogue id / domain / file, whatever locates it
  std::string message;
};

using Warnings = std::vector<Warning>;

inline void warn(Warnings* sink, std::string kind, std::string context,
                 std::string message) {
  if (sink != nullptr) {
    sink->push_back({std::move(kind), std::move(context), std::move(message)});
  }
}

}  // namespace todg
