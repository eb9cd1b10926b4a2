#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smallgemm {

enum class Errc {
    InvalidTransChar,
    InvalidDimension,
    IndexOutOfRange,
    LdTooSmall,
    Ld2TooSmall,
    BufferOverrun,
    OffsetCountMismatch,
    AliasedOutput,
    OverlappingOutputs,
    InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Raised by every validating entry point. `field()` names the offending
/// argument (e.g. "ldc2", "transa") so callers can report it.
class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string field, const std::string &what)
        : std::runtime_error(what), code_(code), field_(std::move(field)) {}

    Errc code() const noexcept { return code_; }
    const std::string &field() const noexcept { return field_; }

  private:
    Errc code_;
    std::string field_;
};

[[noreturn]] void raise(Errc code, std::string field, std::string_view detail);

} // namespace smallgemm
