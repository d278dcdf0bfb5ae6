#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wass_smooth {

enum class ErrorKind {
  domain,
  overflow,
  resource,
  dimension,
  invalid_hypothesis,
  insufficient_window,
  tail_certificate_missing,
  missing_constants,
  no_valid_point,
  degenerate_weights,
  weight_grid,
  not_a_design,
  unknown_name,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for violations of a bound's stated hypotheses (exit code 2 in the CLI).
  bool is_hypothesis() const noexcept {
    return kind_ == ErrorKind::invalid_hypothesis ||
           kind_ == ErrorKind::insufficient_window ||
           kind_ == ErrorKind::tail_certificate_missing ||
           kind_ == ErrorKind::missing_constants;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace wass_smooth
