#include "wass_smooth/error.hpp"

namespace wass_smooth {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::resource: return "resource";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::invalid_hypothesis: return "invalid-hypothesis";
    case ErrorKind::insufficient_window: return "insufficient-window";
    case ErrorKind::tail_certificate_missing: return "tail-certificate-missing";
    case ErrorKind::missing_constants: return "missing-constants";
    case ErrorKind::no_valid_point: return "no-valid-point";
    case ErrorKind::degenerate_weights: return "degenerate-weights";
    case ErrorKind::weight_grid: return "weight-grid";
    case ErrorKind::not_a_design: return "not-a-design";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace wass_smooth
