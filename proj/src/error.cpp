#include "gapratio/error.hpp"

namespace gapratio {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::empty_input: return "empty_input";
    case Errc::non_finite: return "non_finite";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::invalid_graph: return "invalid_graph";
    case Errc::disconnected_graph: return "disconnected_graph";
    case Errc::invalid_sample: return "invalid_sample";
    case Errc::not_a_metric: return "not_a_metric";
    case Errc::out_of_domain: return "out_of_domain";
    case Errc::degenerate_geometry: return "degenerate_geometry";
    case Errc::coreset_too_small: return "coreset_too_small";
    case Errc::guard_exceeded: return "guard_exceeded";
    case Errc::parse_error: return "parse_error";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace gapratio
