#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapratio {

/// Machine-readable error categories. The CLI prints `to_string(code)` as the
/// first token of its single-line error message.
enum class Errc {
  invalid_argument,
  empty_input,
  non_finite,
  dimension_mismatch,
  invalid_graph,
  disconnected_graph,
  invalid_sample,
  not_a_metric,
  out_of_domain,
  degenerate_geometry,
  coreset_too_small,
  guard_exceeded,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gapratio
