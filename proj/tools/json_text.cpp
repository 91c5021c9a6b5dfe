#include "json_text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gapratio::io {
namespace {

void emit(const Json& v, std::string& out, int depth) {
  auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        indent(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n";
      indent(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      const bool flat = v.size() <= 16 && std::all_of(v.begin(), v.end(), [](const Json& e) {
                          return e.is_primitive();
                        });
      out += "[";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) {
          out += "\n";
          indent(depth + 1);
        }
        emit(e, out, depth + 1);
      }
      if (!flat) {
        out += "\n";
        indent(depth);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string to_json_text(const Json& value) {
  std::string out;
  emit(value, out, 0);
  out += "\n";
  return out;
}

}  // namespace gapratio::io
