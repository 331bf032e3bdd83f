#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "invmetric/bounds.hpp"
#include "invmetric/distances.hpp"
#include "invmetric/domain_json.hpp"

namespace invmetric {

inline constexpr int report_schema = 1;

enum class Scale { atanh, mobius };

namespace detail {

// Non-finite reals become strings ("nan", "inf") so the document stays valid JSON; finite ones dump in
// shortest round-trip form (at most 17 significant digits).
inline json real(double x) {
  if (!std::isfinite(x)) return format_real(x);
  return x;
}

}  // namespace detail

inline json to_json(const CertifiedValue& v, Scale scale = Scale::atanh) {
  const bool m = scale == Scale::mobius;
  return json{{"lo", detail::real(m ? std::tanh(v.lo) : v.lo)},
              {"hi", detail::real(m ? std::tanh(v.hi) : v.hi)},
              {"method", to_string(v.method)},
              {"err", detail::real(v.error_estimate)},
              {"scale", m ? "mobius" : "atanh"}};
}

inline json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (double x : r) row.push_back(detail::real(x));
    rows.push_back(std::move(row));
  }
  return json{{"columns", t.columns}, {"rows", rows}};
}

/// Report document; runtime is wall-clock and is left out unless asked for, so that equal seeds give
/// byte-identical output.
inline json to_json(const BoundReport& r, bool with_runtime = false) {
  json constants = json::object();
  for (const auto& [k, v] : r.constants) constants[k] = detail::real(v);
  json out{{"schema", report_schema},
           {"suite", r.suite},
           {"samples", r.samples},
           {"violations", r.violations},
           {"worst_margin", detail::real(r.worst_margin)},
           {"constants", constants},
           {"seed", r.seed},
           {"passed", r.passed},
           {"notes", r.notes},
           {"table", to_json(r.table)}};
  if (with_runtime) out["runtime"] = detail::real(r.runtime);
  return out;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace invmetric
