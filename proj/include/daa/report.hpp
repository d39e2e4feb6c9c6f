#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "daa/auction.hpp"
#include "daa/incentives.hpp"
#include "daa/rational.hpp"

namespace daa {

struct TraceEntry {
  std::size_t bidder = 0;
  std::string score;
};

/// Result of one `run`: the auction outcome plus whatever the oracle and the
/// certificates could establish about its quality.
struct RunReport {
  std::string problem;
  Orientation orientation = Orientation::procurement;
  std::vector<Rational> bids;
  std::vector<std::size_t> allocation;
  std::optional<std::vector<Rational>> payments;
  std::vector<TraceEntry> trace;
  std::vector<std::size_t> retained;
  // Welfare of the retained bidders (procurement) or cost of the retained
  // cover (selling).
  Rational retained_value{0};
  std::optional<Rational> optimum;
  std::optional<double> achieved_ratio;
  double theoretical_ratio = 0.0;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> certificates;
  std::vector<double> dual_mass_trace;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  bool failed() const { return !failures.empty(); }
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

template <class T>
std::string join(const std::vector<T>& xs, auto&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

inline std::string id_list(const std::vector<std::size_t>& ids) {
  return "[" + join(ids, [](std::size_t i) { return std::to_string(i); }) + "]";
}

inline std::string money_list(const std::vector<Rational>& xs) {
  return "[" + join(xs, [](const Rational& r) { return to_string(r); }) + "]";
}

}  // namespace detail

inline nlohmann::json to_json(const RunReport& r) {
  using nlohmann::json;
  json j;
  j["problem"] = r.problem;
  j["orientation"] = to_string(r.orientation);
  j["status"] = r.failed() ? "FAILED" : "OK";
  j["bids"] = json::array();
  for (const auto& b : r.bids) j["bids"].push_back(to_string(b));
  j["allocation"] = r.allocation;
  if (r.payments) {
    j["payments"] = json::array();
    for (const auto& p : *r.payments) j["payments"].push_back(to_string(p));
  } else {
    j["payments"] = nullptr;
  }
  j["trace"] = json::array();
  for (const auto& t : r.trace) j["trace"].push_back({{"bidder", t.bidder}, {"score", t.score}});
  j["retained"] = r.retained;
  j["retained_value"] = to_string(r.retained_value);
  j["optimum"] = r.optimum ? json(to_string(*r.optimum)) : json(nullptr);
  j["achieved_ratio"] = r.achieved_ratio ? json(*r.achieved_ratio) : json(nullptr);
  j["theoretical_ratio"] = r.theoretical_ratio;
  j["parameters"] = json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["certificates"] = json::object();
  for (const auto& [k, v] : r.certificates) j["certificates"][k] = v;
  j["dual_mass_trace"] = r.dual_mass_trace;
  j["notes"] = r.notes;
  j["failures"] = r.failures;
  return j;
}

inline std::string format_text(const RunReport& r) {
  std::ostringstream os;
  const bool selling = r.orientation == Orientation::selling;
  os << "problem:            " << r.problem << " (" << to_string(r.orientation) << ")\n";
  os << "status:             " << (r.failed() ? "FAILED" : "OK") << "\n";
  os << "bids:               " << detail::money_list(r.bids) << "\n";
  os << "allocation:         " << detail::id_list(r.allocation) << "\n";
  if (r.payments) os << "payments:           " << detail::money_list(*r.payments) << "\n";
  os << "retained:           " << detail::id_list(r.retained) << "\n";
  os << (selling ? "retained cost:      " : "retained welfare:   ") << to_string(r.retained_value) << "\n";
  if (r.optimum) os << "optimum:            " << to_string(*r.optimum) << "\n";
  if (r.achieved_ratio) os << "achieved ratio:     " << format_double(*r.achieved_ratio) << "\n";
  os << "theoretical ratio:  " << format_double(r.theoretical_ratio) << "\n";
  for (const auto& [k, v] : r.parameters) os << "  " << k << " = " << v << "\n";
  for (const auto& [k, v] : r.certificates) os << "certificate " << k << ": " << v << "\n";
  os << "rejection trace:\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    os << "  " << i + 1 << ". bidder " << r.trace[i].bidder << " score " << r.trace[i].score << "\n";
  }
  if (!r.dual_mass_trace.empty()) {
    os << "dual mass:          "
       << detail::join(r.dual_mass_trace, [](double d) { return format_double(d); }) << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  for (const auto& f : r.failures) os << "FAILED: " << f << "\n";
  return os.str();
}

inline nlohmann::json to_json(const DeviationReport& report, std::size_t max_coalition) {
  using nlohmann::json;
  json j;
  j["max_coalition"] = max_coalition;
  j["runs"] = report.runs;
  j["status"] = report.empty() ? "OK" : "FAILED";
  j["violations"] = json::array();
  for (const auto& d : report.violations) {
    json v;
    v["coalition"] = d.coalition;
    v["context"] = json::array();
    for (const auto& b : d.context) v["context"].push_back(to_string(b));
    v["joint_bid"] = json::array();
    for (const auto& b : d.joint_bid) v["joint_bid"].push_back(to_string(b));
    v["truthful_utility"] = json::array();
    for (const auto& u : d.truthful_utility) v["truthful_utility"].push_back(to_string(u));
    v["deviant_utility"] = json::array();
    for (const auto& u : d.deviant_utility) v["deviant_utility"].push_back(to_string(u));
    j["violations"].push_back(v);
  }
  return j;
}

inline std::string format_text(const DeviationReport& report, std::size_t max_coalition) {
  std::ostringstream os;
  os << "coalitions up to size " << max_coalition << ", " << report.runs << " auction runs\n";
  os << "status: " << (report.empty() ? "OK" : "FAILED") << " (" << report.violations.size()
     << " profitable deviations)\n";
  for (const auto& d : report.violations) {
    os << "  coalition " << detail::id_list(d.coalition) << " bids " << detail::money_list(d.joint_bid)
       << " against " << detail::money_list(d.context) << ": utility "
       << detail::money_list(d.truthful_utility) << " -> " << detail::money_list(d.deviant_utility) << "\n";
  }
  return os.str();
}

}  // namespace daa
