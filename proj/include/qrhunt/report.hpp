#pragma once

// Experiment reports and their serialized forms. JSON is the lossless
// round-trip format ({"kind","version","params","results","timestamp"},
// insertion-ordered keys); CSV carries one record per witness / grid point /
// table row with a header line; text is for terminals. Reals are written
// with 15 significant digits everywhere.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrhunt/analytic.hpp"
#include "qrhunt/counting.hpp"
#include "qrhunt/experiment.hpp"

namespace qrhunt {

inline constexpr const char* kVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

/// Rounds through the 15-significant-digit decimal representation, so JSON
/// numbers carry exactly the documented precision.
inline double round15(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

inline std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

enum class ReportKind { hunt, ratio, grid, sweep, rtable };

inline const char* to_string(ReportKind k) {
  switch (k) {
    case ReportKind::hunt: return "hunt";
    case ReportKind::ratio: return "ratio";
    case ReportKind::grid: return "grid";
    case ReportKind::sweep: return "sweep";
    case ReportKind::rtable: return "rtable";
  }
  throw std::logic_error("unreachable report kind");
}

inline ReportKind report_kind_from_string(const std::string& s) {
  if (s == "hunt") return ReportKind::hunt;
  if (s == "ratio") return ReportKind::ratio;
  if (s == "grid") return ReportKind::grid;
  if (s == "sweep") return ReportKind::sweep;
  if (s == "rtable") return ReportKind::rtable;
  throw std::invalid_argument("unknown report kind: " + s);
}

struct ExperimentReport {
  ReportKind kind = ReportKind::hunt;
  std::string version = kVersion;
  ordered_json params = ordered_json::object();
  ordered_json results = ordered_json::object();
  std::string timestamp;
};

inline ExperimentReport make_hunt_report(const HuntResult& r, std::string timestamp) {
  ExperimentReport rep;
  rep.kind = ReportKind::hunt;
  rep.timestamp = std::move(timestamp);
  rep.params = {{"x", r.params.x},
                {"m", r.params.M},
                {"n", r.params.N},
                {"implied_a", round15(r.params.A)},
                {"limit", r.limit}};
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"p", w.p}, {"w", w.w}, {"s", w.s}, {"s_over_n", round15(w.s_over_n)}});
  rep.results = {{"witnesses", std::move(witnesses)},
                 {"psi", r.psi},
                 {"guaranteed_bound", r.guaranteed_bound},
                 {"elapsed_seconds", round15(r.elapsed_seconds)}};
  return rep;
}

inline ExperimentReport make_ratio_report(const RatioResult& r, std::string timestamp) {
  ExperimentReport rep;
  rep.kind = ReportKind::ratio;
  rep.timestamp = std::move(timestamp);
  rep.params = {{"x", r.params.x},
                {"m", r.params.M},
                {"n", r.params.N},
                {"implied_a", round15(r.params.A)}};
  rep.results = {{"s0", round15(r.s0)},
                 {"s1", round15(r.s1)},
                 {"ratio", r.ratio ? ordered_json(round15(*r.ratio)) : ordered_json(nullptr)},
                 {"r1", r.r1},
                 {"support_count", r.support_count}};
  return rep;
}

inline ExperimentReport make_grid_report(const GridResult& r, std::string timestamp) {
  ExperimentReport rep;
  rep.kind = ReportKind::grid;
  rep.timestamp = std::move(timestamp);
  rep.params = {{"p", r.p}, {"z", r.z}, {"implied_a", round15(r.implied_A)}};
  rep.results = {{"grid_sum", r.grid_sum}, {"density", round15(r.density)}};
  return rep;
}

inline ExperimentReport make_sweep_report(const std::vector<SweepRow>& rows,
                                          const std::string& inequality,
                                          std::string timestamp) {
  ExperimentReport rep;
  rep.kind = ReportKind::sweep;
  rep.timestamp = std::move(timestamp);
  rep.params = {{"inequality", inequality}, {"points", rows.size()}};
  ordered_json out = ordered_json::array();
  double min_margin = rows.empty() ? 0.0 : rows.front().margin;
  for (const auto& row : rows) {
    out.push_back({{"x", round15(row.x)},
                   {"beta", round15(row.beta)},
                   {"lhs", round15(row.lhs)},
                   {"rhs", round15(row.rhs)},
                   {"margin", round15(row.margin)}});
    min_margin = std::min(min_margin, row.margin);
  }
  rep.results = {{"rows", std::move(out)}, {"min_margin", round15(min_margin)}};
  return rep;
}

/// Standalone RTable forms: {"N":..., "M":..., "counts":{...}} with keys
/// ascending, and two-column CSV.
inline std::string rtable_to_json(const RTable& t) {
  ordered_json counts = ordered_json::object();
  for (const auto& [b, r] : t.counts) counts[std::to_string(b)] = r;
  ordered_json root = {{"N", t.N}, {"M", t.M}, {"counts", std::move(counts)}};
  return root.dump(2) + "\n";
}

inline RTable rtable_from_json(const std::string& text) {
  const ordered_json root = ordered_json::parse(text);
  RTable t;
  t.N = root.at("N").get<i64>();
  t.M = root.at("M").get<i64>();
  for (const auto& [key, value] : root.at("counts").items())
    t.counts[std::stoll(key)] = value.get<i64>();
  return t;
}

inline std::string rtable_to_csv(const RTable& t) {
  std::ostringstream out;
  out << "b,r\n";
  for (const auto& [b, r] : t.counts) out << b << ',' << r << '\n';
  return out.str();
}

inline ExperimentReport make_rtable_report(const RTable& t, std::string timestamp) {
  ExperimentReport rep;
  rep.kind = ReportKind::rtable;
  rep.timestamp = std::move(timestamp);
  rep.params = {{"n", t.N}, {"m", t.M}};
  ordered_json counts = ordered_json::object();
  for (const auto& [b, r] : t.counts) counts[std::to_string(b)] = r;  // keys ascending
  rep.results = {{"counts", std::move(counts)}, {"total", t.total()}};
  return rep;
}

inline std::string to_json(const ExperimentReport& rep) {
  ordered_json root = {{"kind", to_string(rep.kind)},
                       {"version", rep.version},
                       {"params", rep.params},
                       {"results", rep.results},
                       {"timestamp", rep.timestamp}};
  return root.dump(2) + "\n";
}

inline ExperimentReport report_from_json(const std::string& text) {
  ordered_json root = ordered_json::parse(text);
  ExperimentReport rep;
  rep.kind = report_kind_from_string(root.at("kind").get<std::string>());
  rep.version = root.at("version").get<std::string>();
  rep.params = root.at("params");
  rep.results = root.at("results");
  rep.timestamp = root.at("timestamp").get<std::string>();
  return rep;
}

namespace detail {

inline std::string csv_number(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_real(v.get<double>());
  return v.dump();
}

}  // namespace detail

inline std::string to_csv(const ExperimentReport& rep) {
  std::ostringstream out;
  switch (rep.kind) {
    case ReportKind::hunt:
      out << "p,w,s,s_over_n\n";
      for (const auto& w : rep.results.at("witnesses"))
        out << detail::csv_number(w.at("p")) << ',' << detail::csv_number(w.at("w")) << ','
            << detail::csv_number(w.at("s")) << ',' << detail::csv_number(w.at("s_over_n"))
            << '\n';
      break;
    case ReportKind::ratio:
      out << "s0,s1,ratio,r1,support_count\n";
      out << detail::csv_number(rep.results.at("s0")) << ','
          << detail::csv_number(rep.results.at("s1")) << ','
          << detail::csv_number(rep.results.at("ratio")) << ','
          << detail::csv_number(rep.results.at("r1")) << ','
          << detail::csv_number(rep.results.at("support_count")) << '\n';
      break;
    case ReportKind::grid:
      out << "p,z,grid_sum,density\n";
      out << detail::csv_number(rep.params.at("p")) << ','
          << detail::csv_number(rep.params.at("z")) << ','
          << detail::csv_number(rep.results.at("grid_sum")) << ','
          << detail::csv_number(rep.results.at("density")) << '\n';
      break;
    case ReportKind::sweep:
      out << "x,beta,lhs,rhs,margin\n";
      for (const auto& row : rep.results.at("rows"))
        out << detail::csv_number(row.at("x")) << ',' << detail::csv_number(row.at("beta"))
            << ',' << detail::csv_number(row.at("lhs")) << ','
            << detail::csv_number(row.at("rhs")) << ',' << detail::csv_number(row.at("margin"))
            << '\n';
      break;
    case ReportKind::rtable:
      out << "b,r\n";
      for (const auto& [key, value] : rep.results.at("counts").items())
        out << key << ',' << detail::csv_number(value) << '\n';
      break;
  }
  return out.str();
}

inline std::string to_text(const ExperimentReport& rep) {
  std::ostringstream out;
  out << "kind: " << to_string(rep.kind) << "\nversion: " << rep.version << '\n';
  for (const auto& [key, value] : rep.params.items())
    out << key << ": " << detail::csv_number(value) << '\n';
  out << "--\n";
  switch (rep.kind) {
    case ReportKind::hunt: {
      const auto& res = rep.results;
      out << "psi: " << detail::csv_number(res.at("psi"))
          << "\nguaranteed_bound: " << detail::csv_number(res.at("guaranteed_bound")) << '\n';
      out << "witnesses (p w s s/n):\n";
      for (const auto& w : res.at("witnesses"))
        out << "  " << detail::csv_number(w.at("p")) << ' ' << detail::csv_number(w.at("w"))
            << ' ' << detail::csv_number(w.at("s")) << ' '
            << detail::csv_number(w.at("s_over_n")) << '\n';
      out << "elapsed_seconds: " << detail::csv_number(res.at("elapsed_seconds")) << '\n';
      break;
    }
    case ReportKind::sweep:
      out << "points: " << rep.results.at("rows").size()
          << "\nmin_margin: " << detail::csv_number(rep.results.at("min_margin")) << '\n';
      break;
    default:
      for (const auto& [key, value] : rep.results.items())
        out << key << ": " << (value.is_structured() ? value.dump() : detail::csv_number(value))
            << '\n';
      break;
  }
  out << "timestamp: " << rep.timestamp << '\n';
  return out.str();
}

inline std::string serialize(const ExperimentReport& rep, const std::string& format) {
  if (format == "json") return to_json(rep);
  if (format == "csv") return to_csv(rep);
  if (format == "text") return to_text(rep);
  throw std::invalid_argument("unknown format: " + format);
}

}  // namespace qrhunt
