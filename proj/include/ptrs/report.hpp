#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ptrs/prover.hpp"
#include "ptrs/simulator.hpp"

namespace ptrs {

/// Machine-readable verdict; see schema/verdict.schema.json.
nlohmann::json verdict_json(const Verdict& v, const std::string& command);
nlohmann::json interpretation_json(const Interpretation& interp);

struct SimulationInfo {
  std::string source;
  std::string start;
  RunMode mode = RunMode::Outermost;
  std::optional<Rational> bound;
  bool bound_holds = true;
};

/// See schema/simulation.schema.json.
template <class Obj>
nlohmann::json simulation_json(const RunReport<Obj>& report, const Pars<Obj>& pars, const SimulationInfo& info) {
  nlohmann::json j;
  j["command"] = "simulate";
  j["source"] = info.source;
  j["start"] = info.start;
  j["mode"] = to_string(info.mode);
  j["truncation_hit"] = report.truncation_hit;
  j["bound"] = info.bound ? nlohmann::json(to_string(*info.bound)) : nlohmann::json(nullptr);
  j["bound_holds"] = info.bound ? nlohmann::json(info.bound_holds) : nlohmann::json(nullptr);
  j["rows"] = nlohmann::json::array();
  for (const StepRow& row : report.rows) {
    j["rows"].push_back({{"step", row.step},
                         {"mass_min", to_string(row.mass_min)},
                         {"mass_max", to_string(row.mass_max)},
                         {"edl_min", to_string(row.edl_min)},
                         {"edl_max", to_string(row.edl_max)},
                         {"width", row.width}});
  }
  auto render = [&](const Obj& o) { return pars.render(o); };
  j["trace"] = nlohmann::json::array();
  for (const auto& mu : report.trace) j["trace"].push_back(mu.to_string(render));
  j["final"] = nlohmann::json::array();
  j["final_collapsed"] = nlohmann::json::array();
  for (const auto& mu : report.final_set) {
    j["final"].push_back(mu.to_string(render));
    j["final_collapsed"].push_back(collapsed(mu).to_string(render));
  }
  return j;
}

/// Aligned text table; exhaustive runs show min/max columns.
template <class Obj>
std::string simulation_text(const RunReport<Obj>& report, const Pars<Obj>& pars, const SimulationInfo& info) {
  const bool envelope = info.mode == RunMode::Exhaustive;
  std::vector<std::vector<std::string>> cells;
  if (envelope) {
    cells.push_back({"step", "mass_min", "mass_max", "edl_min", "edl_max", "distinct"});
  } else {
    cells.push_back({"step", "mass", "edl", "entries"});
  }
  for (const StepRow& r : report.rows) {
    if (envelope) {
      cells.push_back({std::to_string(r.step), to_string(r.mass_min), to_string(r.mass_max), to_string(r.edl_min),
                       to_string(r.edl_max), std::to_string(r.width)});
    } else {
      cells.push_back({std::to_string(r.step), to_string(r.mass_min), to_string(r.edl_min), std::to_string(r.width)});
    }
  }
  std::vector<std::size_t> widths(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream out;
  out << "source: " << info.source << "\nstart: " << info.start << "\nmode: " << to_string(info.mode) << "\n";
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
      if (c + 1 < row.size()) out << "  ";
    }
    out << "\n";
  }
  auto render = [&](const Obj& o) { return pars.render(o); };
  for (std::size_t k = 0; k < report.trace.size(); ++k) out << "mu_" << k << " = " << report.trace[k].to_string(render) << "\n";
  if (!report.final_set.empty() && envelope) {
    out << "final multidistributions:\n";
    for (const auto& mu : report.final_set)
      out << "  " << mu.to_string(render) << "  collapsed " << collapsed(mu).to_string(render) << "\n";
  }
  if (report.truncation_hit) out << "note: truncation bound reached; masses are lower bounds from then on\n";
  if (info.bound) {
    out << "bound f(start)/epsilon = " << to_string(*info.bound) << " "
        << (info.bound_holds ? "holds at every step" : "VIOLATED") << "\n";
  }
  return out.str();
}

}  // namespace ptrs
