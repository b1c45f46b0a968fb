#ifndef TNC_SCENARIO_CONFIG_HPP
#define TNC_SCENARIO_CONFIG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tnc/bounds.hpp"
#include "tnc/sim.hpp"

namespace tnc {

enum class SweepKind {
  single,             // no grid declared; one row at the scenario's w
  delay,              // eval.w_grid
  snr_db,             // eval.snr_grid_db
  info_delay,         // eval.d_grid
  backlog_threshold,  // eval.x_grid (bits)
};

const char* sweep_name(SweepKind k);

// A parsed scenario file: the base Scenario plus the declared sweep and
// simulation parameters. JSON sections: channel, network, arrivals, eval,
// sim; unknown keys anywhere are rejected.
struct ScenarioFile {
  Scenario base;
  SweepKind sweep = SweepKind::single;
  std::vector<double> sweep_values;
  SimConfig sim;
  double overhead_rate = 0.0;  // bits/slot ahead of the message when d > 0
  std::uint64_t content_hash = 0;

  std::string hash_hex() const;

  // Scenario for one sweep point (rebuilds channel / overhead as needed).
  Scenario at_sweep_point(double value) const;
};

// Parse from JSON text. `overrides` are "key=value" or "section.key=value"
// entries applied to the document before validation.
ScenarioFile parse_scenario_text(const std::string& json_text,
                                 std::span<const std::string> overrides = {});

// Parse from a file on disk.
ScenarioFile load_scenario_file(const std::string& path,
                                std::span<const std::string> overrides = {});

}  // namespace tnc

#endif  // TNC_SCENARIO_CONFIG_HPP
