// tnc: scenario sweeps, simulations and bound-vs-simulation reports over the
// transientnc C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tnc.h"

namespace {

struct CommonArgs {
  std::string file;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string family = "all";
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int t_eval = -2;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_sim_flags) {
  cmd->add_option("file", args.file, "scenario file (JSON)")->required();
  cmd->add_option("--override", args.overrides,
                  "key=value or section.key=value, repeatable");
  cmd->add_option("--out", args.out_path, "write CSV here instead of stdout");
  if (with_sim_flags) {
    cmd->add_option("--trials", args.trials, "Monte Carlo trials");
    cmd->add_option("--seed", args.seed, "master RNG seed");
    cmd->add_option("--t-eval", args.t_eval, "slot at which W/B is measured");
    cmd->add_option("--threads", args.threads, "simulation worker threads");
  }
}

std::vector<std::string> effective_overrides(const CommonArgs& args,
                                             bool with_sim_flags) {
  std::vector<std::string> ov = args.overrides;
  if (with_sim_flags) {
    if (args.trials > 0) ov.push_back("sim.trials=" + std::to_string(args.trials));
    if (args.seed > 0) ov.push_back("sim.seed=" + std::to_string(args.seed));
    if (args.t_eval >= -1) ov.push_back("sim.t_eval=" + std::to_string(args.t_eval));
    if (args.threads > 0) ov.push_back("sim.threads=" + std::to_string(args.threads));
  }
  return ov;
}

int fail_with(tnc_status status) {
  std::cerr << "tnc: " << tnc_last_error() << "\n";
  return status == TNC_ERROR_PARSE ? 2 : 1;
}

using ScenarioPtr = std::unique_ptr<tnc_scenario, decltype(&tnc_scenario_free)>;

ScenarioPtr open_scenario(const CommonArgs& args, bool with_sim_flags,
                          tnc_status& status) {
  const auto ov = effective_overrides(args, with_sim_flags);
  std::vector<const char*> ptrs;
  for (const auto& s : ov) ptrs.push_back(s.c_str());
  tnc_scenario* sc = nullptr;
  status = tnc_scenario_load(args.file.c_str(), ptrs.data(), ptrs.size(), &sc);
  return ScenarioPtr(sc, &tnc_scenario_free);
}

int emit(const CommonArgs& args, const char* csv) {
  if (args.out_path.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(args.out_path, std::ios::binary);
  if (!out) {
    std::cerr << "tnc: cannot open --out path " << args.out_path << "\n";
    return 1;
  }
  out << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transient delay/backlog bounds for multi-hop wireless tandems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tnc_version()));

  CommonArgs bound_args, sim_args, cmp_args, inv_args;
  std::string inverse_mode = "delay";
  double eps = 1e-9;

  CLI::App* cmd_bound = app.add_subcommand("bound", "sweep the bound families");
  add_common(cmd_bound, bound_args, false);
  cmd_bound->add_option("--family", bound_args.family,
                        "all or comma list of stationary,sotat,wtb,wtb_delayed");

  CLI::App* cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimates");
  add_common(cmd_sim, sim_args, true);

  CLI::App* cmd_cmp = app.add_subcommand(
      "compare", "joined bound/simulation sweep with validity verdicts");
  add_common(cmd_cmp, cmp_args, true);
  cmd_cmp->add_option("--family", cmp_args.family, "families to compare");

  CLI::App* cmd_inv =
      app.add_subcommand("inverse", "smallest w (or SNR) meeting a target eps");
  add_common(cmd_inv, inv_args, false);
  cmd_inv->add_option("--mode", inverse_mode, "delay or snr")->required();
  cmd_inv->add_option("--eps", eps, "violation probability target")->required();
  cmd_inv->add_option("--family", inv_args.family, "families to solve");

  CLI11_PARSE(app, argc, argv);

  tnc_status status = TNC_OK;
  char* csv = nullptr;

  if (cmd_bound->parsed()) {
    ScenarioPtr sc = open_scenario(bound_args, false, status);
    if (status != TNC_OK) return fail_with(status);
    status = tnc_report_bound(sc.get(), bound_args.family.c_str(), &csv);
    if (status != TNC_OK) return fail_with(status);
    const int rc = emit(bound_args, csv);
    tnc_string_free(csv);
    return rc;
  }

  if (cmd_sim->parsed()) {
    ScenarioPtr sc = open_scenario(sim_args, true, status);
    if (status != TNC_OK) return fail_with(status);
    status = tnc_report_simulate(sc.get(), &csv);
    if (status != TNC_OK) return fail_with(status);
    const int rc = emit(sim_args, csv);
    tnc_string_free(csv);
    return rc;
  }

  if (cmd_cmp->parsed()) {
    ScenarioPtr sc = open_scenario(cmp_args, true, status);
    if (status != TNC_OK) return fail_with(status);
    int all_valid = 0;
    status = tnc_report_compare(sc.get(), cmp_args.family.c_str(), &csv,
                                &all_valid);
    if (status != TNC_OK) return fail_with(status);
    int rc = emit(cmp_args, csv);
    tnc_string_free(csv);
    if (rc == 0 && !all_valid) {
      std::cerr << "tnc: validity verdict failed on at least one row\n";
      rc = 1;
    }
    return rc;
  }

  if (cmd_inv->parsed()) {
    ScenarioPtr sc = open_scenario(inv_args, false, status);
    if (status != TNC_OK) return fail_with(status);
    status = tnc_report_inverse(sc.get(), inverse_mode.c_str(), eps,
                                inv_args.family.c_str(), &csv);
    if (status != TNC_OK) return fail_with(status);
    const int rc = emit(inv_args, csv);
    tnc_string_free(csv);
    return rc;
  }

  return 1;
}
