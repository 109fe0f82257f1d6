#pragma once

#include <string>
#include <vector>

#include "metrics.hpp"
#include "solver.hpp"

namespace tfdg {

enum class SweepAxis { space, time };

struct OrderBand {
  double lo = 0.0;
  double hi = 0.0;
  bool set = false;
};

// a convergence study: one data case, one resolution axis swept over dyadic
// levels against a fixed fine reference, errors and observed orders reported
struct ExperimentSpec {
  std::string name;
  std::string description;
  int dim = 1;
  double alpha = 0.4;
  double horizon = 1.0;
  // f-smooth | f-sharp | u0-power | dirac-f | dirac-u0
  std::string data_case;
  // regularity index of the data the expected orders are based on
  double beta = 0.0;
  SweepAxis axis = SweepAxis::time;
  // exponents k of the swept resolution 2^-k, coarse to fine
  std::vector<int> levels;
  // separate ladder for the second error when it is reported on coarser
  // steps than the first; empty means share `levels`
  std::vector<int> e2_levels;
  // exponent of the resolution on the axis not swept
  int fixed_level = 0;
  int ref_h_level = 0;
  int ref_tau_level = 0;
  bool want_e2 = false;
  OrderBand e1_band;
  OrderBand e2_band;
  // scaled to finish in minutes on one core, vs the source resolutions
  bool desk = false;
};

struct LevelRow {
  int level = 0;
  bool ok = true;
  std::string error;  // failure message when !ok
  double e1 = 0.0;
  bool has_e2 = false;
  double e2 = 0.0;
  double solve_seconds = 0.0;
  double norm_seconds = 0.0;
};

struct RunRecord {
  ExperimentSpec spec;
  std::vector<LevelRow> rows;  // one per distinct level, coarse to fine
  std::vector<double> e1_orders;
  std::vector<double> e2_orders;
  double ref_seconds = 0.0;
  double total_seconds = 0.0;
  unsigned long long seed = 0;
  std::vector<std::string> checks;
  std::vector<std::string> artifacts;
  bool pass = true;
};

struct RunOptions {
  // when set, the reference checkpoint is cached here across runs
  std::string cache_dir;
  int jobs = 1;
  // recorded only; solver paths never consume randomness
  unsigned long long seed = 0;
};

// the solver-facing data for a spec's named case
ProblemData problem_for(const ExperimentSpec& spec);

std::vector<ExperimentSpec> preset_registry();
ExperimentSpec find_preset(const std::string& name);

RunRecord run_experiment(const ExperimentSpec& spec, const RunOptions& opt = {});

enum class TableFormat { csv, markdown };
std::string emit_tables(const RunRecord& record, TableFormat format);

// cells of a comma-separated table; emitted values never contain commas
std::vector<std::vector<std::string>> parse_csv_table(const std::string& text);

std::string record_to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& text);

// reads a flat key = value config; an optional `preset` key names a registry
// entry whose fields serve as the baseline
ExperimentSpec spec_from_toml(const std::string& path);

}  // namespace tfdg
