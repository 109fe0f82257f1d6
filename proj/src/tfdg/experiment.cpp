#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "errors.hpp"
#include "reference.hpp"
#include "toml_lite.hpp"

namespace tfdg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

OrderBand band(double lo, double hi) { return OrderBand{lo, hi, true}; }

ExperimentSpec make_spec(std::string name, std::string desc, int dim, std::string data_case,
                         double beta, SweepAxis axis, std::vector<int> levels, int fixed_level,
                         int ref_h, int ref_tau, bool desk) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.description = std::move(desc);
  s.dim = dim;
  s.data_case = std::move(data_case);
  s.beta = beta;
  s.axis = axis;
  s.levels = std::move(levels);
  s.fixed_level = fixed_level;
  s.ref_h_level = ref_h;
  s.ref_tau_level = ref_tau;
  s.desk = desk;
  return s;
}

void validate(const ExperimentSpec& spec) {
  require(spec.dim == 1 || spec.dim == 2, ErrorCode::invalid_argument,
          "experiment dimension must be 1 or 2");
  require(spec.alpha > 0.0 && spec.alpha < 1.0, ErrorCode::invalid_argument,
          "experiment alpha must lie in (0, 1)");
  require(spec.horizon > 0.0, ErrorCode::invalid_argument, "experiment horizon must be positive");
  require(spec.levels.size() >= 2, ErrorCode::invalid_argument,
          "a ladder needs at least two levels");
  auto increasing = [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) return false;
    return true;
  };
  require(increasing(spec.levels), ErrorCode::invalid_argument,
          "ladder levels must strictly increase in refinement");
  require(spec.e2_levels.empty() || spec.want_e2, ErrorCode::invalid_argument,
          "e2_levels given but the second error is not requested");
  require(spec.e2_levels.empty() || increasing(spec.e2_levels), ErrorCode::invalid_argument,
          "e2 ladder levels must strictly increase in refinement");

  int swept_ref = spec.axis == SweepAxis::space ? spec.ref_h_level : spec.ref_tau_level;
  int fixed_ref = spec.axis == SweepAxis::space ? spec.ref_tau_level : spec.ref_h_level;
  int finest = spec.levels.back();
  if (!spec.e2_levels.empty()) finest = std::max(finest, spec.e2_levels.back());
  require(swept_ref > finest, ErrorCode::invalid_argument,
          "the reference must be strictly finer than the ladder on the swept axis");
  require(fixed_ref >= spec.fixed_level, ErrorCode::invalid_argument,
          "the reference cannot be coarser than the fixed resolution");
}

std::string cache_file_name(const ExperimentSpec& spec) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "ref-%s-a%.6g-d%d-h%d-t%d.ckpt", spec.data_case.c_str(),
                spec.alpha, spec.dim, spec.ref_h_level, spec.ref_tau_level);
  return buf;
}

std::string fmt_level(int level) { return "2^-" + std::to_string(level); }

std::string fmt_err_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string fmt_order(double v) {
  if (!std::isfinite(v)) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double mean_last_two(const std::vector<double>& orders) {
  if (orders.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (orders.size() == 1) return orders.back();
  return 0.5 * (orders[orders.size() - 2] + orders.back());
}

// index of `level` in `ladder`, or npos
std::size_t ladder_pos(const std::vector<int>& ladder, int level) {
  auto it = std::find(ladder.begin(), ladder.end(), level);
  return it == ladder.end() ? std::string::npos : static_cast<std::size_t>(it - ladder.begin());
}

void append_check(RunRecord& rec, bool ok, const std::string& text) {
  rec.checks.push_back(text + (ok ? ": ok" : ": FAIL"));
  if (!ok) rec.pass = false;
}

void evaluate_orders(RunRecord& rec, const char* label, const std::vector<int>& ladder,
                     const std::vector<double>& orders, const OrderBand& bd) {
  if (!bd.set) return;
  char buf[160];
  if (orders.size() + 1 != ladder.size()) {
    append_check(rec, false, std::string(label) + " orders unavailable");
    return;
  }
  double m = mean_last_two(orders);
  std::snprintf(buf, sizeof buf, "%s order mean of last two = %.3f, band [%.2f, %.2f]", label, m,
                bd.lo, bd.hi);
  append_check(rec, std::isfinite(m) && m >= bd.lo && m <= bd.hi, buf);
}

nlohmann::json orders_to_json(const std::vector<double>& orders) {
  nlohmann::json arr = nlohmann::json::array();
  for (double v : orders) {
    if (std::isfinite(v))
      arr.push_back(v);
    else
      arr.push_back(nullptr);
  }
  return arr;
}

std::vector<double> orders_from_json(const nlohmann::json& arr) {
  std::vector<double> out;
  for (const auto& el : arr)
    out.push_back(el.is_null() ? std::numeric_limits<double>::quiet_NaN()
                               : el.get<double>());
  return out;
}

}  // namespace

ProblemData problem_for(const ExperimentSpec& spec) {
  ProblemData data;
  data.alpha = spec.alpha;
  data.horizon = spec.horizon;
  if (spec.data_case == "f-smooth" || spec.data_case == "f-sharp") {
    require(spec.dim == 1, ErrorCode::domain,
            "the power-singularity sources are defined on the interval only");
    double p = spec.data_case == "f-smooth" ? 0.49 : 0.99;
    data.source = SourceField{
        [p](double x, double, double t) { return std::pow(x, -p) * std::pow(t, -0.49); }, 0.49, p};
  } else if (spec.data_case == "u0-power") {
    require(spec.dim == 1, ErrorCode::domain,
            "the power-singularity initial data is defined on the interval only");
    data.initial = InitialField{[](double x, double) { return std::pow(x, -0.49); }, 0.49};
  } else if (spec.data_case == "dirac-f") {
    data.source = SourcePoint{0.5, 0.5, 1.0, 0.49};
  } else if (spec.data_case == "dirac-u0") {
    data.initial = InitialPoint{0.5, 0.5};
  } else {
    fail(ErrorCode::invalid_argument, "unknown data case '" + spec.data_case + "'");
  }
  return data;
}

std::vector<ExperimentSpec> preset_registry() {
  std::vector<ExperimentSpec> reg;

  auto add_desk_variant = [&reg](ExperimentSpec s, std::vector<int> levels,
                                 std::vector<int> e2_levels, int fixed_level, int ref_h,
                                 int ref_tau) {
    s.name += "-desk";
    s.description += "; scaled to desk size";
    s.levels = std::move(levels);
    s.e2_levels = std::move(e2_levels);
    s.fixed_level = fixed_level;
    s.ref_h_level = ref_h;
    s.ref_tau_level = ref_tau;
    s.desk = true;
    reg.push_back(std::move(s));
  };

  {
    ExperimentSpec s =
        make_spec("exp1-f-smooth-tau", "u0 = 0, f = x^-0.49 t^-0.49 on (0,1); sweep tau", 1,
                  "f-smooth", 0.0, SweepAxis::time, {13, 14, 15, 16}, 10, 10, 18, false);
    s.want_e2 = true;
    s.e2_levels = {11, 12, 13, 14};
    s.e1_band = band(0.8, 1.2);
    s.e2_band = band(0.35, 0.7);
    reg.push_back(s);
    add_desk_variant(s, {8, 9, 10, 11}, {}, 8, 8, 13);
  }
  {
    ExperimentSpec s =
        make_spec("exp1-f-smooth-h", "u0 = 0, f = x^-0.49 t^-0.49 on (0,1); sweep h", 1,
                  "f-smooth", 0.0, SweepAxis::space, {4, 5, 6, 7}, 18, 10, 18, false);
    s.want_e2 = true;
    s.e1_band = band(1.75, 2.1);
    s.e2_band = band(0.8, 1.1);
    reg.push_back(s);
    add_desk_variant(s, {3, 4, 5, 6}, {}, 13, 8, 13);
  }
  {
    ExperimentSpec s =
        make_spec("exp1-f-sharp-tau", "u0 = 0, f = x^-0.99 t^-0.49 on (0,1); sweep tau", 1,
                  "f-sharp", 0.5, SweepAxis::time, {12, 13, 14, 15}, 10, 10, 18, false);
    s.want_e2 = true;
    s.e2_levels = {9, 10, 11, 12};
    s.e1_band = band(0.7, 1.1);
    s.e2_band = band(0.2, 0.6);
    reg.push_back(s);
    add_desk_variant(s, {7, 8, 9, 10}, {}, 8, 8, 13);
  }
  {
    ExperimentSpec s =
        make_spec("exp1-f-sharp-h", "u0 = 0, f = x^-0.99 t^-0.49 on (0,1); sweep h", 1, "f-sharp",
                  0.5, SweepAxis::space, {4, 5, 6, 7}, 18, 10, 18, false);
    s.want_e2 = true;
    s.e1_band = band(1.35, 1.7);
    s.e2_band = band(0.4, 0.7);
    reg.push_back(s);
    add_desk_variant(s, {3, 4, 5, 6}, {}, 13, 8, 13);
  }
  {
    ExperimentSpec s = make_spec("exp1-u0-tau", "u0 = x^-0.49, f = 0 on (0,1); sweep tau", 1,
                                 "u0-power", 0.0, SweepAxis::time, {9, 10, 11, 12}, 10, 10, 18,
                                 false);
    s.e1_band = band(0.4, 0.75);
    reg.push_back(s);
    add_desk_variant(s, {4, 5, 6, 7}, {}, 8, 8, 13);
  }
  {
    ExperimentSpec s = make_spec("exp1-u0-h", "u0 = x^-0.49, f = 0 on (0,1); sweep h", 1,
                                 "u0-power", 0.0, SweepAxis::space, {4, 5, 6, 7}, 18, 10, 18,
                                 false);
    s.e1_band = band(1.75, 2.1);
    reg.push_back(s);
    add_desk_variant(s, {3, 4, 5, 6}, {}, 13, 8, 13);
  }
  {
    ExperimentSpec s = make_spec(
        "exp2-dirac-f-h", "u0 = 0, f = t^-0.49 times a point mass at (0.5, 0.5); sweep h", 2,
        "dirac-f", 1.0, SweepAxis::space, {3, 4, 5, 6}, 12, 8, 12, false);
    s.e1_band = band(0.85, 1.15);
    reg.push_back(s);
    add_desk_variant(s, {2, 3, 4, 5}, {}, 10, 7, 10);
  }
  {
    ExperimentSpec s = make_spec(
        "exp2-dirac-f-tau", "u0 = 0, f = t^-0.49 times a point mass at (0.5, 0.5); sweep tau", 2,
        "dirac-f", 1.0, SweepAxis::time, {3, 4, 5, 6}, 8, 8, 12, false);
    s.e1_band = band(0.4, 0.75);
    reg.push_back(s);
    add_desk_variant(s, {3, 4, 5, 6}, {}, 7, 7, 10);
  }
  {
    ExperimentSpec s =
        make_spec("exp2-dirac-u0-h", "u0 = point mass at (0.5, 0.5), f = 0; sweep h", 2,
                  "dirac-u0", 1.0, SweepAxis::space, {3, 4, 5, 6}, 12, 8, 12, false);
    s.e1_band = band(0.85, 1.15);
    reg.push_back(s);
    add_desk_variant(s, {2, 3, 4, 5}, {}, 10, 7, 10);
  }
  {
    ExperimentSpec s =
        make_spec("exp2-dirac-u0-tau", "u0 = point mass at (0.5, 0.5), f = 0; sweep tau", 2,
                  "dirac-u0", 1.0, SweepAxis::time, {7, 8, 9, 10}, 8, 8, 12, false);
    s.e1_band = band(0.35, 0.75);
    reg.push_back(s);
    add_desk_variant(s, {5, 6, 7, 8}, {}, 7, 7, 10);
  }

  return reg;
}

ExperimentSpec find_preset(const std::string& name) {
  for (auto& spec : preset_registry())
    if (spec.name == name) return spec;
  fail(ErrorCode::not_found, "no preset named '" + name + "'");
}

RunRecord run_experiment(const ExperimentSpec& spec, const RunOptions& opt) {
  validate(spec);
  ProblemData data = problem_for(spec);

  RunRecord rec;
  rec.spec = spec;
  rec.seed = opt.seed;
  Clock::time_point run_start = Clock::now();

  std::string cache_path;
  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    cache_path = (std::filesystem::path(opt.cache_dir) / cache_file_name(spec)).string();
    rec.artifacts.push_back(cache_path);
  }

  Clock::time_point ref_start = Clock::now();
  DGSolution ref = fine_reference(data, spec.dim, spec.ref_h_level, spec.ref_tau_level, cache_path);
  rec.ref_seconds = seconds_since(ref_start);

  const std::vector<int>& e2_ladder =
      spec.want_e2 ? (spec.e2_levels.empty() ? spec.levels : spec.e2_levels) : spec.e2_levels;
  std::set<int> all_levels(spec.levels.begin(), spec.levels.end());
  all_levels.insert(e2_ladder.begin(), e2_ladder.end());

  rec.rows.reserve(all_levels.size());
  for (int level : all_levels) {
    LevelRow row;
    row.level = level;
    row.has_e2 = spec.want_e2 && ladder_pos(e2_ladder, level) != std::string::npos;
    rec.rows.push_back(row);
  }

  auto run_level = [&](LevelRow& row) {
    try {
      int h_level = spec.axis == SweepAxis::space ? row.level : spec.fixed_level;
      int tau_level = spec.axis == SweepAxis::time ? row.level : spec.fixed_level;
      int n = 1 << h_level;
      auto steps = static_cast<std::size_t>(1) << tau_level;
      FemSpace space =
          spec.dim == 1 ? assemble(build_interval_mesh(n)) : assemble(build_square_mesh(n));
      TimeGrid grid = TimeGrid::uniform(steps, spec.horizon);

      Clock::time_point t0 = Clock::now();
      DGSolution U = solve(data, space, grid);
      row.solve_seconds = seconds_since(t0);

      t0 = Clock::now();
      row.e1 = e1_l2l2(U, ref);
      if (row.has_e2) row.e2 = e2_fractional(U, ref, spec.alpha);
      row.norm_seconds = seconds_since(t0);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  int jobs = std::clamp(opt.jobs, 1, static_cast<int>(rec.rows.size()));
  if (jobs <= 1) {
    for (auto& row : rec.rows) run_level(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < rec.rows.size(); i = next.fetch_add(1))
          run_level(rec.rows[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& row : rec.rows)
    if (!row.ok) append_check(rec, false, "level " + fmt_level(row.level) + ": " + row.error);

  auto gather = [&](const std::vector<int>& ladder, bool second) {
    std::vector<double> errs;
    for (int level : ladder) {
      for (const auto& row : rec.rows) {
        if (row.level != level || !row.ok) continue;
        if (second && row.has_e2)
          errs.push_back(row.e2);
        else if (!second)
          errs.push_back(row.e1);
      }
    }
    return errs;
  };

  std::vector<double> e1_ladder_errs = gather(spec.levels, false);
  if (e1_ladder_errs.size() == spec.levels.size()) {
    rec.e1_orders = observed_orders(e1_ladder_errs);
    bool decreasing = true;
    for (std::size_t i = 1; i < e1_ladder_errs.size(); ++i)
      decreasing = decreasing && e1_ladder_errs[i] < e1_ladder_errs[i - 1];
    append_check(rec, decreasing, "E1 strictly decreasing along the ladder");
  }
  evaluate_orders(rec, "E1", spec.levels, rec.e1_orders, spec.e1_band);

  if (spec.want_e2) {
    std::vector<double> e2_ladder_errs = gather(e2_ladder, true);
    if (e2_ladder_errs.size() == e2_ladder.size()) rec.e2_orders = observed_orders(e2_ladder_errs);
    evaluate_orders(rec, "E2", e2_ladder, rec.e2_orders, spec.e2_band);
  }

  rec.total_seconds = seconds_since(run_start);
  return rec;
}

std::string emit_tables(const RunRecord& record, TableFormat format) {
  const ExperimentSpec& spec = record.spec;
  const std::vector<int>& e2_ladder =
      spec.want_e2 ? (spec.e2_levels.empty() ? spec.levels : spec.e2_levels) : spec.e2_levels;
  bool any_e2 = false;
  for (const auto& row : record.rows) any_e2 = any_e2 || row.has_e2;

  std::vector<std::string> header = {spec.axis == SweepAxis::space ? "h" : "tau", "E1",
                                     "E1 order"};
  if (any_e2) {
    header.push_back("E2");
    header.push_back("E2 order");
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back(header);
  for (const auto& row : record.rows) {
    std::vector<std::string> line;
    line.push_back(fmt_level(row.level));
    line.push_back(row.ok ? fmt_err_value(row.e1) : "--");
    std::size_t pos = ladder_pos(spec.levels, row.level);
    bool have_orders = record.e1_orders.size() + 1 == spec.levels.size();
    line.push_back(row.ok && have_orders && pos != std::string::npos && pos > 0
                       ? fmt_order(record.e1_orders[pos - 1])
                       : "--");
    if (any_e2) {
      line.push_back(row.ok && row.has_e2 ? fmt_err_value(row.e2) : "--");
      std::size_t epos = ladder_pos(e2_ladder, row.level);
      bool have_e2_orders = record.e2_orders.size() + 1 == e2_ladder.size();
      line.push_back(row.ok && row.has_e2 && have_e2_orders && epos != std::string::npos &&
                             epos > 0
                         ? fmt_order(record.e2_orders[epos - 1])
                         : "--");
    }
    cells.push_back(std::move(line));
  }

  std::string out;
  if (format == TableFormat::csv) {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i) out += ',';
        out += line[i];
      }
      out += '\n';
    }
  } else {
    for (std::size_t r = 0; r < cells.size(); ++r) {
      out += "|";
      for (const auto& cell : cells[r]) out += " " + cell + " |";
      out += '\n';
      if (r == 0) {
        out += "|";
        for (std::size_t i = 0; i < cells[0].size(); ++i) out += " --- |";
        out += '\n';
      }
    }
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv_table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::istringstream is(text);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(cur);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string record_to_json(const RunRecord& record) {
  nlohmann::json spec;
  const ExperimentSpec& s = record.spec;
  spec["name"] = s.name;
  spec["description"] = s.description;
  spec["dim"] = s.dim;
  spec["alpha"] = s.alpha;
  spec["horizon"] = s.horizon;
  spec["data_case"] = s.data_case;
  spec["beta"] = s.beta;
  spec["axis"] = s.axis == SweepAxis::space ? "h" : "tau";
  spec["levels"] = s.levels;
  spec["e2_levels"] = s.e2_levels;
  spec["fixed_level"] = s.fixed_level;
  spec["ref_h_level"] = s.ref_h_level;
  spec["ref_tau_level"] = s.ref_tau_level;
  spec["want_e2"] = s.want_e2;
  if (s.e1_band.set) spec["e1_band"] = {s.e1_band.lo, s.e1_band.hi};
  if (s.e2_band.set) spec["e2_band"] = {s.e2_band.lo, s.e2_band.hi};
  spec["desk"] = s.desk;

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : record.rows) {
    nlohmann::json r;
    r["level"] = row.level;
    r["ok"] = row.ok;
    if (!row.ok) r["error"] = row.error;
    r["e1"] = row.e1;
    if (row.has_e2) r["e2"] = row.e2;
    r["solve_seconds"] = row.solve_seconds;
    r["norm_seconds"] = row.norm_seconds;
    rows.push_back(std::move(r));
  }

  nlohmann::json j;
  j["spec"] = std::move(spec);
  j["rows"] = std::move(rows);
  j["e1_orders"] = orders_to_json(record.e1_orders);
  j["e2_orders"] = orders_to_json(record.e2_orders);
  j["ref_seconds"] = record.ref_seconds;
  j["total_seconds"] = record.total_seconds;
  j["seed"] = record.seed;
  j["checks"] = record.checks;
  j["artifacts"] = record.artifacts;
  j["pass"] = record.pass;
  return j.dump(2) + "\n";
}

RunRecord record_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorCode::bad_data, "record is not valid json");
  for (const char* key : {"spec", "rows", "e1_orders", "e2_orders", "checks", "pass"})
    require(j.contains(key), ErrorCode::bad_data, std::string("record is missing '") + key + "'");

  RunRecord rec;
  const nlohmann::json& spec = j["spec"];
  ExperimentSpec& s = rec.spec;
  s.name = spec.at("name").get<std::string>();
  s.description = spec.at("description").get<std::string>();
  s.dim = spec.at("dim").get<int>();
  s.alpha = spec.at("alpha").get<double>();
  s.horizon = spec.at("horizon").get<double>();
  s.data_case = spec.at("data_case").get<std::string>();
  s.beta = spec.at("beta").get<double>();
  std::string axis = spec.at("axis").get<std::string>();
  require(axis == "h" || axis == "tau", ErrorCode::bad_data, "record axis must be 'h' or 'tau'");
  s.axis = axis == "h" ? SweepAxis::space : SweepAxis::time;
  s.levels = spec.at("levels").get<std::vector<int>>();
  s.e2_levels = spec.at("e2_levels").get<std::vector<int>>();
  s.fixed_level = spec.at("fixed_level").get<int>();
  s.ref_h_level = spec.at("ref_h_level").get<int>();
  s.ref_tau_level = spec.at("ref_tau_level").get<int>();
  s.want_e2 = spec.at("want_e2").get<bool>();
  if (spec.contains("e1_band")) {
    auto b = spec["e1_band"].get<std::vector<double>>();
    require(b.size() == 2, ErrorCode::bad_data, "e1_band must have two entries");
    s.e1_band = band(b[0], b[1]);
  }
  if (spec.contains("e2_band")) {
    auto b = spec["e2_band"].get<std::vector<double>>();
    require(b.size() == 2, ErrorCode::bad_data, "e2_band must have two entries");
    s.e2_band = band(b[0], b[1]);
  }
  s.desk = spec.at("desk").get<bool>();

  for (const auto& r : j["rows"]) {
    LevelRow row;
    row.level = r.at("level").get<int>();
    row.ok = r.at("ok").get<bool>();
    if (r.contains("error")) row.error = r["error"].get<std::string>();
    row.e1 = r.at("e1").get<double>();
    if (r.contains("e2")) {
      row.has_e2 = true;
      row.e2 = r["e2"].get<double>();
    }
    row.solve_seconds = r.value("solve_seconds", 0.0);
    row.norm_seconds = r.value("norm_seconds", 0.0);
    rec.rows.push_back(std::move(row));
  }

  rec.e1_orders = orders_from_json(j["e1_orders"]);
  rec.e2_orders = orders_from_json(j["e2_orders"]);
  rec.ref_seconds = j.value("ref_seconds", 0.0);
  rec.total_seconds = j.value("total_seconds", 0.0);
  rec.seed = j.value("seed", 0ull);
  rec.checks = j["checks"].get<std::vector<std::string>>();
  if (j.contains("artifacts")) rec.artifacts = j["artifacts"].get<std::vector<std::string>>();
  rec.pass = j["pass"].get<bool>();
  return rec;
}

ExperimentSpec spec_from_toml(const std::string& path) {
  TomlTable table = parse_toml_file(path);

  ExperimentSpec spec;
  if (auto it = table.find("preset"); it != table.end()) {
    require(it->second.is_string(), ErrorCode::bad_data, "preset must be a string");
    spec = find_preset(it->second.as_string());
  }

  auto number = [&](const TomlValue& v, const std::string& key) {
    require(v.is_number(), ErrorCode::bad_data, "'" + key + "' must be a number");
    return v.as_number();
  };
  auto integer = [&](const TomlValue& v, const std::string& key) {
    double d = number(v, key);
    require(d == std::floor(d), ErrorCode::bad_data, "'" + key + "' must be an integer");
    return static_cast<int>(d);
  };
  auto int_list = [&](const TomlValue& v, const std::string& key) {
    require(v.is_number_array(), ErrorCode::bad_data, "'" + key + "' must be an array of numbers");
    std::vector<int> out;
    for (double d : v.as_number_array()) {
      require(d == std::floor(d), ErrorCode::bad_data, "'" + key + "' entries must be integers");
      out.push_back(static_cast<int>(d));
    }
    return out;
  };
  auto band_value = [&](const TomlValue& v, const std::string& key) {
    require(v.is_number_array() && v.as_number_array().size() == 2, ErrorCode::bad_data,
            "'" + key + "' must be a [low, high] pair");
    return band(v.as_number_array()[0], v.as_number_array()[1]);
  };
  auto text = [&](const TomlValue& v, const std::string& key) {
    require(v.is_string(), ErrorCode::bad_data, "'" + key + "' must be a string");
    return v.as_string();
  };
  auto flag = [&](const TomlValue& v, const std::string& key) {
    require(v.is_bool(), ErrorCode::bad_data, "'" + key + "' must be true or false");
    return v.as_bool();
  };

  for (const auto& [key, value] : table) {
    if (key == "preset") continue;
    if (key == "name")
      spec.name = text(value, key);
    else if (key == "description")
      spec.description = text(value, key);
    else if (key == "dim")
      spec.dim = integer(value, key);
    else if (key == "alpha")
      spec.alpha = number(value, key);
    else if (key == "horizon")
      spec.horizon = number(value, key);
    else if (key == "data_case")
      spec.data_case = text(value, key);
    else if (key == "beta")
      spec.beta = number(value, key);
    else if (key == "axis") {
      std::string axis = text(value, key);
      require(axis == "h" || axis == "tau", ErrorCode::bad_data, "axis must be 'h' or 'tau'");
      spec.axis = axis == "h" ? SweepAxis::space : SweepAxis::time;
    } else if (key == "levels")
      spec.levels = int_list(value, key);
    else if (key == "e2_levels")
      spec.e2_levels = int_list(value, key);
    else if (key == "fixed_level")
      spec.fixed_level = integer(value, key);
    else if (key == "ref_h_level")
      spec.ref_h_level = integer(value, key);
    else if (key == "ref_tau_level")
      spec.ref_tau_level = integer(value, key);
    else if (key == "want_e2")
      spec.want_e2 = flag(value, key);
    else if (key == "e1_band")
      spec.e1_band = band_value(value, key);
    else if (key == "e2_band")
      spec.e2_band = band_value(value, key);
    else if (key == "desk")
      spec.desk = flag(value, key);
    else
      fail(ErrorCode::bad_data, "unknown config key '" + key + "'");
  }

  if (spec.name.empty()) spec.name = "custom";
  return spec;
}

}  // namespace tfdg
