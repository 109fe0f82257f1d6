#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfdg/tfdg.h"

namespace {

int report(const char* stage) {
  std::fprintf(stderr, "tfdg: %s: %s\n", stage, tfdg_last_error());
  return 2;
}

bool write_text(const std::filesystem::path& path, const char* text) {
  std::ofstream out(path);
  out << text;
  return out.good();
}

int cmd_run(const std::string& target, const tfdg_run_options& options,
            const std::string& out_dir) {
  tfdg_run* run = nullptr;
  bool from_config = target.size() > 5 && target.rfind(".toml") == target.size() - 5;
  int rc = from_config ? tfdg_run_config(target.c_str(), &options, &run)
                       : tfdg_run_preset(target.c_str(), &options, &run);
  if (rc != TFDG_OK) return report("run");

  char* name = nullptr;
  char* csv = nullptr;
  char* md = nullptr;
  char* json = nullptr;
  int status = 2;
  do {
    if (tfdg_run_name(run, &name) != TFDG_OK || tfdg_run_table(run, 0, &csv) != TFDG_OK ||
        tfdg_run_table(run, 1, &md) != TFDG_OK || tfdg_run_json(run, &json) != TFDG_OK) {
      status = report("format");
      break;
    }

    std::filesystem::path base(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(base / "tables", ec);
    std::filesystem::create_directories(base / "records", ec);
    std::string leaf = name;
    if (!write_text(base / "tables" / (leaf + ".csv"), csv) ||
        !write_text(base / "tables" / (leaf + ".md"), md) ||
        !write_text(base / "records" / (leaf + ".json"), json)) {
      std::fprintf(stderr, "tfdg: cannot write outputs under %s\n", out_dir.c_str());
      break;
    }

    std::printf("%s\n%s", leaf.c_str(), md);
    status = tfdg_run_pass(run) == 1 ? 0 : 1;
    if (status == 1) std::printf("one or more checks failed; see records/%s.json\n", leaf.c_str());
  } while (false);

  tfdg_string_free(name);
  tfdg_string_free(csv);
  tfdg_string_free(md);
  tfdg_string_free(json);
  tfdg_run_free(run);
  return status;
}

int cmd_list() {
  char* list = nullptr;
  if (tfdg_preset_list(&list) != TFDG_OK) return report("list-presets");
  std::string text = list;
  tfdg_string_free(list);

  size_t widest = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t tab = text.find('\t', start);
    widest = std::max(widest, tab - start);
    start = text.find('\n', tab) + 1;
  }
  start = 0;
  while (start < text.size()) {
    size_t tab = text.find('\t', start);
    size_t end = text.find('\n', tab);
    std::printf("%-*s  %s\n", static_cast<int>(widest), text.substr(start, tab - start).c_str(),
                text.substr(tab + 1, end - tab - 1).c_str());
    start = end + 1;
  }
  return 0;
}

int cmd_emit(const std::string& record_path, const std::string& format) {
  tfdg_run* run = nullptr;
  if (tfdg_run_load(record_path.c_str(), &run) != TFDG_OK) return report("emit");
  char* table = nullptr;
  int rc = tfdg_run_table(run, format == "markdown" ? 1 : 0, &table);
  if (rc == TFDG_OK) std::fputs(table, stdout);
  tfdg_string_free(table);
  tfdg_run_free(run);
  return rc == TFDG_OK ? 0 : report("emit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convergence studies for a time-fractional diffusion solver"};
  app.require_subcommand(1);

  std::string target;
  std::string cache_dir;
  std::string out_dir = ".";
  std::vector<int> levels;
  double alpha = 0.0;
  int jobs = 1;
  unsigned long long seed = 0;

  CLI::App* run = app.add_subcommand("run", "run a preset or a .toml config file");
  run->add_option("target", target, "preset name, or path ending in .toml")->required();
  run->add_option("--cache-dir", cache_dir, "directory for reference checkpoints");
  run->add_option("--levels", levels, "override the refinement ladder, e.g. 3,4,5")
      ->delimiter(',');
  run->add_option("--alpha", alpha, "override the fractional order");
  run->add_option("--jobs", jobs, "worker threads across ladder levels");
  run->add_option("--seed", seed, "seed recorded with the run");
  run->add_option("--out", out_dir, "directory that receives tables/ and records/");

  app.add_subcommand("list-presets", "print the preset registry");

  std::string record_path;
  std::string format = "markdown";
  CLI::App* emit = app.add_subcommand("emit", "print the tables stored in a run record");
  emit->add_option("record", record_path, "record .json written by run")->required();
  emit->add_option("--format", format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    tfdg_run_options options{};
    options.cache_dir = cache_dir.empty() ? nullptr : cache_dir.c_str();
    options.levels = levels.empty() ? nullptr : levels.data();
    options.n_levels = levels.size();
    options.alpha = alpha;
    options.jobs = jobs;
    options.seed = seed;
    return cmd_run(target, options, out_dir);
  }
  if (emit->parsed()) return cmd_emit(record_path, format);
  return cmd_list();
}
