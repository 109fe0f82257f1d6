#include "tfdg/tfdg.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "experiment.hpp"
#include "mittag_leffler.hpp"

using namespace tfdg;

struct tfdg_run {
  RunRecord record;
};

namespace {

static_assert(static_cast<int>(ErrorCode::invalid_argument) == TFDG_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::internal) == TFDG_ERR_INTERNAL);

thread_local std::string g_last_error;

template <class F>
int guarded(F&& body) {
  try {
    body();
    return TFDG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TFDG_ERR_INTERNAL;
  }
}

int reject(const char* msg) {
  g_last_error = msg;
  return TFDG_ERR_INVALID_ARGUMENT;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int hand_over(const std::string& s, char** out) {
  *out = copy_out(s);
  if (*out == nullptr) {
    g_last_error = "out of memory";
    return TFDG_ERR_INTERNAL;
  }
  return TFDG_OK;
}

void run_spec(ExperimentSpec spec, const tfdg_run_options* options, tfdg_run** out) {
  RunOptions ro;
  if (options != nullptr) {
    if (options->cache_dir != nullptr) ro.cache_dir = options->cache_dir;
    ro.jobs = options->jobs > 1 ? options->jobs : 1;
    ro.seed = options->seed;
    if (options->alpha != 0.0) spec.alpha = options->alpha;
    if (options->levels != nullptr && options->n_levels > 0) {
      spec.levels.assign(options->levels, options->levels + options->n_levels);
      spec.e2_levels.clear();
    }
  }
  auto run = std::make_unique<tfdg_run>();
  run->record = run_experiment(spec, ro);
  *out = run.release();
}

}  // namespace

extern "C" {

const char* tfdg_last_error(void) { return g_last_error.c_str(); }

int tfdg_ml_neg(double alpha, double beta, double x, double* out) {
  if (out == nullptr) return reject("null output pointer");
  return guarded([&] { *out = ml_neg(alpha, beta, x); });
}

int tfdg_run_preset(const char* name, const tfdg_run_options* options, tfdg_run** out) {
  if (name == nullptr || out == nullptr) return reject("null preset name or output pointer");
  return guarded([&] { run_spec(find_preset(name), options, out); });
}

int tfdg_run_config(const char* toml_path, const tfdg_run_options* options, tfdg_run** out) {
  if (toml_path == nullptr || out == nullptr) return reject("null config path or output pointer");
  return guarded([&] { run_spec(spec_from_toml(toml_path), options, out); });
}

int tfdg_run_save(const tfdg_run* run, const char* json_path) {
  if (run == nullptr || json_path == nullptr) return reject("null run or path");
  return guarded([&] {
    std::ofstream out(json_path);
    out << record_to_json(run->record);
    require(out.good(), ErrorCode::io_failure, std::string("cannot write ") + json_path);
  });
}

int tfdg_run_load(const char* json_path, tfdg_run** out) {
  if (json_path == nullptr || out == nullptr) return reject("null path or output pointer");
  return guarded([&] {
    std::ifstream in(json_path);
    require(in.good(), ErrorCode::io_failure, std::string("cannot open ") + json_path);
    std::ostringstream text;
    text << in.rdbuf();
    auto run = std::make_unique<tfdg_run>();
    run->record = record_from_json(text.str());
    *out = run.release();
  });
}

int tfdg_run_table(const tfdg_run* run, int markdown, char** out) {
  if (run == nullptr || out == nullptr) return reject("null run or output pointer");
  int rc = TFDG_OK;
  int inner = guarded([&] {
    rc = hand_over(
        emit_tables(run->record, markdown != 0 ? TableFormat::markdown : TableFormat::csv), out);
  });
  return inner != TFDG_OK ? inner : rc;
}

int tfdg_run_json(const tfdg_run* run, char** out) {
  if (run == nullptr || out == nullptr) return reject("null run or output pointer");
  int rc = TFDG_OK;
  int inner = guarded([&] { rc = hand_over(record_to_json(run->record), out); });
  return inner != TFDG_OK ? inner : rc;
}

int tfdg_run_name(const tfdg_run* run, char** out) {
  if (run == nullptr || out == nullptr) return reject("null run or output pointer");
  return hand_over(run->record.spec.name, out);
}

int tfdg_run_pass(const tfdg_run* run) {
  if (run == nullptr) return -reject("null run");
  return run->record.pass ? 1 : 0;
}

void tfdg_run_free(tfdg_run* run) { delete run; }

int tfdg_preset_list(char** out) {
  if (out == nullptr) return reject("null output pointer");
  int rc = TFDG_OK;
  int inner = guarded([&] {
    std::string lines;
    for (const auto& spec : preset_registry()) {
      lines += spec.name;
      lines += '\t';
      lines += spec.description;
      lines += '\n';
    }
    rc = hand_over(lines, out);
  });
  return inner != TFDG_OK ? inner : rc;
}

void tfdg_string_free(char* s) { std::free(s); }

}  // extern "C"
