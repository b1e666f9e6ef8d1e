// Exercises the shared library through its C surface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "srk/srk.h"

namespace {

struct Str {
  char* value = nullptr;
  ~Str() { srk_string_free(value); }
  std::string str() const { return value == nullptr ? "" : value; }
};

void gbm_drift(double, const double* x, double* out, void*) { out[0] = 0.5 * x[0]; }
void gbm_diffusion(double, const double* x, double* out, void*) { out[0] = 0.3 * x[0]; }

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(srk_version()) > 0);
  srk_table* table = nullptr;
  CHECK(srk_table_bundled("missing", &table) == SRK_ERR_INVALID);
  CHECK(std::string(srk_last_error()).find("missing") != std::string::npos);
  CHECK(srk_table_bundled(nullptr, &table) == SRK_ERR_INVALID);
}

TEST_CASE("tables through the C surface") {
  Str names;
  REQUIRE(srk_table_list_bundled(&names.value) == SRK_OK);
  const std::string list = names.str();
  for (const char* expected : {"SRK1W1", "SRK2W1", "K1P1", "SRK1Wm", "SRK2Wm"})
    CHECK(list.find(expected) != std::string::npos);

  srk_table* table = nullptr;
  REQUIRE(srk_table_bundled("SRK1W1", &table) == SRK_OK);
  CHECK(std::string(srk_table_name(table)) == "SRK1W1");
  CHECK(std::string(srk_table_kind(table)) == "scalar_strong");
  CHECK(srk_table_stages(table) == 4);
  Str det, stoch;
  REQUIRE(srk_table_orders(table, &det.value, &stoch.value) == SRK_OK);
  CHECK(det.str() == "2");
  CHECK(stoch.str() == "1.5");

  Str report;
  int ok = -1;
  REQUIRE(srk_table_validate(table, &report.value, &ok) == SRK_OK);
  CHECK(ok == 1);
  CHECK(report.str().find("sum(a) = 1") != std::string::npos);

  Str rendered;
  REQUIRE(srk_table_render_math(table, &rendered.value) == SRK_OK);
  CHECK(rendered.str().find("\\begin{array}") != std::string::npos);

  Str json;
  REQUIRE(srk_table_to_json(table, &json.value) == SRK_OK);
  srk_table* reparsed = nullptr;
  REQUIRE(srk_table_load_json(json.str().c_str(), &reparsed) == SRK_OK);
  CHECK(std::string(srk_table_name(reparsed)) == "SRK1W1");
  srk_table_free(reparsed);
  srk_table_free(table);

  CHECK(srk_table_load_json("{", &table) == SRK_ERR_INVALID);
  CHECK(srk_table_load_file("/nonexistent/nope.json", &table) == SRK_ERR_IO);
}

TEST_CASE("paths through the C surface") {
  srk_path* path = nullptr;
  REQUIRE(srk_path_generate(7, 0.0, 1.0, 16, 2, &path) == SRK_OK);
  CHECK(srk_path_steps(path) == 16);
  CHECK(srk_path_noise_dim(path) == 2);
  std::vector<double> w(17 * 2);
  REQUIRE(srk_path_cumulative(path, w.data()) == SRK_OK);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);

  const auto csv = std::filesystem::temp_directory_path() / "srk_capi_path.csv";
  REQUIRE(srk_path_write_csv(path, csv.string().c_str()) == SRK_OK);
  srk_path* loaded = nullptr;
  REQUIRE(srk_path_read_csv(csv.string().c_str(), &loaded) == SRK_OK);
  CHECK(srk_path_steps(loaded) == 16);
  srk_path_free(loaded);
  srk_path_free(path);
  std::filesystem::remove(csv);

  CHECK(srk_path_generate(7, 0.0, 1.0, 0, 1, &path) == SRK_ERR_INVALID);
}

TEST_CASE("simulation determinism and problems") {
  srk_problem* problem = nullptr;
  REQUIRE(srk_problem_create("gbm(mu=0.5,sigma=0.3,x0=1)", &problem) == SRK_OK);
  CHECK(srk_problem_dim(problem) == 1);
  CHECK(srk_problem_noise_dim(problem) == 1);
  double x0 = 0.0;
  REQUIRE(srk_problem_initial_state(problem, &x0) == SRK_OK);
  CHECK(x0 == 1.0);

  srk_trajectory* a = nullptr;
  srk_trajectory* b = nullptr;
  REQUIRE(srk_simulate("srk1w1", problem, nullptr, 0.0, 1.0, 32, 99, 0, &a) == SRK_OK);
  REQUIRE(srk_simulate("srk1w1", problem, nullptr, 0.0, 1.0, 32, 99, 0, &b) == SRK_OK);
  CHECK(srk_trajectory_steps(a) == 32);
  std::vector<double> va(33), vb(33);
  REQUIRE(srk_trajectory_values(a, va.data()) == SRK_OK);
  REQUIRE(srk_trajectory_values(b, vb.data()) == SRK_OK);
  CHECK(va == vb);
  CHECK(va[0] == 1.0);
  srk_trajectory_free(a);
  srk_trajectory_free(b);

  // weak method draws its own randomness
  srk_trajectory* weak = nullptr;
  REQUIRE(srk_simulate("eulerw", problem, nullptr, 0.0, 1.0, 16, 5, 0, &weak) == SRK_OK);
  srk_trajectory_free(weak);

  CHECK(srk_simulate("nope", problem, nullptr, 0.0, 1.0, 16, 5, 0, &weak) == SRK_ERR_INVALID);
  srk_problem_free(problem);

  CHECK(srk_problem_create("unknown_problem", &problem) == SRK_ERR_INVALID);
}

TEST_CASE("user systems") {
  srk_system* system = nullptr;
  REQUIRE(srk_system_create(1, 1, gbm_drift, gbm_diffusion, nullptr, &system) == SRK_OK);
  const double x0 = 1.0;
  srk_trajectory* traj = nullptr;
  REQUIRE(srk_simulate_system("em", system, &x0, 0.0, 1.0, 64, 3, 0, &traj) == SRK_OK);
  CHECK(srk_trajectory_dim(traj) == 1);
  std::vector<double> values(65);
  REQUIRE(srk_trajectory_values(traj, values.data()) == SRK_OK);
  CHECK(values[0] == 1.0);
  for (double v : values) CHECK(std::isfinite(v));
  srk_trajectory_free(traj);
  srk_system_free(system);

  CHECK(srk_system_create(0, 1, gbm_drift, gbm_diffusion, nullptr, &system) == SRK_ERR_INVALID);
}

TEST_CASE("monte carlo through the C surface") {
  srk_problem* problem = nullptr;
  REQUIRE(srk_problem_create("zero(x0=2)", &problem) == SRK_OK);
  srk_mc_result* result = nullptr;
  REQUIRE(srk_mc_run("em", problem, nullptr, 0.0, 1.0, 8, 50, 2, 11, 0, &result) == SRK_OK);
  CHECK(srk_mc_accepted(result) == 50);
  CHECK(srk_mc_rejected(result) == 0);
  std::vector<double> mean(9);
  REQUIRE(srk_mc_mean(result, mean.data()) == SRK_OK);
  for (double v : mean) CHECK(v == 2.0);
  Str metadata;
  REQUIRE(srk_mc_metadata(result, &metadata.value) == SRK_OK);
  CHECK(metadata.str().find("\"trials\": 50") != std::string::npos);
  srk_mc_result_free(result);
  srk_problem_free(problem);
}

TEST_CASE("order estimation through the C surface") {
  const double hs[3] = {1.0 / 8, 1.0 / 16, 1.0 / 32};
  srk_order_report* report = nullptr;
  REQUIRE(srk_estimate_strong_order("em", "gbm", hs, 3, 40, 5, 1.0, &report) == SRK_OK);
  const double slope = srk_order_slope(report);
  CHECK(slope > 0.2);
  CHECK(slope < 0.9);
  double errors[3], stderrs[3];
  REQUIRE(srk_order_errors(report, errors, stderrs) == SRK_OK);
  CHECK(errors[0] > errors[2]);
  Str csv;
  REQUIRE(srk_order_report_text(report, &csv.value) == SRK_OK);
  CHECK(csv.str().find("h,error,mc_stderr") != std::string::npos);
  srk_order_report_free(report);

  CHECK(srk_estimate_strong_order("em", "nope", hs, 3, 10, 5, 1.0, &report) == SRK_ERR_INVALID);
}

TEST_CASE("codegen through the C surface") {
  srk_table* table = nullptr;
  REQUIRE(srk_table_bundled("SRK1Wm", &table) == SRK_OK);
  Str source, math, dialects;
  REQUIRE(srk_emit_source(table, 2, "cpp", &source.value) == SRK_OK);
  CHECK(source.str().find("strong_srk1wm_w2") != std::string::npos);
  REQUIRE(srk_emit_math(table, 2, &math.value) == SRK_OK);
  CHECK(math.str().find("x_{n+1}") != std::string::npos);
  CHECK(srk_emit_source(table, 2, "cobol", &source.value) == SRK_ERR_INVALID);
  REQUIRE(srk_dialects(&dialects.value) == SRK_OK);
  CHECK(dialects.str().find("cpp") != std::string::npos);
  srk_table_free(table);

  const auto outdir = std::filesystem::temp_directory_path() / "srk_capi_bundle";
  std::filesystem::remove_all(outdir);
  Str manifest;
  REQUIRE(srk_generate_bundle("SRK1Wm\n", 1, 2, "cpp", outdir.string().c_str(),
                              &manifest.value) == SRK_OK);
  CHECK(manifest.str().find("strong_srk1wm_w2") != std::string::npos);
  CHECK(std::filesystem::exists(outdir / "manifest.json"));
  std::filesystem::remove_all(outdir);
}
