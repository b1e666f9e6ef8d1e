#include "srk/srk.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "convergence.hpp"
#include "codegen.hpp"
#include "integrate.hpp"
#include "json.hpp"
#include "montecarlo.hpp"
#include "problems.hpp"
#include "tables.hpp"
#include "textio.hpp"
#include "wiener.hpp"

namespace {

thread_local std::string g_last_error;

srk_status fail(srk_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
srk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SRK_OK;
  } catch (const srk::Error& e) {
    return fail(static_cast<srk_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::exception& e) {
    return fail(SRK_ERR_INVALID, e.what());
  }
}

char* dup_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw srk::InvalidError(what);
}

srk::Method resolve_method(const char* method) {
  require_arg(method != nullptr, "method must not be null");
  return srk::Method::resolve(method);
}

}  // namespace

struct srk_table {
  srk::CoefficientTable table;
};

struct srk_system {
  srk::SdeSystem system;
};

struct srk_problem {
  srk::TestProblem problem;
};

struct srk_path {
  srk::WienerPath path;
};

struct srk_trajectory {
  srk::Trajectory trajectory;
};

struct srk_mc_result {
  srk::McResult result;
  srk::TimeGrid grid;
  nlohmann::json metadata;
};

struct srk_order_report {
  srk::OrderEstimate estimate;
};

extern "C" {

const char* srk_version(void) { return "1.0.0"; }

const char* srk_last_error(void) { return g_last_error.c_str(); }

void srk_string_free(char* text) { delete[] text; }

/* ---- tables ---- */

srk_status srk_table_load_json(const char* json_text, srk_table** out) {
  return guarded([&] {
    require_arg(json_text != nullptr && out != nullptr, "null argument");
    *out = new srk_table{srk::parse_table(json_text)};
  });
}

srk_status srk_table_load_file(const char* path, srk_table** out) {
  return guarded([&] {
    require_arg(path != nullptr && out != nullptr, "null argument");
    *out = new srk_table{srk::parse_table(srk::read_text_file(path))};
  });
}

srk_status srk_table_bundled(const char* name, srk_table** out) {
  return guarded([&] {
    require_arg(name != nullptr && out != nullptr, "null argument");
    *out = new srk_table{srk::bundled_table(name)};
  });
}

void srk_table_free(srk_table* table) { delete table; }

srk_status srk_table_list_bundled(char** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null argument");
    std::string text;
    for (const auto& name : srk::bundled_table_names()) {
      text += name;
      text += '\n';
    }
    *out = dup_string(text);
  });
}

const char* srk_table_name(const srk_table* table) {
  return table == nullptr ? "" : table->table.name.c_str();
}

const char* srk_table_kind(const srk_table* table) {
  return table == nullptr ? "" : srk::table_kind_name(table->table.kind);
}

int srk_table_stages(const srk_table* table) { return table == nullptr ? 0 : table->table.stages; }

srk_status srk_table_orders(const srk_table* table, char** det_order, char** stoch_order) {
  return guarded([&] {
    require_arg(table != nullptr && det_order != nullptr && stoch_order != nullptr,
                "null argument");
    *det_order = dup_string(srk::format_double(table->table.det_order.value()));
    *stoch_order = dup_string(srk::format_double(table->table.stoch_order.value()));
  });
}

srk_status srk_table_validate(const srk_table* table, char** report, int* mandatory_ok) {
  return guarded([&] {
    require_arg(table != nullptr, "null argument");
    srk::ValidationReport r = srk::validate(table->table);
    if (report != nullptr) *report = dup_string(r.text());
    if (mandatory_ok != nullptr) *mandatory_ok = r.mandatory_ok() ? 1 : 0;
  });
}

srk_status srk_table_render_math(const srk_table* table, char** text) {
  return guarded([&] {
    require_arg(table != nullptr && text != nullptr, "null argument");
    *text = dup_string(srk::render_table_math(table->table));
  });
}

srk_status srk_table_to_json(const srk_table* table, char** json_text) {
  return guarded([&] {
    require_arg(table != nullptr && json_text != nullptr, "null argument");
    *json_text = dup_string(srk::table_to_json(table->table));
  });
}

/* ---- systems and problems ---- */

srk_status srk_system_create(int d, int m, srk_drift_fn drift, srk_diffusion_fn diffusion,
                             void* user, srk_system** out) {
  return guarded([&] {
    require_arg(out != nullptr && drift != nullptr && diffusion != nullptr, "null argument");
    srk::SdeSystem system;
    system.d = d;
    system.m = m;
    system.drift = [drift, user](double t, std::span<const double> x, std::span<double> o) {
      drift(t, x.data(), o.data(), user);
    };
    system.diffusion = [diffusion, user](double t, std::span<const double> x,
                                         std::span<double> o) {
      diffusion(t, x.data(), o.data(), user);
    };
    system.validate();
    *out = new srk_system{std::move(system)};
  });
}

void srk_system_free(srk_system* system) { delete system; }

srk_status srk_problem_create(const char* spec, srk_problem** out) {
  return guarded([&] {
    require_arg(spec != nullptr && out != nullptr, "null argument");
    *out = new srk_problem{srk::make_problem(spec)};
  });
}

void srk_problem_free(srk_problem* problem) { delete problem; }

srk_status srk_problem_names(char** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null argument");
    std::string text;
    for (const auto& name : srk::builtin_problem_names()) {
      text += name;
      text += '\n';
    }
    *out = dup_string(text);
  });
}

int srk_problem_dim(const srk_problem* problem) {
  return problem == nullptr ? 0 : problem->problem.sys.d;
}

int srk_problem_noise_dim(const srk_problem* problem) {
  return problem == nullptr ? 0 : problem->problem.sys.m;
}

srk_status srk_problem_initial_state(const srk_problem* problem, double* x0) {
  return guarded([&] {
    require_arg(problem != nullptr && x0 != nullptr, "null argument");
    for (std::size_t i = 0; i < problem->problem.x0.size(); ++i) x0[i] = problem->problem.x0[i];
  });
}

/* ---- paths ---- */

srk_status srk_path_generate(uint64_t seed, double t0, double t_end, long steps, int m,
                             srk_path** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null argument");
    srk::RngStream rng(seed);
    *out = new srk_path{srk::WienerPath::generate(rng, {t0, t_end, steps}, m)};
  });
}

void srk_path_free(srk_path* path) { delete path; }

long srk_path_steps(const srk_path* path) { return path == nullptr ? 0 : path->path.grid().steps; }

int srk_path_noise_dim(const srk_path* path) { return path == nullptr ? 0 : path->path.m(); }

srk_status srk_path_cumulative(const srk_path* path, double* out) {
  return guarded([&] {
    require_arg(path != nullptr && out != nullptr, "null argument");
    srk::Matrix w = path->path.cumulative();
    std::copy(w.data().begin(), w.data().end(), out);
  });
}

srk_status srk_path_write_csv(const srk_path* path, const char* file) {
  return guarded([&] {
    require_arg(path != nullptr && file != nullptr, "null argument");
    std::ostringstream text;
    path->path.write_csv(text);
    srk::write_text_file(file, text.str());
  });
}

srk_status srk_path_read_csv(const char* file, srk_path** out) {
  return guarded([&] {
    require_arg(file != nullptr && out != nullptr, "null argument");
    std::ifstream in(file);
    if (!in) throw srk::IoError(std::string("cannot open: ") + file);
    *out = new srk_path{srk::WienerPath::read_csv(in)};
  });
}

/* ---- trajectories and simulation ---- */

void srk_trajectory_free(srk_trajectory* trajectory) { delete trajectory; }

long srk_trajectory_steps(const srk_trajectory* trajectory) {
  return trajectory == nullptr ? 0 : trajectory->trajectory.grid.steps;
}

int srk_trajectory_dim(const srk_trajectory* trajectory) {
  return trajectory == nullptr ? 0 : trajectory->trajectory.d;
}

srk_status srk_trajectory_values(const srk_trajectory* trajectory, double* out) {
  return guarded([&] {
    require_arg(trajectory != nullptr && out != nullptr, "null argument");
    const auto& values = trajectory->trajectory.values.data();
    std::copy(values.begin(), values.end(), out);
  });
}

srk_status srk_trajectory_write_csv(const srk_trajectory* trajectory, const char* file) {
  return guarded([&] {
    require_arg(trajectory != nullptr && file != nullptr, "null argument");
    std::ostringstream text;
    trajectory->trajectory.write_csv(text);
    srk::write_text_file(file, text.str());
  });
}

namespace {

srk_trajectory* simulate_impl(const char* method_name, const srk::SdeSystem& sys,
                              std::span<const double> x0, double t0, double t_end, long steps,
                              uint64_t seed, int n_terms) {
  srk::Method method = resolve_method(method_name);
  srk::TimeGrid grid{t0, t_end, steps};
  grid.validate();
  srk::SeriesPolicy series{n_terms};
  srk::Trajectory traj;
  if (method.weak()) {
    traj = srk::integrate(srk::make_sampling_stepper(method, sys, series, srk::RngStream(seed)),
                          grid, x0);
  } else {
    srk::RngStream path_rng(srk::RngStream::derive(seed, 0));
    srk::WienerPath path = srk::WienerPath::generate(path_rng, grid, sys.m);
    srk::RngStream aux(srk::RngStream::derive(seed, 1));
    traj = srk::integrate(srk::make_path_stepper(method, sys, path, series, aux), grid, x0);
  }
  return new srk_trajectory{std::move(traj)};
}

}  // namespace

srk_status srk_simulate(const char* method, const srk_problem* problem, const double* x0,
                        double t0, double t_end, long steps, uint64_t seed, int n_terms,
                        srk_trajectory** out) {
  return guarded([&] {
    require_arg(problem != nullptr && out != nullptr, "null argument");
    const auto& p = problem->problem;
    std::vector<double> start = p.x0;
    if (x0 != nullptr) start.assign(x0, x0 + p.sys.d);
    *out = simulate_impl(method, p.sys, start, t0, t_end, steps, seed, n_terms);
  });
}

srk_status srk_simulate_system(const char* method, const srk_system* system, const double* x0,
                               double t0, double t_end, long steps, uint64_t seed, int n_terms,
                               srk_trajectory** out) {
  return guarded([&] {
    require_arg(system != nullptr && x0 != nullptr && out != nullptr, "null argument");
    *out = simulate_impl(method, system->system, {x0, static_cast<std::size_t>(system->system.d)},
                         t0, t_end, steps, seed, n_terms);
  });
}

/* ---- Monte Carlo ---- */

srk_status srk_mc_run(const char* method, const srk_problem* problem, const double* x0,
                      double t0, double t_end, long steps, long trials, int workers,
                      uint64_t seed, int n_terms, srk_mc_result** out) {
  return guarded([&] {
    require_arg(problem != nullptr && out != nullptr, "null argument");
    const auto& p = problem->problem;
    srk::Method method_value = resolve_method(method);
    srk::McConfig cfg;
    cfg.trials = trials;
    cfg.workers = workers;
    cfg.master_seed = seed;
    cfg.grid = {t0, t_end, steps};
    cfg.grid.validate();
    cfg.x0 = p.x0;
    if (x0 != nullptr) cfg.x0.assign(x0, x0 + p.sys.d);
    srk::SeriesPolicy series{n_terms};
    const srk::SdeSystem sys = p.sys;
    const srk::TimeGrid grid = cfg.grid;
    const std::vector<double> start = cfg.x0;
    cfg.simulate = [method_value, sys, series, grid, start](srk::RngStream& rng) {
      return srk::integrate(srk::make_sampling_stepper(method_value, sys, series, rng), grid,
                            start);
    };
    auto result = new srk_mc_result{srk::run_trials(cfg), grid, {}};
    result->metadata = {{"method", method_value.name()},
                        {"problem", p.name},
                        {"seed", seed},
                        {"trials", trials},
                        {"workers", workers},
                        {"steps", steps},
                        {"h", grid.step()},
                        {"t0", t0},
                        {"t_end", t_end},
                        {"accepted", result->result.accepted},
                        {"rejected", result->result.rejected}};
    *out = result;
  });
}

void srk_mc_result_free(srk_mc_result* result) { delete result; }

long srk_mc_accepted(const srk_mc_result* result) {
  return result == nullptr ? 0 : result->result.accepted;
}

long srk_mc_rejected(const srk_mc_result* result) {
  return result == nullptr ? 0 : result->result.rejected;
}

srk_status srk_mc_mean(const srk_mc_result* result, double* out) {
  return guarded([&] {
    require_arg(result != nullptr && out != nullptr, "null argument");
    const auto& mean = result->result.accumulator.mean().data();
    std::copy(mean.begin(), mean.end(), out);
  });
}

srk_status srk_mc_write_csv(const srk_mc_result* result, const char* file) {
  return guarded([&] {
    require_arg(result != nullptr && file != nullptr, "null argument");
    std::ostringstream text;
    result->result.write_csv(text, result->grid);
    srk::write_text_file(file, text.str());
  });
}

srk_status srk_mc_metadata(const srk_mc_result* result, char** json_text) {
  return guarded([&] {
    require_arg(result != nullptr && json_text != nullptr, "null argument");
    *json_text = dup_string(result->metadata.dump(2) + "\n");
  });
}

/* ---- convergence ---- */

srk_status srk_estimate_strong_order(const char* method, const char* problem_spec,
                                     const double* hs, int n_hs, long paths, uint64_t seed,
                                     double t_end, srk_order_report** out) {
  return guarded([&] {
    require_arg(problem_spec != nullptr && hs != nullptr && out != nullptr, "null argument");
    srk::TestProblem problem = srk::make_problem(problem_spec);
    srk::OrderOptions options;
    options.hs.assign(hs, hs + n_hs);
    options.trials = paths;
    options.seed = seed;
    options.t_final = t_end;
    *out = new srk_order_report{
        srk::estimate_strong_order(resolve_method(method), problem, options)};
  });
}

srk_status srk_estimate_weak_order(const char* method, const char* problem_spec,
                                   const char* functional, const double* hs, int n_hs,
                                   long trials, int workers, uint64_t seed, double t_end,
                                   srk_order_report** out) {
  return guarded([&] {
    require_arg(problem_spec != nullptr && functional != nullptr && hs != nullptr &&
                    out != nullptr,
                "null argument");
    srk::TestProblem problem = srk::make_problem(problem_spec);
    srk::OrderOptions options;
    options.hs.assign(hs, hs + n_hs);
    options.trials = trials;
    options.workers = workers;
    options.seed = seed;
    options.t_final = t_end;
    *out = new srk_order_report{
        srk::estimate_weak_order(resolve_method(method), problem, functional, options)};
  });
}

void srk_order_report_free(srk_order_report* report) { delete report; }

double srk_order_slope(const srk_order_report* report) {
  return report == nullptr ? 0.0 : report->estimate.slope;
}

int srk_order_degenerate(const srk_order_report* report) {
  return report != nullptr && report->estimate.degenerate ? 1 : 0;
}

int srk_order_unreliable(const srk_order_report* report) {
  return report != nullptr && report->estimate.unreliable ? 1 : 0;
}

srk_status srk_order_errors(const srk_order_report* report, double* errors, double* stderrs) {
  return guarded([&] {
    require_arg(report != nullptr, "null argument");
    const auto& est = report->estimate;
    if (errors != nullptr) std::copy(est.errors.begin(), est.errors.end(), errors);
    if (stderrs != nullptr) std::copy(est.stderrs.begin(), est.stderrs.end(), stderrs);
  });
}

srk_status srk_order_write_csv(const srk_order_report* report, const char* file) {
  return guarded([&] {
    require_arg(report != nullptr && file != nullptr, "null argument");
    std::ostringstream text;
    report->estimate.write_csv(text);
    srk::write_text_file(file, text.str());
  });
}

srk_status srk_order_report_text(const srk_order_report* report, char** csv_text) {
  return guarded([&] {
    require_arg(report != nullptr && csv_text != nullptr, "null argument");
    std::ostringstream text;
    report->estimate.write_csv(text);
    *csv_text = dup_string(text.str());
  });
}

/* ---- code generation ---- */

srk_status srk_generate_bundle(const char* tables, int m_min, int m_max, const char* dialect,
                               const char* outdir, char** manifest) {
  return guarded([&] {
    require_arg(tables != nullptr && dialect != nullptr && outdir != nullptr, "null argument");
    std::vector<srk::CoefficientTable> list;
    std::istringstream lines(tables);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      if (line == "all") {
        for (const auto& name : srk::bundled_table_names())
          list.push_back(srk::bundled_table(name));
      } else if (srk::is_bundled_table(line)) {
        list.push_back(srk::bundled_table(line));
      } else {
        list.push_back(srk::parse_table(srk::read_text_file(line)));
      }
    }
    auto entries = srk::generate_bundle(list, m_min, m_max, dialect, outdir);
    if (manifest != nullptr) *manifest = dup_string(srk::bundle_manifest_json(entries));
  });
}

srk_status srk_emit_source(const srk_table* table, int m, const char* dialect, char** source) {
  return guarded([&] {
    require_arg(table != nullptr && dialect != nullptr && source != nullptr, "null argument");
    *source = dup_string(srk::emit_stepper_source(srk::expand(table->table, m), dialect));
  });
}

srk_status srk_emit_math(const srk_table* table, int m, char** text) {
  return guarded([&] {
    require_arg(table != nullptr && text != nullptr, "null argument");
    *text = dup_string(srk::emit_math(srk::expand(table->table, m)));
  });
}

srk_status srk_dialects(char** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null argument");
    std::string text;
    for (const auto& d : srk::emission_dialects()) {
      text += d;
      text += '\n';
    }
    *out = dup_string(text);
  });
}

}  // extern "C"
