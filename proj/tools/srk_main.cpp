// Command-line front end of the srk toolkit; drives the shared library
// through its C interface only.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srk/srk.h"

namespace {

int report_failure(srk_status status) {
  std::fprintf(stderr, "error: %s\n", srk_last_error());
  return static_cast<int>(status);
}

// Frees a C string on scope exit.
struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { srk_string_free(value); }
  const char* get() const { return value == nullptr ? "" : value; }
};

std::uint64_t pick_seed(const CLI::Option* seed_option, std::uint64_t seed_flag, bool* generated) {
  if (seed_option->count() > 0) {
    *generated = false;
    return seed_flag;
  }
  *generated = true;
  std::random_device entropy;
  return (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
}

// "2^-4..2^-10" (dyadic range), or a comma list like "0.125,0.0625".
std::vector<double> parse_hs(const std::string& text) {
  std::vector<double> hs;
  auto dyadic = [](const std::string& s) -> double {
    int exponent = 0;
    if (std::sscanf(s.c_str(), "2^%d", &exponent) == 1) return std::pow(2.0, exponent);
    return std::strtod(s.c_str(), nullptr);
  };
  if (auto range = text.find(".."); range != std::string::npos) {
    const std::string lo = text.substr(0, range);
    const std::string hi = text.substr(range + 2);
    int e0 = 0, e1 = 0;
    if (std::sscanf(lo.c_str(), "2^%d", &e0) == 1 && std::sscanf(hi.c_str(), "2^%d", &e1) == 1) {
      if (e1 > e0) std::swap(e0, e1);
      for (int e = e0; e >= e1; --e) hs.push_back(std::pow(2.0, e));
      return hs;
    }
    throw CLI::ValidationError("--hs", "range form must look like 2^-4..2^-10");
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) hs.push_back(dyadic(item));
    pos = comma + 1;
  }
  if (hs.empty()) throw CLI::ValidationError("--hs", "no step sizes given");
  return hs;
}

long steps_from(double t0, double t_end, long steps, double h) {
  if (steps > 0) return steps;
  if (h > 0.0) {
    const double raw = (t_end - t0) / h;
    const long n = std::lround(raw);
    if (n < 1 || std::abs(raw - static_cast<double>(n)) > 1e-9)
      throw CLI::ValidationError("--h", "step size must divide the time interval");
    return n;
  }
  throw CLI::ValidationError("--steps", "give --steps or --h");
}

std::vector<double> parse_x0(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) values.push_back(std::strtod(item.c_str(), nullptr));
    pos = comma + 1;
  }
  return values;
}

int cmd_tables_list() {
  OwnedString names;
  if (auto status = srk_table_list_bundled(&names.value); status != SRK_OK)
    return report_failure(status);
  std::string text(names.get());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const std::string name = text.substr(pos, nl - pos);
    pos = nl + 1;
    srk_table* table = nullptr;
    if (auto status = srk_table_bundled(name.c_str(), &table); status != SRK_OK)
      return report_failure(status);
    OwnedString det, stoch;
    srk_table_orders(table, &det.value, &stoch.value);
    std::printf("%-8s %-14s stages=%d  p_d=%s  p_s=%s\n", name.c_str(), srk_table_kind(table),
                srk_table_stages(table), det.get(), stoch.get());
    srk_table_free(table);
  }
  return 0;
}

srk_status load_table_arg(const std::string& name_or_file, srk_table** out) {
  if (name_or_file.find(".json") != std::string::npos)
    return srk_table_load_file(name_or_file.c_str(), out);
  return srk_table_bundled(name_or_file.c_str(), out);
}

int cmd_tables_validate(const std::string& file) {
  srk_table* table = nullptr;
  if (auto status = load_table_arg(file, &table); status != SRK_OK) return report_failure(status);
  OwnedString report;
  int ok = 0;
  const srk_status status = srk_table_validate(table, &report.value, &ok);
  srk_table_free(table);
  if (status != SRK_OK) return report_failure(status);
  std::fputs(report.get(), stdout);
  return ok == 1 ? 0 : 1;
}

int cmd_tables_render(const std::string& file) {
  srk_table* table = nullptr;
  if (auto status = load_table_arg(file, &table); status != SRK_OK) return report_failure(status);
  OwnedString text;
  const srk_status status = srk_table_render_math(table, &text.value);
  srk_table_free(table);
  if (status != SRK_OK) return report_failure(status);
  std::fputs(text.get(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic Runge-Kutta toolkit"};
  app.require_subcommand(1);
  // keep the short -h free for the step-size flags
  app.set_help_flag("--help", "print help");

  // ---- tables ----
  auto* tables = app.add_subcommand("tables", "list, validate and render coefficient tables");
  tables->require_subcommand(1);
  tables->add_subcommand("list", "list bundled tables");
  std::string table_file;
  auto* validate_cmd = tables->add_subcommand("validate", "run the validation checks");
  validate_cmd->add_option("file", table_file, "table JSON file or bundled name")->required();
  auto* render_cmd = tables->add_subcommand("render", "print the tableau in math markup");
  render_cmd->add_option("file", table_file, "table JSON file or bundled name")->required();

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "emit specialized stepper source from tables");
  std::vector<std::string> gen_tables{"all"};
  std::string gen_m = "1..6";
  std::string gen_dialect = "cpp";
  std::string gen_out = "generated";
  gen->add_option("--table", gen_tables, "bundled names, JSON files, or 'all'")
      ->capture_default_str();
  gen->add_option("--m", gen_m, "noise dimension or range, e.g. 3 or 1..6")
      ->capture_default_str();
  gen->add_option("--dialect", gen_dialect, "emission dialect")->capture_default_str();
  gen->add_option("--out", gen_out, "output directory")->capture_default_str();

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory to CSV");
  std::string sim_method = "em", sim_problem = "gbm", sim_out = "trajectory.csv", sim_x0;
  double sim_t0 = 0.0, sim_T = 1.0, sim_h = 0.0;
  long sim_steps = 0;
  std::uint64_t sim_seed = 0;
  int sim_terms = 0;
  simulate->add_option("--method", sim_method, "em, bundled table, or table JSON file")
      ->capture_default_str();
  simulate->add_option("--problem", sim_problem, "built-in problem spec")->capture_default_str();
  simulate->add_option("--t0", sim_t0, "start time")->capture_default_str();
  simulate->add_option("--T", sim_T, "end time")->capture_default_str();
  simulate->add_option("--h", sim_h, "step size (alternative to --steps)");
  simulate->add_option("--steps", sim_steps, "number of steps");
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "random seed");
  simulate->add_option("--n-terms", sim_terms, "series truncation (0 = default policy)");
  simulate->add_option("--x0", sim_x0, "initial state, comma separated");
  simulate->add_option("--out", sim_out, "output CSV path")->capture_default_str();

  // ---- mc ----
  auto* mc = app.add_subcommand("mc", "Monte Carlo mean trajectory");
  std::string mc_method = "em", mc_problem = "gbm", mc_out = "mc";
  double mc_t0 = 0.0, mc_T = 1.0, mc_h = 0.0;
  long mc_steps = 0, mc_trials = 1000;
  int mc_workers = 1, mc_terms = 0;
  std::uint64_t mc_seed = 0;
  mc->add_option("--method", mc_method, "em, bundled table, or table JSON file")
      ->capture_default_str();
  mc->add_option("--problem", mc_problem, "built-in problem spec")->capture_default_str();
  mc->add_option("--t0", mc_t0, "start time")->capture_default_str();
  mc->add_option("--T", mc_T, "end time")->capture_default_str();
  mc->add_option("--h", mc_h, "step size (alternative to --steps)");
  mc->add_option("--steps", mc_steps, "number of steps");
  mc->add_option("--trials", mc_trials, "number of trajectories")->capture_default_str();
  mc->add_option("--workers", mc_workers, "parallel workers")->capture_default_str();
  auto* mc_seed_opt = mc->add_option("--seed", mc_seed, "random seed");
  mc->add_option("--n-terms", mc_terms, "series truncation (0 = default policy)");
  mc->add_option("--out", mc_out, "output prefix (<out>.csv, <out>.meta.json)")
      ->capture_default_str();

  // ---- converge ----
  auto* converge = app.add_subcommand("converge", "estimate strong or weak convergence order");
  std::string conv_mode = "strong", conv_method = "em", conv_problem = "gbm";
  std::string conv_hs = "2^-4..2^-10", conv_functional = "identity", conv_out;
  double conv_T = 1.0;
  long conv_trials = 200;
  int conv_workers = 1;
  std::uint64_t conv_seed = 0;
  converge->add_option("--mode", conv_mode, "strong or weak")
      ->check(CLI::IsMember({"strong", "weak"}))
      ->capture_default_str();
  converge->add_option("--method", conv_method, "em, bundled table, or table JSON file")
      ->capture_default_str();
  converge->add_option("--problem", conv_problem, "built-in problem spec")
      ->capture_default_str();
  converge->add_option("--hs", conv_hs, "step sizes: 2^-4..2^-10 or comma list")
      ->capture_default_str();
  converge->add_option("--T", conv_T, "end time")->capture_default_str();
  converge->add_option("--trials", conv_trials, "paths (strong) / trials per h (weak)")
      ->capture_default_str();
  converge->add_option("--workers", conv_workers, "parallel workers (weak mode)")
      ->capture_default_str();
  converge->add_option("--functional", conv_functional, "weak-mode functional name")
      ->capture_default_str();
  auto* conv_seed_opt = converge->add_option("--seed", conv_seed, "random seed");
  converge->add_option("--out", conv_out, "report CSV path (stdout too)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tables->parsed()) {
      if (tables->get_subcommand("list")->parsed()) return cmd_tables_list();
      if (validate_cmd->parsed()) return cmd_tables_validate(table_file);
      return cmd_tables_render(table_file);
    }

    if (gen->parsed()) {
      int m_min = 1, m_max = 1;
      if (auto range = gen_m.find(".."); range != std::string::npos) {
        m_min = std::atoi(gen_m.substr(0, range).c_str());
        m_max = std::atoi(gen_m.substr(range + 2).c_str());
      } else {
        m_min = m_max = std::atoi(gen_m.c_str());
      }
      std::string list;
      for (const auto& t : gen_tables) {
        list += t;
        list += '\n';
      }
      OwnedString manifest;
      if (auto status = srk_generate_bundle(list.c_str(), m_min, m_max, gen_dialect.c_str(),
                                            gen_out.c_str(), &manifest.value);
          status != SRK_OK)
        return report_failure(status);
      std::fputs(manifest.get(), stdout);
      return 0;
    }

    if (simulate->parsed()) {
      bool seed_generated = false;
      const std::uint64_t seed = pick_seed(sim_seed_opt, sim_seed, &seed_generated);
      const long steps = steps_from(sim_t0, sim_T, sim_steps, sim_h);
      srk_problem* problem = nullptr;
      if (auto status = srk_problem_create(sim_problem.c_str(), &problem); status != SRK_OK)
        return report_failure(status);
      std::vector<double> x0 = parse_x0(sim_x0);
      srk_trajectory* traj = nullptr;
      const srk_status status =
          srk_simulate(sim_method.c_str(), problem, x0.empty() ? nullptr : x0.data(), sim_t0,
                       sim_T, steps, seed, sim_terms, &traj);
      srk_problem_free(problem);
      if (status != SRK_OK) return report_failure(status);
      const srk_status wrote = srk_trajectory_write_csv(traj, sim_out.c_str());
      srk_trajectory_free(traj);
      if (wrote != SRK_OK) return report_failure(wrote);
      if (seed_generated)
        std::printf("seed %" PRIu64 " (generated; pass --seed to reproduce)\n", seed);
      std::printf("wrote %s\n", sim_out.c_str());
      return 0;
    }

    if (mc->parsed()) {
      bool seed_generated = false;
      const std::uint64_t seed = pick_seed(mc_seed_opt, mc_seed, &seed_generated);
      const long steps = steps_from(mc_t0, mc_T, mc_steps, mc_h);
      srk_problem* problem = nullptr;
      if (auto status = srk_problem_create(mc_problem.c_str(), &problem); status != SRK_OK)
        return report_failure(status);
      srk_mc_result* result = nullptr;
      const srk_status status = srk_mc_run(mc_method.c_str(), problem, nullptr, mc_t0, mc_T,
                                           steps, mc_trials, mc_workers, seed, mc_terms, &result);
      srk_problem_free(problem);
      if (status != SRK_OK) return report_failure(status);
      const std::string csv = mc_out + ".csv";
      const std::string meta = mc_out + ".meta.json";
      srk_status wrote = srk_mc_write_csv(result, csv.c_str());
      if (wrote == SRK_OK) {
        OwnedString metadata;
        wrote = srk_mc_metadata(result, &metadata.value);
        if (wrote == SRK_OK) {
          if (FILE* f = std::fopen(meta.c_str(), "wb")) {
            std::fputs(metadata.get(), f);
            std::fclose(f);
          } else {
            srk_mc_result_free(result);
            std::fprintf(stderr, "error: cannot write %s\n", meta.c_str());
            return SRK_ERR_IO;
          }
        }
      }
      const long accepted = srk_mc_accepted(result);
      const long rejected = srk_mc_rejected(result);
      srk_mc_result_free(result);
      if (wrote != SRK_OK) return report_failure(wrote);
      if (seed_generated)
        std::printf("seed %" PRIu64 " (generated; pass --seed to reproduce)\n", seed);
      std::printf("accepted %ld, rejected %ld; wrote %s and %s\n", accepted, rejected,
                  csv.c_str(), meta.c_str());
      return 0;
    }

    if (converge->parsed()) {
      bool seed_generated = false;
      const std::uint64_t seed = pick_seed(conv_seed_opt, conv_seed, &seed_generated);
      const std::vector<double> hs = parse_hs(conv_hs);
      srk_order_report* report = nullptr;
      srk_status status;
      if (conv_mode == "strong")
        status = srk_estimate_strong_order(conv_method.c_str(), conv_problem.c_str(), hs.data(),
                                           static_cast<int>(hs.size()), conv_trials, seed,
                                           conv_T, &report);
      else
        status = srk_estimate_weak_order(conv_method.c_str(), conv_problem.c_str(),
                                         conv_functional.c_str(), hs.data(),
                                         static_cast<int>(hs.size()), conv_trials, conv_workers,
                                         seed, conv_T, &report);
      if (status != SRK_OK) return report_failure(status);
      OwnedString text;
      status = srk_order_report_text(report, &text.value);
      if (status == SRK_OK && !conv_out.empty())
        status = srk_order_write_csv(report, conv_out.c_str());
      const double slope = srk_order_slope(report);
      const int unreliable = srk_order_unreliable(report);
      const int degenerate = srk_order_degenerate(report);
      srk_order_report_free(report);
      if (status != SRK_OK) return report_failure(status);
      std::fputs(text.get(), stdout);
      if (seed_generated)
        std::printf("seed %" PRIu64 " (generated; pass --seed to reproduce)\n", seed);
      std::printf("fitted slope: %.4f%s%s\n", slope, degenerate ? " (degenerate)" : "",
                  unreliable ? " (unreliable)" : "");
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
