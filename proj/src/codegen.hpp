#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rational.hpp"
#include "tables.hpp"

namespace srk {

// Multiplier attached to one term of a stage or update sum.
enum class RandomFactor {
  det_h,             // h
  sqrt_h,            // sqrt(h)
  single,            // I^k
  cross,             // I^{lk} / sqrt(h)
  i10_over_h,        // I^{10} / h        (scalar family)
  i10_over_sqrt_h,   // I^{10} / sqrt(h)  (kept for variant schemes)
  i11_over_sqrt_h,   // I^{11} / sqrt(h)  (scalar family)
  i111_over_h,       // I^{111} / h       (scalar family)
  what,              // I-hat^k
  what_diag,         // I-hat^{kk} / sqrt(h)
  what_cross,        // I-hat^{kl} / sqrt(h)
};

struct FactorRef {
  RandomFactor factor = RandomFactor::det_h;
  int k = 0;  // 1-based noise indices where applicable
  int l = 0;
};

// One distinct function evaluation point. Aliased stages collapse onto
// x_n, so several formula-level evaluations can share a point.
struct EvalPoint {
  bool diffusion = false;
  Rational c;             // time offset coefficient
  int c_vector = 0;       // which c row it came from (0, 1, 2)
  int c_index = 0;        // 1-based stage index within that row
  std::string state;      // emitted stage symbol, empty for x_n
  std::string name;       // emission name (F1, G2, ...); set for used points
  int defined_after = 0;  // emitted-stage position it must follow (0 = top)
  bool used = false;      // referenced by the update through nonzero terms
};

struct ExpTerm {
  Rational coef;
  std::string coef_name;
  int point = -1;  // index into StepExpansion::points
  int column = 0;  // 1-based diffusion column, 0 for drift
  FactorRef factor;
  // Formula-level evaluation identity, kept for the math rendering where
  // aliases stay visible.
  int disp_family = 0;
  int disp_stage = 1;
  bool disp_hat = false;
};

struct StageDef {
  std::string symbol;
  int family = 0;  // 0 = drift chain, 1..m = noise chains
  bool hat = false;
  int index = 1;   // stage number 1..s
  bool alias = false;  // right-hand side collapsed to x_n
  bool used = false;   // reachable from the update through nonzero terms
  std::vector<ExpTerm> terms;
};

struct ConstantDef {
  std::string name;
  Rational value;
};

// Zero-pruned symbolic description of one specialized step: the
// intermediate representation both emitters consume.
struct StepExpansion {
  std::string table_name;
  std::string function_name;
  TableKind kind = TableKind::scalar_strong;
  int m = 1;
  int stages = 0;
  std::vector<ConstantDef> constants;
  std::vector<StageDef> stage_defs;
  std::vector<ExpTerm> update_terms;
  std::vector<EvalPoint> points;
};

// Specializes a table to a noise dimension: drops zero-coefficient
// terms, turns stages that collapse to x_n into aliases, and merges
// repeated evaluation points. Scalar tables require m == 1.
StepExpansion expand(const CoefficientTable& table, int m);

// Renders the expansion through the named emission template ("cpp" is
// bundled). Deterministic text; coefficients appear as named constants.
std::string emit_stepper_source(const StepExpansion& exp, const std::string& dialect);

std::vector<std::string> emission_dialects();

// Human-readable formula listing (LaTeX) with stage aliases visible.
std::string emit_math(const StepExpansion& exp);

struct BundleEntry {
  std::string function;
  std::string table;
  std::string kind;
  int m = 1;
  std::string dialect;
  std::string file;
  std::string hash;
};

// One source unit per (table, m); scalar tables are emitted once at
// m = 1. Also writes a lookup registry (cpp dialect) and manifest.json.
std::vector<BundleEntry> generate_bundle(const std::vector<CoefficientTable>& tables, int m_min,
                                         int m_max, const std::string& dialect,
                                         const std::filesystem::path& outdir);

std::string bundle_manifest_json(const std::vector<BundleEntry>& entries);

// Default upper noise dimension for generated bundles.
inline constexpr int kDefaultGenerationLimit = 6;

std::string generated_function_name(const CoefficientTable& table, int m);

}  // namespace srk
