#include <filesystem>
#include <set>

#include "codegen.hpp"
#include "doctest.h"
#include "error.hpp"
#include "textio.hpp"

using namespace srk;

namespace {

CoefficientTable trivial_weak() {
  CoefficientTable t;
  t.name = "trivial";
  t.kind = TableKind::vector_weak;
  t.stages = 1;
  t.det_order = Rational(1);
  t.stoch_order = Rational(1);
  t.A0 = t.A1 = t.A2 = {{Rational(0)}};
  t.B0 = t.B1 = t.B2 = {{Rational(0)}};
  t.c0 = t.c1 = t.c2 = {Rational(0)};
  t.a = {Rational(1)};
  t.b1 = {Rational(1)};
  t.b2 = {Rational(0)};
  t.b3 = {Rational(0)};
  t.b4 = {Rational(0)};
  return t;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("expansion of the published two-noise example") {
  // SRK2Wm specialized to m = 2: three stages collapse to x_n and the
  // update carries eight terms.
  StepExpansion exp = expand(bundled_table("SRK2Wm"), 2);
  CHECK(exp.function_name == "strong_srk2wm_w2");
  CHECK(exp.m == 2);

  auto stage = [&](const std::string& symbol) -> const StageDef& {
    for (const auto& s : exp.stage_defs)
      if (s.symbol == symbol) return s;
    FAIL(("no stage " + symbol).c_str());
    return exp.stage_defs.front();
  };

  // first-stage aliases, as in the printed expansion
  CHECK(stage("X0_1").alias);
  CHECK(stage("X1_1").alias);
  CHECK(stage("X2_1").alias);
  // stage 3 of the drift chain has no nonzero coefficients either
  CHECK(stage("X0_3").alias);
  CHECK_FALSE(stage("X0_2").alias);
  CHECK_FALSE(stage("X1_2").alias);

  // X^{02} = x + A0_21 f(t, X^{01}) h
  CHECK(stage("X0_2").terms.size() == 1);
  CHECK(stage("X0_2").terms[0].coef == Rational(1));
  CHECK(stage("X0_2").terms[0].factor.factor == RandomFactor::det_h);

  // X^{12} = x + A1_21 f h + B1_21 G_1(X^{11}) I^{11}/sqrt(h) + B1_21 G_2(X^{21}) I^{21}/sqrt(h)
  const StageDef& x12 = stage("X1_2");
  CHECK(x12.terms.size() == 3);
  CHECK(x12.terms[1].factor.factor == RandomFactor::cross);
  CHECK(x12.terms[1].factor.k == 1);  // I^{11}
  CHECK(x12.terms[1].factor.l == 1);
  CHECK(x12.terms[2].factor.k == 2);  // I^{21}
  CHECK(x12.terms[2].factor.l == 1);
  CHECK(x12.terms[2].column == 2);

  // the eight-term update: two drift terms and (b1, b2, b2) per noise
  CHECK(exp.update_terms.size() == 8);
  int drift_terms = 0;
  for (const auto& term : exp.update_terms)
    if (term.factor.factor == RandomFactor::det_h) ++drift_terms;
  CHECK(drift_terms == 2);

  // all evaluations at (t, x_n) merge into single points
  int xn_points = 0;
  for (const auto& point : exp.points)
    if (point.used && point.state.empty()) ++xn_points;
  CHECK(xn_points == 2);  // one drift, one diffusion
}

TEST_CASE("expansion invariants") {
  SUBCASE("no zero coefficients survive") {
    for (const auto& name : bundled_table_names()) {
      const CoefficientTable& table = bundled_table(name);
      const int max_m = table.kind == TableKind::scalar_strong ? 1 : 3;
      for (int m = 1; m <= max_m; ++m) {
        StepExpansion exp = expand(table, m);
        for (const auto& c : exp.constants) CHECK_FALSE(c.value.is_zero());
        for (const auto& s : exp.stage_defs)
          for (const auto& t : s.terms) CHECK_FALSE(t.coef.is_zero());
        for (const auto& t : exp.update_terms) CHECK_FALSE(t.coef.is_zero());
      }
    }
  }
  SUBCASE("stages referenced by terms appear earlier") {
    StepExpansion exp = expand(bundled_table("SRK1W1"), 1);
    std::set<std::string> defined;
    for (const auto& s : exp.stage_defs) {
      for (const auto& t : s.terms) {
        const std::string& state = exp.points[t.point].state;
        if (!state.empty()) CHECK(defined.count(state) == 1);
      }
      defined.insert(s.symbol);
    }
  }
  SUBCASE("explicit zeros do not change the expansion") {
    CoefficientTable t = bundled_table("SRK1Wm");
    // rewriting zero entries through parse/serialize must not matter
    CoefficientTable same = parse_table(table_to_json(t));
    StepExpansion a = expand(t, 2);
    StepExpansion b = expand(same, 2);
    CHECK(emit_stepper_source(a, "cpp") == emit_stepper_source(b, "cpp"));
    CHECK(emit_math(a) == emit_math(b));
  }
  SUBCASE("scalar tables only specialize to m = 1") {
    CHECK_THROWS_AS(expand(bundled_table("SRK1W1"), 2), InvalidError);
  }
}

TEST_CASE("trivial weak table expansion") {
  StepExpansion exp = expand(trivial_weak(), 3);
  // update: f h plus one I-hat term per noise component
  CHECK(exp.update_terms.size() == 4);
  CHECK(exp.update_terms[0].factor.factor == RandomFactor::det_h);
  for (int k = 1; k <= 3; ++k) {
    CHECK(exp.update_terms[k].factor.factor == RandomFactor::what);
    CHECK(exp.update_terms[k].factor.k == k);
  }
  // no stage assignments at all
  for (const auto& s : exp.stage_defs) CHECK(s.alias);
  // one drift point and one diffusion point, both at (t, x_n)
  int used = 0;
  for (const auto& p : exp.points)
    if (p.used) ++used;
  CHECK(used == 2);

  const std::string source = emit_stepper_source(exp, "cpp");
  CHECK(source.find("weak_trivial_w3") != std::string::npos);
  CHECK(count_occurrences(source, "sys.drift(") == 1);
  CHECK(count_occurrences(source, "sys.diffusion(") == 1);
}

TEST_CASE("emitted source properties") {
  SUBCASE("deterministic emission") {
    StepExpansion exp = expand(bundled_table("SRK1Wm"), 2);
    CHECK(emit_stepper_source(exp, "cpp") == emit_stepper_source(exp, "cpp"));
    CHECK(emit_math(exp) == emit_math(exp));
  }
  SUBCASE("unknown dialect is rejected") {
    StepExpansion exp = expand(bundled_table("SRK1Wm"), 1);
    CHECK_THROWS_AS(emit_stepper_source(exp, "fortran77"), InvalidError);
  }
  SUBCASE("no zero constants in any emitted source") {
    for (const auto& name : bundled_table_names()) {
      const CoefficientTable& table = bundled_table(name);
      const int max_m = table.kind == TableKind::scalar_strong ? 1 : 4;
      for (int m = 1; m <= max_m; ++m) {
        const std::string source = emit_stepper_source(expand(table, m), "cpp");
        CHECK(source.find("= 0.0;") == std::string::npos);
        CHECK(source.find("= -0.0;") == std::string::npos);
        CHECK(source.find("* 0.0") == std::string::npos);
      }
    }
  }
  SUBCASE("evaluation counts are minimal for the published example") {
    // SRK2Wm at m = 2: drift at x_n and X^{02}; diffusion at x_n and at
    // X^{12}, X^{22}, X^{13}, X^{23}
    const std::string source = emit_stepper_source(expand(bundled_table("SRK2Wm"), 2), "cpp");
    CHECK(count_occurrences(source, "sys.drift(") == 2);
    CHECK(count_occurrences(source, "sys.diffusion(") == 5);
  }
  SUBCASE("golden match for the two-noise strong method") {
    const auto golden_path = std::filesystem::path(TEST_SOURCE_DIR) / "tests" / "golden" /
                             "strong_srk1wm_w2.cpp.golden";
    const std::string source = emit_stepper_source(expand(bundled_table("SRK1Wm"), 2), "cpp");
    CHECK(source == read_text_file(golden_path));
  }
  SUBCASE("math listing shows aliases and the update") {
    const std::string math = emit_math(expand(bundled_table("SRK2Wm"), 2));
    CHECK(math.find("X^{01\\alpha} &= x_n^{\\alpha}") != std::string::npos);
    CHECK(math.find("x_{n+1}^{\\alpha}") != std::string::npos);
    CHECK(math.find("\\frac{I^{21}(h_n)}{\\sqrt{h_n}}") != std::string::npos);
    // all-zero B blocks and b vectors expand to a plain deterministic
    // Runge-Kutta step with no random factors at all
    CoefficientTable det = bundled_table("SRK2Wm");
    for (auto* block : {&det.B0, &det.B1})
      for (auto& row : *block)
        for (auto& v : row) v = Rational(0);
    for (auto* row : {&det.b1, &det.b2})
      for (auto& v : *row) v = Rational(0);
    StepExpansion exp = expand(det, 2);
    for (const auto& term : exp.update_terms) CHECK(term.factor.factor == RandomFactor::det_h);
    const std::string text = emit_math(exp);
    CHECK(text.find("I^{") == std::string::npos);
    CHECK(text.find("\\sqrt{h_n}") == std::string::npos);
  }
}

TEST_CASE("bundle generation") {
  const auto outdir = std::filesystem::temp_directory_path() / "srk_codegen_test";
  std::filesystem::remove_all(outdir);

  std::vector<CoefficientTable> tables = {bundled_table("SRK1Wm"), bundled_table("SRK1W1")};
  auto entries = generate_bundle(tables, 1, 3, "cpp", outdir);
  // three vector specializations plus one scalar
  CHECK(entries.size() == 4);
  std::set<std::string> names;
  for (const auto& e : entries) names.insert(e.function);
  CHECK(names == std::set<std::string>{"strong_srk1wm_w1", "strong_srk1wm_w2",
                                       "strong_srk1wm_w3", "strong_srk1w1_w1"});
  CHECK(std::filesystem::exists(outdir / "strong_srk1wm_w2.cpp"));
  CHECK(std::filesystem::exists(outdir / "registry.cpp"));
  CHECK(std::filesystem::exists(outdir / "manifest.json"));

  // regeneration is idempotent: identical bytes, identical hashes
  auto again = generate_bundle(tables, 1, 3, "cpp", outdir);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].hash == again[i].hash);
    CHECK(entries[i].hash ==
          content_hash(read_text_file(outdir / entries[i].file)));
  }

  // duplicate names are rejected
  tables.push_back(bundled_table("SRK1Wm"));
  CHECK_THROWS_AS(generate_bundle(tables, 1, 2, "cpp", outdir), InvalidError);

  // empty list gives an empty manifest
  auto none = generate_bundle({}, 1, 6, "cpp", outdir);
  CHECK(none.empty());
  std::filesystem::remove_all(outdir);
}
