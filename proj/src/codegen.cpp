#include "codegen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"
#include "json.hpp"
#include "template_engine.hpp"
#include "textio.hpp"

namespace srk {

const std::string& embedded_text(const std::string& key);  // embedded_data.cpp

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool row_is_zero(const RationalRow& row) {
  return std::all_of(row.begin(), row.end(), [](const Rational& r) { return r.is_zero(); });
}

std::string stage_symbol(int family, bool hat, int index) {
  std::string s = hat ? "Xh" : "X";
  s += std::to_string(family) + "_" + std::to_string(index);
  return s;
}

// Assembles terms, points and the constant registry for one expansion.
struct Builder {
  const CoefficientTable& table;
  int m;
  StepExpansion exp;
  std::map<std::string, int> constant_index;
  std::map<std::string, int> point_index;
  std::vector<int> stage_of_point;  // stage_defs position defining the point's state, -1 for x_n

  Builder(const CoefficientTable& t, int noise) : table(t), m(noise) {}

  void register_constant(const std::string& name, const Rational& value) {
    if (constant_index.count(name)) return;
    constant_index[name] = static_cast<int>(exp.constants.size());
    exp.constants.push_back({name, value});
  }

  std::string matrix_constant(const char* block, int i, int j, const Rational& value) {
    std::string name =
        std::string("c_") + block + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    register_constant(name, value);
    return name;
  }

  std::string vector_constant(const char* row, int i, const Rational& value) {
    std::string name = std::string("c_") + row + "_" + std::to_string(i + 1);
    register_constant(name, value);
    return name;
  }

  int stage_position(int family, bool hat, int index) const {
    const std::string symbol = stage_symbol(family, hat, index);
    for (std::size_t p = 0; p < exp.stage_defs.size(); ++p)
      if (exp.stage_defs[p].symbol == symbol) return static_cast<int>(p);
    throw InvalidError("internal: unknown stage " + symbol);
  }

  // Point for a drift or diffusion evaluation at formula stage (family,
  // hat, j). Aliased stages collapse to the x_n state, merging points
  // that share the time offset.
  int point_for(bool diffusion, int c_vector, int j, int family, bool hat) {
    const RationalRow& c_row = c_vector == 0 ? table.c0 : (c_vector == 1 ? table.c1 : table.c2);
    const Rational c = c_row[static_cast<std::size_t>(j)];
    const StageDef& stage = exp.stage_defs[static_cast<std::size_t>(
        stage_position(diffusion ? family : 0, hat, j + 1))];
    const std::string state = stage.alias ? "" : stage.symbol;
    const std::string key = (diffusion ? "g|" : "f|") + c.str() + "|" + state;
    if (auto it = point_index.find(key); it != point_index.end()) return it->second;

    EvalPoint point;
    point.diffusion = diffusion;
    point.c = c;
    point.c_vector = c_vector;
    point.c_index = j + 1;
    point.state = state;
    const int index = static_cast<int>(exp.points.size());
    point_index[key] = index;
    exp.points.push_back(std::move(point));
    stage_of_point.push_back(state.empty() ? -1
                                           : stage_position(diffusion ? family : 0, hat, j + 1));
    if (!c.is_zero()) vector_constant(c_vector == 0 ? "c0" : (c_vector == 1 ? "c1" : "c2"), j, c);
    return index;
  }

  ExpTerm drift_term(const Rational& coef, const std::string& coef_name, int j) {
    ExpTerm term;
    term.coef = coef;
    term.coef_name = coef_name;
    term.point = point_for(false, 0, j, 0, false);
    term.column = 0;
    term.factor = {RandomFactor::det_h, 0, 0};
    term.disp_family = 0;
    term.disp_stage = j + 1;
    return term;
  }

  ExpTerm diffusion_term(const Rational& coef, const std::string& coef_name, int column_l,
                         int family, bool hat, int c_vector, int j, FactorRef factor) {
    ExpTerm term;
    term.coef = coef;
    term.coef_name = coef_name;
    term.point = point_for(true, c_vector, j, family, hat);
    term.column = column_l;
    term.factor = factor;
    term.disp_family = family;
    term.disp_stage = j + 1;
    term.disp_hat = hat;
    return term;
  }
};

FactorRef cross_factor(const CoefficientTable& table, int l, int k) {
  // dbl(row, col); the table flag swaps the index order of I^{lk}.
  if (table.transpose_cross) return {RandomFactor::cross, k, l};
  return {RandomFactor::cross, l, k};
}

StepExpansion build_expansion(const CoefficientTable& table, int m) {
  require(m >= 1, "noise dimension must be at least 1");
  if (table.kind == TableKind::scalar_strong)
    require(m == 1, "scalar tables specialize only to m = 1");

  Builder b(table, m);
  StepExpansion& exp = b.exp;
  exp.table_name = table.name;
  exp.function_name = generated_function_name(table, m);
  exp.kind = table.kind;
  exp.m = m;
  exp.stages = table.stages;
  const int s = table.stages;

  const bool scalar = table.kind == TableKind::scalar_strong;
  const bool weak = table.kind == TableKind::vector_weak;

  // Stage skeletons with alias flags; terms are attached afterwards so
  // that point_for can resolve alias states.
  for (int i = 0; i < s; ++i) {
    const bool x0_alias = row_is_zero(table.A0[i]) && row_is_zero(table.B0[i]);
    const bool xk_alias = row_is_zero(table.A1[i]) && row_is_zero(table.B1[i]);
    StageDef x0{stage_symbol(0, false, i + 1), 0, false, i + 1, x0_alias, false, {}};
    exp.stage_defs.push_back(std::move(x0));
    const int families = scalar ? 1 : m;
    for (int k = 1; k <= families; ++k)
      exp.stage_defs.push_back({stage_symbol(k, false, i + 1), k, false, i + 1, xk_alias, false, {}});
    if (weak) {
      const bool hat_alias = row_is_zero(table.A2[i]) && (m == 1 || row_is_zero(table.B2[i]));
      for (int k = 1; k <= m; ++k)
        exp.stage_defs.push_back({stage_symbol(k, true, i + 1), k, true, i + 1, hat_alias, false, {}});
    }
  }

  auto stage_at = [&](int family, bool hat, int index) -> StageDef& {
    return exp.stage_defs[static_cast<std::size_t>(b.stage_position(family, hat, index))];
  };

  for (int i = 0; i < s; ++i) {
    // X0 chain
    {
      StageDef& stage = stage_at(0, false, i + 1);
      for (int j = 0; j < i; ++j)
        if (!table.A0[i][j].is_zero())
          stage.terms.push_back(
              b.drift_term(table.A0[i][j], b.matrix_constant("A0", i, j, table.A0[i][j]), j));
      if (scalar) {
        for (int j = 0; j < i; ++j)
          if (!table.B0[i][j].is_zero())
            stage.terms.push_back(
                b.diffusion_term(table.B0[i][j], b.matrix_constant("B0", i, j, table.B0[i][j]), 0,
                                 1, false, 1, j, {RandomFactor::i10_over_h, 0, 0}));
      } else {
        for (int l = 1; l <= m; ++l)
          for (int j = 0; j < i; ++j)
            if (!table.B0[i][j].is_zero())
              stage.terms.push_back(b.diffusion_term(
                  table.B0[i][j], b.matrix_constant("B0", i, j, table.B0[i][j]), l, l, false, 1, j,
                  {weak ? RandomFactor::what : RandomFactor::single, l, 0}));
      }
    }
    // X^k chains (one chain for the scalar family)
    const int families = scalar ? 1 : m;
    for (int k = 1; k <= families; ++k) {
      StageDef& stage = stage_at(k, false, i + 1);
      if (stage.alias) continue;
      for (int j = 0; j < i; ++j)
        if (!table.A1[i][j].is_zero())
          stage.terms.push_back(
              b.drift_term(table.A1[i][j], b.matrix_constant("A1", i, j, table.A1[i][j]), j));
      for (int j = 0; j < i; ++j) {
        if (table.B1[i][j].is_zero()) continue;
        const std::string name = b.matrix_constant("B1", i, j, table.B1[i][j]);
        if (scalar) {
          stage.terms.push_back(b.diffusion_term(table.B1[i][j], name, 0, 1, false, 1, j,
                                                 {RandomFactor::sqrt_h, 0, 0}));
        } else if (weak) {
          stage.terms.push_back(b.diffusion_term(table.B1[i][j], name, k, k, false, 1, j,
                                                 {RandomFactor::sqrt_h, 0, 0}));
        } else {
          for (int l = 1; l <= m; ++l)
            stage.terms.push_back(b.diffusion_term(table.B1[i][j], name, l, l, false, 1, j,
                                                   cross_factor(table, l, k)));
        }
      }
    }
    // hatted chains of the weak family
    if (weak) {
      for (int k = 1; k <= m; ++k) {
        StageDef& stage = stage_at(k, true, i + 1);
        if (stage.alias) continue;
        for (int j = 0; j < i; ++j)
          if (!table.A2[i][j].is_zero())
            stage.terms.push_back(
                b.drift_term(table.A2[i][j], b.matrix_constant("A2", i, j, table.A2[i][j]), j));
        for (int l = 1; l <= m; ++l) {
          if (l == k) continue;
          for (int j = 0; j < i; ++j)
            if (!table.B2[i][j].is_zero())
              stage.terms.push_back(
                  b.diffusion_term(table.B2[i][j], b.matrix_constant("B2", i, j, table.B2[i][j]),
                                   l, l, false, 1, j, {RandomFactor::what_cross, k, l}));
        }
      }
    }
  }

  // update terms
  for (int i = 0; i < s; ++i)
    if (!table.a[i].is_zero())
      exp.update_terms.push_back(
          b.drift_term(table.a[i], b.vector_constant("a", i, table.a[i]), i));
  if (scalar) {
    for (int i = 0; i < s; ++i) {
      auto push = [&](const RationalRow& row, const char* name, RandomFactor factor) {
        if (row[i].is_zero()) return;
        exp.update_terms.push_back(b.diffusion_term(row[i], b.vector_constant(name, i, row[i]), 0,
                                                    1, false, 1, i, {factor, 1, 0}));
      };
      push(table.b1, "b1", RandomFactor::single);
      push(table.b2, "b2", RandomFactor::i11_over_sqrt_h);
      push(table.b3, "b3", RandomFactor::i10_over_h);
      push(table.b4, "b4", RandomFactor::i111_over_h);
    }
  } else if (!weak) {
    for (int k = 1; k <= m; ++k) {
      for (int i = 0; i < s; ++i) {
        if (!table.b1[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b1[i], b.vector_constant("b1", i, table.b1[i]), k, k, false,
                               1, i, {RandomFactor::single, k, 0}));
        if (!table.b2[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b2[i], b.vector_constant("b2", i, table.b2[i]), k, k, false,
                               1, i, {RandomFactor::sqrt_h, 0, 0}));
      }
    }
  } else {
    for (int k = 1; k <= m; ++k) {
      for (int i = 0; i < s; ++i) {
        if (!table.b1[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b1[i], b.vector_constant("b1", i, table.b1[i]), k, k, false,
                               1, i, {RandomFactor::what, k, 0}));
        if (!table.b2[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b2[i], b.vector_constant("b2", i, table.b2[i]), k, k, false,
                               1, i, {RandomFactor::what_diag, k, 0}));
      }
    }
    for (int k = 1; k <= m; ++k) {
      for (int i = 0; i < s; ++i) {
        if (!table.b3[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b3[i], b.vector_constant("b3", i, table.b3[i]), k, k, true,
                               2, i, {RandomFactor::what, k, 0}));
        if (!table.b4[i].is_zero())
          exp.update_terms.push_back(
              b.diffusion_term(table.b4[i], b.vector_constant("b4", i, table.b4[i]), k, k, true,
                               2, i, {RandomFactor::sqrt_h, 0, 0}));
      }
    }
  }

  // usage closure: stages and points reachable from the update through
  // nonzero terms; only those appear in emitted source
  std::vector<int> queue;
  auto mark_terms = [&](const std::vector<ExpTerm>& terms) {
    for (const auto& term : terms) {
      EvalPoint& point = exp.points[static_cast<std::size_t>(term.point)];
      if (!point.used) {
        point.used = true;
        const int stage = b.stage_of_point[static_cast<std::size_t>(term.point)];
        if (stage >= 0) queue.push_back(stage);
      }
    }
  };
  mark_terms(exp.update_terms);
  while (!queue.empty()) {
    const int stage = queue.back();
    queue.pop_back();
    auto& def = exp.stage_defs[static_cast<std::size_t>(stage)];
    if (def.used) continue;
    def.used = true;
    mark_terms(def.terms);
  }

  // emission names and ordering for the used points
  int emitted_stage_position = 0;
  std::vector<int> stage_emit_position(exp.stage_defs.size(), 0);
  for (std::size_t p = 0; p < exp.stage_defs.size(); ++p)
    if (exp.stage_defs[p].used && !exp.stage_defs[p].alias)
      stage_emit_position[p] = ++emitted_stage_position;
  int drift_count = 0, diffusion_count = 0;
  for (std::size_t i = 0; i < exp.points.size(); ++i) {
    EvalPoint& point = exp.points[i];
    if (!point.used) continue;
    point.name = point.diffusion ? "G" + std::to_string(++diffusion_count)
                                 : "F" + std::to_string(++drift_count);
    point.defined_after =
        b.stage_of_point[i] < 0
            ? 0
            : stage_emit_position[static_cast<std::size_t>(b.stage_of_point[i])];
  }
  return exp;
}

// ---------------------------------------------------------------------------
// cpp emission

std::string cpp_rational(const Rational& r) {
  std::string out = std::to_string(r.num()) + ".0";
  if (r.den() != 1) out += " / " + std::to_string(r.den()) + ".0";
  return out;
}

struct CppStyler {
  const StepExpansion& exp;
  bool scalar() const { return exp.kind == TableKind::scalar_strong; }

  std::string factor(const FactorRef& f) const {
    switch (f.factor) {
      case RandomFactor::det_h: return "h";
      case RandomFactor::sqrt_h: return "sqrt_h";
      case RandomFactor::single: return "I.single[" + std::to_string(f.k - 1) + "]";
      case RandomFactor::cross:
        return "(I.dbl(" + std::to_string(f.k - 1) + ", " + std::to_string(f.l - 1) +
               ") / sqrt_h)";
      case RandomFactor::i10_over_h: return "(I.time_right[0] / h)";
      case RandomFactor::i10_over_sqrt_h: return "(I.time_right[0] / sqrt_h)";
      case RandomFactor::i11_over_sqrt_h: return "(I.dbl(0, 0) / sqrt_h)";
      case RandomFactor::i111_over_h: return "(I.triple_diag[0] / h)";
      case RandomFactor::what: return "R.ihat[" + std::to_string(f.k - 1) + "]";
      case RandomFactor::what_diag:
        return "(R.ihat2(" + std::to_string(f.k - 1) + ", " + std::to_string(f.k - 1) +
               ") / sqrt_h)";
      case RandomFactor::what_cross:
        return "(R.ihat2(" + std::to_string(f.k - 1) + ", " + std::to_string(f.l - 1) +
               ") / sqrt_h)";
    }
    return "?";
  }

  std::string eval(const ExpTerm& term) const {
    const EvalPoint& point = exp.points[static_cast<std::size_t>(term.point)];
    if (scalar() || !point.diffusion) return point.name + (scalar() ? "" : "[a]");
    if (exp.m == 1) return point.name + "[a]";
    return point.name + "[a * " + std::to_string(exp.m) + " + " +
           std::to_string(term.column - 1) + "]";
  }

  std::string term(const ExpTerm& t) const {
    return t.coef_name + " * " + eval(t) + " * " + factor(t.factor);
  }

  std::string terms(const std::vector<ExpTerm>& list, const std::string& joiner) const {
    std::string out;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out += joiner;
      out += term(list[i]);
    }
    return out;
  }

  std::string time_expr(const EvalPoint& point) const {
    if (point.c.is_zero()) return "t";
    const char* row = point.c_vector == 0 ? "c0" : (point.c_vector == 1 ? "c1" : "c2");
    return "t + c_" + std::string(row) + "_" + std::to_string(point.c_index) + " * h";
  }
};

bool factor_needs_sqrt_h(const FactorRef& f) {
  switch (f.factor) {
    case RandomFactor::sqrt_h:
    case RandomFactor::cross:
    case RandomFactor::i10_over_sqrt_h:
    case RandomFactor::i11_over_sqrt_h:
    case RandomFactor::what_diag:
    case RandomFactor::what_cross:
      return true;
    default:
      return false;
  }
}

TemplateValue cpp_model(const StepExpansion& exp) {
  CppStyler style{exp};
  TemplateValue::Map root;
  root["function_name"] = exp.function_name;
  root["table"] = exp.table_name;
  root["kind"] = table_kind_name(exp.kind);
  root["m"] = std::to_string(exp.m);
  root["is_scalar"] = TemplateValue::boolean(exp.kind == TableKind::scalar_strong);
  root["is_weak"] = TemplateValue::boolean(exp.kind == TableKind::vector_weak);

  bool needs_sqrt_h = false;
  std::set<std::string> referenced;
  auto scan_terms = [&](const std::vector<ExpTerm>& terms) {
    for (const auto& t : terms) {
      needs_sqrt_h = needs_sqrt_h || factor_needs_sqrt_h(t.factor);
      referenced.insert(t.coef_name);
    }
  };
  scan_terms(exp.update_terms);
  for (const auto& stage : exp.stage_defs)
    if (stage.used && !stage.alias) scan_terms(stage.terms);
  for (const auto& point : exp.points)
    if (point.used && !point.c.is_zero()) {
      const char* row = point.c_vector == 0 ? "c0" : (point.c_vector == 1 ? "c1" : "c2");
      referenced.insert("c_" + std::string(row) + "_" + std::to_string(point.c_index));
    }
  root["needs_sqrt_h"] = TemplateValue::boolean(needs_sqrt_h);

  TemplateValue::List constants;
  for (const auto& c : exp.constants) {
    if (!referenced.count(c.name)) continue;
    constants.push_back(TemplateValue(TemplateValue::Map{
        {"name", TemplateValue(c.name)}, {"value", TemplateValue(cpp_rational(c.value))}}));
  }
  root["constants"] = std::move(constants);

  // Statement sequence: evaluations at x_n, then each used stage followed
  // by the evaluations that become available after it.
  TemplateValue::List body;
  auto push_evals = [&](int after) {
    for (const auto& point : exp.points) {
      if (!point.used || point.defined_after != after) continue;
      body.push_back(TemplateValue(TemplateValue::Map{
          {"is_eval_f", TemplateValue::boolean(!point.diffusion)},
          {"is_eval_g", TemplateValue::boolean(point.diffusion)},
          {"is_stage", TemplateValue::boolean(false)},
          {"name", TemplateValue(point.name)},
          {"time", TemplateValue(style.time_expr(point))},
          {"state", TemplateValue(point.state.empty() ? "x" : point.state)}}));
    }
  };
  push_evals(0);
  int emitted = 0;
  for (const auto& stage : exp.stage_defs) {
    if (!stage.used || stage.alias) continue;
    ++emitted;
    body.push_back(TemplateValue(TemplateValue::Map{
        {"is_eval_f", TemplateValue::boolean(false)},
        {"is_eval_g", TemplateValue::boolean(false)},
        {"is_stage", TemplateValue::boolean(true)},
        {"name", TemplateValue(stage.symbol)},
        {"rhs", TemplateValue(style.terms(stage.terms,
                                          exp.kind == TableKind::scalar_strong
                                              ? " + "
                                              : "\n                  + "))}}));
    push_evals(emitted);
  }
  root["body"] = std::move(body);
  root["update_rhs"] =
      style.terms(exp.update_terms, exp.kind == TableKind::scalar_strong
                                        ? "\n             + "
                                        : "\n                 + ");
  return TemplateValue(std::move(root));
}

// ---------------------------------------------------------------------------
// math emission

struct MathStyler {
  const StepExpansion& exp;
  bool scalar() const { return exp.kind == TableKind::scalar_strong; }

  static std::string coef_symbol(const std::string& constant_name) {
    // c_A0_2_1 -> A0_{2,1};  c_b2_3 -> b2_{3};  c_c1_2 -> c1_{2}
    std::string body = constant_name.substr(2);
    auto first = body.find('_');
    std::string block = body.substr(0, first);
    std::string indices = body.substr(first + 1);
    std::replace(indices.begin(), indices.end(), '_', ',');
    return block + "_{" + indices + "}";
  }

  std::string factor(const FactorRef& f) const {
    switch (f.factor) {
      case RandomFactor::det_h: return "h_n";
      case RandomFactor::sqrt_h: return "\\sqrt{h_n}";
      case RandomFactor::single: return "I^{" + std::to_string(f.k) + "}(h_n)";
      case RandomFactor::cross:
        return "\\frac{I^{" + std::to_string(f.k) + std::to_string(f.l) + "}(h_n)}{\\sqrt{h_n}}";
      case RandomFactor::i10_over_h: return "\\frac{I^{10}(h_n)}{h_n}";
      case RandomFactor::i10_over_sqrt_h: return "\\frac{I^{10}(h_n)}{\\sqrt{h_n}}";
      case RandomFactor::i11_over_sqrt_h: return "\\frac{I^{11}(h_n)}{\\sqrt{h_n}}";
      case RandomFactor::i111_over_h: return "\\frac{I^{111}(h_n)}{h_n}";
      case RandomFactor::what: return "\\hat{I}^{" + std::to_string(f.k) + "}";
      case RandomFactor::what_diag:
        return "\\frac{\\hat{I}^{" + std::to_string(f.k) + std::to_string(f.k) +
               "}}{\\sqrt{h_n}}";
      case RandomFactor::what_cross:
        return "\\frac{\\hat{I}^{" + std::to_string(f.k) + std::to_string(f.l) +
               "}}{\\sqrt{h_n}}";
    }
    return "?";
  }

  std::string stage_math_symbol(int family, bool hat, int index, bool with_component) const {
    if (scalar()) return "X_" + std::to_string(family) + "^{" + std::to_string(index) + "}";
    std::string core = "X^{" + std::to_string(family) + std::to_string(index) +
                       (with_component ? "\\alpha" : "\\beta") + "}";
    return hat ? "\\hat{" + core + "}" : core;
  }

  std::string time_of(const ExpTerm& term) const {
    const EvalPoint& point = exp.points[static_cast<std::size_t>(term.point)];
    if (point.c.is_zero()) return "t_n";
    const char* row = point.c_vector == 0 ? "c0" : (point.c_vector == 1 ? "c1" : "c2");
    return "t_n + " + std::string(row) + "_{" + std::to_string(point.c_index) + "} h_n";
  }

  std::string eval(const ExpTerm& term) const {
    const EvalPoint& point = exp.points[static_cast<std::size_t>(term.point)];
    const std::string state =
        scalar() ? (point.diffusion ? stage_math_symbol(1, false, term.disp_stage, false)
                                    : stage_math_symbol(0, false, term.disp_stage, false))
                 : stage_math_symbol(term.disp_family, term.disp_hat, term.disp_stage, false);
    if (!point.diffusion) {
      const std::string f = scalar() ? "f" : "f^{\\alpha}";
      return f + "(" + time_of(term) + ", " + state + ")";
    }
    const std::string g =
        scalar() ? "g" : "G_{" + std::to_string(term.column) + "}^{\\alpha}";
    return g + "(" + time_of(term) + ", " + state + ")";
  }

  std::string term(const ExpTerm& t) const {
    return coef_symbol(t.coef_name) + " \\, " + eval(t) + " \\, " + factor(t.factor);
  }
};

TemplateValue math_model(const StepExpansion& exp) {
  MathStyler style{exp};
  TemplateValue::Map root;
  root["function_name"] = exp.function_name;
  root["table"] = exp.table_name;
  root["kind"] = table_kind_name(exp.kind);
  root["m"] = std::to_string(exp.m);
  const bool scalar = exp.kind == TableKind::scalar_strong;
  const std::string xn = scalar ? "x_n" : "x_n^{\\alpha}";

  TemplateValue::List constants;
  for (const auto& c : exp.constants)
    constants.push_back(TemplateValue(TemplateValue::Map{
        {"symbol", TemplateValue(MathStyler::coef_symbol(c.name))},
        {"value", TemplateValue(c.value.str())}}));
  root["constants"] = std::move(constants);

  TemplateValue::List stages;
  for (const auto& stage : exp.stage_defs) {
    TemplateValue::Map line;
    line["symbol"] =
        TemplateValue(style.stage_math_symbol(stage.family, stage.hat, stage.index, true));
    if (stage.alias) {
      line["rhs"] = TemplateValue(xn);
    } else {
      std::string rhs = xn;
      for (const auto& term : stage.terms) rhs += " + " + style.term(term);
      line["rhs"] = TemplateValue(rhs);
    }
    stages.push_back(TemplateValue(std::move(line)));
  }
  root["stages"] = std::move(stages);

  std::string update = xn;
  for (const auto& term : exp.update_terms) update += "\n  + " + style.term(term);
  root["update_lhs"] = scalar ? "x_{n+1}" : "x_{n+1}^{\\alpha}";
  root["update_rhs"] = update;
  return TemplateValue(std::move(root));
}

}  // namespace

std::string generated_function_name(const CoefficientTable& table, int m) {
  const std::string kind_word = table.kind == TableKind::vector_weak ? "weak" : "strong";
  return kind_word + "_" + lower(table.name) + "_w" + std::to_string(m);
}

StepExpansion expand(const CoefficientTable& table, int m) {
  // Structural validity only; the consistency sums gate method quality,
  // not expandability (a deterministic-only table expands fine).
  ValidationReport report = validate(table);
  for (const auto& check : report.checks)
    if ((check.name == "shapes" || check.name == "explicitness") && !check.passed)
      throw InvalidError("table '" + table.name + "' fails the " + check.name + " check");
  return build_expansion(table, m);
}

std::vector<std::string> emission_dialects() { return {"cpp"}; }

std::string emit_stepper_source(const StepExpansion& exp, const std::string& dialect) {
  if (dialect == "cpp") return render_template(embedded_text("stepper_cpp.tmpl"), cpp_model(exp));
  throw InvalidError("unknown emission dialect '" + dialect + "'; available: cpp");
}

std::string emit_math(const StepExpansion& exp) {
  return render_template(embedded_text("formulas_latex.tmpl"), math_model(exp));
}

namespace {

std::string registry_source(const std::vector<BundleEntry>& entries) {
  std::ostringstream out;
  out << "// Generated lookup table for the emitted steppers. Do not edit.\n";
  out << "#include \"generated_api.hpp\"\n\n";
  out << "namespace srk::gen {\n\n";
  for (const auto& e : entries) {
    if (e.kind == "scalar_strong")
      out << "double " << e.function
          << "(const ScalarSde&, double, double, double, const ItoIntegralSet&);\n";
    else if (e.kind == "vector_strong")
      out << "void " << e.function
          << "(const SdeSystem&, double, std::span<const double>, double, const ItoIntegralSet&, "
             "std::span<double>);\n";
    else
      out << "void " << e.function
          << "(const SdeSystem&, double, std::span<const double>, double, const WeakRandomSet&, "
             "std::span<double>);\n";
  }
  out << "\nnamespace {\nconst GeneratedStepper kSteppers[] = {\n";
  for (const auto& e : entries) {
    out << "    {\"" << e.function << "\", \"" << e.table << "\", TableKind::" << e.kind << ", "
        << e.m << ", ";
    if (e.kind == "scalar_strong")
      out << e.function << ", nullptr, nullptr},\n";
    else if (e.kind == "vector_strong")
      out << "nullptr, " << e.function << ", nullptr},\n";
    else
      out << "nullptr, nullptr, " << e.function << "},\n";
  }
  out << "};\n}  // namespace\n\n";
  out << "std::span<const GeneratedStepper> generated_steppers() { return kSteppers; }\n\n";
  out << "}  // namespace srk::gen\n";
  return out.str();
}

}  // namespace

std::string bundle_manifest_json(const std::vector<BundleEntry>& entries) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& e : entries) {
    doc.push_back({{"function", e.function},
                   {"table", e.table},
                   {"kind", e.kind},
                   {"m", e.m},
                   {"dialect", e.dialect},
                   {"file", e.file},
                   {"hash", e.hash}});
  }
  return doc.dump(2) + "\n";
}

std::vector<BundleEntry> generate_bundle(const std::vector<CoefficientTable>& tables, int m_min,
                                         int m_max, const std::string& dialect,
                                         const std::filesystem::path& outdir) {
  require(m_min >= 1 && m_max >= m_min, "generation range must satisfy 1 <= m_min <= m_max");
  if (dialect != "cpp") throw InvalidError("unknown emission dialect '" + dialect + "'");
  std::set<std::string> seen;
  for (const auto& table : tables)
    require(seen.insert(table.name).second, "duplicate table name '" + table.name + "'");

  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create output directory " + outdir.string() + ": " + ec.message());

  std::vector<BundleEntry> entries;
  for (const auto& table : tables) {
    const int lo = table.kind == TableKind::scalar_strong ? 1 : m_min;
    const int hi = table.kind == TableKind::scalar_strong ? 1 : m_max;
    for (int m = lo; m <= hi; ++m) {
      StepExpansion exp = expand(table, m);
      const std::string source = emit_stepper_source(exp, dialect);
      BundleEntry entry;
      entry.function = exp.function_name;
      entry.table = table.name;
      entry.kind = table_kind_name(table.kind);
      entry.m = m;
      entry.dialect = dialect;
      entry.file = exp.function_name + ".cpp";
      entry.hash = content_hash(source);
      write_text_file(outdir / entry.file, source);
      entries.push_back(std::move(entry));
    }
  }
  write_text_file(outdir / "registry.cpp", registry_source(entries));
  write_text_file(outdir / "manifest.json", bundle_manifest_json(entries));
  return entries;
}

}  // namespace srk
