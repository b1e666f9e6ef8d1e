#include "tables.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "error.hpp"
#include "json.hpp"

namespace srk {

const std::string& embedded_text(const std::string& key);  // embedded_data.cpp

namespace {

using nlohmann::json;

Rational parse_entry(const json& value, const std::string& where) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  } catch (const Error& e) {
    throw InvalidError(std::string(e.what()) + " in " + where);
  }
  throw InvalidError("entry in " + where + " must be a fraction string");
}

RationalRow parse_row(const json& value, int length, const std::string& key) {
  if (!value.is_array() || static_cast<int>(value.size()) != length)
    throw InvalidError("shape mismatch: " + key + " must have " + std::to_string(length) +
                       " entries");
  RationalRow row;
  row.reserve(value.size());
  for (const auto& item : value) row.push_back(parse_entry(item, key));
  return row;
}

RationalBlock parse_block(const json& value, int stages, const std::string& key) {
  if (!value.is_array() || static_cast<int>(value.size()) != stages)
    throw InvalidError("shape mismatch: " + key + " must be a " + std::to_string(stages) + "x" +
                       std::to_string(stages) + " matrix");
  RationalBlock block;
  block.reserve(value.size());
  for (int i = 0; i < stages; ++i)
    block.push_back(parse_row(value[i], stages, key + " row " + std::to_string(i + 1)));
  return block;
}

void check_explicit(const RationalBlock& block, const std::string& key) {
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i; j < block[i].size(); ++j)
      if (!block[i][j].is_zero())
        throw InvalidError(key + " is not strictly lower triangular: nonzero entry at row " +
                           std::to_string(i + 1) + ", column " + std::to_string(j + 1));
}

const json& need(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InvalidError("missing key '" + key + "' in coefficient table");
  return *it;
}

RationalRow zero_row(int n) { return RationalRow(static_cast<std::size_t>(n), Rational(0)); }
RationalBlock zero_block(int n) { return RationalBlock(static_cast<std::size_t>(n), zero_row(n)); }

json row_to_json(const RationalRow& row) {
  json out = json::array();
  for (const auto& r : row) out.push_back(r.str());
  return out;
}

json block_to_json(const RationalBlock& block) {
  json out = json::array();
  for (const auto& row : block) out.push_back(row_to_json(row));
  return out;
}

Rational sum(const RationalRow& row) {
  Rational s(0);
  for (const auto& r : row) s = s + r;
  return s;
}

std::vector<double> row_to_float(const RationalRow& row, int digits) {
  std::vector<double> out;
  out.reserve(row.size());
  for (const auto& r : row)
    out.push_back(digits > 0 ? round_significant(r.value(), digits) : r.value());
  return out;
}

std::vector<std::vector<double>> block_to_float(const RationalBlock& block, int digits) {
  std::vector<std::vector<double>> out;
  out.reserve(block.size());
  for (const auto& row : block) out.push_back(row_to_float(row, digits));
  return out;
}

}  // namespace

const char* table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::scalar_strong: return "scalar_strong";
    case TableKind::vector_strong: return "vector_strong";
    case TableKind::vector_weak: return "vector_weak";
  }
  return "?";
}

CoefficientTable parse_table(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidError(std::string("coefficient table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidError("coefficient table must be a JSON object");

  CoefficientTable t;
  t.name = need(doc, "name").get<std::string>();
  require(!t.name.empty() && t.name.find(' ') == std::string::npos,
          "table name must be one word without spaces");
  if (doc.contains("description")) t.description = doc["description"].get<std::string>();

  const json& stage = need(doc, "stage");
  if (!stage.is_number_integer() || stage.get<int>() < 1)
    throw InvalidError("'stage' must be a positive integer");
  t.stages = stage.get<int>();

  t.det_order = parse_entry(need(doc, "det_order"), "det_order");
  t.stoch_order = parse_entry(need(doc, "stoch_order"), "stoch_order");

  const bool has_weak_keys = doc.contains("A2") || doc.contains("B2") || doc.contains("c2");
  const bool has_scalar_keys = doc.contains("b3") || doc.contains("b4");
  if (doc.contains("kind")) {
    const std::string k = doc["kind"].get<std::string>();
    if (k == "scalar_strong") t.kind = TableKind::scalar_strong;
    else if (k == "vector_strong") t.kind = TableKind::vector_strong;
    else if (k == "vector_weak") t.kind = TableKind::vector_weak;
    else throw InvalidError("unknown table kind '" + k + "'");
  } else if (has_weak_keys) {
    t.kind = TableKind::vector_weak;
  } else if (has_scalar_keys) {
    t.kind = TableKind::scalar_strong;
  } else {
    t.kind = TableKind::vector_strong;
  }

  const int s = t.stages;
  t.A0 = parse_block(need(doc, "A0"), s, "A0");
  t.B0 = parse_block(need(doc, "B0"), s, "B0");
  t.A1 = parse_block(need(doc, "A1"), s, "A1");
  t.B1 = parse_block(need(doc, "B1"), s, "B1");
  t.c0 = parse_row(need(doc, "c0"), s, "c0");
  t.c1 = parse_row(need(doc, "c1"), s, "c1");
  t.a = parse_row(need(doc, "a"), s, "a");
  t.b1 = parse_row(need(doc, "b1"), s, "b1");
  t.b2 = parse_row(need(doc, "b2"), s, "b2");

  const bool needs_b34 = t.kind != TableKind::vector_strong;
  if (needs_b34) {
    t.b3 = doc.contains("b3") ? parse_row(doc["b3"], s, "b3") : zero_row(s);
    t.b4 = doc.contains("b4") ? parse_row(doc["b4"], s, "b4") : zero_row(s);
  }
  if (t.kind == TableKind::vector_weak) {
    t.A2 = doc.contains("A2") ? parse_block(doc["A2"], s, "A2") : zero_block(s);
    t.B2 = doc.contains("B2") ? parse_block(doc["B2"], s, "B2") : zero_block(s);
    t.c2 = doc.contains("c2") ? parse_row(doc["c2"], s, "c2") : zero_row(s);
  }
  if (doc.contains("transpose_cross")) t.transpose_cross = doc["transpose_cross"].get<bool>();

  check_explicit(t.A0, "A0");
  check_explicit(t.A1, "A1");
  check_explicit(t.B0, "B0");
  check_explicit(t.B1, "B1");
  if (t.kind == TableKind::vector_weak) {
    check_explicit(t.A2, "A2");
    check_explicit(t.B2, "B2");
  }
  return t;
}

std::string table_to_json(const CoefficientTable& t) {
  json doc;
  doc["name"] = t.name;
  doc["description"] = t.description;
  doc["stage"] = t.stages;
  doc["det_order"] = t.det_order.str();
  doc["stoch_order"] = t.stoch_order.str();
  doc["A0"] = block_to_json(t.A0);
  doc["B0"] = block_to_json(t.B0);
  doc["A1"] = block_to_json(t.A1);
  doc["B1"] = block_to_json(t.B1);
  doc["c0"] = row_to_json(t.c0);
  doc["c1"] = row_to_json(t.c1);
  doc["a"] = row_to_json(t.a);
  doc["b1"] = row_to_json(t.b1);
  doc["b2"] = row_to_json(t.b2);
  if (t.kind != TableKind::vector_strong) {
    doc["b3"] = row_to_json(t.b3);
    doc["b4"] = row_to_json(t.b4);
  }
  if (t.kind == TableKind::vector_weak) {
    doc["A2"] = block_to_json(t.A2);
    doc["B2"] = block_to_json(t.B2);
    doc["c2"] = row_to_json(t.c2);
  }
  if (t.transpose_cross) doc["transpose_cross"] = true;
  return doc.dump(2) + "\n";
}

bool ValidationReport::mandatory_ok() const {
  for (const auto& c : checks)
    if (c.mandatory && !c.passed) return false;
  return true;
}

std::string ValidationReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "pass" : "FAIL") << (c.mandatory ? "  " : "* ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << (mandatory_ok() ? "table is valid" : "table is INVALID") << " (* = advisory)\n";
  return out.str();
}

ValidationReport validate(const CoefficientTable& t) {
  ValidationReport report;
  const std::size_t s = static_cast<std::size_t>(t.stages);

  auto add = [&](const std::string& name, bool mandatory, bool passed, std::string detail = "") {
    report.checks.push_back({name, mandatory, passed, std::move(detail)});
  };

  auto block_shape = [&](const RationalBlock& block) {
    if (block.size() != s) return false;
    for (const auto& row : block)
      if (row.size() != s) return false;
    return true;
  };
  bool shapes = block_shape(t.A0) && block_shape(t.A1) && block_shape(t.B0) &&
                block_shape(t.B1) && t.c0.size() == s && t.c1.size() == s && t.a.size() == s &&
                t.b1.size() == s && t.b2.size() == s;
  if (t.kind != TableKind::vector_strong)
    shapes = shapes && t.b3.size() == s && t.b4.size() == s;
  if (t.kind == TableKind::vector_weak)
    shapes = shapes && block_shape(t.A2) && block_shape(t.B2) && t.c2.size() == s;
  add("shapes", true, shapes);

  auto strictly_lower = [](const RationalBlock& block) {
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i; j < block[i].size(); ++j)
        if (!block[i][j].is_zero()) return false;
    return true;
  };
  bool expl = strictly_lower(t.A0) && strictly_lower(t.A1) && strictly_lower(t.B0) &&
              strictly_lower(t.B1);
  if (t.kind == TableKind::vector_weak) expl = expl && strictly_lower(t.A2) && strictly_lower(t.B2);
  add("explicitness", true, expl);

  if (shapes) {
    Rational sa = sum(t.a);
    add("sum(a) = 1", true, sa == Rational(1), "sum = " + sa.str());
    Rational sb1 = sum(t.b1);
    add("sum(b1) = 1", true, sb1 == Rational(1), "sum = " + sb1.str());
    Rational sb2 = sum(t.b2);
    add("sum(b2) = 0", false, sb2 == Rational(0), "sum = " + sb2.str());
    if (t.kind != TableKind::vector_strong) {
      Rational sb3 = sum(t.b3);
      add("sum(b3) = 0", false, sb3 == Rational(0), "sum = " + sb3.str());
      Rational sb4 = sum(t.b4);
      add("sum(b4) = 0", false, sb4 == Rational(0), "sum = " + sb4.str());
    }
  }
  return report;
}

FloatTable to_float(const CoefficientTable& t, int digits) {
  FloatTable f;
  f.name = t.name;
  f.kind = t.kind;
  f.stages = t.stages;
  f.transpose_cross = t.transpose_cross;
  f.A0 = block_to_float(t.A0, digits);
  f.A1 = block_to_float(t.A1, digits);
  f.B0 = block_to_float(t.B0, digits);
  f.B1 = block_to_float(t.B1, digits);
  f.c0 = row_to_float(t.c0, digits);
  f.c1 = row_to_float(t.c1, digits);
  f.a = row_to_float(t.a, digits);
  f.b1 = row_to_float(t.b1, digits);
  f.b2 = row_to_float(t.b2, digits);
  if (t.kind != TableKind::vector_strong) {
    f.b3 = row_to_float(t.b3, digits);
    f.b4 = row_to_float(t.b4, digits);
  }
  if (t.kind == TableKind::vector_weak) {
    f.A2 = block_to_float(t.A2, digits);
    f.B2 = block_to_float(t.B2, digits);
    f.c2 = row_to_float(t.c2, digits);
  }
  return f;
}

std::string render_table_math(const CoefficientTable& t) {
  const int s = t.stages;
  std::ostringstream out;
  out << "% " << t.name << " (" << table_kind_name(t.kind) << ", s = " << s
      << ", p_d = " << t.det_order.str() << ", p_s = " << t.stoch_order.str() << ")\n";
  out << "\\begin{array}{c|";
  for (int j = 0; j < s; ++j) out << "c";
  out << "|";
  for (int j = 0; j < s; ++j) out << "c";
  out << "}\n";

  auto emit_block_rows = [&](const RationalRow& c, const RationalBlock& A,
                             const RationalBlock& B) {
    for (int i = 0; i < s; ++i) {
      out << c[i].str();
      for (int j = 0; j < s; ++j) out << " & " << A[i][j].str();
      for (int j = 0; j < s; ++j) out << " & " << B[i][j].str();
      out << " \\\\\n";
    }
  };
  emit_block_rows(t.c0, t.A0, t.B0);
  out << "\\hline\n";
  emit_block_rows(t.c1, t.A1, t.B1);
  if (t.kind == TableKind::vector_weak) {
    out << "\\hline\n";
    emit_block_rows(t.c2, t.A2, t.B2);
  }
  out << "\\hline\n";

  auto emit_weight_row = [&](const RationalRow& row) {
    out << " ";
    for (int j = 0; j < s; ++j) out << " & " << row[j].str();
    for (int j = 0; j < s; ++j) out << " & ";
    out << "\\\\\n";
  };
  emit_weight_row(t.a);
  emit_weight_row(t.b1);
  emit_weight_row(t.b2);
  if (t.kind != TableKind::vector_strong) {
    emit_weight_row(t.b3);
    emit_weight_row(t.b4);
  }
  out << "\\end{array}\n";
  return out.str();
}

namespace {

const std::map<std::string, CoefficientTable>& bundled_registry() {
  static std::map<std::string, CoefficientTable> registry;
  static std::once_flag once;
  std::call_once(once, [] {
    for (const char* file : {"srk1w1.json", "srk2w1.json", "k1p1.json", "srk1wm.json",
                             "srk2wm.json", "eulerw.json"}) {
      CoefficientTable t = parse_table(embedded_text(file));
      registry.emplace(t.name, std::move(t));
    }
  });
  return registry;
}

}  // namespace

std::vector<std::string> bundled_table_names() {
  std::vector<std::string> names;
  for (const auto& [name, table] : bundled_registry()) names.push_back(name);
  return names;
}

bool is_bundled_table(const std::string& name) {
  return bundled_registry().count(name) > 0;
}

const CoefficientTable& bundled_table(const std::string& name) {
  const auto& registry = bundled_registry();
  auto it = registry.find(name);
  if (it == registry.end()) throw InvalidError("no bundled table named '" + name + "'");
  return it->second;
}

bool operator==(const CoefficientTable& lhs, const CoefficientTable& rhs) {
  return lhs.name == rhs.name && lhs.kind == rhs.kind && lhs.stages == rhs.stages &&
         lhs.det_order == rhs.det_order && lhs.stoch_order == rhs.stoch_order &&
         lhs.A0 == rhs.A0 && lhs.A1 == rhs.A1 && lhs.A2 == rhs.A2 && lhs.B0 == rhs.B0 &&
         lhs.B1 == rhs.B1 && lhs.B2 == rhs.B2 && lhs.c0 == rhs.c0 && lhs.c1 == rhs.c1 &&
         lhs.c2 == rhs.c2 && lhs.a == rhs.a && lhs.b1 == rhs.b1 && lhs.b2 == rhs.b2 &&
         lhs.b3 == rhs.b3 && lhs.b4 == rhs.b4 && lhs.transpose_cross == rhs.transpose_cross;
}

}  // namespace srk
