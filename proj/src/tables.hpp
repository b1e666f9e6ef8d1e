#pragma once

#include <string>
#include <vector>

#include "rational.hpp"

namespace srk {

enum class TableKind { scalar_strong, vector_strong, vector_weak };

const char* table_kind_name(TableKind kind);

using RationalRow = std::vector<Rational>;
using RationalBlock = std::vector<RationalRow>;

// Stochastic Butcher tableau with exact rational entries. Shapes depend
// on the kind:
//   all kinds:      A0, A1, B0, B1 (s x s), c0, c1, a, b1, b2 (length s)
//   scalar_strong:  adds b3, b4
//   vector_weak:    adds A2, B2, c2, b3, b4
// Every A and B block is strictly lower triangular (explicit methods).
struct CoefficientTable {
  std::string name;
  std::string description;
  TableKind kind = TableKind::scalar_strong;
  int stages = 0;
  Rational det_order;    // p_d
  Rational stoch_order;  // p_s

  RationalBlock A0, A1, A2;
  RationalBlock B0, B1, B2;
  RationalRow c0, c1, c2;
  RationalRow a, b1, b2, b3, b4;

  // Swap the index order of the cross double integrals consumed by the
  // strong vector stages; cross-checking aid, off for all bundled tables.
  bool transpose_cross = false;
};

// Parses the JSON coefficient document. Rationals are strings like "1/2";
// kind is inferred from the present keys (A2/B2/c2 -> vector_weak,
// else b3/b4 -> scalar_strong, else vector_strong) unless an explicit
// "kind" key overrides.
CoefficientTable parse_table(const std::string& json_text);

// Serializes back to the same schema; parse(table_to_json(t)) == t.
std::string table_to_json(const CoefficientTable& table);

struct ValidationCheck {
  std::string name;
  bool mandatory = true;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool mandatory_ok() const;
  std::string text() const;
};

// Shape, explicitness and consistency-sum checks. Sum(a) = 1 and
// Sum(b1) = 1 are mandatory; the remaining b-row sums are advisory.
ValidationReport validate(const CoefficientTable& table);

// Floating view of a table. With digits <= 0 entries are the exact
// nearest doubles; otherwise rounded to that many significant digits.
struct FloatTable {
  std::string name;
  TableKind kind = TableKind::scalar_strong;
  int stages = 0;
  bool transpose_cross = false;
  std::vector<std::vector<double>> A0, A1, A2, B0, B1, B2;
  std::vector<double> c0, c1, c2, a, b1, b2, b3, b4;
};

FloatTable to_float(const CoefficientTable& table, int digits = 0);

// Deterministic LaTeX tableau in the block layout of the generalized
// Butcher tables.
std::string render_table_math(const CoefficientTable& table);

// Tables shipped with the library.
std::vector<std::string> bundled_table_names();
const CoefficientTable& bundled_table(const std::string& name);
bool is_bundled_table(const std::string& name);

bool operator==(const CoefficientTable& lhs, const CoefficientTable& rhs);

}  // namespace srk
