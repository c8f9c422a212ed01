#ifndef ALBA_FORMULA_HPP
#define ALBA_FORMULA_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace alba {

// Connectives of the expanded modal language. Top..Implies are Boolean,
// Box/Diamond the basic modalities, BlackDiamond/BlackBox their adjoints.
enum class Conn {
  Top,
  Bottom,
  Prop,
  Nominal,
  Neg,
  And,
  Or,
  Implies,
  Box,
  Diamond,
  BlackDiamond,
  BlackBox,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Shared subterms are fine; no interior mutation.
class Formula {
public:
  Conn conn;
  std::string name;                // Prop / Nominal only
  std::vector<FormulaPtr> children;

  Formula(Conn c, std::string n, std::vector<FormulaPtr> ch)
      : conn(c), name(std::move(n)), children(std::move(ch)) {}

  bool is_leaf() const { return children.empty(); }
  int arity() const { return static_cast<int>(children.size()); }
};

FormulaPtr top();
FormulaPtr bottom();
FormulaPtr prop(const std::string& name);
FormulaPtr nominal(const std::string& name);
FormulaPtr neg(FormulaPtr a);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr box(FormulaPtr a);
FormulaPtr dia(FormulaPtr a);
FormulaPtr bdia(FormulaPtr a);
FormulaPtr bbox(FormulaPtr a);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// phi <= psi
struct Inequality {
  FormulaPtr lhs;
  FormulaPtr rhs;
};

bool equal(const Inequality& a, const Inequality& b);

// premises_1 & ... & premises_n => conclusion. Empty premise list is the
// bare conclusion.
struct QuasiInequality {
  std::vector<Inequality> premises;
  Inequality conclusion;
};

// Syntax errors carry a character offset into the input text.
class ParseError : public std::runtime_error {
public:
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

// Grammar (ASCII): ~, &, |, ->, box, dia, bdia, bbox, T, F, identifiers.
// Precedence: unary > & > | > -> (right associative).
// Props are [p-z][0-9]*, nominals [i-k][0-9]*.
FormulaPtr parse_formula(const std::string& text);
Inequality parse_inequality(const std::string& text);  // "phi <= psi"

std::string print_formula(const FormulaPtr& f);  // minimal parentheses
std::string print_inequality(const Inequality& iq);
std::string print_quasi(const QuasiInequality& q);

bool is_prop_name(const std::string& s);
bool is_nominal_name(const std::string& s);

enum class Polarity { Positive, Negative, Both, Absent };

// Sign of the occurrences of prop v in the positive generation tree +phi.
Polarity polarity(const FormulaPtr& phi, const std::string& v);

// Replace every Prop(v) leaf by psi. No binders exist, so no capture.
FormulaPtr substitute(const FormulaPtr& phi, const std::string& v,
                      const FormulaPtr& psi);

std::set<std::string> prop_names(const FormulaPtr& f);
std::set<std::string> nominal_names(const FormulaPtr& f);
std::set<std::string> prop_names(const Inequality& iq);
std::set<std::string> nominal_names(const Inequality& iq);

// Basic language: no nominals, no black connectives.
bool is_basic(const FormulaPtr& f);
bool is_basic(const Inequality& iq);
// Pure: no propositional variables.
bool is_pure(const FormulaPtr& f);
bool is_pure(const Inequality& iq);

// Rewrites Or/Implies/Diamond/BlackBox into the Neg/And/Box/BlackDiamond
// core. Top and Bottom stay primitive. Used to cross-check the semantics
// of the defined connectives.
FormulaPtr expand_abbreviations(const FormulaPtr& f);

// Nested tagged-record serialization of the AST.
nlohmann::json formula_to_json(const FormulaPtr& f);
FormulaPtr formula_from_json(const nlohmann::json& j);

}  // namespace alba

#endif
