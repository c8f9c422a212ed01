#ifndef ALBA_FO_HPP
#define ALBA_FO_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "alba/formula.hpp"

namespace alba {

// First-order correspondence language: equality, the two binary relations
// (refinement and accessibility), unary predicates for prop variables,
// Boolean connectives, first-order quantifiers. Terms are variables or
// individual constants standing for nominals.
enum class FOKind {
  Eq,
  RelLeq,
  RelR,
  Pred,
  Not,
  And,
  Or,
  Implies,
  ForAll,
  Exists,
};

struct FOTerm {
  bool is_const = false;
  std::string name;
  // Slot of the binder for variables, or index into the constant table;
  // assigned by index_fo. -1 until then.
  int slot = -1;
};

FOTerm fovar(const std::string& name);
FOTerm foconst(const std::string& name);

struct FOFormula;
using FOPtr = std::shared_ptr<const FOFormula>;

struct FOFormula {
  FOKind kind;
  std::string pred;        // Pred: predicate name; ForAll/Exists: variable
  std::vector<FOTerm> terms;
  std::vector<FOPtr> children;
  int slot = -1;  // quantifiers: binder slot assigned by index_fo
};

FOPtr fo_eq(FOTerm a, FOTerm b);
FOPtr fo_leq(FOTerm a, FOTerm b);
FOPtr fo_rel(FOTerm a, FOTerm b);
FOPtr fo_pred(const std::string& name, FOTerm t);
FOPtr fo_not(FOPtr a);
FOPtr fo_and(FOPtr a, FOPtr b);
FOPtr fo_or(FOPtr a, FOPtr b);
FOPtr fo_implies(FOPtr a, FOPtr b);
FOPtr fo_forall(const std::string& var, FOPtr body);
FOPtr fo_exists(const std::string& var, FOPtr body);

// Folds a nonempty list with fo_and; the list shape of translate_quasi.
FOPtr fo_and_all(const std::vector<FOPtr>& fs);

// Assigns binder slots (defining an evaluation environment layout) and
// constant indices. Returns the rewritten formula plus bookkeeping.
struct IndexedFO {
  FOPtr formula;
  int env_size = 0;                 // number of binder slots
  std::vector<std::string> consts;  // constant name per index
  std::vector<std::string> free_vars;  // unresolved variables, slot order
};

IndexedFO index_fo(const FOPtr& f);

// Fresh-variable source for a translation call: x0, y1, z2, ...
class VarGen {
public:
  std::string fresh(const char* base) {
    return std::string(base) + std::to_string(counter_++);
  }

private:
  int counter_ = 0;
};

// Syntactic regular open closure of alpha with designated free variable x:
// for all y <= x, some z <= y, some z' >= z with alpha(z'). Bound
// variables are drawn fresh from gen.
FOPtr ro_x(const FOPtr& alpha, const std::string& x, VarGen& gen);

// Regular open translation of an expanded-language formula at variable x.
// Props become unary predicate atoms; nominals become RO-closed equalities
// against their individual constants.
FOPtr st(const FormulaPtr& phi, const std::string& x, VarGen& gen);
FOPtr st(const FormulaPtr& phi, const std::string& x);

// Closed translation of a conjunction of pure quasi-inequalities: nominal
// constants become universally quantified point variables. Throws on
// non-pure input.
FOPtr translate_quasi(const std::vector<QuasiInequality>& quasis);

enum class FOFormat { Unicode, Tptp };

// Unicode rendering uses the usual modal-logic symbols; tptp emits one
// well-formed fof unit (requires a closed formula).
std::string print_fo(const FOPtr& f, FOFormat format,
                     const std::string& tptp_name = "correspondent",
                     const std::string& tptp_role = "axiom");

// Canonical bound-variable renaming; two formulas are alpha-equivalent
// iff their normal forms are structurally equal.
FOPtr alpha_normalize(const FOPtr& f);
bool fo_equal(const FOPtr& a, const FOPtr& b);
bool alpha_equivalent(const FOPtr& a, const FOPtr& b);

nlohmann::json fo_to_json(const FOPtr& f);
FOPtr fo_from_json(const nlohmann::json& j);

}  // namespace alba

#endif
