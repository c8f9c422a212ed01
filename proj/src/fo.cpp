#include "alba/fo.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alba {

namespace {

FOPtr mk(FOKind k, std::string pred, std::vector<FOTerm> terms,
         std::vector<FOPtr> children) {
  auto f = std::make_shared<FOFormula>();
  f->kind = k;
  f->pred = std::move(pred);
  f->terms = std::move(terms);
  f->children = std::move(children);
  return f;
}

}  // namespace

FOTerm fovar(const std::string& name) { return FOTerm{false, name, -1}; }
FOTerm foconst(const std::string& name) { return FOTerm{true, name, -1}; }

FOPtr fo_eq(FOTerm a, FOTerm b) {
  return mk(FOKind::Eq, "", {std::move(a), std::move(b)}, {});
}
FOPtr fo_leq(FOTerm a, FOTerm b) {
  return mk(FOKind::RelLeq, "", {std::move(a), std::move(b)}, {});
}
FOPtr fo_rel(FOTerm a, FOTerm b) {
  return mk(FOKind::RelR, "", {std::move(a), std::move(b)}, {});
}
FOPtr fo_pred(const std::string& name, FOTerm t) {
  return mk(FOKind::Pred, name, {std::move(t)}, {});
}
FOPtr fo_not(FOPtr a) { return mk(FOKind::Not, "", {}, {std::move(a)}); }
FOPtr fo_and(FOPtr a, FOPtr b) {
  return mk(FOKind::And, "", {}, {std::move(a), std::move(b)});
}
FOPtr fo_or(FOPtr a, FOPtr b) {
  return mk(FOKind::Or, "", {}, {std::move(a), std::move(b)});
}
FOPtr fo_implies(FOPtr a, FOPtr b) {
  return mk(FOKind::Implies, "", {}, {std::move(a), std::move(b)});
}
FOPtr fo_forall(const std::string& var, FOPtr body) {
  return mk(FOKind::ForAll, var, {}, {std::move(body)});
}
FOPtr fo_exists(const std::string& var, FOPtr body) {
  return mk(FOKind::Exists, var, {}, {std::move(body)});
}

FOPtr fo_and_all(const std::vector<FOPtr>& fs) {
  if (fs.empty()) throw std::invalid_argument("fo_and_all: empty list");
  FOPtr out = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) out = fo_and(out, fs[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Variable substitution and indexing

namespace {

FOPtr rename_var(const FOPtr& f, const std::string& from,
                 const std::string& to) {
  if (f->kind == FOKind::ForAll || f->kind == FOKind::Exists) {
    if (f->pred == from) return f;  // shadowed
    return mk(f->kind, f->pred, {}, {rename_var(f->children[0], from, to)});
  }
  std::vector<FOTerm> terms = f->terms;
  for (auto& t : terms)
    if (!t.is_const && t.name == from) t.name = to;
  std::vector<FOPtr> ch;
  for (const auto& c : f->children) ch.push_back(rename_var(c, from, to));
  return mk(f->kind, f->pred, std::move(terms), std::move(ch));
}

struct IndexState {
  std::vector<std::pair<std::string, int>> scope;
  int next_slot = 0;
  std::map<std::string, int> free_vars;
  std::map<std::string, int> consts;
  std::vector<std::string> const_order;
  std::vector<std::string> free_order;
};

FOTerm index_term(const FOTerm& t, IndexState& st) {
  FOTerm out = t;
  if (t.is_const) {
    auto it = st.consts.find(t.name);
    if (it == st.consts.end()) {
      int idx = static_cast<int>(st.const_order.size());
      st.consts[t.name] = idx;
      st.const_order.push_back(t.name);
      out.slot = idx;
    } else {
      out.slot = it->second;
    }
    return out;
  }
  for (auto it = st.scope.rbegin(); it != st.scope.rend(); ++it)
    if (it->first == t.name) {
      out.slot = it->second;
      return out;
    }
  auto it = st.free_vars.find(t.name);
  if (it == st.free_vars.end()) {
    int slot = st.next_slot++;
    st.free_vars[t.name] = slot;
    st.free_order.push_back(t.name);
    out.slot = slot;
  } else {
    out.slot = it->second;
  }
  return out;
}

FOPtr index_rec(const FOPtr& f, IndexState& st) {
  if (f->kind == FOKind::ForAll || f->kind == FOKind::Exists) {
    auto node = std::make_shared<FOFormula>();
    node->kind = f->kind;
    node->pred = f->pred;
    node->slot = st.next_slot++;
    st.scope.push_back({f->pred, node->slot});
    node->children.push_back(index_rec(f->children[0], st));
    st.scope.pop_back();
    return node;
  }
  auto node = std::make_shared<FOFormula>();
  node->kind = f->kind;
  node->pred = f->pred;
  for (const auto& t : f->terms) node->terms.push_back(index_term(t, st));
  for (const auto& c : f->children) node->children.push_back(index_rec(c, st));
  return node;
}

}  // namespace

IndexedFO index_fo(const FOPtr& f) {
  // Free variables get the lowest slots so a caller can bind them without
  // knowing the quantifier structure.
  IndexState pre;
  {
    // First pass only to discover free variables in first-seen order.
    IndexState scan;
    index_rec(f, scan);
    for (const auto& name : scan.free_order) {
      pre.free_vars[name] = pre.next_slot;
      pre.free_order.push_back(name);
      pre.next_slot++;
    }
  }
  IndexedFO out;
  FOPtr indexed = index_rec(f, pre);
  out.formula = indexed;
  out.env_size = pre.next_slot;
  out.consts = pre.const_order;
  out.free_vars = pre.free_order;
  return out;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

// (forall v <= of)(body)
FOPtr forall_below(const std::string& v, const std::string& of, FOPtr body) {
  return fo_forall(v, fo_implies(fo_leq(fovar(v), fovar(of)), std::move(body)));
}
// (exists v <= of)(body)
FOPtr exists_below(const std::string& v, const std::string& of, FOPtr body) {
  return fo_exists(v, fo_and(fo_leq(fovar(v), fovar(of)), std::move(body)));
}
// (forall v >= of)(body)
FOPtr forall_above(const std::string& v, const std::string& of, FOPtr body) {
  return fo_forall(v, fo_implies(fo_leq(fovar(of), fovar(v)), std::move(body)));
}
// (exists v >= of)(body)
FOPtr exists_above(const std::string& v, const std::string& of, FOPtr body) {
  return fo_exists(v, fo_and(fo_leq(fovar(of), fovar(v)), std::move(body)));
}

}  // namespace

FOPtr ro_x(const FOPtr& alpha, const std::string& x, VarGen& gen) {
  std::string y = gen.fresh("y");
  std::string z = gen.fresh("z");
  std::string zp = gen.fresh("z");
  FOPtr inner = rename_var(alpha, x, zp);
  return forall_below(y, x, exists_below(z, y, exists_above(zp, z, inner)));
}

FOPtr st(const FormulaPtr& phi, const std::string& x, VarGen& gen) {
  switch (phi->conn) {
    case Conn::Prop:
      return fo_pred(phi->name, fovar(x));
    case Conn::Nominal:
      return ro_x(fo_eq(fovar(x), foconst(phi->name)), x, gen);
    case Conn::Top:
      return fo_eq(fovar(x), fovar(x));
    case Conn::Bottom:
      return fo_not(fo_eq(fovar(x), fovar(x)));
    case Conn::Neg: {
      std::string y = gen.fresh("y");
      return forall_below(y, x, fo_not(st(phi->children[0], y, gen)));
    }
    case Conn::And: {
      FOPtr a = st(phi->children[0], x, gen);
      FOPtr b = st(phi->children[1], x, gen);
      return fo_and(std::move(a), std::move(b));
    }
    case Conn::Or: {
      std::string y = gen.fresh("y");
      std::string z = gen.fresh("z");
      FOPtr a = st(phi->children[0], z, gen);
      FOPtr b = st(phi->children[1], z, gen);
      return forall_below(y, x,
                          exists_below(z, y, fo_or(std::move(a), std::move(b))));
    }
    case Conn::Implies: {
      std::string y = gen.fresh("y");
      FOPtr a = st(phi->children[0], y, gen);
      FOPtr b = st(phi->children[1], y, gen);
      return forall_below(y, x, fo_implies(std::move(a), std::move(b)));
    }
    case Conn::Box: {
      std::string y = gen.fresh("y");
      return fo_forall(y, fo_implies(fo_rel(fovar(x), fovar(y)),
                                     st(phi->children[0], y, gen)));
    }
    case Conn::Diamond: {
      std::string y = gen.fresh("y");
      std::string z = gen.fresh("z");
      std::string w = gen.fresh("w");
      return forall_below(
          y, x,
          fo_exists(z, fo_and(fo_rel(fovar(y), fovar(z)),
                              exists_below(w, z,
                                           st(phi->children[0], w, gen)))));
    }
    case Conn::BlackDiamond: {
      std::string y = gen.fresh("y");
      FOPtr body = fo_exists(
          y, fo_and(fo_rel(fovar(y), fovar(x)), st(phi->children[0], y, gen)));
      return ro_x(body, x, gen);
    }
    case Conn::BlackBox: {
      std::string y = gen.fresh("y");
      std::string z = gen.fresh("z");
      std::string w = gen.fresh("w");
      std::string v = gen.fresh("v");
      return forall_below(
          y, x,
          forall_above(
              z, y,
              fo_forall(w, fo_implies(fo_rel(fovar(w), fovar(z)),
                                      exists_below(
                                          v, w,
                                          st(phi->children[0], v, gen))))));
    }
  }
  throw std::logic_error("st: unhandled connective");
}

FOPtr st(const FormulaPtr& phi, const std::string& x) {
  VarGen gen;
  return st(phi, x, gen);
}

namespace {

FOPtr consts_to_vars(const FOPtr& f, const std::set<std::string>& names) {
  std::vector<FOTerm> terms = f->terms;
  for (auto& t : terms)
    if (t.is_const && names.count(t.name)) t.is_const = false;
  std::vector<FOPtr> ch;
  for (const auto& c : f->children) ch.push_back(consts_to_vars(c, names));
  auto node = mk(f->kind, f->pred, std::move(terms), std::move(ch));
  return node;
}

}  // namespace

FOPtr translate_quasi(const std::vector<QuasiInequality>& quasis) {
  if (quasis.empty())
    throw std::invalid_argument("translate_quasi: empty system list");
  VarGen gen;
  std::vector<FOPtr> blocks;
  for (const auto& q : quasis) {
    std::set<std::string> noms;
    auto scan = [&](const Inequality& iq) {
      if (!is_pure(iq))
        throw std::invalid_argument(
            "translate_quasi requires pure quasi-inequalities");
      auto s = nominal_names(iq);
      noms.insert(s.begin(), s.end());
    };
    for (const auto& p : q.premises) scan(p);
    scan(q.conclusion);

    auto ineq_block = [&](const Inequality& iq) {
      std::string x = gen.fresh("x");
      FOPtr l = st(iq.lhs, x, gen);
      FOPtr r = st(iq.rhs, x, gen);
      return fo_forall(x, fo_implies(std::move(l), std::move(r)));
    };

    FOPtr body;
    if (q.premises.empty()) {
      body = ineq_block(q.conclusion);
    } else {
      std::vector<FOPtr> prem;
      for (const auto& p : q.premises) prem.push_back(ineq_block(p));
      body = fo_implies(fo_and_all(prem), ineq_block(q.conclusion));
    }
    // Nominal constants become universally quantified point variables.
    body = consts_to_vars(body, noms);
    for (auto it = noms.rbegin(); it != noms.rend(); ++it)
      body = fo_forall(*it, body);
    blocks.push_back(body);
  }
  return fo_and_all(blocks);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence: atom 5, not 4, and 3, or 2, implies 1; quantifier bodies are
// always parenthesized.
int fo_level(FOKind k) {
  switch (k) {
    case FOKind::Implies: return 1;
    case FOKind::Or: return 2;
    case FOKind::And: return 3;
    case FOKind::Not: return 4;
    default: return 5;
  }
}

std::string term_str(const FOTerm& t) { return t.name; }

void print_unicode(const FOPtr& f, int min_level, std::ostream& os) {
  bool paren = fo_level(f->kind) < min_level;
  if (paren) os << '(';
  switch (f->kind) {
    case FOKind::Eq:
      os << term_str(f->terms[0]) << " = " << term_str(f->terms[1]);
      break;
    case FOKind::RelLeq:
      os << term_str(f->terms[0]) << " ⊑ " << term_str(f->terms[1]);
      break;
    case FOKind::RelR:
      os << "R(" << term_str(f->terms[0]) << "," << term_str(f->terms[1])
         << ")";
      break;
    case FOKind::Pred:
      os << "P_" << f->pred << "(" << term_str(f->terms[0]) << ")";
      break;
    case FOKind::Not:
      os << "¬";
      print_unicode(f->children[0], 4, os);
      break;
    case FOKind::And:
      print_unicode(f->children[0], 3, os);
      os << " ∧ ";
      print_unicode(f->children[1], 4, os);
      break;
    case FOKind::Or:
      print_unicode(f->children[0], 2, os);
      os << " ∨ ";
      print_unicode(f->children[1], 3, os);
      break;
    case FOKind::Implies:
      print_unicode(f->children[0], 2, os);
      os << " → ";
      print_unicode(f->children[1], 1, os);
      break;
    case FOKind::ForAll:
      os << "∀" << f->pred << "(";
      print_unicode(f->children[0], 0, os);
      os << ")";
      break;
    case FOKind::Exists:
      os << "∃" << f->pred << "(";
      print_unicode(f->children[0], 0, os);
      os << ")";
      break;
  }
  if (paren) os << ')';
}

std::string tptp_var(const std::string& name) {
  std::string out = name;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return "V" + out;  // uppercase and collision-proof
}

std::string tptp_term(const FOTerm& t) {
  return t.is_const ? ("c_" + t.name) : tptp_var(t.name);
}

void print_tptp(const FOPtr& f, std::ostream& os) {
  switch (f->kind) {
    case FOKind::Eq:
      os << tptp_term(f->terms[0]) << " = " << tptp_term(f->terms[1]);
      break;
    case FOKind::RelLeq:
      os << "leq(" << tptp_term(f->terms[0]) << "," << tptp_term(f->terms[1])
         << ")";
      break;
    case FOKind::RelR:
      os << "r(" << tptp_term(f->terms[0]) << "," << tptp_term(f->terms[1])
         << ")";
      break;
    case FOKind::Pred:
      os << "p_" << f->pred << "(" << tptp_term(f->terms[0]) << ")";
      break;
    case FOKind::Not:
      os << "~(";
      print_tptp(f->children[0], os);
      os << ")";
      break;
    case FOKind::And:
      os << "(";
      print_tptp(f->children[0], os);
      os << " & ";
      print_tptp(f->children[1], os);
      os << ")";
      break;
    case FOKind::Or:
      os << "(";
      print_tptp(f->children[0], os);
      os << " | ";
      print_tptp(f->children[1], os);
      os << ")";
      break;
    case FOKind::Implies:
      os << "(";
      print_tptp(f->children[0], os);
      os << " => ";
      print_tptp(f->children[1], os);
      os << ")";
      break;
    case FOKind::ForAll:
      os << "! [" << tptp_var(f->pred) << "] : (";
      print_tptp(f->children[0], os);
      os << ")";
      break;
    case FOKind::Exists:
      os << "? [" << tptp_var(f->pred) << "] : (";
      print_tptp(f->children[0], os);
      os << ")";
      break;
  }
}

}  // namespace

std::string print_fo(const FOPtr& f, FOFormat format,
                     const std::string& tptp_name,
                     const std::string& tptp_role) {
  std::ostringstream os;
  if (format == FOFormat::Unicode) {
    print_unicode(f, 0, os);
    return os.str();
  }
  IndexedFO idx = index_fo(f);
  if (!idx.free_vars.empty())
    throw std::invalid_argument("tptp output requires a closed formula");
  os << "fof(" << tptp_name << ", " << tptp_role << ", ";
  print_tptp(f, os);
  os << ").";
  return os.str();
}

// ---------------------------------------------------------------------------
// Alpha equivalence and JSON

namespace {

FOPtr alpha_rec(const FOPtr& f,
                std::vector<std::pair<std::string, std::string>>& scope,
                int& counter) {
  if (f->kind == FOKind::ForAll || f->kind == FOKind::Exists) {
    std::string fresh = "v" + std::to_string(counter++);
    scope.push_back({f->pred, fresh});
    FOPtr body = alpha_rec(f->children[0], scope, counter);
    scope.pop_back();
    return mk(f->kind, fresh, {}, {body});
  }
  std::vector<FOTerm> terms = f->terms;
  for (auto& t : terms) {
    if (t.is_const) continue;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == t.name) {
        t.name = it->second;
        break;
      }
  }
  std::vector<FOPtr> ch;
  for (const auto& c : f->children) ch.push_back(alpha_rec(c, scope, counter));
  return mk(f->kind, f->pred, std::move(terms), std::move(ch));
}

}  // namespace

FOPtr alpha_normalize(const FOPtr& f) {
  std::vector<std::pair<std::string, std::string>> scope;
  int counter = 0;
  return alpha_rec(f, scope, counter);
}

bool fo_equal(const FOPtr& a, const FOPtr& b) {
  if (a->kind != b->kind || a->pred != b->pred ||
      a->terms.size() != b->terms.size() ||
      a->children.size() != b->children.size())
    return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (a->terms[i].is_const != b->terms[i].is_const ||
        a->terms[i].name != b->terms[i].name)
      return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!fo_equal(a->children[i], b->children[i])) return false;
  return true;
}

bool alpha_equivalent(const FOPtr& a, const FOPtr& b) {
  return fo_equal(alpha_normalize(a), alpha_normalize(b));
}

namespace {

const char* fo_tag(FOKind k) {
  switch (k) {
    case FOKind::Eq: return "eq";
    case FOKind::RelLeq: return "leq";
    case FOKind::RelR: return "rel";
    case FOKind::Pred: return "pred";
    case FOKind::Not: return "not";
    case FOKind::And: return "and";
    case FOKind::Or: return "or";
    case FOKind::Implies: return "implies";
    case FOKind::ForAll: return "forall";
    case FOKind::Exists: return "exists";
  }
  return "?";
}

nlohmann::json term_json(const FOTerm& t) {
  return {{"kind", t.is_const ? "const" : "var"}, {"name", t.name}};
}

FOTerm term_from_json(const nlohmann::json& j) {
  FOTerm t;
  t.is_const = j.at("kind").get<std::string>() == "const";
  t.name = j.at("name").get<std::string>();
  return t;
}

}  // namespace

nlohmann::json fo_to_json(const FOPtr& f) {
  nlohmann::json j;
  j["op"] = fo_tag(f->kind);
  if (f->kind == FOKind::Pred) j["pred"] = f->pred;
  if (f->kind == FOKind::ForAll || f->kind == FOKind::Exists)
    j["var"] = f->pred;
  if (!f->terms.empty()) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : f->terms) ts.push_back(term_json(t));
    j["terms"] = std::move(ts);
  }
  if (!f->children.empty()) {
    nlohmann::json ch = nlohmann::json::array();
    for (const auto& c : f->children) ch.push_back(fo_to_json(c));
    j["args"] = std::move(ch);
  }
  return j;
}

FOPtr fo_from_json(const nlohmann::json& j) {
  std::string op = j.at("op").get<std::string>();
  auto term = [&](size_t i) { return term_from_json(j.at("terms").at(i)); };
  auto arg = [&](size_t i) { return fo_from_json(j.at("args").at(i)); };
  if (op == "eq") return fo_eq(term(0), term(1));
  if (op == "leq") return fo_leq(term(0), term(1));
  if (op == "rel") return fo_rel(term(0), term(1));
  if (op == "pred") return fo_pred(j.at("pred").get<std::string>(), term(0));
  if (op == "not") return fo_not(arg(0));
  if (op == "and") return fo_and(arg(0), arg(1));
  if (op == "or") return fo_or(arg(0), arg(1));
  if (op == "implies") return fo_implies(arg(0), arg(1));
  if (op == "forall") return fo_forall(j.at("var").get<std::string>(), arg(0));
  if (op == "exists") return fo_exists(j.at("var").get<std::string>(), arg(0));
  throw std::runtime_error("fo_from_json: unknown op '" + op + "'");
}

}  // namespace alba
