#include "alba/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace alba {

bool System::pure() const {
  for (const auto& iq : premises)
    if (!is_pure(iq)) return false;
  return is_pure(ineq);
}

std::string System::describe() const {
  std::ostringstream os;
  os << "({";
  for (size_t i = 0; i < premises.size(); ++i) {
    if (i) os << ", ";
    os << print_inequality(premises[i]);
  }
  os << "}, " << print_inequality(ineq) << ")";
  return os.str();
}

bool equal(const System& a, const System& b) {
  if (a.premises.size() != b.premises.size()) return false;
  for (size_t i = 0; i < a.premises.size(); ++i)
    if (!equal(a.premises[i], b.premises[i])) return false;
  return equal(a.ineq, b.ineq);
}

FormulaPtr subformula_at(const Inequality& iq, const Position& pos) {
  FormulaPtr f = pos.rhs ? iq.rhs : iq.lhs;
  for (int i : pos.path) f = f->children.at(i);
  return f;
}

namespace {

FormulaPtr replace_rec(const FormulaPtr& f, const std::vector<int>& path,
                       size_t k, const FormulaPtr& repl) {
  if (k == path.size()) return repl;
  std::vector<FormulaPtr> ch = f->children;
  ch.at(path[k]) = replace_rec(ch.at(path[k]), path, k + 1, repl);
  return std::make_shared<const Formula>(f->conn, f->name, std::move(ch));
}

Sign child_sign(Sign s, Conn parent, int child_index) {
  if (parent == Conn::Neg) return flip(s);
  if (parent == Conn::Implies && child_index == 0) return flip(s);
  return s;
}

}  // namespace

Inequality replace_at(const Inequality& iq, const Position& pos,
                      const FormulaPtr& repl) {
  if (pos.rhs) return {iq.lhs, replace_rec(iq.rhs, pos.path, 0, repl)};
  return {replace_rec(iq.lhs, pos.path, 0, repl), iq.rhs};
}

Sign sign_at(const Inequality& iq, const Position& pos) {
  Sign s = pos.rhs ? Sign::Minus : Sign::Plus;
  FormulaPtr f = pos.rhs ? iq.rhs : iq.lhs;
  for (int i : pos.path) {
    s = child_sign(s, f->conn, i);
    f = f->children.at(i);
  }
  return s;
}

std::vector<System> replay_trace(const Inequality& initial,
                                 const RuleTrace& trace) {
  std::vector<System> state{System{{}, initial}};
  for (const auto& step : trace.steps) {
    if (step.index >= state.size() || step.before.size() != 1 ||
        !equal(state[step.index], step.before[0]))
      throw std::runtime_error("trace replay mismatch at rule " + step.rule);
    state.erase(state.begin() + static_cast<long>(step.index));
    state.insert(state.begin() + static_cast<long>(step.index),
                 step.after.begin(), step.after.end());
  }
  return state;
}

// ---------------------------------------------------------------------------
// Stage 1: preprocessing

namespace {

bool sk_capable(Sign s, Conn c) { return node_class(s, c).skeleton(); }

struct Rewrite {
  FormulaPtr result;
  std::string rule;
};

// One distribution step, leftmost-outermost, restricted to the skeleton
// region (every ancestor Skeleton-capable). The pushable parents over a
// +Or child are +dia, +and, -neg, -impl (first position); over a -And
// child -box, -or, +neg, -impl (second position).
std::optional<Rewrite> distribute_once(const FormulaPtr& f, Sign s,
                                       bool region) {
  if (region) {
    const bool plus = s == Sign::Plus;
    auto ch = [&](int i) { return f->children[i]; };
    if (plus && f->conn == Conn::Diamond && ch(0)->conn == Conn::Or)
      return Rewrite{lor(dia(ch(0)->children[0]), dia(ch(0)->children[1])),
                     "dist-dia-or"};
    if (plus && f->conn == Conn::And) {
      if (ch(0)->conn == Conn::Or)
        return Rewrite{lor(land(ch(0)->children[0], ch(1)),
                           land(ch(0)->children[1], ch(1))),
                       "dist-and-or"};
      if (ch(1)->conn == Conn::Or)
        return Rewrite{lor(land(ch(0), ch(1)->children[0]),
                           land(ch(0), ch(1)->children[1])),
                       "dist-and-or"};
    }
    if (!plus && f->conn == Conn::Neg && ch(0)->conn == Conn::Or)
      return Rewrite{land(neg(ch(0)->children[0]), neg(ch(0)->children[1])),
                     "dist-neg-or"};
    if (!plus && f->conn == Conn::Implies && ch(0)->conn == Conn::Or)
      return Rewrite{land(implies(ch(0)->children[0], ch(1)),
                          implies(ch(0)->children[1], ch(1))),
                     "dist-impl-or"};
    if (!plus && f->conn == Conn::Box && ch(0)->conn == Conn::And)
      return Rewrite{land(box(ch(0)->children[0]), box(ch(0)->children[1])),
                     "dist-box-and"};
    if (!plus && f->conn == Conn::Or) {
      if (ch(0)->conn == Conn::And)
        return Rewrite{land(lor(ch(0)->children[0], ch(1)),
                            lor(ch(0)->children[1], ch(1))),
                       "dist-or-and"};
      if (ch(1)->conn == Conn::And)
        return Rewrite{land(lor(ch(0), ch(1)->children[0]),
                            lor(ch(0), ch(1)->children[1])),
                       "dist-or-and"};
    }
    if (plus && f->conn == Conn::Neg && ch(0)->conn == Conn::And)
      return Rewrite{lor(neg(ch(0)->children[0]), neg(ch(0)->children[1])),
                     "dist-neg-and"};
    if (!plus && f->conn == Conn::Implies && ch(1)->conn == Conn::And)
      return Rewrite{land(implies(ch(0), ch(1)->children[0]),
                          implies(ch(0), ch(1)->children[1])),
                     "dist-impl-and"};
  }
  for (size_t i = 0; i < f->children.size(); ++i) {
    bool child_region = region && sk_capable(s, f->conn);
    auto r = distribute_once(f->children[i],
                             child_sign(s, f->conn, static_cast<int>(i)),
                             child_region);
    if (r) {
      std::vector<FormulaPtr> ch = f->children;
      ch[i] = r->result;
      return Rewrite{
          std::make_shared<const Formula>(f->conn, f->name, std::move(ch)),
          r->rule};
    }
  }
  return std::nullopt;
}

struct IneqRewrite {
  Inequality result;
  std::string rule;
};

std::optional<IneqRewrite> distribute_ineq(const Inequality& iq) {
  if (auto r = distribute_once(iq.lhs, Sign::Plus, true))
    return IneqRewrite{{r->result, iq.rhs}, r->rule};
  if (auto r = distribute_once(iq.rhs, Sign::Minus, true))
    return IneqRewrite{{iq.lhs, r->result}, r->rule};
  return std::nullopt;
}

// Monotone/antitone elimination of uniformly occurring variables.
std::optional<IneqRewrite> eliminate_uniform(const Inequality& iq) {
  std::set<std::string> vars = prop_names(iq);
  for (const auto& p : vars) {
    Polarity l = polarity(iq.lhs, p);
    Polarity r = polarity(iq.rhs, p);
    bool l_neg = l == Polarity::Negative || l == Polarity::Absent;
    bool l_pos = l == Polarity::Positive || l == Polarity::Absent;
    bool r_neg = r == Polarity::Negative || r == Polarity::Absent;
    bool r_pos = r == Polarity::Positive || r == Polarity::Absent;
    if (l_neg && r_pos)
      return IneqRewrite{{substitute(iq.lhs, p, bottom()),
                          substitute(iq.rhs, p, bottom())},
                         "elim-bottom"};
    if (l_pos && r_neg)
      return IneqRewrite{{substitute(iq.lhs, p, top()),
                          substitute(iq.rhs, p, top())},
                         "elim-top"};
  }
  return std::nullopt;
}

std::optional<std::pair<std::vector<Inequality>, std::string>> split_ineq(
    const Inequality& iq) {
  if (iq.rhs->conn == Conn::And)
    return std::make_pair(
        std::vector<Inequality>{{iq.lhs, iq.rhs->children[0]},
                                {iq.lhs, iq.rhs->children[1]}},
        std::string("split-and-right"));
  if (iq.lhs->conn == Conn::Or)
    return std::make_pair(
        std::vector<Inequality>{{iq.lhs->children[0], iq.rhs},
                                {iq.lhs->children[1], iq.rhs}},
        std::string("split-or-left"));
  return std::nullopt;
}

void record_step(RuleTrace& trace, int stage, const std::string& rule,
                 size_t index, std::vector<System> before,
                 std::vector<System> after,
                 std::vector<std::string> fresh = {},
                 std::string detail = {}) {
  TraceStep s;
  s.stage = stage;
  s.rule = rule;
  s.index = index;
  s.before = std::move(before);
  s.after = std::move(after);
  s.fresh = std::move(fresh);
  s.detail = std::move(detail);
  trace.steps.push_back(std::move(s));
}

void preprocess_state(std::vector<System>& state, RuleTrace& trace) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < state.size(); ++i) {
      while (auto r = distribute_ineq(state[i].ineq)) {
        System before = state[i];
        state[i].ineq = r->result;
        record_step(trace, 1, r->rule, i, {before}, {state[i]});
        changed = true;
      }
    }
    for (size_t i = 0; i < state.size(); ++i) {
      while (auto r = eliminate_uniform(state[i].ineq)) {
        System before = state[i];
        state[i].ineq = r->result;
        record_step(trace, 1, r->rule, i, {before}, {state[i]});
        changed = true;
      }
    }
    for (size_t i = 0; i < state.size();) {
      auto sp = split_ineq(state[i].ineq);
      if (!sp) {
        ++i;
        continue;
      }
      System before = state[i];
      std::vector<System> after;
      for (const auto& iq : sp->first) after.push_back(System{{}, iq});
      record_step(trace, 1, sp->second, i, {before}, after);
      state.erase(state.begin() + static_cast<long>(i));
      state.insert(state.begin() + static_cast<long>(i), after.begin(),
                   after.end());
      changed = true;
    }
  }
}

}  // namespace

std::vector<Inequality> preprocess(const Inequality& ineq, RuleTrace& trace) {
  std::vector<System> state{System{{}, ineq}};
  preprocess_state(state, trace);
  std::vector<Inequality> out;
  for (const auto& s : state) out.push_back(s.ineq);
  return out;
}

std::vector<Inequality> preprocess(const Inequality& ineq) {
  RuleTrace trace;
  return preprocess(ineq, trace);
}

// ---------------------------------------------------------------------------
// Stage 2 rules

System apply_approximation(const System& sys, const Position& pos,
                           ApproxFlavor flavor,
                           const std::string& fresh_nominal) {
  const bool want_rhs = flavor == ApproxFlavor::RightPositive ||
                        flavor == ApproxFlavor::RightNegative;
  const Sign want_sign = (flavor == ApproxFlavor::LeftPositive ||
                          flavor == ApproxFlavor::RightPositive)
                             ? Sign::Plus
                             : Sign::Minus;
  if (pos.rhs != want_rhs)
    throw RuleError("approximation flavor does not match the side");
  if (sign_at(sys.ineq, pos) != want_sign)
    throw RuleError("approximation flavor does not match the occurrence sign");

  // Every strict ancestor on the branch must be SLR.
  {
    Sign s = pos.rhs ? Sign::Minus : Sign::Plus;
    FormulaPtr f = pos.rhs ? sys.ineq.rhs : sys.ineq.lhs;
    for (int i : pos.path) {
      if (!node_class(s, f->conn).slr)
        throw RuleError("branch above the occurrence is not SLR");
      s = child_sign(s, f->conn, i);
      f = f->children.at(i);
    }
  }
  FormulaPtr gamma = subformula_at(sys.ineq, pos);
  if (node_class(sign_at(sys.ineq, pos), gamma->conn).slr)
    throw RuleError("branch is not maximal: the occurrence itself is SLR");
  if (!is_basic(gamma))
    throw RuleError("approximated subformula must be in the basic language");

  std::set<std::string> used = nominal_names(sys.ineq);
  for (const auto& iq : sys.premises) {
    auto n = nominal_names(iq);
    used.insert(n.begin(), n.end());
  }
  if (used.count(fresh_nominal))
    throw RuleError("nominal " + fresh_nominal + " is not fresh");

  System out = sys;
  FormulaPtr nom = nominal(fresh_nominal);
  if (want_sign == Sign::Plus) {
    out.premises.push_back({nom, gamma});
    out.ineq = replace_at(sys.ineq, pos, nom);
  } else {
    out.premises.push_back({gamma, neg(nom)});
    out.ineq = replace_at(sys.ineq, pos, neg(nom));
  }
  return out;
}

const char* res_rule_name(ResRule r) {
  switch (r) {
    case ResRule::DiaRes: return "res-dia";
    case ResRule::BoxRes: return "res-box";
    case ResRule::NegResLeft: return "res-neg-left";
    case ResRule::NegResRight: return "res-neg-right";
    case ResRule::AndRes1: return "res-and-1";
    case ResRule::AndRes2: return "res-and-2";
    case ResRule::OrRes1: return "res-or-1";
    case ResRule::OrRes2: return "res-or-2";
    case ResRule::ImpRes1: return "res-impl-1";
    case ResRule::ImpRes2: return "res-impl-2";
  }
  return "?";
}

Inequality apply_residuation(ResRule rule, const Inequality& iq) {
  auto mismatch = [&]() -> RuleError {
    return RuleError(std::string(res_rule_name(rule)) +
                     ": inequality does not match the rule scheme: " +
                     print_inequality(iq));
  };
  switch (rule) {
    case ResRule::DiaRes:
      if (iq.lhs->conn != Conn::Diamond) throw mismatch();
      return {iq.lhs->children[0], bbox(iq.rhs)};
    case ResRule::BoxRes:
      if (iq.rhs->conn != Conn::Box) throw mismatch();
      return {bdia(iq.lhs), iq.rhs->children[0]};
    case ResRule::NegResLeft:
      if (iq.lhs->conn != Conn::Neg) throw mismatch();
      return {neg(iq.rhs), iq.lhs->children[0]};
    case ResRule::NegResRight:
      if (iq.rhs->conn != Conn::Neg) throw mismatch();
      return {iq.rhs->children[0], neg(iq.lhs)};
    case ResRule::AndRes1:
      if (iq.lhs->conn != Conn::And) throw mismatch();
      return {iq.lhs->children[0], implies(iq.lhs->children[1], iq.rhs)};
    case ResRule::AndRes2:
      if (iq.lhs->conn != Conn::And) throw mismatch();
      return {iq.lhs->children[1], implies(iq.lhs->children[0], iq.rhs)};
    case ResRule::OrRes1:
      if (iq.rhs->conn != Conn::Or) throw mismatch();
      return {land(iq.lhs, neg(iq.rhs->children[0])), iq.rhs->children[1]};
    case ResRule::OrRes2:
      if (iq.rhs->conn != Conn::Or) throw mismatch();
      return {land(iq.lhs, neg(iq.rhs->children[1])), iq.rhs->children[0]};
    case ResRule::ImpRes1:
      if (iq.rhs->conn != Conn::Implies) throw mismatch();
      return {land(iq.lhs, iq.rhs->children[0]), iq.rhs->children[1]};
    case ResRule::ImpRes2:
      if (iq.rhs->conn != Conn::Implies) throw mismatch();
      return {iq.rhs->children[0], implies(iq.lhs, iq.rhs->children[1])};
  }
  throw RuleError("unknown residuation rule");
}

System ackermann(const System& sys, const std::string& p,
                 AckermannSide side) {
  if (prop_names(sys.ineq).count(p))
    throw RuleError("ackermann: " + p + " occurs in the goal inequality");
  std::vector<FormulaPtr> bounds;
  std::vector<Inequality> passive;
  for (const auto& iq : sys.premises) {
    const FormulaPtr& head = side == AckermannSide::Right ? iq.rhs : iq.lhs;
    const FormulaPtr& other = side == AckermannSide::Right ? iq.lhs : iq.rhs;
    if (head->conn == Conn::Prop && head->name == p) {
      if (polarity(other, p) != Polarity::Absent)
        throw RuleError("ackermann: " + p + " occurs in its own bound in " +
                        print_inequality(iq));
      bounds.push_back(other);
      continue;
    }
    Polarity pl = polarity(iq.lhs, p);
    Polarity pr = polarity(iq.rhs, p);
    bool lhs_ok, rhs_ok;
    if (side == AckermannSide::Right) {
      lhs_ok = pl == Polarity::Positive || pl == Polarity::Absent;
      rhs_ok = pr == Polarity::Negative || pr == Polarity::Absent;
    } else {
      lhs_ok = pl == Polarity::Negative || pl == Polarity::Absent;
      rhs_ok = pr == Polarity::Positive || pr == Polarity::Absent;
    }
    if (!lhs_ok || !rhs_ok)
      throw RuleError("ackermann: polarity of " + p + " violates the " +
                      (side == AckermannSide::Right ? "right" : "left") +
                      " rule in " + print_inequality(iq));
    passive.push_back(iq);
  }
  FormulaPtr value;
  if (bounds.empty()) {
    value = side == AckermannSide::Right ? bottom() : top();
  } else {
    value = bounds[0];
    for (size_t i = 1; i < bounds.size(); ++i)
      value = side == AckermannSide::Right ? lor(value, bounds[i])
                                           : land(value, bounds[i]);
  }
  System out;
  out.ineq = sys.ineq;
  for (const auto& iq : passive)
    out.premises.push_back(
        {substitute(iq.lhs, p, value), substitute(iq.rhs, p, value)});
  return out;
}

// ---------------------------------------------------------------------------
// run_alba

namespace {

class NominalGen {
public:
  explicit NominalGen(std::set<std::string> used) : used_(std::move(used)) {}

  std::string next() {
    static const char* bases[3] = {"i", "j", "k"};
    while (true) {
      std::string name = bases[idx_ % 3];
      if (idx_ >= 3) name += std::to_string(idx_ / 3);
      ++idx_;
      if (!used_.count(name)) {
        used_.insert(name);
        return name;
      }
    }
  }

private:
  std::set<std::string> used_;
  size_t idx_ = 0;
};

bool contains_prop(const FormulaPtr& f) { return !is_pure(f); }

void frontier_rec(const FormulaPtr& f, Sign s, bool rhs,
                  std::vector<int>& path, std::vector<Position>& out) {
  if (node_class(s, f->conn).slr) {
    for (size_t i = 0; i < f->children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      frontier_rec(f->children[i], child_sign(s, f->conn, static_cast<int>(i)),
                   rhs, path, out);
      path.pop_back();
    }
    return;
  }
  Position p;
  p.rhs = rhs;
  p.path = path;
  out.push_back(std::move(p));
}

// Pivotal targets of the goal inequality: maximal-SLR-branch frontiers of
// +lhs then -rhs, left to right.
std::vector<Position> pivotal_targets(const Inequality& iq) {
  std::vector<Position> out;
  std::vector<int> path;
  frontier_rec(iq.lhs, Sign::Plus, false, path, out);
  frontier_rec(iq.rhs, Sign::Minus, true, path, out);
  return out;
}

// Leftmost occurrence of prop p with the given sign in the tree rooted at
// root_sign.
bool find_signed_occurrence(const FormulaPtr& f, Sign s, const std::string& p,
                            Sign want, std::vector<int>& path) {
  if (f->conn == Conn::Prop && f->name == p) return s == want;
  for (size_t i = 0; i < f->children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (find_signed_occurrence(f->children[i],
                               child_sign(s, f->conn, static_cast<int>(i)), p,
                               want, path))
      return true;
    path.pop_back();
  }
  return false;
}

struct Occurrence {
  bool rhs;
  std::vector<int> path;
};

// Critical occurrences: +p when eps(p)=1, -p when eps(p)=d, read in the
// signed trees -lhs / +rhs of a premise inequality.
std::optional<Occurrence> find_critical(const Inequality& iq,
                                        const std::string& p, bool eps_one) {
  Sign want = eps_one ? Sign::Plus : Sign::Minus;
  std::vector<int> path;
  if (find_signed_occurrence(iq.rhs, Sign::Plus, p, want, path))
    return Occurrence{true, path};
  path.clear();
  if (find_signed_occurrence(iq.lhs, Sign::Minus, p, want, path))
    return Occurrence{false, path};
  return std::nullopt;
}

struct StageContext {
  std::vector<System>& state;
  RuleTrace& trace;
  NominalGen& noms;
  uint64_t budget;
};

// Rewrites premise `mi` of system `si` one step toward exposing the
// critical occurrence. Splitting replaces the premise by two. Returns
// false when the occurrence is already exposed or no rule applies.
bool peel_step(StageContext& ctx, size_t si, size_t mi, const Occurrence& occ,
               bool* stuck) {
  System& sys = ctx.state[si];
  Inequality iq = sys.premises[mi];
  *stuck = false;

  std::optional<ResRule> rule;
  bool split = false;
  if (occ.rhs) {
    switch (iq.rhs->conn) {
      case Conn::Prop: return false;  // exposed
      case Conn::Box: rule = ResRule::BoxRes; break;
      case Conn::Neg: rule = ResRule::NegResRight; break;
      case Conn::And: split = true; break;
      case Conn::Or:
        rule = occ.path.empty()
                   ? std::optional<ResRule>{}
                   : (occ.path[0] == 0 ? ResRule::OrRes2 : ResRule::OrRes1);
        break;
      case Conn::Implies:
        rule = occ.path.empty()
                   ? std::optional<ResRule>{}
                   : (occ.path[0] == 1 ? ResRule::ImpRes1 : ResRule::ImpRes2);
        break;
      default: break;
    }
  } else {
    switch (iq.lhs->conn) {
      case Conn::Prop: return false;  // exposed
      case Conn::Diamond: rule = ResRule::DiaRes; break;
      case Conn::Neg: rule = ResRule::NegResLeft; break;
      case Conn::Or: split = true; break;
      case Conn::And:
        rule = occ.path.empty()
                   ? std::optional<ResRule>{}
                   : (occ.path[0] == 0 ? ResRule::AndRes1 : ResRule::AndRes2);
        break;
      default: break;
    }
  }

  if (split) {
    System before = sys;
    std::vector<Inequality> two;
    if (occ.rhs)
      two = {{iq.lhs, iq.rhs->children[0]}, {iq.lhs, iq.rhs->children[1]}};
    else
      two = {{iq.lhs->children[0], iq.rhs}, {iq.lhs->children[1], iq.rhs}};
    sys.premises.erase(sys.premises.begin() + static_cast<long>(mi));
    sys.premises.insert(sys.premises.begin() + static_cast<long>(mi),
                        two.begin(), two.end());
    record_step(ctx.trace, 2,
                occ.rhs ? "split-and-right" : "split-or-left", si, {before},
                {sys});
    return true;
  }
  if (!rule) {
    *stuck = true;
    return false;
  }
  System before = sys;
  sys.premises[mi] = apply_residuation(*rule, iq);
  record_step(ctx.trace, 2, res_rule_name(*rule), si, {before}, {sys});
  return true;
}

// Eliminates variable p from system si using the Ackermann rule for the
// given polarity. Returns false (leaving partial rewrites recorded in the
// caller's scratch state) if some premise gets stuck or the budget runs
// out.
bool eliminate_variable(StageContext& ctx, size_t si, const std::string& p,
                        bool eps_one, std::string* why) {
  bool progress = true;
  while (progress) {
    progress = false;
    System& sys = ctx.state[si];
    for (size_t mi = 0; mi < sys.premises.size(); ++mi) {
      const Inequality& iq = sys.premises[mi];
      // Already a defining shape for this polarity.
      const FormulaPtr& head = eps_one ? iq.rhs : iq.lhs;
      if (head->conn == Conn::Prop && head->name == p &&
          polarity(eps_one ? iq.lhs : iq.rhs, p) == Polarity::Absent)
        continue;
      auto occ = find_critical(iq, p, eps_one);
      if (!occ) continue;
      if (ctx.budget == 0) {
        *why = "rule budget exhausted";
        return false;
      }
      bool stuck = false;
      if (peel_step(ctx, si, mi, *occ, &stuck)) {
        --ctx.budget;
        progress = true;
        break;  // rescan from the first premise
      }
      if (stuck) {
        *why = "no residuation rule applies to " + print_inequality(iq) +
               " for variable " + p;
        return false;
      }
    }
  }
  if (ctx.budget == 0) {
    *why = "rule budget exhausted";
    return false;
  }
  try {
    System before = ctx.state[si];
    System after = ackermann(
        ctx.state[si], p,
        eps_one ? AckermannSide::Right : AckermannSide::Left);
    ctx.state[si] = after;
    --ctx.budget;
    record_step(ctx.trace, 2,
                eps_one ? "ackermann-right" : "ackermann-left", si, {before},
                {ctx.state[si]}, {}, "eliminate " + p);
  } catch (const RuleError& e) {
    *why = e.what();
    return false;
  }
  return true;
}

std::set<std::string> system_props(const System& sys) {
  std::set<std::string> out = prop_names(sys.ineq);
  for (const auto& iq : sys.premises) {
    auto s = prop_names(iq);
    out.insert(s.begin(), s.end());
  }
  return out;
}

// Approximation pass: applied once per system, covering every pivotal
// target that still contains a propositional variable.
void strip_system(StageContext& ctx, size_t si) {
  std::vector<Position> targets = pivotal_targets(ctx.state[si].ineq);
  for (const auto& pos : targets) {
    FormulaPtr gamma = subformula_at(ctx.state[si].ineq, pos);
    if (!contains_prop(gamma) || !is_basic(gamma)) continue;
    Sign s = sign_at(ctx.state[si].ineq, pos);
    ApproxFlavor flavor;
    const char* name;
    if (!pos.rhs && s == Sign::Plus) {
      flavor = ApproxFlavor::LeftPositive;
      name = "approx-L+A";
    } else if (!pos.rhs && s == Sign::Minus) {
      flavor = ApproxFlavor::LeftNegative;
      name = "approx-L-A";
    } else if (pos.rhs && s == Sign::Plus) {
      flavor = ApproxFlavor::RightPositive;
      name = "approx-R+A";
    } else {
      flavor = ApproxFlavor::RightNegative;
      name = "approx-R-A";
    }
    std::string fresh = ctx.noms.next();
    System before = ctx.state[si];
    ctx.state[si] = apply_approximation(ctx.state[si], pos, flavor, fresh);
    record_step(ctx.trace, 2, name, si, {before}, {ctx.state[si]}, {fresh});
    if (ctx.budget > 0) --ctx.budget;
  }
}

// Omega-minimal-first order with lexicographic tie-break.
std::vector<std::string> elimination_order(const std::set<std::string>& vars,
                                           const DependenceOrder& om) {
  std::vector<std::string> out;
  std::set<std::string> remaining = vars;
  while (!remaining.empty()) {
    std::string pick;
    for (const auto& v : remaining) {  // iteration is lexicographic
      bool minimal = true;
      for (const auto& u : remaining)
        if (u != v && om.less(u, v)) {
          minimal = false;
          break;
        }
      if (minimal) {
        pick = v;
        break;
      }
    }
    if (pick.empty()) pick = *remaining.begin();  // cyclic: fall back to lex
    out.push_back(pick);
    remaining.erase(pick);
  }
  return out;
}

}  // namespace

AlbaResult run_alba(const Inequality& input, const AlbaOptions& opts) {
  if (!is_basic(input))
    throw std::invalid_argument(
        "run_alba expects an inequality in the basic modal language");

  AlbaResult res;
  res.classification = classify(input);

  std::vector<System> state{System{{}, input}};
  preprocess_state(state, res.trace);

  NominalGen noms(nominal_names(input));
  const bool inductive = res.classification.verdict != Verdict::NotInductive;

  bool all_pure = true;
  for (size_t si = 0; si < state.size(); ++si) {
    StageContext ctx{state, res.trace, noms, opts.rule_budget};
    strip_system(ctx, si);

    if (inductive) {
      std::vector<std::string> order = elimination_order(
          system_props(state[si]), res.classification.omega);
      for (const auto& p : order) {
        if (!system_props(state[si]).count(p)) continue;
        bool eps_one = res.classification.eps.assignment.count(p)
                            ? res.classification.eps.is_one(p)
                            : true;
        std::string why;
        if (!eliminate_variable(ctx, si, p, eps_one, &why)) {
          res.failure_reason = "system " + std::to_string(si) + ": " + why;
          break;
        }
      }
    } else {
      // Best-effort budgeted run: try each remaining variable with both
      // polarities on a scratch copy, committing the first that works.
      while (!system_props(state[si]).empty() && ctx.budget > 0) {
        bool eliminated = false;
        std::set<std::string> vars = system_props(state[si]);
        for (const auto& p : vars) {
          if (prop_names(state[si].ineq).count(p)) continue;
          for (bool eps_one : {true, false}) {
            std::vector<System> scratch = state;
            RuleTrace scratch_trace;
            StageContext sctx{scratch, scratch_trace, noms, ctx.budget};
            std::string why;
            if (eliminate_variable(sctx, si, p, eps_one, &why)) {
              state = std::move(scratch);
              for (auto& st : scratch_trace.steps)
                res.trace.steps.push_back(std::move(st));
              ctx.budget = sctx.budget;
              eliminated = true;
              break;
            }
          }
          if (eliminated) break;
        }
        if (!eliminated) {
          res.failure_reason =
              "system " + std::to_string(si) +
              ": no variable could be eliminated within the budget";
          break;
        }
      }
    }
    if (!state[si].pure()) all_pure = false;
  }

  res.systems = state;
  res.success = all_pure;
  if (!res.success) {
    if (res.failure_reason.empty())
      res.failure_reason = "residual propositional variables remain";
    return res;
  }

  for (const auto& sys : state) res.quasis.push_back(sys.quasi());
  res.fo = translate_quasi(res.quasis);

  if (opts.simplify) {
    // Contraposition display pass: ({d <= ~j}, g <= ~j) with j occurring
    // nowhere else collapses to the pure inequality g <= d.
    res.simplified.clear();
    for (const auto& sys : state) {
      bool done = false;
      if (sys.premises.size() == 1) {
        const Inequality& prem = sys.premises[0];
        const Inequality& goal = sys.ineq;
        if (prem.rhs->conn == Conn::Neg &&
            prem.rhs->children[0]->conn == Conn::Nominal &&
            goal.rhs->conn == Conn::Neg &&
            goal.rhs->children[0]->conn == Conn::Nominal &&
            prem.rhs->children[0]->name == goal.rhs->children[0]->name) {
          const std::string& j = prem.rhs->children[0]->name;
          if (!nominal_names(prem.lhs).count(j) &&
              !nominal_names(goal.lhs).count(j)) {
            res.simplified.push_back(
                QuasiInequality{{}, {goal.lhs, prem.lhs}});
            done = true;
          }
        }
      }
      if (!done) res.simplified.push_back(sys.quasi());
    }
    res.fo_simplified = translate_quasi(res.simplified);
  }
  return res;
}

}  // namespace alba
