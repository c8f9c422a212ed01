#ifndef ALBA_ENGINE_HPP
#define ALBA_ENGINE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alba/fo.hpp"
#include "alba/formula.hpp"
#include "alba/sgtree.hpp"

namespace alba {

// ALBA working state: the premise set S and the goal inequality.
struct System {
  std::vector<Inequality> premises;  // S
  Inequality ineq;                   // Ineq

  bool pure() const;
  QuasiInequality quasi() const { return {premises, ineq}; }
  std::string describe() const;
};

bool equal(const System& a, const System& b);

// Position of a subformula occurrence inside a goal inequality.
struct Position {
  bool rhs = false;
  std::vector<int> path;  // child indices from the side's root
};

FormulaPtr subformula_at(const Inequality& iq, const Position& pos);
Inequality replace_at(const Inequality& iq, const Position& pos,
                      const FormulaPtr& repl);
// Sign of the position in the signed trees +lhs / -rhs.
Sign sign_at(const Inequality& iq, const Position& pos);

// One rewrite of the working state. Steps replace `before` (a slice of
// the state vector at `index`) by `after`; replaying them from the
// initial state reproduces the final one.
struct TraceStep {
  int stage = 1;  // 1 preprocessing, 2 reduction/elimination
  std::string rule;
  size_t index = 0;
  std::vector<System> before;
  std::vector<System> after;
  std::vector<std::string> fresh;  // nominals introduced by this step
  std::string detail;
};

struct RuleTrace {
  std::vector<TraceStep> steps;
};

// Replays a trace from (empty, ineq); throws if a step's `before` does
// not match the evolving state.
std::vector<System> replay_trace(const Inequality& initial,
                                 const RuleTrace& trace);

class RuleError : public std::runtime_error {
public:
  explicit RuleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Stage 1: distribution to fixpoint, uniform-variable elimination,
// splitting to fixpoint, repeated until stable. Every returned
// inequality is ready to seed a system.
std::vector<Inequality> preprocess(const Inequality& ineq);
std::vector<Inequality> preprocess(const Inequality& ineq, RuleTrace& trace);

enum class ApproxFlavor { LeftPositive, LeftNegative, RightPositive,
                          RightNegative };

// One approximation step: the occurrence at pos is replaced by a fresh
// nominal (negated for the negative flavors) and a defining inequality
// joins S. Side conditions: the flavor matches the occurrence sign, every
// strict ancestor on the branch is SLR, the branch is maximal, and the
// occurrence subformula is in the basic language. Throws RuleError.
System apply_approximation(const System& sys, const Position& pos,
                           ApproxFlavor flavor,
                           const std::string& fresh_nominal);

enum class ResRule {
  DiaRes,      // dia g <= d   ~>  g <= bbox d
  BoxRes,      // g <= box d   ~>  bdia g <= d
  NegResLeft,  // ~g <= d      ~>  ~d <= g
  NegResRight, // g <= ~d      ~>  d <= ~g
  AndRes1,     // g & d <= b   ~>  g <= d -> b
  AndRes2,     // g & d <= b   ~>  d <= g -> b
  OrRes1,      // g <= d | b   ~>  g & ~d <= b
  OrRes2,      // g <= d | b   ~>  g & ~b <= d
  ImpRes1,     // g <= d -> b  ~>  g & d <= b
  ImpRes2,     // g <= d -> b  ~>  d <= g -> b
};

const char* res_rule_name(ResRule r);

// Rewrites an inequality by the chosen residuation rule; throws RuleError
// on scheme mismatch.
Inequality apply_residuation(ResRule rule, const Inequality& iq);

enum class AckermannSide { Right, Left };

// Eliminates p: S must split into defining inequalities (a_i <= p for
// Right, p <= a_i for Left, p not in a_i) and inequalities where p occurs
// only with the passive polarity (positive lhs / negative rhs for Right,
// the reverse for Left); p must not occur in Ineq. The defining bounds
// are folded with or/and (bottom/top when none) and substituted into the
// passive inequalities. Throws RuleError with the offending inequality.
System ackermann(const System& sys, const std::string& p, AckermannSide side);

struct AlbaOptions {
  uint64_t rule_budget = 500;  // per system, stage 2
  bool simplify = false;
};

struct AlbaResult {
  bool success = false;
  Classification classification;
  std::vector<System> systems;  // pure on success, residual on failure
  std::vector<QuasiInequality> quasis;
  FOPtr fo;  // closed correspondent (success only)
  // Post-hoc display simplification (optional; never replaces `fo`).
  std::vector<QuasiInequality> simplified;
  FOPtr fo_simplified;
  RuleTrace trace;
  std::string failure_reason;
};

// The full pipeline: classify, preprocess, strip each system by pivotal
// approximations, then eliminate variables Omega-minimal-first (for
// inductive inputs, with the witness order type); non-inductive inputs
// get a budgeted best-effort run. Failure is a value.
AlbaResult run_alba(const Inequality& ineq, const AlbaOptions& opts = {});

}  // namespace alba

#endif
