#ifndef ALBA_CHECKER_HPP
#define ALBA_CHECKER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alba/fo.hpp"
#include "alba/formula.hpp"
#include "alba/frames.hpp"

namespace alba {

// Valuation: props over the admissible family, nominals over the
// pseudo-atoms (each with its witnessing point for the FO side).
struct Assignment {
  std::map<std::string, PointSet> props;
  std::map<std::string, PointSet> noms;

  std::string describe(int n) const;
};

// Algebraic truth set, computed through the regular open operations.
// Throws on unbound variables, and on non-basic formulas over frames that
// fail is_full_frame (the expanded language needs the underlying full
// frame).
PointSet truth_set(const PossibilityFrame& frame, const Assignment& asg,
                   const FormulaPtr& phi);

// Pointwise satisfaction per the relational clauses; the independent
// second evaluation route.
bool sat_pointwise(const PossibilityFrame& frame, const Assignment& asg,
                   int w, const FormulaPtr& phi);

enum class ValuationMode { Admissible, Full };

struct CheckResult {
  bool valid = true;
  std::optional<Assignment> counterexample;
};

// Valid iff truth(lhs) is included in truth(rhs) under every assignment
// (props over P or over RO per mode, nominals over PsAt). Deterministic
// first counterexample: props in identifier order over carrier order.
CheckResult inequality_valid(const PossibilityFrame& frame,
                             const Inequality& ineq, ValuationMode mode);

// Valid iff every assignment satisfying all premises satisfies the
// conclusion.
CheckResult quasi_valid(const PossibilityFrame& frame,
                        const QuasiInequality& q, ValuationMode mode);

// Tarskian evaluation of an indexed FO formula. env carries values for
// free-variable and binder slots, consts one point per constant index.
bool eval_fo_indexed(const PossibilityFrame& frame, const IndexedFO& fo,
                     std::vector<int> env, const std::vector<int>& consts,
                     const std::map<std::string, PointSet>* preds = nullptr);

// Convenience wrapper binding free variables and constants by name.
bool eval_fo(const PossibilityFrame& frame, const FOPtr& alpha,
             const std::map<std::string, int>& env,
             const std::map<std::string, int>& consts,
             const std::map<std::string, PointSet>* preds = nullptr);

struct FrameVerdict {
  bool modal_valid = false;
  bool pure_valid = false;  // the ALBA quasi-inequalities, when supplied
  bool fo_valid = false;
  bool has_pure = false;

  bool agree() const {
    return modal_valid == fo_valid && (!has_pure || pure_valid == fo_valid);
  }
};

struct CorrespondenceSummary {
  uint64_t frames_checked = 0;
  uint64_t disagreements = 0;
  std::optional<std::string> first_counterexample;  // frame dump

  bool all_agree() const { return disagreements == 0; }
};

// Per frame: modal validity of ineq (full valuations) against the truth
// of the closed first-order correspondent, and optionally against the
// pure quasi-inequalities in between. The parallel kernel splits the
// frame list across OpenMP threads; the serial kernel is the reference.
CorrespondenceSummary verify_correspondence(
    const Inequality& ineq, const FOPtr& fo,
    const std::vector<PossibilityFrame>& frames, bool parallel = true,
    const std::vector<QuasiInequality>* quasis = nullptr,
    std::vector<FrameVerdict>* verdicts_out = nullptr);

}  // namespace alba

#endif
