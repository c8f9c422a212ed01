#include "alba/checker.hpp"

#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alba {

namespace {

std::string mask_bits(PointSet x, int n) {
  std::string s;
  for (int w = 0; w < n; ++w) s += contains(x, w) ? '1' : '0';
  return s;
}

bool needs_full(const FormulaPtr& phi) { return !is_basic(phi); }

}  // namespace

std::string Assignment::describe(int n) const {
  std::ostringstream os;
  for (const auto& [k, v] : props) os << k << "=" << mask_bits(v, n) << " ";
  for (const auto& [k, v] : noms) os << k << "=" << mask_bits(v, n) << " ";
  return os.str();
}

PointSet truth_set(const PossibilityFrame& frame, const Assignment& asg,
                   const FormulaPtr& phi) {
  if (!frame.full() && needs_full(phi) &&
      !is_full_frame(frame.poset(), frame.acc()))
    throw std::invalid_argument(
        "expanded-language formula on a frame whose underlying full frame "
        "is not well-defined");
  const ROAlgebra& alg = frame.algebra();
  switch (phi->conn) {
    case Conn::Top: return alg.top();
    case Conn::Bottom: return alg.bot();
    case Conn::Prop: {
      auto it = asg.props.find(phi->name);
      if (it == asg.props.end())
        throw std::invalid_argument("unbound prop variable " + phi->name);
      return it->second;
    }
    case Conn::Nominal: {
      auto it = asg.noms.find(phi->name);
      if (it == asg.noms.end())
        throw std::invalid_argument("unbound nominal " + phi->name);
      return it->second;
    }
    case Conn::Neg:
      return alg.complement(truth_set(frame, asg, phi->children[0]));
    case Conn::And:
      return alg.meet(truth_set(frame, asg, phi->children[0]),
                      truth_set(frame, asg, phi->children[1]));
    case Conn::Or:
      return alg.join(truth_set(frame, asg, phi->children[0]),
                      truth_set(frame, asg, phi->children[1]));
    case Conn::Implies:
      return alg.ro_implies(truth_set(frame, asg, phi->children[0]),
                            truth_set(frame, asg, phi->children[1]));
    case Conn::Box:
      return frame.box(truth_set(frame, asg, phi->children[0]));
    case Conn::Diamond:
      return frame.diamond(truth_set(frame, asg, phi->children[0]));
    case Conn::BlackDiamond:
      return frame.bdia(truth_set(frame, asg, phi->children[0]));
    case Conn::BlackBox:
      return frame.bbox(truth_set(frame, asg, phi->children[0]));
  }
  throw std::logic_error("truth_set: unhandled connective");
}

bool sat_pointwise(const PossibilityFrame& frame, const Assignment& asg,
                   int w, const FormulaPtr& phi) {
  const Poset& p = frame.poset();
  const Accessibility& acc = frame.acc();
  const int n = p.size();
  switch (phi->conn) {
    case Conn::Top: return true;
    case Conn::Bottom: return false;
    case Conn::Prop: return contains(asg.props.at(phi->name), w);
    case Conn::Nominal: return contains(asg.noms.at(phi->name), w);
    case Conn::And:
      return sat_pointwise(frame, asg, w, phi->children[0]) &&
             sat_pointwise(frame, asg, w, phi->children[1]);
    case Conn::Neg:
      for (int v = 0; v < n; ++v)
        if (p.leq(v, w) && sat_pointwise(frame, asg, v, phi->children[0]))
          return false;
      return true;
    case Conn::Box:
      for (int v = 0; v < n; ++v)
        if (acc.rel(w, v) && !sat_pointwise(frame, asg, v, phi->children[0]))
          return false;
      return true;
    case Conn::Or:
      // for all v <= w there is u <= v where one disjunct holds
      for (int v = 0; v < n; ++v) {
        if (!p.leq(v, w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u)
          if (p.leq(u, v) &&
              (sat_pointwise(frame, asg, u, phi->children[0]) ||
               sat_pointwise(frame, asg, u, phi->children[1])))
            found = true;
        if (!found) return false;
      }
      return true;
    case Conn::Implies:
      for (int v = 0; v < n; ++v)
        if (p.leq(v, w) && sat_pointwise(frame, asg, v, phi->children[0]) &&
            !sat_pointwise(frame, asg, v, phi->children[1]))
          return false;
      return true;
    case Conn::Diamond:
      // for all v <= w there are u with Rvu and t <= u satisfying phi
      for (int v = 0; v < n; ++v) {
        if (!p.leq(v, w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
          if (!acc.rel(v, u)) continue;
          for (int t = 0; t < n && !found; ++t)
            if (p.leq(t, u) && sat_pointwise(frame, asg, t, phi->children[0]))
              found = true;
        }
        if (!found) return false;
      }
      return true;
    case Conn::BlackDiamond:
      // for all v <= w exist u <= v, t >= u, s with Rst and s |= phi
      for (int v = 0; v < n; ++v) {
        if (!p.leq(v, w)) continue;
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
          if (!p.leq(u, v)) continue;
          for (int t = 0; t < n && !found; ++t) {
            if (!p.leq(u, t)) continue;
            for (int s = 0; s < n && !found; ++s)
              if (acc.rel(s, t) &&
                  sat_pointwise(frame, asg, s, phi->children[0]))
                found = true;
          }
        }
        if (!found) return false;
      }
      return true;
    case Conn::BlackBox:
      // for all v <= w, u >= v, t with Rtu: some s <= t satisfies phi
      for (int v = 0; v < n; ++v) {
        if (!p.leq(v, w)) continue;
        for (int u = 0; u < n; ++u) {
          if (!p.leq(v, u)) continue;
          for (int t = 0; t < n; ++t) {
            if (!acc.rel(t, u)) continue;
            bool found = false;
            for (int s = 0; s < n && !found; ++s)
              if (p.leq(s, t) && sat_pointwise(frame, asg, s, phi->children[0]))
                found = true;
            if (!found) return false;
          }
        }
      }
      return true;
  }
  throw std::logic_error("sat_pointwise: unhandled connective");
}

// ---------------------------------------------------------------------------
// Validity by assignment enumeration

namespace {

// Odometer over assignments: props (identifier order) range over the
// chosen family, nominals over the pseudo-atoms. Visits assignments in
// carrier order; stops early when visit returns false.
bool for_each_assignment(const PossibilityFrame& frame,
                         const std::vector<std::string>& props,
                         const std::vector<std::string>& noms,
                         ValuationMode mode,
                         const std::function<bool(const Assignment&)>& visit) {
  const std::vector<PointSet>& prop_family =
      mode == ValuationMode::Full ? frame.algebra().carrier()
                                  : frame.admissible();
  const std::vector<PointSet>& psat = frame.algebra().psat();
  std::vector<size_t> pidx(props.size(), 0), nidx(noms.size(), 0);
  while (true) {
    Assignment asg;
    for (size_t i = 0; i < props.size(); ++i)
      asg.props[props[i]] = prop_family[pidx[i]];
    for (size_t i = 0; i < noms.size(); ++i)
      asg.noms[noms[i]] = psat[nidx[i]];
    if (!visit(asg)) return false;
    size_t k = 0;
    for (; k < props.size(); ++k) {
      if (++pidx[k] < prop_family.size()) break;
      pidx[k] = 0;
    }
    if (k < props.size()) continue;
    for (k = 0; k < noms.size(); ++k) {
      if (++nidx[k] < psat.size()) break;
      nidx[k] = 0;
    }
    if (k == noms.size()) return true;
  }
}

}  // namespace

CheckResult inequality_valid(const PossibilityFrame& frame,
                             const Inequality& ineq, ValuationMode mode) {
  std::set<std::string> ps = prop_names(ineq), ns = nominal_names(ineq);
  std::vector<std::string> props(ps.begin(), ps.end());
  std::vector<std::string> noms(ns.begin(), ns.end());
  CheckResult res;
  for_each_assignment(frame, props, noms, mode, [&](const Assignment& asg) {
    PointSet l = truth_set(frame, asg, ineq.lhs);
    PointSet r = truth_set(frame, asg, ineq.rhs);
    if ((l & ~r) != 0) {
      res.valid = false;
      res.counterexample = asg;
      return false;
    }
    return true;
  });
  return res;
}

CheckResult quasi_valid(const PossibilityFrame& frame,
                        const QuasiInequality& q, ValuationMode mode) {
  std::set<std::string> ps = prop_names(q.conclusion),
                        ns = nominal_names(q.conclusion);
  for (const auto& iq : q.premises) {
    auto p2 = prop_names(iq);
    ps.insert(p2.begin(), p2.end());
    auto n2 = nominal_names(iq);
    ns.insert(n2.begin(), n2.end());
  }
  std::vector<std::string> props(ps.begin(), ps.end());
  std::vector<std::string> noms(ns.begin(), ns.end());
  CheckResult res;
  for_each_assignment(frame, props, noms, mode, [&](const Assignment& asg) {
    for (const auto& iq : q.premises) {
      PointSet l = truth_set(frame, asg, iq.lhs);
      PointSet r = truth_set(frame, asg, iq.rhs);
      if ((l & ~r) != 0) return true;  // premise fails, assignment passes
    }
    PointSet l = truth_set(frame, asg, q.conclusion.lhs);
    PointSet r = truth_set(frame, asg, q.conclusion.rhs);
    if ((l & ~r) != 0) {
      res.valid = false;
      res.counterexample = asg;
      return false;
    }
    return true;
  });
  return res;
}

// ---------------------------------------------------------------------------
// First-order evaluation

namespace {

int term_value(const FOTerm& t, const std::vector<int>& env,
               const std::vector<int>& consts) {
  return t.is_const ? consts[t.slot] : env[t.slot];
}

bool eval_rec(const PossibilityFrame& frame, const FOPtr& f,
              std::vector<int>& env, const std::vector<int>& consts,
              const std::map<std::string, PointSet>* preds) {
  switch (f->kind) {
    case FOKind::Eq:
      return term_value(f->terms[0], env, consts) ==
             term_value(f->terms[1], env, consts);
    case FOKind::RelLeq:
      return frame.poset().leq(term_value(f->terms[0], env, consts),
                               term_value(f->terms[1], env, consts));
    case FOKind::RelR:
      return frame.acc().rel(term_value(f->terms[0], env, consts),
                             term_value(f->terms[1], env, consts));
    case FOKind::Pred: {
      if (!preds)
        throw std::invalid_argument(
            "predicate atom in a pure evaluation context");
      auto it = preds->find(f->pred);
      if (it == preds->end())
        throw std::invalid_argument("unbound predicate " + f->pred);
      return contains(it->second, term_value(f->terms[0], env, consts));
    }
    case FOKind::Not:
      return !eval_rec(frame, f->children[0], env, consts, preds);
    case FOKind::And:
      return eval_rec(frame, f->children[0], env, consts, preds) &&
             eval_rec(frame, f->children[1], env, consts, preds);
    case FOKind::Or:
      return eval_rec(frame, f->children[0], env, consts, preds) ||
             eval_rec(frame, f->children[1], env, consts, preds);
    case FOKind::Implies:
      return !eval_rec(frame, f->children[0], env, consts, preds) ||
             eval_rec(frame, f->children[1], env, consts, preds);
    case FOKind::ForAll:
      for (int w = 0; w < frame.size(); ++w) {
        env[f->slot] = w;
        if (!eval_rec(frame, f->children[0], env, consts, preds)) return false;
      }
      return true;
    case FOKind::Exists:
      for (int w = 0; w < frame.size(); ++w) {
        env[f->slot] = w;
        if (eval_rec(frame, f->children[0], env, consts, preds)) return true;
      }
      return false;
  }
  throw std::logic_error("eval_rec: unhandled kind");
}

}  // namespace

bool eval_fo_indexed(const PossibilityFrame& frame, const IndexedFO& fo,
                     std::vector<int> env, const std::vector<int>& consts,
                     const std::map<std::string, PointSet>* preds) {
  env.resize(fo.env_size, 0);
  return eval_rec(frame, fo.formula, env, consts, preds);
}

bool eval_fo(const PossibilityFrame& frame, const FOPtr& alpha,
             const std::map<std::string, int>& env,
             const std::map<std::string, int>& consts,
             const std::map<std::string, PointSet>* preds) {
  IndexedFO idx = index_fo(alpha);
  std::vector<int> env_vec(idx.env_size, 0);
  for (size_t i = 0; i < idx.free_vars.size(); ++i) {
    auto it = env.find(idx.free_vars[i]);
    if (it == env.end())
      throw std::invalid_argument("unbound variable " + idx.free_vars[i]);
    env_vec[i] = it->second;
  }
  std::vector<int> const_vec;
  for (const auto& name : idx.consts) {
    auto it = consts.find(name);
    if (it == consts.end())
      throw std::invalid_argument("unbound constant " + name);
    const_vec.push_back(it->second);
  }
  return eval_fo_indexed(frame, idx, std::move(env_vec), const_vec, preds);
}

// ---------------------------------------------------------------------------
// Correspondence sweep

namespace {

FrameVerdict check_one_frame(const PossibilityFrame& frame,
                             const Inequality& ineq, const IndexedFO& fo,
                             const std::vector<QuasiInequality>* quasis) {
  FrameVerdict v;
  v.modal_valid = inequality_valid(frame, ineq, ValuationMode::Full).valid;
  v.fo_valid = eval_fo_indexed(frame, fo, {}, {});
  if (quasis) {
    v.has_pure = true;
    v.pure_valid = true;
    for (const auto& q : *quasis)
      if (!quasi_valid(frame, q, ValuationMode::Full).valid) {
        v.pure_valid = false;
        break;
      }
  }
  return v;
}

}  // namespace

CorrespondenceSummary verify_correspondence(
    const Inequality& ineq, const FOPtr& fo,
    const std::vector<PossibilityFrame>& frames, bool parallel,
    const std::vector<QuasiInequality>* quasis,
    std::vector<FrameVerdict>* verdicts_out) {
  IndexedFO idx = index_fo(fo);
  if (!idx.free_vars.empty())
    throw std::invalid_argument("correspondent must be a closed formula");
  if (!idx.consts.empty())
    throw std::invalid_argument(
        "correspondent must not contain free constants");

  const int64_t count = static_cast<int64_t>(frames.size());
  std::vector<FrameVerdict> verdicts(frames.size());

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t i = 0; i < count; ++i)
      verdicts[i] = check_one_frame(frames[i], ineq, idx, quasis);
  } else {
    for (int64_t i = 0; i < count; ++i)
      verdicts[i] = check_one_frame(frames[i], ineq, idx, quasis);
  }

  CorrespondenceSummary sum;
  sum.frames_checked = frames.size();
  for (size_t i = 0; i < frames.size(); ++i) {
    if (verdicts[i].agree()) continue;
    sum.disagreements++;
    if (!sum.first_counterexample)
      sum.first_counterexample = dump_frame(frames[i]);
  }
  if (verdicts_out) *verdicts_out = std::move(verdicts);
  return sum;
}

}  // namespace alba
