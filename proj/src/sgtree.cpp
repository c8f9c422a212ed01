#include "alba/sgtree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace alba {

NodeClass node_class(Sign sign, Conn conn) {
  const bool plus = (sign == Sign::Plus);
  NodeClass c;
  switch (conn) {
    case Conn::And:
      if (plus) {
        c.delta_adjoint = c.sra = c.slr = true;
      } else {
        c.delta_adjoint = c.srr = true;
      }
      break;
    case Conn::Or:
      if (plus) {
        c.delta_adjoint = c.srr = true;
      } else {
        c.delta_adjoint = c.sra = c.slr = true;
      }
      break;
    case Conn::Neg:
      c.sra = c.slr = true;
      break;
    case Conn::Box:
      if (plus) c.sra = true; else c.slr = true;
      break;
    case Conn::Diamond:
      if (plus) c.slr = true; else c.sra = true;
      break;
    case Conn::Implies:
      if (plus) c.srr = true; else c.slr = true;
      break;
    default:
      break;  // leaves
  }
  return c;
}

std::string node_class_name(const NodeClass& c) {
  std::vector<const char*> parts;
  if (c.delta_adjoint) parts.push_back("dAdj");
  if (c.sra) parts.push_back("SRA");
  if (c.slr) parts.push_back("SLR");
  if (c.srr) parts.push_back("SRR");
  if (parts.empty()) return "Leaf";
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '/';
    out += parts[i];
  }
  return out;
}

SignedNodePtr build_signed_tree(const FormulaPtr& phi, Sign sign) {
  if (phi->conn == Conn::Nominal || phi->conn == Conn::BlackDiamond ||
      phi->conn == Conn::BlackBox)
    throw std::invalid_argument(
        "signed generation trees are defined on the basic language only");
  auto node = std::make_shared<SignedNode>();
  node->sign = sign;
  node->formula = phi;
  node->cls = node_class(sign, phi->conn);
  if (phi->conn == Conn::Neg) {
    node->children.push_back(build_signed_tree(phi->children[0], flip(sign)));
  } else if (phi->conn == Conn::Implies) {
    node->children.push_back(build_signed_tree(phi->children[0], flip(sign)));
    node->children.push_back(build_signed_tree(phi->children[1], sign));
  } else {
    for (const auto& c : phi->children)
      node->children.push_back(build_signed_tree(c, sign));
  }
  return node;
}

namespace {

// Canonical split point: one past the last node that cannot serve as a
// Skeleton node. Keeps the PIA segment as small as possible.
size_t minimal_pia_end(const std::vector<SignedNodePtr>& nodes) {
  size_t end = 0;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i]->cls.skeleton()) end = i + 1;
  return end;
}

void collect_branches(const SignedNodePtr& node,
                      std::vector<SignedNodePtr>& path, const OrderType& eps,
                      std::vector<Branch>& out) {
  if (node->formula->conn == Conn::Prop) {
    const std::string& p = node->formula->name;
    bool critical = eps.is_one(p) == (node->sign == Sign::Plus);
    if (critical) {
      Branch b;
      b.var = p;
      b.leaf_sign = node->sign;
      b.leaf = node;
      b.nodes.assign(path.rbegin(), path.rend());  // leaf upward
      b.pia_end = minimal_pia_end(b.nodes);
      out.push_back(std::move(b));
    }
    return;
  }
  path.push_back(node);
  for (const auto& c : node->children) collect_branches(c, path, eps, out);
  path.pop_back();
}

std::string signed_label(const SignedNodePtr& n) {
  std::string s = n->sign == Sign::Plus ? "+" : "-";
  switch (n->formula->conn) {
    case Conn::And: s += "&"; break;
    case Conn::Or: s += "|"; break;
    case Conn::Neg: s += "~"; break;
    case Conn::Box: s += "box"; break;
    case Conn::Diamond: s += "dia"; break;
    case Conn::Implies: s += "->"; break;
    case Conn::Prop: s += n->formula->name; break;
    case Conn::Top: s += "T"; break;
    case Conn::Bottom: s += "F"; break;
    default: s += "?"; break;
  }
  return s;
}

std::string branch_path_string(const Branch& b) {
  std::ostringstream os;
  os << (b.leaf_sign == Sign::Plus ? "+" : "-") << b.var;
  for (const auto& n : b.nodes) os << " " << signed_label(n);
  return os.str();
}

// Does every leaf of the signed subtree carry the eps-dual-critical sign?
// Top/Bottom leaves agree vacuously.
bool agrees_with_eps_dual(const SignedNodePtr& node, const OrderType& eps) {
  if (node->formula->conn == Conn::Prop) {
    bool dual_one = !eps.is_one(node->formula->name);
    return dual_one == (node->sign == Sign::Plus);
  }
  for (const auto& c : node->children)
    if (!agrees_with_eps_dual(c, eps)) return false;
  return true;
}

struct SrrConstraints {
  bool ok = true;
  std::string diagnostic;
  // (p_k, p_i) pairs: p_k must come strictly before p_i.
  std::set<std::pair<std::string, std::string>> pairs;
};

// Walks the PIA segment of a critical branch and collects the requirements
// of its SRR nodes: the non-branch subtree must agree with the dual order
// type and its variables must precede the branch variable.
void harvest_branch(const Branch& b, const OrderType& eps,
                    SrrConstraints& out) {
  for (size_t i = 0; i < b.pia_end; ++i) {
    const SignedNodePtr& n = b.nodes[i];
    if (!n->cls.srr || n->cls.sra) continue;  // SRA reading preferred
    // The child on the branch is the previous node (or the leaf itself).
    const SignedNode* below = i == 0 ? b.leaf.get() : b.nodes[i - 1].get();
    for (const auto& child : n->children) {
      if (child.get() == below) continue;
      if (!agrees_with_eps_dual(child, eps)) {
        out.ok = false;
        out.diagnostic = "SRR side formula of " + signed_label(n) +
                         " on branch [" + branch_path_string(b) +
                         "] does not agree with the dual order type";
        return;
      }
      for (const auto& q : prop_names(child->formula))
        out.pairs.insert({q, b.var});
    }
  }
}

bool has_cycle(const std::set<std::pair<std::string, std::string>>& edges,
               std::string* witness) {
  std::set<std::string> verts;
  for (const auto& [a, b] : edges) {
    verts.insert(a);
    verts.insert(b);
  }
  std::map<std::string, int> state;  // 0 new, 1 open, 2 done
  std::vector<std::string> order(verts.begin(), verts.end());
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    state[v] = 1;
    for (const auto& [a, b] : edges) {
      if (a != v) continue;
      if (state[b] == 1) {
        if (witness) *witness = a + " < " + b + " closes a cycle";
        return true;
      }
      if (state[b] == 0 && dfs(b)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (const auto& v : order)
    if (state[v] == 0 && dfs(v)) return true;
  return false;
}

std::set<std::pair<std::string, std::string>> transitive_closure(
    std::set<std::pair<std::string, std::string>> edges) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::pair<std::string, std::string>> add;
    for (const auto& [a, b] : edges)
      for (const auto& [c, d] : edges)
        if (b == c && !edges.count({a, d})) add.insert({a, d});
    if (!add.empty()) {
      edges.insert(add.begin(), add.end());
      changed = true;
    }
  }
  return edges;
}

std::vector<Branch> all_critical_branches(const Inequality& ineq,
                                          const OrderType& eps) {
  auto lhs = build_signed_tree(ineq.lhs, Sign::Plus);
  auto rhs = build_signed_tree(ineq.rhs, Sign::Minus);
  std::vector<Branch> out = critical_branches(lhs, eps);
  auto r = critical_branches(rhs, eps);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

std::vector<Branch> critical_branches(const SignedNodePtr& tree,
                                      const OrderType& eps) {
  std::vector<Branch> out;
  std::vector<SignedNodePtr> path;
  collect_branches(tree, path, eps, out);
  return out;
}

BranchQuality branch_quality(const Branch& b) {
  bool sra_only = true;
  for (size_t i = 0; i < b.pia_end; ++i) {
    if (!b.nodes[i]->cls.pia()) return BranchQuality::NotGood;
    if (!b.nodes[i]->cls.sra) sra_only = false;
  }
  // Nodes at or above pia_end are Skeleton-capable by construction.
  return sra_only ? BranchQuality::Excellent : BranchQuality::Good;
}

InductiveCheck check_inductive(const Inequality& ineq,
                               const DependenceOrder& om,
                               const OrderType& eps) {
  InductiveCheck res;
  std::vector<Branch> branches = all_critical_branches(ineq, eps);
  for (const auto& b : branches) {
    if (branch_quality(b) == BranchQuality::NotGood) {
      res.diagnostic = "branch [" + branch_path_string(b) + "] is not good";
      return res;
    }
  }
  SrrConstraints cons;
  for (const auto& b : branches) {
    harvest_branch(b, eps, cons);
    if (!cons.ok) {
      res.diagnostic = cons.diagnostic;
      return res;
    }
  }
  for (const auto& [k, i] : cons.pairs) {
    if (!om.less(k, i)) {
      res.diagnostic = "required constraint " + k + " < " + i +
                       " missing from the dependence order";
      return res;
    }
  }
  res.ok = true;
  return res;
}

Classification classify(const Inequality& ineq) {
  Classification result;
  const std::set<std::string> var_set = prop_names(ineq);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  const size_t n = vars.size();

  auto make_eps = [&](unsigned long code) {
    OrderType eps;
    for (size_t i = 0; i < n; ++i)
      eps.assignment[vars[i]] = ((code >> i) & 1) == 0;  // bit 0 means 1
    return eps;
  };

  auto report_for = [&](const OrderType& eps) {
    std::vector<BranchReport> reports;
    for (const auto& b : all_critical_branches(ineq, eps)) {
      BranchReport r;
      r.var = b.var;
      r.leaf_sign = b.leaf_sign;
      for (const auto& node : b.nodes) r.path.push_back(signed_label(node));
      r.quality = branch_quality(b);
      reports.push_back(std::move(r));
    }
    return reports;
  };

  bool found_inductive = false;
  std::string last_diag = "no order type makes all critical branches good";
  for (unsigned long code = 0; code < (1ul << n); ++code) {
    OrderType eps = make_eps(code);
    std::vector<Branch> branches = all_critical_branches(ineq, eps);
    bool all_good = true, all_excellent = true;
    for (const auto& b : branches) {
      BranchQuality q = branch_quality(b);
      if (q == BranchQuality::NotGood) {
        all_good = false;
        last_diag = "eps " + std::to_string(code) + ": branch [" +
                    branch_path_string(b) + "] is not good";
        break;
      }
      if (q != BranchQuality::Excellent) all_excellent = false;
    }
    if (!all_good) continue;

    SrrConstraints cons;
    for (const auto& b : branches) {
      harvest_branch(b, eps, cons);
      if (!cons.ok) break;
    }
    if (!cons.ok) {
      last_diag = cons.diagnostic;
      continue;
    }
    std::string cycle;
    if (has_cycle(cons.pairs, &cycle)) {
      last_diag = cycle;
      continue;
    }

    if (all_excellent && cons.pairs.empty()) {
      result.verdict = Verdict::Sahlqvist;
      result.eps = eps;
      result.omega.pairs = {};
      result.branches = report_for(eps);
      return result;
    }
    if (!found_inductive) {
      found_inductive = true;
      result.verdict = Verdict::Inductive;
      result.eps = eps;
      result.omega.pairs = transitive_closure(cons.pairs);
      result.branches = report_for(eps);
      // Keep sweeping: a later eps may still witness Sahlqvist.
    }
  }
  if (!found_inductive) {
    result.verdict = Verdict::NotInductive;
    result.diagnostic = last_diag;
  }
  return result;
}

bool is_definite(const Inequality& ineq, const DependenceOrder& om,
                 const OrderType& eps) {
  (void)om;
  for (const auto& b : all_critical_branches(ineq, eps)) {
    for (size_t i = b.pia_end; i < b.nodes.size(); ++i) {
      const NodeClass& c = b.nodes[i]->cls;
      if (c.delta_adjoint && !c.slr) return false;  // bare +Or / -And
    }
  }
  return true;
}

}  // namespace alba
