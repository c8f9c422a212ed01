#ifndef ALBA_SGTREE_HPP
#define ALBA_SGTREE_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "alba/formula.hpp"

namespace alba {

enum class Sign { Plus, Minus };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

// Row of the Skeleton/PIA table for one signed connective. Several signed
// labels live in more than one box (e.g. +And is a Delta-adjoint, SRA and
// SLR at once), so membership is kept as four independent bits.
struct NodeClass {
  bool delta_adjoint = false;
  bool sra = false;
  bool slr = false;
  bool srr = false;

  bool skeleton() const { return delta_adjoint || slr; }
  bool pia() const { return sra || srr; }
};

// Total on the eight basic connectives for both signs. Leaves (props,
// top, bottom) get the empty class.
NodeClass node_class(Sign sign, Conn conn);
std::string node_class_name(const NodeClass& c);

struct SignedNode;
using SignedNodePtr = std::shared_ptr<const SignedNode>;

struct SignedNode {
  Sign sign;
  FormulaPtr formula;  // subformula rooted here
  NodeClass cls;
  std::vector<SignedNodePtr> children;
};

// Signed generation tree of a basic-language formula. Box, Diamond, And,
// Or propagate the sign; Neg flips it; Implies flips the first child only.
// Throws std::invalid_argument on nominals or black connectives.
SignedNodePtr build_signed_tree(const FormulaPtr& phi, Sign sign);

// Order-type: prop -> 1 or d (the dual). Stored as a map to bool,
// true meaning order-type 1.
struct OrderType {
  std::map<std::string, bool> assignment;

  bool is_one(const std::string& p) const { return assignment.at(p); }
};

// Strict partial order p_k < p_i on prop variables.
struct DependenceOrder {
  std::set<std::pair<std::string, std::string>> pairs;

  bool less(const std::string& a, const std::string& b) const {
    return pairs.count({a, b}) > 0;
  }
};

// One leaf-to-root path. nodes[0] is the parent of the leaf, nodes.back()
// the root; the variable leaf itself is kept separately.
struct Branch {
  std::string var;
  Sign leaf_sign;
  SignedNodePtr leaf;
  std::vector<SignedNodePtr> nodes;
  // Index of the first node of the Skeleton segment under the canonical
  // minimal-PIA split: everything below pia_end must be PIA, everything
  // from pia_end on is Skeleton-capable.
  size_t pia_end = 0;
};

enum class BranchQuality { Excellent, Good, NotGood };

// All branches from eps-critical leaves (+p with eps(p)=1, -p with
// eps(p)=d) in the given signed tree.
std::vector<Branch> critical_branches(const SignedNodePtr& tree,
                                      const OrderType& eps);

BranchQuality branch_quality(const Branch& branch);

struct InductiveCheck {
  bool ok = false;
  std::string diagnostic;  // first failing branch / constraint on failure
};

// Definition check for a fixed (Omega, eps): every critical branch in
// +lhs and -rhs is good, and every SRR node on a critical branch has its
// side subtree agreeing with eps-dual and Omega-below the branch variable.
InductiveCheck check_inductive(const Inequality& ineq,
                               const DependenceOrder& om, const OrderType& eps);

enum class Verdict { Sahlqvist, Inductive, NotInductive };

struct BranchReport {
  std::string var;
  Sign leaf_sign;
  std::vector<std::string> path;  // signed labels, leaf upward
  BranchQuality quality = BranchQuality::NotGood;
};

struct Classification {
  Verdict verdict = Verdict::NotInductive;
  OrderType eps;          // witness (valid when verdict != NotInductive)
  DependenceOrder omega;  // harvested constraints, transitively closed
  std::vector<BranchReport> branches;  // for the witness eps (or last tried)
  std::string diagnostic;
};

// Sweeps all 2^n order-types (all-1 first), harvesting the SRR-induced
// variable constraints; inductive iff some eps makes all critical
// branches good with an acyclic constraint set, Sahlqvist iff some eps
// makes them all excellent.
Classification classify(const Inequality& ineq);

// True iff, under the canonical split, no Skeleton node on a critical
// branch is a bare Delta-adjoint (+Or / -And); such inequalities can be
// stripped by approximation rules alone.
bool is_definite(const Inequality& ineq, const DependenceOrder& om,
                 const OrderType& eps);

}  // namespace alba

#endif
