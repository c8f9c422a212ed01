#ifndef ALBA_FRAMES_HPP
#define ALBA_FRAMES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace alba {

// A set of points as a bitmask; bit w is point w.
using PointSet = uint32_t;

inline PointSet point_bit(int w) { return PointSet(1) << w; }
inline bool contains(PointSet x, int w) { return (x >> w) & 1; }

// Finite partial order (W, <=). below[x] = {y : y <= x} are the
// refinements of x, above[x] = {y : x <= y}. Construction checks
// reflexivity, antisymmetry and transitivity.
class Poset {
public:
  // leq[x][y] true iff x <= y.
  Poset(int size, const std::vector<std::vector<bool>>& leq);

  int size() const { return n_; }
  PointSet universe() const { return full_; }
  bool leq(int x, int y) const { return contains(above_[x], y); }
  PointSet below(int x) const { return below_[x]; }
  PointSet above(int x) const { return above_[x]; }

private:
  int n_;
  PointSet full_;
  std::vector<PointSet> below_;
  std::vector<PointSet> above_;
};

// Smallest down-set containing X.
PointSet down_closure(const Poset& p, PointSet x);
// cl(X) = {x : some y <= x lies in X}, int(X) = {x : all y <= x lie in X}.
PointSet closure(const Poset& p, PointSet x);
PointSet interior(const Poset& p, PointSet x);
// Least regular open superset of X, computed as int(cl(down(X))).
PointSet ro_closure(const Poset& p, PointSet x);

bool is_regular_open(const Poset& p, PointSet x);

// All regular open subsets, as masks in increasing order.
std::vector<PointSet> regular_open_family(const Poset& p);

// The Boolean algebra of regular opens of a poset, with its operations
// and, when an accessibility relation is attached, the box operator and
// its left adjoint. Elements are indexed by position in the carrier.
class ROAlgebra {
public:
  explicit ROAlgebra(Poset p);

  const Poset& poset() const { return poset_; }
  const std::vector<PointSet>& carrier() const { return carrier_; }
  int size() const { return static_cast<int>(carrier_.size()); }

  // Index of a carrier element; throws if the mask is not regular open.
  int index_of(PointSet x) const;
  PointSet element(int i) const { return carrier_[i]; }

  PointSet bot() const { return 0; }
  PointSet top() const { return poset_.universe(); }

  PointSet meet(PointSet a, PointSet b) const;
  PointSet join(PointSet a, PointSet b) const;        // int(cl(union))
  PointSet complement(PointSet a) const;              // int(W \ a)
  PointSet ro_implies(PointSet a, PointSet b) const;  // int((W \ a) u b)
  bool leq(PointSet a, PointSet b) const { return (a & ~b) == 0; }

  // Pseudo-atoms ro({w}), deduplicated, mask order; witness(i) is the
  // first point whose singleton closes to psat(i).
  const std::vector<PointSet>& psat() const { return psat_; }
  int psat_witness(PointSet element) const;

private:
  Poset poset_;
  std::vector<PointSet> carrier_;
  std::vector<int> index_;  // by mask
  std::vector<PointSet> psat_;
  std::vector<int> psat_witness_;
};

// Accessibility relation as successor masks: succ[w] = R[w].
struct Accessibility {
  std::vector<PointSet> succ;

  bool rel(int w, int v) const { return contains(succ[w], v); }
  PointSet image(PointSet x) const {
    PointSet out = 0;
    for (size_t w = 0; w < succ.size(); ++w)
      if (contains(x, static_cast<int>(w))) out |= succ[w];
    return out;
  }
};

// box(X) = {w : R[w] included in X}, on arbitrary subsets.
PointSet box_op(const Accessibility& acc, PointSet x, int n);

// True iff box maps every regular open set to a regular open set; then
// (W, <=, R, RO) is a well-defined full possibility frame.
bool is_full_frame(const Poset& p, const Accessibility& acc);

// bdia(X) = ro(R[X]) and bbox = -bdia- inside the regular open algebra.
PointSet black_diamond(const ROAlgebra& alg, const Accessibility& acc,
                       PointSet x);
PointSet black_box(const ROAlgebra& alg, const Accessibility& acc, PointSet x);

// PossibilityFrame owns its poset and algebra. `admissible` is the family
// P; for full frames it equals the RO carrier. Construction validates the
// admissible-family closure conditions.
class PossibilityFrame {
public:
  // Full frame: P = RO. Requires is_full_frame.
  PossibilityFrame(Poset poset, Accessibility acc);
  // General frame with an explicit admissible family.
  PossibilityFrame(Poset poset, Accessibility acc,
                   std::vector<PointSet> admissible);

  const Poset& poset() const { return poset_; }
  const ROAlgebra& algebra() const { return algebra_; }
  const Accessibility& acc() const { return acc_; }
  const std::vector<PointSet>& admissible() const { return admissible_; }
  bool full() const { return full_; }
  int size() const { return poset_.size(); }

  PointSet box(PointSet x) const {
    return box_op(acc_, x, poset_.size());
  }
  PointSet diamond(PointSet x) const {  // -box- in RO
    return algebra_.complement(box(algebra_.complement(x)));
  }
  PointSet bdia(PointSet x) const { return black_diamond(algebra_, acc_, x); }
  PointSet bbox(PointSet x) const { return black_box(algebra_, acc_, x); }

private:
  void validate_admissible() const;

  Poset poset_;
  Accessibility acc_;
  ROAlgebra algebra_;
  std::vector<PointSet> admissible_;
  bool full_;
};

struct TightnessReport {
  bool r_tight = false;
  bool order_tight = false;
  bool filter_descriptive = false;
};

TightnessReport tightness(const PossibilityFrame& frame);

// All labeled posets on exactly n points.
std::vector<Poset> enumerate_posets(int n);

struct FrameEnumConfig {
  int max_size = 3;
  // Number of accessibility relations sampled per poset when 2^(n*n)
  // exceeds the budget; 0 means always exhaustive.
  uint64_t acc_budget = 0;
  uint64_t seed = 0;
};

// Streams every full possibility frame over labeled posets of size
// 1..max_size. Accessibility relations are exhaustive while 2^(n*n) fits
// the budget, else sampled uniformly (without replacement) with the
// seeded generator. Only frames passing is_full_frame are yielded.
void enumerate_full_frames(const FrameEnumConfig& cfg,
                           const std::function<void(const PossibilityFrame&)>& yield);

std::vector<PossibilityFrame> collect_full_frames(const FrameEnumConfig& cfg);

// Line-oriented dump: adjacency matrices as 0/1 rows, carrier bitsets.
std::string dump_frame(const PossibilityFrame& frame);

}  // namespace alba

#endif
