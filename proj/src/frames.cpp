#include "alba/frames.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alba {

Poset::Poset(int size, const std::vector<std::vector<bool>>& leq) : n_(size) {
  if (size < 1 || size > 16)
    throw std::invalid_argument("poset size must be in [1, 16]");
  full_ = (PointSet(1) << size) - 1;
  below_.assign(n_, 0);
  above_.assign(n_, 0);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (leq[x][y]) {
        above_[x] |= point_bit(y);
        below_[y] |= point_bit(x);
      }
  for (int x = 0; x < n_; ++x)
    if (!leq[x][x]) throw std::invalid_argument("order not reflexive");
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) {
      if (x != y && leq[x][y] && leq[y][x])
        throw std::invalid_argument("order not antisymmetric");
      if (leq[x][y])
        for (int z = 0; z < n_; ++z)
          if (leq[y][z] && !leq[x][z])
            throw std::invalid_argument("order not transitive");
    }
}

PointSet down_closure(const Poset& p, PointSet x) {
  PointSet out = 0;
  for (int w = 0; w < p.size(); ++w)
    if (p.above(w) & x) out |= point_bit(w);
  return out;
}

PointSet closure(const Poset& p, PointSet x) {
  PointSet out = 0;
  for (int w = 0; w < p.size(); ++w)
    if (p.below(w) & x) out |= point_bit(w);
  return out;
}

PointSet interior(const Poset& p, PointSet x) {
  PointSet out = 0;
  for (int w = 0; w < p.size(); ++w)
    if ((p.below(w) & ~x) == 0) out |= point_bit(w);
  return out;
}

PointSet ro_closure(const Poset& p, PointSet x) {
  return interior(p, closure(p, down_closure(p, x)));
}

bool is_regular_open(const Poset& p, PointSet x) {
  return interior(p, closure(p, x)) == x;
}

std::vector<PointSet> regular_open_family(const Poset& p) {
  std::vector<PointSet> out;
  PointSet full = p.universe();
  for (PointSet x = 0;; ++x) {
    if (is_regular_open(p, x)) out.push_back(x);
    if (x == full) break;
  }
  return out;
}

ROAlgebra::ROAlgebra(Poset p) : poset_(std::move(p)) {
  carrier_ = regular_open_family(poset_);
  index_.assign(size_t(poset_.universe()) + 1, -1);
  for (size_t i = 0; i < carrier_.size(); ++i) index_[carrier_[i]] = int(i);
  // Pseudo-atoms: ro of singletons, deduplicated, sorted by mask.
  std::vector<std::pair<PointSet, int>> seen;
  for (int w = 0; w < poset_.size(); ++w) {
    PointSet e = ro_closure(poset_, point_bit(w));
    bool dup = false;
    for (auto& [m, wit] : seen)
      if (m == e) { dup = true; break; }
    if (!dup) seen.push_back({e, w});
  }
  std::sort(seen.begin(), seen.end());
  for (auto& [m, wit] : seen) {
    psat_.push_back(m);
    psat_witness_.push_back(wit);
  }
}

int ROAlgebra::index_of(PointSet x) const {
  int i = (x <= poset_.universe()) ? index_[x] : -1;
  if (i < 0)
    throw std::invalid_argument("set is not in the regular open carrier");
  return i;
}

PointSet ROAlgebra::meet(PointSet a, PointSet b) const { return a & b; }

PointSet ROAlgebra::join(PointSet a, PointSet b) const {
  return interior(poset_, closure(poset_, a | b));
}

PointSet ROAlgebra::complement(PointSet a) const {
  return interior(poset_, poset_.universe() & ~a);
}

PointSet ROAlgebra::ro_implies(PointSet a, PointSet b) const {
  return interior(poset_, (poset_.universe() & ~a) | b);
}

int ROAlgebra::psat_witness(PointSet element) const {
  for (size_t i = 0; i < psat_.size(); ++i)
    if (psat_[i] == element) return psat_witness_[i];
  throw std::invalid_argument("element is not a pseudo-atom");
}

PointSet box_op(const Accessibility& acc, PointSet x, int n) {
  PointSet out = 0;
  for (int w = 0; w < n; ++w)
    if ((acc.succ[w] & ~x) == 0) out |= point_bit(w);
  return out;
}

bool is_full_frame(const Poset& p, const Accessibility& acc) {
  for (PointSet x : regular_open_family(p))
    if (!is_regular_open(p, box_op(acc, x, p.size()))) return false;
  return true;
}

PointSet black_diamond(const ROAlgebra& alg, const Accessibility& acc,
                       PointSet x) {
  return ro_closure(alg.poset(), acc.image(x));
}

PointSet black_box(const ROAlgebra& alg, const Accessibility& acc,
                   PointSet x) {
  return alg.complement(black_diamond(alg, acc, alg.complement(x)));
}

PossibilityFrame::PossibilityFrame(Poset poset, Accessibility acc)
    : poset_(std::move(poset)), acc_(std::move(acc)), algebra_(poset_),
      full_(true) {
  if (!is_full_frame(poset_, acc_))
    throw std::invalid_argument(
        "box does not preserve regular opens; not a full frame");
  admissible_ = algebra_.carrier();
}

PossibilityFrame::PossibilityFrame(Poset poset, Accessibility acc,
                                   std::vector<PointSet> admissible)
    : poset_(std::move(poset)), acc_(std::move(acc)), algebra_(poset_),
      admissible_(std::move(admissible)) {
  std::sort(admissible_.begin(), admissible_.end());
  admissible_.erase(std::unique(admissible_.begin(), admissible_.end()),
                    admissible_.end());
  validate_admissible();
  full_ = admissible_.size() == algebra_.carrier().size();
}

void PossibilityFrame::validate_admissible() const {
  auto member = [&](PointSet x) {
    return std::binary_search(admissible_.begin(), admissible_.end(), x);
  };
  for (PointSet x : admissible_)
    if (!is_regular_open(poset_, x))
      throw std::invalid_argument("admissible set is not regular open");
  if (!member(0) || !member(poset_.universe()))
    throw std::invalid_argument("admissible family must contain bot and top");
  for (PointSet x : admissible_) {
    if (!member(box_op(acc_, x, poset_.size())))
      throw std::invalid_argument("admissible family not closed under box");
    if (!member(algebra_.complement(x)))
      throw std::invalid_argument(
          "admissible family not closed under complement");
    for (PointSet y : admissible_) {
      if (!member(x & y))
        throw std::invalid_argument("admissible family not closed under meet");
      if (!member(algebra_.join(x, y)))
        throw std::invalid_argument("admissible family not closed under join");
    }
  }
}

TightnessReport tightness(const PossibilityFrame& frame) {
  const int n = frame.size();
  const auto& P = frame.admissible();
  TightnessReport rep;

  rep.r_tight = true;
  for (int w = 0; w < n && rep.r_tight; ++w)
    for (int v = 0; v < n && rep.r_tight; ++v) {
      bool premise = true;
      for (PointSet x : P)
        if (contains(frame.box(x), w) && !contains(x, v)) {
          premise = false;
          break;
        }
      if (premise && !frame.acc().rel(w, v)) rep.r_tight = false;
    }

  rep.order_tight = true;
  for (int w = 0; w < n && rep.order_tight; ++w)
    for (int v = 0; v < n && rep.order_tight; ++v) {
      bool premise = true;
      for (PointSet x : P)
        if (contains(x, w) && !contains(x, v)) {
          premise = false;
          break;
        }
      if (premise && !frame.poset().leq(v, w)) rep.order_tight = false;
    }

  rep.filter_descriptive = rep.r_tight && rep.order_tight;
  if (rep.filter_descriptive) {
    // Every proper filter of the finite algebra P is principal, so it is
    // enough to realize each up-set of a nonbottom element as some P(w).
    for (PointSet a : P) {
      if (a == 0) continue;
      bool realized = false;
      for (int w = 0; w < n && !realized; ++w) {
        bool same = true;
        for (PointSet x : P) {
          bool in_filter = (a & ~x) == 0;  // a <= x
          bool in_pw = contains(x, w);
          if (in_filter != in_pw) {
            same = false;
            break;
          }
        }
        realized = same;
      }
      if (!realized) {
        rep.filter_descriptive = false;
        break;
      }
    }
  }
  return rep;
}

std::vector<Poset> enumerate_posets(int n) {
  std::vector<Poset> out;
  if (n < 1) return out;
  // Candidate strict parts over the n*(n-1) off-diagonal cells.
  const int cells = n * (n - 1);
  std::vector<std::pair<int, int>> cell_index;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) cell_index.push_back({x, y});
  for (uint64_t code = 0; code < (uint64_t(1) << cells); ++code) {
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) leq[x][x] = true;
    for (int c = 0; c < cells; ++c)
      if ((code >> c) & 1) leq[cell_index[c].first][cell_index[c].second] = true;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (x != y && leq[x][y] && leq[y][x]) ok = false;
        if (leq[x][y])
          for (int z = 0; z < n; ++z)
            if (leq[y][z] && !leq[x][z]) { ok = false; break; }
      }
    if (ok) out.emplace_back(n, leq);
  }
  return out;
}

void enumerate_full_frames(
    const FrameEnumConfig& cfg,
    const std::function<void(const PossibilityFrame&)>& yield) {
  std::mt19937_64 rng(cfg.seed);
  for (int n = 1; n <= cfg.max_size; ++n) {
    const int bits = n * n;
    const uint64_t total = uint64_t(1) << bits;
    for (const Poset& p : enumerate_posets(n)) {
      auto try_code = [&](uint64_t code) {
        Accessibility acc;
        acc.succ.assign(n, 0);
        for (int w = 0; w < n; ++w)
          acc.succ[w] = PointSet((code >> (w * n)) & ((uint64_t(1) << n) - 1));
        if (!is_full_frame(p, acc)) return;
        yield(PossibilityFrame(p, acc));
      };
      if (cfg.acc_budget == 0 || total <= cfg.acc_budget) {
        for (uint64_t code = 0; code < total; ++code) try_code(code);
      } else {
        std::set<uint64_t> drawn;
        while (drawn.size() < cfg.acc_budget)
          drawn.insert(rng() & (total - 1));
        for (uint64_t code : drawn) try_code(code);
      }
    }
  }
}

std::vector<PossibilityFrame> collect_full_frames(const FrameEnumConfig& cfg) {
  std::vector<PossibilityFrame> out;
  enumerate_full_frames(cfg,
                        [&](const PossibilityFrame& f) { out.push_back(f); });
  return out;
}

namespace {

std::string mask_bits(PointSet x, int n) {
  std::string s;
  for (int w = 0; w < n; ++w) s += contains(x, w) ? '1' : '0';
  return s;
}

}  // namespace

std::string dump_frame(const PossibilityFrame& frame) {
  const int n = frame.size();
  std::ostringstream os;
  os << "n " << n << "\n";
  os << "leq";
  for (int x = 0; x < n; ++x) {
    std::string row;
    for (int y = 0; y < n; ++y)
      row += frame.poset().leq(x, y) ? '1' : '0';
    os << ' ' << row;
  }
  os << "\nacc";
  for (int w = 0; w < n; ++w) os << ' ' << mask_bits(frame.acc().succ[w], n);
  os << "\nro";
  for (PointSet x : frame.algebra().carrier()) os << ' ' << mask_bits(x, n);
  os << "\n";
  return os.str();
}

}  // namespace alba
