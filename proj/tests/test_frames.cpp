#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "alba/frames.hpp"

using namespace alba;

namespace {

// fork: r=0, a=1, b=2 with a <= r and b <= r
Poset fork_poset() {
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
  for (int i = 0; i < 3; ++i) leq[i][i] = true;
  leq[1][0] = true;
  leq[2][0] = true;
  return Poset(3, leq);
}

// 2-chain: w1 <= w0 (w0=0, w1=1)
Poset chain2() {
  std::vector<std::vector<bool>> leq(2, std::vector<bool>(2, false));
  leq[0][0] = leq[1][1] = true;
  leq[1][0] = true;
  return Poset(2, leq);
}

Poset antichain2() {
  std::vector<std::vector<bool>> leq(2, std::vector<bool>(2, false));
  leq[0][0] = leq[1][1] = true;
  return Poset(2, leq);
}

Accessibility identity_acc(int n) {
  Accessibility acc;
  for (int i = 0; i < n; ++i) acc.succ.push_back(point_bit(i));
  return acc;
}

Accessibility empty_acc(int n) {
  Accessibility acc;
  acc.succ.assign(n, 0);
  return acc;
}

constexpr PointSet R = 1, A = 2, B = 4;  // fork points as masks

// Independent brute-force regular-open oracle used to freeze expected
// carriers.
std::vector<PointSet> ro_brute(const Poset& p) {
  std::vector<PointSet> out;
  for (PointSet x = 0; x <= p.universe(); ++x)
    if (interior(p, closure(p, x)) == x) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("poset construction validates axioms") {
  std::vector<std::vector<bool>> bad(2, std::vector<bool>(2, false));
  bad[0][0] = true;  // missing reflexivity at 1
  CHECK_THROWS_AS(Poset(2, bad), std::invalid_argument);

  std::vector<std::vector<bool>> sym(2, std::vector<bool>(2, true));
  CHECK_THROWS_AS(Poset(2, sym), std::invalid_argument);  // antisymmetry

  std::vector<std::vector<bool>> ntr(3, std::vector<bool>(3, false));
  ntr[0][0] = ntr[1][1] = ntr[2][2] = true;
  ntr[0][1] = ntr[1][2] = true;  // 0<=1<=2 but not 0<=2
  CHECK_THROWS_AS(Poset(3, ntr), std::invalid_argument);
}

TEST_CASE("down closure on the fork") {
  Poset p = fork_poset();
  CHECK(down_closure(p, R) == (R | A | B));
  CHECK(down_closure(p, 0) == 0);
  CHECK(down_closure(p, A) == A);
}

TEST_CASE("closure and interior on the 2-chain") {
  Poset p = chain2();
  // cl({w1}) = {w0, w1}: w1 <= w0 puts w0 in
  CHECK(closure(p, point_bit(1)) == 3u);
  CHECK(interior(p, 3u) == 3u);
  // int({w0}) = {} since w1 <= w0 and w1 is outside
  CHECK(interior(p, point_bit(0)) == 0u);
}

TEST_CASE("ro closure") {
  Poset p = fork_poset();
  CHECK(ro_closure(p, R) == p.universe());
  CHECK(ro_closure(p, A) == A);
  CHECK(ro_closure(p, 0) == 0);
}

TEST_CASE("regular open families match the brute-force oracle") {
  CHECK(regular_open_family(chain2()) == std::vector<PointSet>{0, 3});
  CHECK(regular_open_family(antichain2()) ==
        std::vector<PointSet>{0, 1, 2, 3});
  CHECK(regular_open_family(fork_poset()) == std::vector<PointSet>{0, A, B, 7});
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n))
      CHECK(regular_open_family(p) == ro_brute(p));
}

TEST_CASE("ro algebra operations on the fork") {
  ROAlgebra alg(fork_poset());
  CHECK(alg.join(A, B) == alg.top());
  CHECK(alg.complement(A) == B);
  for (PointSet x : alg.carrier()) CHECK(alg.meet(x, alg.top()) == x);
  CHECK_THROWS_AS(alg.index_of(R), std::invalid_argument);  // {r} is not RO
}

TEST_CASE("box and fullness") {
  Poset p = fork_poset();
  CHECK(is_full_frame(p, identity_acc(3)));
  CHECK(is_full_frame(p, empty_acc(3)));

  Accessibility ab = empty_acc(3);
  ab.succ[1] = B;  // a R b only
  CHECK(box_op(ab, A, 3) == (R | B));  // {b, r}, not a down-set
  CHECK_FALSE(is_full_frame(p, ab));

  // empty relation: box X = W for every X
  CHECK(box_op(empty_acc(3), 0, 3) == p.universe());
}

TEST_CASE("black diamond on the fork") {
  Poset p = fork_poset();
  ROAlgebra alg(p);
  CHECK(black_diamond(alg, identity_acc(3), A) == A);
  CHECK(black_diamond(alg, empty_acc(3), A) == 0u);
  Accessibility total;
  total.succ.assign(3, p.universe());
  CHECK(black_diamond(alg, total, A) == p.universe());
}

TEST_CASE("pseudo-atoms") {
  ROAlgebra f(fork_poset());
  CHECK(f.psat() == std::vector<PointSet>{A, B, 7});
  CHECK(f.psat_witness(7) == 0);  // ro({r}) = W

  ROAlgebra c(chain2());
  CHECK(c.psat() == std::vector<PointSet>{3});

  ROAlgebra a(antichain2());
  CHECK(a.psat() == std::vector<PointSet>{1, 2});
}

TEST_CASE("psat elements join-generate every carrier element") {
  for (int n = 1; n <= 4; ++n) {
    for (const Poset& p : enumerate_posets(n)) {
      ROAlgebra alg(p);
      for (PointSet a : alg.carrier()) {
        PointSet acc = 0;
        for (PointSet y : alg.psat())
          if ((y & ~a) == 0) acc = alg.join(acc, y);
        CHECK(acc == a);
      }
    }
  }
}

TEST_CASE("embedding preserves meets and ro is its left adjoint") {
  for (int n = 1; n <= 4; ++n) {
    for (const Poset& p : enumerate_posets(n)) {
      ROAlgebra alg(p);
      // arbitrary intersections of regular opens are regular open
      const auto& carrier = alg.carrier();
      if (carrier.size() <= 12) {
        for (uint32_t sel = 0; sel < (1u << carrier.size()); ++sel) {
          PointSet meet = p.universe();
          for (size_t i = 0; i < carrier.size(); ++i)
            if ((sel >> i) & 1) meet &= carrier[i];
          CHECK(is_regular_open(p, meet));
        }
      }
      // adjunction: ro(X) <= Y iff X <= Y for regular open Y
      for (PointSet x = 0; x <= p.universe(); ++x)
        for (PointSet y : carrier) {
          bool left = (ro_closure(p, x) & ~y) == 0;
          bool right = (x & ~y) == 0;
          CHECK(left == right);
        }
    }
  }
}

TEST_CASE("residuation and box laws on full frames") {
  FrameEnumConfig cfg;
  cfg.max_size = 3;
  for (const auto& f : collect_full_frames(cfg)) {
    const ROAlgebra& alg = f.algebra();
    CHECK(f.box(alg.top()) == alg.top());
    for (PointSet x : alg.carrier()) {
      for (PointSet y : alg.carrier()) {
        CHECK(f.box(alg.meet(x, y)) == alg.meet(f.box(x), f.box(y)));
        // bdia -| box
        bool left = (f.bdia(x) & ~y) == 0;
        bool right = (x & ~f.box(y)) == 0;
        CHECK(left == right);
        // dia -| bbox
        bool l2 = (f.diamond(x) & ~y) == 0;
        bool r2 = (x & ~f.bbox(y)) == 0;
        CHECK(l2 == r2);
      }
    }
  }
}

TEST_CASE("every regular open set is a down-set") {
  for (int n = 1; n <= 4; ++n)
    for (const Poset& p : enumerate_posets(n))
      for (PointSet x : regular_open_family(p))
        CHECK(down_closure(p, x) == x);
}

TEST_CASE("boolean algebra laws for the ro algebra") {
  for (int n = 1; n <= 4; ++n) {
    for (const Poset& p : enumerate_posets(n)) {
      ROAlgebra alg(p);
      for (PointSet x : alg.carrier()) {
        CHECK(alg.join(x, alg.complement(x)) == alg.top());
        CHECK(alg.meet(x, alg.complement(x)) == alg.bot());
        CHECK(alg.complement(alg.complement(x)) == x);
        for (PointSet y : alg.carrier()) {
          CHECK(alg.join(x, y) == alg.join(y, x));
          CHECK(alg.meet(x, alg.join(x, y)) == x);  // absorption
          CHECK(alg.join(x, alg.meet(x, y)) == x);
          CHECK(alg.ro_implies(x, y) ==
                alg.join(alg.complement(x), y));
          for (PointSet z : alg.carrier()) {
            CHECK(alg.meet(x, alg.join(y, z)) ==
                  alg.join(alg.meet(x, y), alg.meet(x, z)));
          }
        }
      }
    }
  }
}

TEST_CASE("poset and frame enumeration counts") {
  CHECK(enumerate_posets(1).size() == 1);
  CHECK(enumerate_posets(2).size() == 3);
  CHECK(enumerate_posets(3).size() == 19);
  CHECK(enumerate_posets(4).size() == 219);

  FrameEnumConfig cfg;
  cfg.max_size = 1;
  CHECK(collect_full_frames(cfg).size() == 2);

  cfg.max_size = 2;
  auto frames = collect_full_frames(cfg);
  for (const auto& f : frames) {
    CHECK(is_full_frame(f.poset(), f.acc()));
    CHECK(f.full());
  }
}

TEST_CASE("sampled enumeration is deterministic under a seed") {
  FrameEnumConfig cfg;
  cfg.max_size = 3;
  cfg.acc_budget = 16;
  cfg.seed = 42;
  auto a = collect_full_frames(cfg);
  auto b = collect_full_frames(cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(dump_frame(a[i]) == dump_frame(b[i]));
}

TEST_CASE("tightness examples") {
  // full 2-chain is not order-tight
  PossibilityFrame chain(chain2(), empty_acc(2));
  CHECK_FALSE(tightness(chain).order_tight);
  CHECK_FALSE(tightness(chain).filter_descriptive);

  // fork with identity accessibility is order-tight
  PossibilityFrame f(fork_poset(), identity_acc(3));
  CHECK(tightness(f).order_tight);
}

TEST_CASE("admissible family validation") {
  // P = {0, W} is a legitimate general frame over the fork
  PossibilityFrame f(fork_poset(), identity_acc(3),
                     std::vector<PointSet>{0, 7});
  CHECK_FALSE(f.full());
  // a family missing complements is rejected
  CHECK_THROWS_AS(PossibilityFrame(fork_poset(), identity_acc(3),
                                   std::vector<PointSet>{0, A, 7}),
                  std::invalid_argument);
  // a family with a non-regular-open member is rejected
  CHECK_THROWS_AS(PossibilityFrame(fork_poset(), identity_acc(3),
                                   std::vector<PointSet>{0, R, 7}),
                  std::invalid_argument);
}
