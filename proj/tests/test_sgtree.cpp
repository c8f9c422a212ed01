#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alba/formula.hpp"
#include "alba/sgtree.hpp"

using namespace alba;

namespace {

OrderType eps_of(std::initializer_list<std::pair<const char*, bool>> xs) {
  OrderType eps;
  for (auto& [k, v] : xs) eps.assignment[k] = v;
  return eps;
}

}  // namespace

TEST_CASE("table 1 memberships are total and frozen") {
  // Every signed connective maps to exactly the memberships of the table:
  // Delta-adjoints +or +and / -and -or; SRA +and +box +neg / -or -dia -neg;
  // SLR +and +dia +neg / -or -box -neg -impl; SRR +or +impl / -and.
  struct Row { Sign s; Conn c; bool d, sra, slr, srr; };
  const Row rows[] = {
      {Sign::Plus, Conn::And, true, true, true, false},
      {Sign::Minus, Conn::And, true, false, false, true},
      {Sign::Plus, Conn::Or, true, false, false, true},
      {Sign::Minus, Conn::Or, true, true, true, false},
      {Sign::Plus, Conn::Neg, false, true, true, false},
      {Sign::Minus, Conn::Neg, false, true, true, false},
      {Sign::Plus, Conn::Box, false, true, false, false},
      {Sign::Minus, Conn::Box, false, false, true, false},
      {Sign::Plus, Conn::Diamond, false, false, true, false},
      {Sign::Minus, Conn::Diamond, false, true, false, false},
      {Sign::Plus, Conn::Implies, false, false, false, true},
      {Sign::Minus, Conn::Implies, false, false, true, false},
  };
  for (const Row& r : rows) {
    NodeClass c = node_class(r.s, r.c);
    CAPTURE(int(r.c));
    CHECK(c.delta_adjoint == r.d);
    CHECK(c.sra == r.sra);
    CHECK(c.slr == r.slr);
    CHECK(c.srr == r.srr);
  }
  // Leaves carry the empty class.
  for (Conn c : {Conn::Top, Conn::Bottom, Conn::Prop}) {
    NodeClass nc = node_class(Sign::Plus, c);
    CHECK_FALSE(nc.skeleton());
    CHECK_FALSE(nc.pia());
  }
}

TEST_CASE("signed tree construction") {
  // (box p, +): root +box (SRA), child +p
  auto t = build_signed_tree(parse_formula("box p"), Sign::Plus);
  CHECK(t->sign == Sign::Plus);
  CHECK(t->cls.sra);
  CHECK_FALSE(t->cls.slr);
  CHECK(t->children[0]->sign == Sign::Plus);

  // (box dia p, -): -box (SLR), -dia (SRA), -p
  auto u = build_signed_tree(parse_formula("box dia p"), Sign::Minus);
  CHECK(u->cls.slr);
  CHECK_FALSE(u->cls.sra);
  CHECK(u->children[0]->cls.sra);
  CHECK(u->children[0]->children[0]->sign == Sign::Minus);

  // (p -> q, +): +impl (SRR), children -p, +q
  auto v = build_signed_tree(parse_formula("p -> q"), Sign::Plus);
  CHECK(v->cls.srr);
  CHECK(v->children[0]->sign == Sign::Minus);
  CHECK(v->children[1]->sign == Sign::Plus);

  CHECK_THROWS_AS(build_signed_tree(parse_formula("bdia p"), Sign::Plus),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_signed_tree(parse_formula("i"), Sign::Plus),
                  std::invalid_argument);
}

TEST_CASE("critical branches") {
  auto t = build_signed_tree(parse_formula("box p"), Sign::Plus);
  auto b1 = critical_branches(t, eps_of({{"p", true}}));
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].var == "p");
  CHECK(b1[0].nodes.size() == 1);

  auto b2 = critical_branches(t, eps_of({{"p", false}}));
  CHECK(b2.empty());

  // -dia box p side of McKinsey with eps(p)=d: one branch -p, -box, -dia
  auto u = build_signed_tree(parse_formula("dia box p"), Sign::Minus);
  auto b3 = critical_branches(u, eps_of({{"p", false}}));
  REQUIRE(b3.size() == 1);
  CHECK(b3[0].leaf_sign == Sign::Minus);
  REQUIRE(b3[0].nodes.size() == 2);
  CHECK(b3[0].nodes[0]->formula->conn == Conn::Box);
  CHECK(b3[0].nodes[1]->formula->conn == Conn::Diamond);
}

TEST_CASE("branch quality") {
  // [+p, +box] from +box p: excellent (P1 = [+box] all SRA)
  auto t = build_signed_tree(parse_formula("box p"), Sign::Plus);
  auto b = critical_branches(t, eps_of({{"p", true}}));
  CHECK(branch_quality(b[0]) == BranchQuality::Excellent);

  // [+p, +dia, +box] from +box dia p: not good
  auto u = build_signed_tree(parse_formula("box dia p"), Sign::Plus);
  auto bu = critical_branches(u, eps_of({{"p", true}}));
  REQUIRE(bu.size() == 1);
  CHECK(branch_quality(bu[0]) == BranchQuality::NotGood);

  // [+p, +and, +dia] from +dia (p & q): both readings collapse to
  // excellent under the canonical split
  auto v = build_signed_tree(parse_formula("dia (p & q)"), Sign::Plus);
  auto bv = critical_branches(v, eps_of({{"p", true}, {"q", false}}));
  REQUIRE(bv.size() == 1);
  CHECK(branch_quality(bv[0]) == BranchQuality::Excellent);
}

TEST_CASE("check_inductive on spec examples") {
  DependenceOrder empty;
  CHECK(check_inductive(parse_inequality("box p <= p"), empty,
                        eps_of({{"p", true}}))
            .ok);
  CHECK(check_inductive(parse_inequality("box p <= box box p"), empty,
                        eps_of({{"p", true}}))
            .ok);

  // McKinsey fails for both order types and any dependence order
  for (bool e : {true, false}) {
    auto r = check_inductive(parse_inequality("box dia p <= dia box p"),
                             empty, eps_of({{"p", e}}));
    CHECK_FALSE(r.ok);
    CHECK(!r.diagnostic.empty());
  }
}

TEST_CASE("srr side conditions harvest omega") {
  // box (p | q) <= dia p is (Omega, eps)-inductive with eps=(1,d), q < p.
  Inequality iq = parse_inequality("box (p | q) <= dia p");
  OrderType eps = eps_of({{"p", true}, {"q", false}});
  DependenceOrder with, without;
  with.pairs.insert({"q", "p"});
  CHECK(check_inductive(iq, with, eps).ok);
  CHECK_FALSE(check_inductive(iq, without, eps).ok);
  // flipping the side variable's order type breaks condition (a)
  CHECK_FALSE(
      check_inductive(iq, with, eps_of({{"p", true}, {"q", true}})).ok);
}

TEST_CASE("classify spec examples") {
  auto c1 = classify(parse_inequality("box p <= p"));
  CHECK(c1.verdict == Verdict::Sahlqvist);
  CHECK(c1.eps.is_one("p"));

  auto c2 = classify(parse_inequality("box dia p <= dia box p"));
  CHECK(c2.verdict == Verdict::NotInductive);

  auto c3 = classify(parse_inequality("p <= box dia p"));
  CHECK(c3.verdict == Verdict::Sahlqvist);
  CHECK(c3.eps.is_one("p"));

  // K is Sahlqvist for eps=(p:1, q:d)
  auto c4 = classify(parse_inequality("box (p -> q) <= box p -> box q"));
  CHECK(c4.verdict == Verdict::Sahlqvist);

  // Goedel-Loeb is not inductive
  auto c5 = classify(parse_inequality("box (box p -> p) <= box p"));
  CHECK(c5.verdict == Verdict::NotInductive);
}

TEST_CASE("sahlqvist witness passes check_inductive") {
  const char* corpus[] = {
      "box p <= p", "p <= box dia p", "box p <= box box p",
      "dia box p <= box dia p", "box (p -> q) <= box p -> box q",
      "box (p | q) <= dia p",
  };
  for (const char* text : corpus) {
    Classification c = classify(parse_inequality(text));
    if (c.verdict == Verdict::NotInductive) continue;
    CHECK(check_inductive(parse_inequality(text), c.omega, c.eps).ok);
  }
}

TEST_CASE("classify is invariant under variable renaming") {
  auto a = classify(parse_inequality("box (p | q) <= dia p"));
  auto b = classify(parse_inequality("box (s | t) <= dia s"));
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("is_definite") {
  DependenceOrder empty;
  CHECK(is_definite(parse_inequality("box p <= p"), empty,
                    eps_of({{"p", true}})));
  // +or in the skeleton segment of the critical branch: not definite
  Inequality iq = parse_inequality("dia (p | q) <= r");
  OrderType eps = eps_of({{"p", true}, {"q", false}, {"r", false}});
  CHECK_FALSE(is_definite(iq, empty, eps));
  // +or absorbed into the PIA segment below +box stays definite
  Inequality iq2 = parse_inequality("box (p | q) <= dia p");
  DependenceOrder om;
  om.pairs.insert({"q", "p"});
  CHECK(is_definite(iq2, om, eps_of({{"p", true}, {"q", false}})));
}
