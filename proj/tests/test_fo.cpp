#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <doctest.h>

#include <random>

#include "alba/checker.hpp"
#include "alba/fo.hpp"
#include "alba/formula.hpp"
#include "alba/frames.hpp"

using namespace alba;

namespace {

FormulaPtr random_lplus(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 11);
  std::uniform_int_distribution<int> var(0, 1);
  const char* props[2] = {"p", "q"};
  const char* noms[2] = {"i", "j"};
  if (depth == 0) {
    switch (pick(rng) % 4) {
      case 0: return prop(props[var(rng)]);
      case 1: return top();
      case 2: return bottom();
      default: return nominal(noms[var(rng)]);
    }
  }
  switch (pick(rng)) {
    case 0: return prop(props[var(rng)]);
    case 1: return nominal(noms[var(rng)]);
    case 2: return neg(random_lplus(rng, depth - 1));
    case 3:
      return land(random_lplus(rng, depth - 1), random_lplus(rng, depth - 1));
    case 4:
      return lor(random_lplus(rng, depth - 1), random_lplus(rng, depth - 1));
    case 5:
      return implies(random_lplus(rng, depth - 1),
                     random_lplus(rng, depth - 1));
    case 6: return box(random_lplus(rng, depth - 1));
    case 7: return dia(random_lplus(rng, depth - 1));
    case 8: return bdia(random_lplus(rng, depth - 1));
    case 9: return bbox(random_lplus(rng, depth - 1));
    case 10: return top();
    default: return bottom();
  }
}

// Assignment with FO-side bindings: predicate sets plus one witness point
// per nominal.
struct Scene {
  Assignment asg;
  std::map<std::string, PointSet> preds;
  std::map<std::string, int> consts;
};

Scene random_scene(const PossibilityFrame& f, std::mt19937_64& rng) {
  const auto& carrier = f.algebra().carrier();
  const auto& psat = f.algebra().psat();
  std::uniform_int_distribution<size_t> cpick(0, carrier.size() - 1);
  std::uniform_int_distribution<size_t> npick(0, psat.size() - 1);
  Scene s;
  for (const char* p : {"p", "q"}) {
    s.asg.props[p] = carrier[cpick(rng)];
    s.preds[p] = s.asg.props[p];
  }
  for (const char* n : {"i", "j"}) {
    PointSet e = psat[npick(rng)];
    s.asg.noms[n] = e;
    s.consts[n] = f.algebra().psat_witness(e);
  }
  return s;
}

}  // namespace

TEST_CASE("ro_x block shape") {
  VarGen gen;
  FOPtr block = ro_x(fo_eq(fovar("x"), foconst("i")), "x", gen);
  // forall y (y <= x -> exists z (z <= y and exists z' (z <= z' and z' = i)))
  FOPtr golden = fo_forall(
      "a",
      fo_implies(
          fo_leq(fovar("a"), fovar("x")),
          fo_exists(
              "b",
              fo_and(fo_leq(fovar("b"), fovar("a")),
                     fo_exists("c", fo_and(fo_leq(fovar("b"), fovar("c")),
                                           fo_eq(fovar("c"),
                                                 foconst("i"))))))));
  CHECK(alpha_equivalent(block, golden));
}

TEST_CASE("st clause shapes") {
  CHECK(alpha_equivalent(st(prop("p"), "x"), fo_pred("p", fovar("x"))));

  FOPtr neg_golden = fo_forall(
      "y", fo_implies(fo_leq(fovar("y"), fovar("x")),
                      fo_not(fo_pred("p", fovar("y")))));
  CHECK(alpha_equivalent(st(neg(prop("p")), "x"), neg_golden));

  FOPtr box_golden = fo_forall(
      "y", fo_implies(fo_rel(fovar("x"), fovar("y")),
                      fo_pred("p", fovar("y"))));
  CHECK(alpha_equivalent(st(box(prop("p")), "x"), box_golden));

  // bdia i: RO_x(exists y (R y x and ST_y(i)))
  VarGen gen;
  FOPtr inner = fo_exists(
      "y", fo_and(fo_rel(fovar("y"), fovar("x")),
                  ro_x(fo_eq(fovar("y"), foconst("i")), "y", gen)));
  FOPtr golden = ro_x(inner, "x", gen);
  CHECK(alpha_equivalent(st(bdia(nominal("i")), "x"), golden));
}

TEST_CASE("ro_x evaluates to the semantic ro closure") {
  std::mt19937_64 rng(99);
  FrameEnumConfig cfg;
  cfg.max_size = 3;
  auto frames = collect_full_frames(cfg);
  std::uniform_int_distribution<size_t> fpick(0, frames.size() - 1);
  for (int t = 0; t < 150; ++t) {
    const PossibilityFrame& f = frames[fpick(rng)];
    Scene s = random_scene(f, rng);
    FormulaPtr phi = random_lplus(rng, 2);
    FOPtr alpha = st(phi, "x");
    VarGen gen;
    FOPtr closed = ro_x(alpha, "x", gen);
    // pointwise truth of alpha and of RO_x(alpha)
    PointSet alpha_set = 0, ro_set = 0;
    for (int w = 0; w < f.size(); ++w) {
      if (eval_fo(f, alpha, {{"x", w}}, s.consts, &s.preds))
        alpha_set |= point_bit(w);
      if (eval_fo(f, closed, {{"x", w}}, s.consts, &s.preds))
        ro_set |= point_bit(w);
    }
    CHECK(ro_set == ro_closure(f.poset(), alpha_set));
    // idempotence on formula translations: truth sets of L+ formulas are
    // already regular open
    CHECK(ro_set == alpha_set);
  }
}

TEST_CASE("translation adequacy on enumerated frames") {
  std::mt19937_64 rng(123);
  FrameEnumConfig cfg;
  cfg.max_size = 3;
  auto frames = collect_full_frames(cfg);
  std::uniform_int_distribution<size_t> fpick(0, frames.size() - 1);
  for (int t = 0; t < 300; ++t) {
    const PossibilityFrame& f = frames[fpick(rng)];
    Scene s = random_scene(f, rng);
    FormulaPtr phi = random_lplus(rng, 3);
    FOPtr alpha = st(phi, "x");
    for (int w = 0; w < f.size(); ++w) {
      bool modal = sat_pointwise(f, s.asg, w, phi);
      bool fo = eval_fo(f, alpha, {{"x", w}}, s.consts, &s.preds);
      CHECK(modal == fo);
    }
  }
}

TEST_CASE("direct implication translation variant is equivalent") {
  // ST_x(a -> b) as the syntactic unfolding of -> via neg/or:
  // (forall y <= x)(exists z <= y)(((forall w <= z) not ST_w(a)) or ST_z(b))
  std::mt19937_64 rng(321);
  FrameEnumConfig cfg;
  cfg.max_size = 3;
  auto frames = collect_full_frames(cfg);
  std::uniform_int_distribution<size_t> fpick(0, frames.size() - 1);
  for (int t = 0; t < 120; ++t) {
    const PossibilityFrame& f = frames[fpick(rng)];
    Scene s = random_scene(f, rng);
    FormulaPtr a = random_lplus(rng, 2), b = random_lplus(rng, 2);
    FOPtr table = st(implies(a, b), "x");

    VarGen gen;
    FOPtr sta = st(a, "w", gen);
    FOPtr stb = st(b, "z", gen);
    FOPtr variant = fo_forall(
        "y",
        fo_implies(
            fo_leq(fovar("y"), fovar("x")),
            fo_exists(
                "z",
                fo_and(fo_leq(fovar("z"), fovar("y")),
                       fo_or(fo_forall("w",
                                       fo_implies(fo_leq(fovar("w"),
                                                         fovar("z")),
                                                  fo_not(sta))),
                             stb)))));
    for (int w = 0; w < f.size(); ++w) {
      bool lhs = eval_fo(f, table, {{"x", w}}, s.consts, &s.preds);
      bool rhs = eval_fo(f, variant, {{"x", w}}, s.consts, &s.preds);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("translate_quasi worked example") {
  QuasiInequality q;
  q.conclusion = parse_inequality("i <= bdia i");
  FOPtr out = translate_quasi({q});

  // forall i forall x (RO_x(x=i) -> RO_x(exists y (R y x and RO_y(y=i))))
  VarGen gen;
  FOPtr lhs = ro_x(fo_eq(fovar("x"), fovar("i")), "x", gen);
  FOPtr inner = fo_exists(
      "y", fo_and(fo_rel(fovar("y"), fovar("x")),
                  ro_x(fo_eq(fovar("y"), fovar("i")), "y", gen)));
  FOPtr rhs = ro_x(inner, "x", gen);
  FOPtr golden =
      fo_forall("i", fo_forall("x", fo_implies(lhs, rhs)));
  CHECK(alpha_equivalent(out, golden));

  // closed: no free variables, no constants
  IndexedFO idx = index_fo(out);
  CHECK(idx.free_vars.empty());
  CHECK(idx.consts.empty());
}

TEST_CASE("translate_quasi shapes and errors") {
  // degenerate conclusion
  QuasiInequality q;
  q.conclusion = {top(), top()};
  FOPtr out = translate_quasi({q});
  CHECK(index_fo(out).free_vars.empty());

  // two systems produce a top-level conjunction
  QuasiInequality a, b;
  a.conclusion = parse_inequality("i <= i");
  b.conclusion = parse_inequality("j <= j");
  FOPtr both = translate_quasi({a, b});
  CHECK(both->kind == FOKind::And);

  QuasiInequality bad;
  bad.conclusion = parse_inequality("p <= p");
  CHECK_THROWS_AS(translate_quasi({bad}), std::invalid_argument);
}

TEST_CASE("alpha equivalence") {
  FOPtr a = fo_forall("x", fo_leq(fovar("x"), fovar("x")));
  FOPtr b = fo_forall("y", fo_leq(fovar("y"), fovar("y")));
  FOPtr c = fo_forall("y", fo_leq(fovar("y"), fovar("z")));
  CHECK(alpha_equivalent(a, b));
  CHECK_FALSE(alpha_equivalent(a, c));
  CHECK_FALSE(fo_equal(a, b));
  CHECK(fo_equal(alpha_normalize(a), alpha_normalize(b)));
}

TEST_CASE("printers") {
  CHECK(print_fo(fo_eq(fovar("x"), foconst("i")), FOFormat::Unicode) ==
        "x = i");
  FOPtr refl = fo_forall("x", fo_leq(fovar("x"), fovar("x")));
  CHECK(print_fo(refl, FOFormat::Unicode) == "∀x(x ⊑ x)");
  CHECK(print_fo(refl, FOFormat::Tptp) ==
        "fof(correspondent, axiom, ! [VX] : (leq(VX,VX))).");
  // open formulas are rejected in tptp mode
  CHECK_THROWS_AS(print_fo(fo_leq(fovar("x"), fovar("y")), FOFormat::Tptp),
                  std::invalid_argument);
}

TEST_CASE("fo json round trip") {
  QuasiInequality q;
  q.premises.push_back(parse_inequality("bdia i <= ~j"));
  q.conclusion = parse_inequality("i <= ~j");
  FOPtr out = translate_quasi({q});
  FOPtr back = fo_from_json(fo_to_json(out));
  CHECK(fo_equal(out, back));
}

TEST_CASE("worked-example correspondent matches the stored golden files") {
  QuasiInequality q;
  q.conclusion = parse_inequality("i <= bdia i");
  FOPtr out = translate_quasi({q});

  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
  };
  const std::string dir = GOLDEN_DIR;
  CHECK(print_fo(out, FOFormat::Unicode) ==
        slurp(dir + "/worked_example_correspondent.txt"));
  CHECK(print_fo(out, FOFormat::Tptp) ==
        slurp(dir + "/worked_example_correspondent.tptp"));
}

TEST_CASE("translation is stable under print/reparse of the input") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 100; ++t) {
    FormulaPtr phi = random_lplus(rng, 3);
    FormulaPtr round = parse_formula(print_formula(phi));
    CHECK(alpha_equivalent(st(phi, "x"), st(round, "x")));
  }
}
