#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "alba/formula.hpp"

using namespace alba;

TEST_CASE("parse basics") {
  FormulaPtr f = parse_formula("box p -> p");
  CHECK(f->conn == Conn::Implies);
  CHECK(f->children[0]->conn == Conn::Box);
  CHECK(f->children[0]->children[0]->conn == Conn::Prop);
  CHECK(f->children[0]->children[0]->name == "p");
  CHECK(f->children[1]->conn == Conn::Prop);

  FormulaPtr g = parse_formula("~(p & q)");
  CHECK(g->conn == Conn::Neg);
  CHECK(g->children[0]->conn == Conn::And);

  Inequality iq = parse_inequality("i <= bdia i");
  CHECK(iq.lhs->conn == Conn::Nominal);
  CHECK(iq.lhs->name == "i");
  CHECK(iq.rhs->conn == Conn::BlackDiamond);
  CHECK(iq.rhs->children[0]->conn == Conn::Nominal);
}

TEST_CASE("precedence and associativity") {
  // -> binds loosest and associates right
  CHECK(equal(parse_formula("p -> q -> r"),
              implies(prop("p"), implies(prop("q"), prop("r")))));
  // unary > & > |
  CHECK(equal(parse_formula("~p & q | r"),
              lor(land(neg(prop("p")), prop("q")), prop("r"))));
  CHECK(equal(parse_formula("box p & q"), land(box(prop("p")), prop("q"))));
  CHECK(equal(parse_formula("box (p & q)"), box(land(prop("p"), prop("q")))));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  // identifiers outside both namespaces
  CHECK_THROWS_AS(parse_formula("a"), ParseError);
  CHECK_THROWS_AS(parse_formula("m1"), ParseError);
  try {
    parse_formula("p & a");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("namespaces") {
  CHECK(is_prop_name("p"));
  CHECK(is_prop_name("z42"));
  CHECK_FALSE(is_prop_name("i"));
  CHECK(is_nominal_name("i"));
  CHECK(is_nominal_name("k7"));
  CHECK_FALSE(is_nominal_name("p0"));
  CHECK_FALSE(is_nominal_name("abc"));
}

TEST_CASE("polarity") {
  CHECK(polarity(parse_formula("box p -> p"), "p") == Polarity::Both);
  CHECK(polarity(parse_formula("box ~p"), "p") == Polarity::Negative);
  FormulaPtr f = parse_formula("dia (p & ~q)");
  CHECK(polarity(f, "q") == Polarity::Negative);
  CHECK(polarity(f, "p") == Polarity::Positive);
  CHECK(polarity(f, "r") == Polarity::Absent);
}

TEST_CASE("substitute") {
  CHECK(equal(substitute(parse_formula("box p"), "p", bdia(nominal("i"))),
              parse_formula("box bdia i")));
  // no simplification is performed
  CHECK(equal(substitute(parse_formula("p & ~p"), "p", top()),
              parse_formula("T & ~T")));
  // worked-example substitution step
  CHECK(equal(substitute(parse_formula("p"), "p", parse_formula("bdia i")),
              parse_formula("bdia i")));
}

namespace {

FormulaPtr random_formula(std::mt19937_64& rng, int depth, bool basic) {
  std::uniform_int_distribution<int> pick(0, basic ? 9 : 11);
  std::uniform_int_distribution<int> var(0, 2);
  const char* props[3] = {"p", "q", "r"};
  const char* noms[3] = {"i", "j", "k"};
  if (depth == 0) {
    switch (pick(rng) % (basic ? 3 : 4)) {
      case 0: return prop(props[var(rng)]);
      case 1: return top();
      case 2: return bottom();
      default: return nominal(noms[var(rng)]);
    }
  }
  switch (pick(rng)) {
    case 0: return prop(props[var(rng)]);
    case 1: return neg(random_formula(rng, depth - 1, basic));
    case 2:
      return land(random_formula(rng, depth - 1, basic),
                  random_formula(rng, depth - 1, basic));
    case 3:
      return lor(random_formula(rng, depth - 1, basic),
                 random_formula(rng, depth - 1, basic));
    case 4:
      return implies(random_formula(rng, depth - 1, basic),
                     random_formula(rng, depth - 1, basic));
    case 5: return box(random_formula(rng, depth - 1, basic));
    case 6: return dia(random_formula(rng, depth - 1, basic));
    case 7: return top();
    case 8: return bottom();
    case 9: return prop(props[var(rng)]);
    case 10: return bdia(random_formula(rng, depth - 1, basic));
    default: return bbox(random_formula(rng, depth - 1, basic));
  }
}

}  // namespace

TEST_CASE("print/parse round trip on random formulas") {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 500; ++t) {
    FormulaPtr f = random_formula(rng, 4, false);
    FormulaPtr g = parse_formula(print_formula(f));
    CHECK(equal(f, g));
  }
}

TEST_CASE("absent polarity means substitution is identity") {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 300; ++t) {
    FormulaPtr f = random_formula(rng, 3, true);
    if (polarity(f, "s") == Polarity::Absent)
      CHECK(equal(substitute(f, "s", top()), f));
  }
}

TEST_CASE("polarity is antitone under negation") {
  std::mt19937_64 rng(999);
  for (int t = 0; t < 300; ++t) {
    FormulaPtr f = random_formula(rng, 3, true);
    for (const char* v : {"p", "q"}) {
      Polarity a = polarity(f, v);
      Polarity b = polarity(neg(f), v);
      switch (a) {
        case Polarity::Positive: CHECK(b == Polarity::Negative); break;
        case Polarity::Negative: CHECK(b == Polarity::Positive); break;
        default: CHECK(a == b); break;
      }
    }
  }
}

TEST_CASE("basic and pure predicates") {
  CHECK(is_basic(parse_formula("box p -> ~q")));
  CHECK_FALSE(is_basic(parse_formula("bdia p")));
  CHECK_FALSE(is_basic(parse_formula("i")));
  CHECK(is_pure(parse_formula("bdia i & ~j")));
  CHECK_FALSE(is_pure(parse_formula("i & p")));
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 100; ++t) {
    FormulaPtr f = random_formula(rng, 4, false);
    CHECK(equal(f, formula_from_json(formula_to_json(f))));
  }
}

TEST_CASE("expand abbreviations structure") {
  CHECK(equal(expand_abbreviations(parse_formula("p | q")),
              parse_formula("~(~p & ~q)")));
  CHECK(equal(expand_abbreviations(parse_formula("dia p")),
              parse_formula("~box ~p")));
  CHECK(equal(expand_abbreviations(parse_formula("p -> q")),
              parse_formula("~(p & ~q)")));
  CHECK(equal(expand_abbreviations(parse_formula("bbox p")),
              parse_formula("~bdia ~p")));
}
