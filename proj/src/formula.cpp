#include "alba/formula.hpp"

#include <cctype>
#include <sstream>

namespace alba {

namespace {

FormulaPtr mk(Conn c, std::string n, std::vector<FormulaPtr> ch) {
  return std::make_shared<const Formula>(c, std::move(n), std::move(ch));
}

const FormulaPtr kTop = mk(Conn::Top, "", {});
const FormulaPtr kBottom = mk(Conn::Bottom, "", {});

}  // namespace

FormulaPtr top() { return kTop; }
FormulaPtr bottom() { return kBottom; }
FormulaPtr prop(const std::string& name) { return mk(Conn::Prop, name, {}); }
FormulaPtr nominal(const std::string& name) {
  return mk(Conn::Nominal, name, {});
}
FormulaPtr neg(FormulaPtr a) { return mk(Conn::Neg, "", {std::move(a)}); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) {
  return mk(Conn::And, "", {std::move(a), std::move(b)});
}
FormulaPtr lor(FormulaPtr a, FormulaPtr b) {
  return mk(Conn::Or, "", {std::move(a), std::move(b)});
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return mk(Conn::Implies, "", {std::move(a), std::move(b)});
}
FormulaPtr box(FormulaPtr a) { return mk(Conn::Box, "", {std::move(a)}); }
FormulaPtr dia(FormulaPtr a) { return mk(Conn::Diamond, "", {std::move(a)}); }
FormulaPtr bdia(FormulaPtr a) {
  return mk(Conn::BlackDiamond, "", {std::move(a)});
}
FormulaPtr bbox(FormulaPtr a) { return mk(Conn::BlackBox, "", {std::move(a)}); }

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->conn != b->conn || a->name != b->name ||
      a->children.size() != b->children.size())
    return false;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

bool equal(const Inequality& a, const Inequality& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

bool is_prop_name(const std::string& s) {
  if (s.empty()) return false;
  char c = s[0];
  if (c < 'p' || c > 'z') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_nominal_name(const std::string& s) {
  if (s.empty()) return false;
  char c = s[0];
  if (c < 'i' || c > 'k') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Neg,
  And,
  Or,
  Implies,
  Leq,
  Box,
  Dia,
  BDia,
  BBox,
  Top,
  Bottom,
  Prop,
  Nominal,
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : src_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
    size_t start = i_;
    if (i_ >= src_.size()) {
      cur_ = {Tok::End, "", start};
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '(': ++i_; cur_ = {Tok::LParen, "(", start}; return;
      case ')': ++i_; cur_ = {Tok::RParen, ")", start}; return;
      case '~': ++i_; cur_ = {Tok::Neg, "~", start}; return;
      case '&': ++i_; cur_ = {Tok::And, "&", start}; return;
      case '|': ++i_; cur_ = {Tok::Or, "|", start}; return;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
          i_ += 2;
          cur_ = {Tok::Implies, "->", start};
          return;
        }
        throw ParseError("expected '->'", start);
      case '<':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
          i_ += 2;
          cur_ = {Tok::Leq, "<=", start};
          return;
        }
        throw ParseError("expected '<='", start);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() &&
             std::isalnum(static_cast<unsigned char>(src_[j])))
        ++j;
      std::string word = src_.substr(i_, j - i_);
      i_ = j;
      if (word == "box") { cur_ = {Tok::Box, word, start}; return; }
      if (word == "dia") { cur_ = {Tok::Dia, word, start}; return; }
      if (word == "bdia") { cur_ = {Tok::BDia, word, start}; return; }
      if (word == "bbox") { cur_ = {Tok::BBox, word, start}; return; }
      if (word == "T") { cur_ = {Tok::Top, word, start}; return; }
      if (word == "F") { cur_ = {Tok::Bottom, word, start}; return; }
      if (is_prop_name(word)) { cur_ = {Tok::Prop, word, start}; return; }
      if (is_nominal_name(word)) { cur_ = {Tok::Nominal, word, start}; return; }
      throw ParseError("identifier '" + word +
                           "' is neither prop-shaped ([p-z][0-9]*) nor "
                           "nominal-shaped ([i-k][0-9]*)",
                       start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  const std::string& src_;
  size_t i_ = 0;
  Token cur_;
};

class Parser {
public:
  explicit Parser(const std::string& s) : lex_(s) {}

  FormulaPtr formula() { return parse_implies(); }

  Inequality inequality() {
    FormulaPtr l = parse_implies();
    if (lex_.peek().kind != Tok::Leq)
      throw ParseError("expected '<='", lex_.peek().pos);
    lex_.next();
    FormulaPtr r = parse_implies();
    return {l, r};
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
  }

private:
  FormulaPtr parse_implies() {
    FormulaPtr l = parse_or();
    if (lex_.peek().kind == Tok::Implies) {
      lex_.next();
      return implies(l, parse_implies());  // right associative
    }
    return l;
  }

  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (lex_.peek().kind == Tok::Or) {
      lex_.next();
      l = lor(l, parse_and());
    }
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (lex_.peek().kind == Tok::And) {
      lex_.next();
      l = land(l, parse_unary());
    }
    return l;
  }

  FormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Neg: lex_.next(); return neg(parse_unary());
      case Tok::Box: lex_.next(); return box(parse_unary());
      case Tok::Dia: lex_.next(); return dia(parse_unary());
      case Tok::BDia: lex_.next(); return bdia(parse_unary());
      case Tok::BBox: lex_.next(); return bbox(parse_unary());
      default: return parse_atom();
    }
  }

  FormulaPtr parse_atom() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::Top: return top();
      case Tok::Bottom: return bottom();
      case Tok::Prop: return prop(t.text);
      case Tok::Nominal: return nominal(t.text);
      case Tok::LParen: {
        FormulaPtr f = parse_implies();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.next();
        return f;
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Lexer lex_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

Inequality parse_inequality(const std::string& text) {
  Parser p(text);
  Inequality iq = p.inequality();
  p.expect_end();
  return iq;
}

// ---------------------------------------------------------------------------
// Printer. Levels: -> 1, | 2, & 3, unary 4, atoms 5.

namespace {

int level(Conn c) {
  switch (c) {
    case Conn::Implies: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    case Conn::Neg:
    case Conn::Box:
    case Conn::Diamond:
    case Conn::BlackDiamond:
    case Conn::BlackBox: return 4;
    default: return 5;
  }
}

void print_rec(const FormulaPtr& f, int min_level, std::ostream& os) {
  bool paren = level(f->conn) < min_level;
  if (paren) os << '(';
  switch (f->conn) {
    case Conn::Top: os << 'T'; break;
    case Conn::Bottom: os << 'F'; break;
    case Conn::Prop:
    case Conn::Nominal: os << f->name; break;
    case Conn::Neg:
      os << '~';
      print_rec(f->children[0], 4, os);
      break;
    case Conn::Box:
      os << "box ";
      print_rec(f->children[0], 4, os);
      break;
    case Conn::Diamond:
      os << "dia ";
      print_rec(f->children[0], 4, os);
      break;
    case Conn::BlackDiamond:
      os << "bdia ";
      print_rec(f->children[0], 4, os);
      break;
    case Conn::BlackBox:
      os << "bbox ";
      print_rec(f->children[0], 4, os);
      break;
    case Conn::And:
      print_rec(f->children[0], 3, os);
      os << " & ";
      print_rec(f->children[1], 4, os);
      break;
    case Conn::Or:
      print_rec(f->children[0], 2, os);
      os << " | ";
      print_rec(f->children[1], 3, os);
      break;
    case Conn::Implies:
      print_rec(f->children[0], 2, os);
      os << " -> ";
      print_rec(f->children[1], 1, os);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_rec(f, 0, os);
  return os.str();
}

std::string print_inequality(const Inequality& iq) {
  return print_formula(iq.lhs) + " <= " + print_formula(iq.rhs);
}

std::string print_quasi(const QuasiInequality& q) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < q.premises.size(); ++i) {
    if (i) os << ", ";
    os << print_inequality(q.premises[i]);
  }
  os << "} => " << print_inequality(q.conclusion);
  return os.str();
}

// ---------------------------------------------------------------------------
// Polarity and substitution

namespace {

void polarity_rec(const FormulaPtr& f, const std::string& v, bool positive,
                  bool& has_pos, bool& has_neg) {
  switch (f->conn) {
    case Conn::Prop:
      if (f->name == v) (positive ? has_pos : has_neg) = true;
      return;
    case Conn::Neg:
      polarity_rec(f->children[0], v, !positive, has_pos, has_neg);
      return;
    case Conn::Implies:
      polarity_rec(f->children[0], v, !positive, has_pos, has_neg);
      polarity_rec(f->children[1], v, positive, has_pos, has_neg);
      return;
    default:
      for (const auto& c : f->children)
        polarity_rec(c, v, positive, has_pos, has_neg);
      return;
  }
}

}  // namespace

Polarity polarity(const FormulaPtr& phi, const std::string& v) {
  bool has_pos = false, has_neg = false;
  polarity_rec(phi, v, true, has_pos, has_neg);
  if (has_pos && has_neg) return Polarity::Both;
  if (has_pos) return Polarity::Positive;
  if (has_neg) return Polarity::Negative;
  return Polarity::Absent;
}

FormulaPtr substitute(const FormulaPtr& phi, const std::string& v,
                      const FormulaPtr& psi) {
  if (phi->conn == Conn::Prop) return phi->name == v ? psi : phi;
  if (phi->is_leaf()) return phi;
  std::vector<FormulaPtr> ch;
  ch.reserve(phi->children.size());
  bool changed = false;
  for (const auto& c : phi->children) {
    FormulaPtr nc = substitute(c, v, psi);
    changed |= (nc.get() != c.get());
    ch.push_back(std::move(nc));
  }
  if (!changed) return phi;
  return std::make_shared<const Formula>(phi->conn, phi->name, std::move(ch));
}

namespace {

void collect(const FormulaPtr& f, Conn kind, std::set<std::string>& out) {
  if (f->conn == kind) out.insert(f->name);
  for (const auto& c : f->children) collect(c, kind, out);
}

}  // namespace

std::set<std::string> prop_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect(f, Conn::Prop, out);
  return out;
}

std::set<std::string> nominal_names(const FormulaPtr& f) {
  std::set<std::string> out;
  collect(f, Conn::Nominal, out);
  return out;
}

std::set<std::string> prop_names(const Inequality& iq) {
  std::set<std::string> out = prop_names(iq.lhs);
  auto r = prop_names(iq.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

std::set<std::string> nominal_names(const Inequality& iq) {
  std::set<std::string> out = nominal_names(iq.lhs);
  auto r = nominal_names(iq.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

bool is_basic(const FormulaPtr& f) {
  if (f->conn == Conn::Nominal || f->conn == Conn::BlackDiamond ||
      f->conn == Conn::BlackBox)
    return false;
  for (const auto& c : f->children)
    if (!is_basic(c)) return false;
  return true;
}

bool is_basic(const Inequality& iq) {
  return is_basic(iq.lhs) && is_basic(iq.rhs);
}

bool is_pure(const FormulaPtr& f) {
  if (f->conn == Conn::Prop) return false;
  for (const auto& c : f->children)
    if (!is_pure(c)) return false;
  return true;
}

bool is_pure(const Inequality& iq) {
  return is_pure(iq.lhs) && is_pure(iq.rhs);
}

FormulaPtr expand_abbreviations(const FormulaPtr& f) {
  std::vector<FormulaPtr> ch;
  ch.reserve(f->children.size());
  for (const auto& c : f->children) ch.push_back(expand_abbreviations(c));
  switch (f->conn) {
    case Conn::Or:  // a | b == ~(~a & ~b)
      return neg(land(neg(ch[0]), neg(ch[1])));
    case Conn::Implies:  // a -> b == ~(a & ~b)
      return neg(land(ch[0], neg(ch[1])));
    case Conn::Diamond:  // dia a == ~box ~a
      return neg(box(neg(ch[0])));
    case Conn::BlackBox:  // bbox a == ~bdia ~a
      return neg(bdia(neg(ch[0])));
    default:
      if (f->is_leaf()) return f;
      return std::make_shared<const Formula>(f->conn, f->name, std::move(ch));
  }
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

const char* conn_tag(Conn c) {
  switch (c) {
    case Conn::Top: return "top";
    case Conn::Bottom: return "bottom";
    case Conn::Prop: return "prop";
    case Conn::Nominal: return "nominal";
    case Conn::Neg: return "neg";
    case Conn::And: return "and";
    case Conn::Or: return "or";
    case Conn::Implies: return "implies";
    case Conn::Box: return "box";
    case Conn::Diamond: return "dia";
    case Conn::BlackDiamond: return "bdia";
    case Conn::BlackBox: return "bbox";
  }
  return "?";
}

}  // namespace

nlohmann::json formula_to_json(const FormulaPtr& f) {
  nlohmann::json j;
  j["op"] = conn_tag(f->conn);
  if (f->conn == Conn::Prop || f->conn == Conn::Nominal) j["name"] = f->name;
  if (!f->children.empty()) {
    nlohmann::json args = nlohmann::json::array();
    for (const auto& c : f->children) args.push_back(formula_to_json(c));
    j["args"] = std::move(args);
  }
  return j;
}

FormulaPtr formula_from_json(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  auto arg = [&](size_t i) { return formula_from_json(j.at("args").at(i)); };
  if (op == "top") return top();
  if (op == "bottom") return bottom();
  if (op == "prop") return prop(j.at("name").get<std::string>());
  if (op == "nominal") return nominal(j.at("name").get<std::string>());
  if (op == "neg") return neg(arg(0));
  if (op == "and") return land(arg(0), arg(1));
  if (op == "or") return lor(arg(0), arg(1));
  if (op == "implies") return implies(arg(0), arg(1));
  if (op == "box") return box(arg(0));
  if (op == "dia") return dia(arg(0));
  if (op == "bdia") return bdia(arg(0));
  if (op == "bbox") return bbox(arg(0));
  throw std::runtime_error("formula_from_json: unknown op '" + op + "'");
}

}  // namespace alba
