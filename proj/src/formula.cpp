#include "lukprover/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace luk {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "Var";
    case Kind::One: return "One";
    case Kind::Imp: return "Imp";
    case Kind::Tensor: return "Tensor";
    case Kind::Zero: return "Zero";
    case Kind::Neg: return "Neg";
    case Kind::WConj: return "WConj";
    case Kind::SDisj: return "SDisj";
    case Kind::SImp: return "SImp";
    case Kind::Nor: return "Nor";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Kind k, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->hash = mix(0x51ed27, static_cast<std::size_t>(k));
  n->core = k == Kind::Var || k == Kind::One || k == Kind::Imp || k == Kind::Tensor;
  for (const auto& c : kids) {
    n->hash = mix(n->hash, c.hash());
    n->size += c.size();
    n->core = n->core && c.is_core();
  }
  n->kids = std::move(kids);
  return Formula(std::move(n));
}

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = mix(std::hash<std::string>{}(name), 0x7a11);
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::one() {
  static const Formula f = make(Kind::One, {});
  return f;
}
Formula Formula::zero() {
  static const Formula f = make(Kind::Zero, {});
  return f;
}
Formula Formula::imp(Formula a, Formula b) { return make(Kind::Imp, {std::move(a), std::move(b)}); }
Formula Formula::tensor(Formula a, Formula b) { return make(Kind::Tensor, {std::move(a), std::move(b)}); }
Formula Formula::neg(Formula a) { return make(Kind::Neg, {std::move(a)}); }
Formula Formula::wconj(Formula a, Formula b) { return make(Kind::WConj, {std::move(a), std::move(b)}); }
Formula Formula::sdisj(Formula a, Formula b) { return make(Kind::SDisj, {std::move(a), std::move(b)}); }
Formula Formula::simp(Formula a, Formula b) { return make(Kind::SImp, {std::move(a), std::move(b)}); }
Formula Formula::nor(Formula a, Formula b) { return make(Kind::Nor, {std::move(a), std::move(b)}); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  if (a.kind() == Kind::Var) return a.name() == b.name();
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (a.kind() == Kind::Var) return a.name().compare(b.name()) <=> 0;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Formula::str() const { return print(*this); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Var, One, Zero, Caret, Star, WAnd, SOr, Nor, SImp, Lolly, LParen, RParen, End };

struct Token {
  Tok tok;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Var, std::string(s.substr(i, j - i)), at});
      i = j;
    } else if (c == '1') {
      out.push_back({Tok::One, "1", at}), ++i;
    } else if (c == '0') {
      out.push_back({Tok::Zero, "0", at}), ++i;
    } else if (c == '^') {
      out.push_back({Tok::Caret, "^", at}), ++i;
    } else if (c == '*') {
      out.push_back({Tok::Star, "*", at}), ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", at}), ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", at}), ++i;
    } else if (starts("/\\")) {
      out.push_back({Tok::WAnd, "/\\", at}), i += 2;
    } else if (starts("\\/")) {
      out.push_back({Tok::SOr, "\\/", at}), i += 2;
    } else if (starts("!!")) {
      out.push_back({Tok::Nor, "!!", at}), i += 2;
    } else if (starts("=>")) {
      out.push_back({Tok::SImp, "=>", at}), i += 2;
    } else if (starts("-o")) {
      out.push_back({Tok::Lolly, "-o", at}), i += 2;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = lolly();
    if (peek().tok != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().offset); }

  Formula lolly() {
    Formula lhs = strong_imp();
    if (peek().tok == Tok::Lolly) {
      ++pos_;
      return Formula::imp(lhs, lolly());
    }
    return lhs;
  }

  Formula strong_imp() {
    Formula lhs = tier2();
    if (peek().tok == Tok::SImp) {
      ++pos_;
      return Formula::simp(lhs, strong_imp());
    }
    return lhs;
  }

  static bool is_tier2(Tok t) { return t == Tok::Star || t == Tok::WAnd || t == Tok::SOr || t == Tok::Nor; }

  Formula tier2() {
    Formula acc = postfix();
    std::optional<Tok> op;
    while (is_tier2(peek().tok)) {
      Tok t = peek().tok;
      if (op && *op != t) fail("mixing '" + peek().text + "' with another connective of the same tier needs parentheses");
      op = t;
      ++pos_;
      Formula rhs = postfix();
      switch (t) {
        case Tok::Star: acc = Formula::tensor(acc, rhs); break;
        case Tok::WAnd: acc = Formula::wconj(acc, rhs); break;
        case Tok::SOr: acc = Formula::sdisj(acc, rhs); break;
        default: acc = Formula::nor(acc, rhs); break;
      }
    }
    return acc;
  }

  Formula postfix() {
    Formula f = atom();
    while (peek().tok == Tok::Caret) {
      ++pos_;
      f = Formula::neg(f);
    }
    return f;
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.tok) {
      case Tok::Var: ++pos_; return Formula::var(t.text);
      case Tok::One: ++pos_; return Formula::one();
      case Tok::Zero: ++pos_; return Formula::zero();
      case Tok::LParen: {
        ++pos_;
        Formula f = lolly();
        if (peek().tok != Tok::RParen) fail("expected ')'");
        ++pos_;
        return f;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding tiers used by the printer: larger binds tighter.
int tier(Kind k) {
  switch (k) {
    case Kind::Imp: return 1;
    case Kind::SImp: return 2;
    case Kind::Tensor:
    case Kind::WConj:
    case Kind::SDisj:
    case Kind::Nor: return 3;
    case Kind::Neg: return 4;
    default: return 5;
  }
}

std::string_view op_text(Kind k) {
  switch (k) {
    case Kind::Imp: return " -o ";
    case Kind::SImp: return " => ";
    case Kind::Tensor: return " * ";
    case Kind::WConj: return " /\\ ";
    case Kind::SDisj: return " \\/ ";
    case Kind::Nor: return " !! ";
    default: return "";
  }
}

void print_into(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(f, out);
  if (parens) out += ')';
}

void print_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.name(); return;
    case Kind::One: out += '1'; return;
    case Kind::Zero: out += '0'; return;
    case Kind::Neg:
      print_operand(f.left(), tier(f.left().kind()) < 4, out);
      out += '^';
      return;
    case Kind::Imp:
    case Kind::SImp: {
      int t = tier(f.kind());
      print_operand(f.left(), tier(f.left().kind()) <= t, out);
      out += op_text(f.kind());
      print_operand(f.right(), tier(f.right().kind()) < t, out);
      return;
    }
    default: {
      // tier-2 infix: left-associative chains of a single connective.
      const Formula& l = f.left();
      bool lparen = tier(l.kind()) < 3 || (tier(l.kind()) == 3 && l.kind() != f.kind());
      print_operand(l, lparen, out);
      out += op_text(f.kind());
      print_operand(f.right(), tier(f.right().kind()) <= 3, out);
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

// ---------------------------------------------------------------------------

Formula expand_derived(const Formula& f) {
  if (f.is_core()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  for (const auto& c : f.children()) kids.push_back(expand_derived(c));
  const Formula one = Formula::one();
  switch (f.kind()) {
    case Kind::Zero: return Formula::imp(one, one);
    case Kind::Neg: return Formula::imp(kids[0], one);
    case Kind::WConj: return Formula::tensor(kids[0], Formula::imp(kids[0], kids[1]));
    case Kind::SDisj: return Formula::imp(Formula::imp(kids[1], kids[0]), kids[0]);
    case Kind::SImp: return Formula::imp(kids[0], Formula::tensor(kids[0], kids[1]));
    case Kind::Nor: return Formula::tensor(Formula::imp(kids[0], one), Formula::imp(kids[1], kids[0]));
    default: return Formula::make(f.kind(), std::move(kids));
  }
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  if (sigma.empty()) return f;
  if (f.is(Kind::Var)) {
    auto it = sigma.find(f.name());
    return it == sigma.end() ? f : it->second;
  }
  if (f.arity() == 0) return f;
  std::vector<Formula> kids;
  kids.reserve(f.arity());
  bool changed = false;
  for (const auto& c : f.children()) {
    kids.push_back(substitute(c, sigma));
    changed = changed || !(kids.back() == c);
  }
  return changed ? Formula::make(f.kind(), std::move(kids)) : f;
}

namespace {
void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is(Kind::Var)) {
    out.insert(f.name());
    return;
  }
  for (const auto& c : f.children()) collect_vars(c, out);
}
}  // namespace

std::set<std::string> variables(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

bool valid_position(const Formula& f, const Position& p) {
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity()) return false;
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return true;
}

const Formula& subterm_at(const Formula& f, const Position& p) {
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity())
      throw std::out_of_range("invalid position " + format_position(p) + " in " + print(f));
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return *cur;
}

namespace {
Formula replace_from(const Formula& f, const Position& p, std::size_t depth, const Formula& repl) {
  if (depth == p.size()) return repl;
  int i = p[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= f.arity())
    throw std::out_of_range("invalid position " + format_position(p));
  std::vector<Formula> kids = f.children();
  kids[static_cast<std::size_t>(i)] = replace_from(f.child(static_cast<std::size_t>(i)), p, depth + 1, repl);
  return Formula::make(f.kind(), std::move(kids));
}

void collect_positions(const Formula& f, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < f.arity(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect_positions(f.child(i), cur, out);
    cur.pop_back();
  }
}
}  // namespace

Formula replace_at(const Formula& f, const Position& p, const Formula& repl) {
  return replace_from(f, p, 0, repl);
}

std::vector<Position> positions(const Formula& f) {
  std::vector<Position> out;
  Position cur;
  collect_positions(f, cur, out);
  return out;
}

Polarity polarity_at(const Formula& f, const Position& p) {
  if (!f.is_core()) throw std::invalid_argument("polarity_at needs a core formula: " + print(f));
  Polarity pol = Polarity::Positive;
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity())
      throw std::out_of_range("invalid position " + format_position(p));
    if (cur->is(Kind::Imp) && i == 0) pol = flip(pol);
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return pol;
}

std::optional<Polarity> occurrence_polarity(const Formula& f, const Position& p) {
  Polarity pol = Polarity::Positive;
  const Formula* cur = &f;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity())
      throw std::out_of_range("invalid position " + format_position(p));
    switch (cur->kind()) {
      case Kind::Imp:
        if (i == 0) pol = flip(pol);
        break;
      case Kind::Neg: pol = flip(pol); break;
      case Kind::WConj:
      case Kind::SDisj:
      case Kind::SImp:
        if (i == 0) return std::nullopt;
        break;
      case Kind::Nor:
        if (i == 0) return std::nullopt;
        pol = flip(pol);
        break;
      default: break;
    }
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return pol;
}

std::string format_position(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

Position parse_position(std::string_view text) {
  Position p;
  if (text == "root" || text.empty()) return p;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find('.', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view part = text.substr(i, j - i);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad position '" + std::string(text) + "'", i);
    p.push_back(std::stoi(std::string(part)));
    i = j + 1;
  }
  return p;
}

Formula sugar(const Formula& f) {
  if (f.arity() == 0) return f;
  if (f.is(Kind::Imp) && f.right().is(Kind::One)) {
    if (f.left().is(Kind::One)) return Formula::zero();
    return Formula::neg(sugar(f.left()));
  }
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(sugar(c));
  return Formula::make(f.kind(), std::move(kids));
}

}  // namespace luk
