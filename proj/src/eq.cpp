#include "lukprover/eq.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace luk {

std::string_view relation_symbol(Relation r) { return r == Relation::Equiv ? "~=" : ">="; }

Relation compose(Relation a, Relation b) {
  return a == Relation::Equiv && b == Relation::Equiv ? Relation::Equiv : Relation::Geq;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

const Formula& zero_core() {
  static const Formula z = Formula::imp(Formula::one(), Formula::one());
  return z;
}

bool is_zero(const Formula& f) { return f.is(Kind::Zero) || f == zero_core(); }

void spine(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Kind::Tensor)) {
    spine(f.left(), out);
    spine(f.right(), out);
  } else {
    out.push_back(f);
  }
}

// Right-nested product of sorted factors; empty product is `unit`.
Formula product(std::vector<Formula> fs, const Formula& unit) {
  std::sort(fs.begin(), fs.end());
  if (fs.empty()) return unit;
  Formula r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = Formula::tensor(fs[i], r);
  return r;
}

Formula ac_rec(const Formula& f) {
  if (f.is(Kind::Tensor)) {
    std::vector<Formula> raw, fs;
    spine(f, raw);
    for (const auto& x : raw) {
      Formula n = ac_rec(x);
      std::vector<Formula> sub;
      spine(n, sub);
      for (auto& s : sub)
        if (!is_zero(s)) fs.push_back(std::move(s));
    }
    return product(std::move(fs), Formula::zero());
  }
  if (f.arity() == 0) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(ac_rec(c));
  return Formula::make(f.kind(), std::move(kids));
}

Formula canon_core(const Formula& f) {
  switch (f.kind()) {
    case Kind::Imp: {
      Formula a = canon_core(f.left());
      Formula b = canon_core(f.right());
      if (a == zero_core()) return b;
      if (b == zero_core()) return zero_core();
      return Formula::imp(a, b);
    }
    case Kind::Tensor: {
      std::vector<Formula> fs;
      for (const auto& c : f.children()) {
        std::vector<Formula> sub;
        spine(canon_core(c), sub);
        for (auto& s : sub)
          if (!(s == zero_core())) fs.push_back(std::move(s));
      }
      return product(std::move(fs), zero_core());
    }
    default: return f;
  }
}

std::vector<Formula> factors(const Formula& canon) {
  std::vector<Formula> out;
  if (canon == zero_core()) return out;
  spine(canon, out);
  return out;
}

Formula prod(std::vector<Formula> fs) { return product(std::move(fs), zero_core()); }

}  // namespace

Formula ac_normalize(const Formula& f) { return ac_rec(f); }

Formula canonical(const Formula& f) { return canon_core(expand_derived(f)); }

// ---------------------------------------------------------------------------
// Matching modulo AC

namespace {

using Binding = std::map<std::string, Formula>;

bool is_meta(const Formula& f) { return f.is(Kind::Var) && !f.name().empty() && f.name()[0] == '?'; }

bool has_meta(const Formula& f) {
  if (is_meta(f)) return true;
  for (const auto& c : f.children())
    if (has_meta(c)) return true;
  return false;
}

struct Stop {};

class Matcher {
 public:
  explicit Matcher(std::size_t cap) : cap_(cap) {}

  using Cont = std::function<void(const Binding&)>;
  using SpineCont = std::function<void(const Binding&, const std::vector<Formula>&)>;

  void match(const Formula& p, const Formula& t, const Binding& b, const Cont& k) {
    if (is_meta(p)) {
      auto it = b.find(p.name());
      if (it != b.end()) {
        if (it->second == t) k(b);
        return;
      }
      Binding b1 = b;
      b1.emplace(p.name(), t);
      k(b1);
      return;
    }
    if (p.is(Kind::Tensor)) {
      match_spine(factors(p), factors(t), false, b, [&](const Binding& b1, const std::vector<Formula>&) { k(b1); });
      return;
    }
    if (p.kind() != t.kind()) return;
    if (p.is(Kind::Imp)) {
      match(p.left(), t.left(), b, [&](const Binding& b1) { match(p.right(), t.right(), b1, k); });
      return;
    }
    if (p == t) k(b);
  }

  void match_spine(const std::vector<Formula>& pats, const std::vector<Formula>& ts, bool allow_rest,
                   const Binding& b, const SpineCont& k) {
    std::vector<bool> pat_used(pats.size(), false), t_used(ts.size(), false);
    rec(pats, ts, allow_rest, pat_used, t_used, b, k);
  }

  void tick() {
    if (++count_ > cap_) throw Stop{};
  }

 private:
  void rec(const std::vector<Formula>& pats, const std::vector<Formula>& ts, bool allow_rest,
           std::vector<bool>& pu, std::vector<bool>& tu, const Binding& b, const SpineCont& k) {
    // choose next pattern: structural first, then bound metavariables
    int pick = -1, rank = 3;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      if (pu[i]) continue;
      int r = !is_meta(pats[i]) ? 0 : (b.count(pats[i].name()) ? 1 : 2);
      if (r < rank) {
        rank = r;
        pick = static_cast<int>(i);
      }
    }
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < ts.size(); ++j)
      if (!tu[j]) free.push_back(j);
    if (pick < 0) {
      if (!allow_rest && !free.empty()) return;
      std::vector<Formula> rest;
      for (auto j : free) rest.push_back(ts[j]);
      tick();
      k(b, rest);
      return;
    }
    const Formula& p = pats[static_cast<std::size_t>(pick)];
    pu[static_cast<std::size_t>(pick)] = true;
    if (rank == 0) {
      std::set<Formula> tried;
      for (auto j : free) {
        if (!tried.insert(ts[j]).second) continue;
        tu[j] = true;
        match(p, ts[j], b, [&](const Binding& b1) { rec(pats, ts, allow_rest, pu, tu, b1, k); });
        tu[j] = false;
      }
    } else if (rank == 1) {
      std::vector<std::size_t> taken;
      bool ok = true;
      for (const auto& f : factors(b.at(p.name()))) {
        auto it = std::find_if(free.begin(), free.end(), [&](std::size_t j) {
          return !tu[j] && ts[j] == f;
        });
        if (it == free.end()) {
          ok = false;
          break;
        }
        tu[*it] = true;
        taken.push_back(*it);
      }
      if (ok) rec(pats, ts, allow_rest, pu, tu, b, k);
      for (auto j : taken) tu[j] = false;
    } else {
      bool last = std::count(pu.begin(), pu.end(), false) == 0;
      if (last && !allow_rest) {
        if (!free.empty()) {
          std::vector<Formula> all;
          for (auto j : free) all.push_back(ts[j]);
          Binding b1 = b;
          b1.emplace(p.name(), prod(all));
          for (auto j : free) tu[j] = true;
          rec(pats, ts, allow_rest, pu, tu, b1, k);
          for (auto j : free) tu[j] = false;
        }
      } else if (free.size() <= 12) {
        std::set<std::vector<Formula>> seen;
        for (unsigned mask = 1; mask < (1u << free.size()); ++mask) {
          std::vector<Formula> sub;
          for (std::size_t q = 0; q < free.size(); ++q)
            if (mask & (1u << q)) sub.push_back(ts[free[q]]);
          std::sort(sub.begin(), sub.end());
          if (!seen.insert(sub).second) continue;
          Binding b1 = b;
          b1.emplace(p.name(), prod(sub));
          for (std::size_t q = 0; q < free.size(); ++q)
            if (mask & (1u << q)) tu[free[q]] = true;
          rec(pats, ts, allow_rest, pu, tu, b1, k);
          for (std::size_t q = 0; q < free.size(); ++q)
            if (mask & (1u << q)) tu[free[q]] = false;
        }
      }
    }
    pu[static_cast<std::size_t>(pick)] = false;
  }

  std::size_t cap_;
  std::size_t count_ = 0;
};

constexpr std::size_t kMatchCap = 512;

// Lemma variables become metavariables "?X" unless the entry is rigid.
Formula metaize(const Formula& f, const LemmaEntry& e) {
  if (e.rigid) return f;
  Substitution s;
  for (const auto& v : variables(expand_derived(e.lhs))) s.emplace(v, Formula::var("?" + v));
  for (const auto& v : variables(expand_derived(e.rhs))) s.emplace(v, Formula::var("?" + v));
  return substitute(f, s);
}

Binding initial_binding(const LemmaEntry& e, const Substitution& with) {
  Binding b;
  for (const auto& [k, v] : with) {
    if (e.rigid) throw std::invalid_argument("hypothesis " + e.id + " takes no substitution");
    b.emplace("?" + k, canonical(v));
  }
  return b;
}

Formula instantiate(const Formula& pattern, const Binding& b) {
  Substitution s(b.begin(), b.end());
  return canonical(substitute(pattern, s));
}

struct Candidate {
  Formula replacement;
};

// Candidates for rewriting `sub` (canonical) with pattern side `from`
// replaced by `to`; `hint` is the canonical subterm of the next formula at
// the same position, used to bind variables occurring only in `to`.
std::vector<Formula> rewrite_candidates(const Formula& sub, const Formula& from, const Formula& to,
                                        const Binding& b0, const std::optional<Formula>& hint) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  Matcher m(kMatchCap);
  const Formula pat = instantiate(from, b0);
  auto emit = [&](const Binding& b, const std::vector<Formula>& rest) {
    Formula r = instantiate(to, b);
    auto finish = [&](const Formula& inst) {
      auto fs = factors(inst);
      fs.insert(fs.end(), rest.begin(), rest.end());
      Formula repl = prod(fs);
      if (seen.insert(repl).second) out.push_back(repl);
    };
    if (!has_meta(r)) {
      finish(r);
      return;
    }
    if (!hint) return;
    std::vector<Formula> pats = factors(r);
    pats.insert(pats.end(), rest.begin(), rest.end());
    Matcher m2(kMatchCap);
    try {
      m2.match_spine(pats, factors(*hint), false, b, [&](const Binding& b2, const std::vector<Formula>&) {
        Formula r2 = instantiate(to, b2);
        if (!has_meta(r2)) finish(r2);
      });
    } catch (const Stop&) {
    }
  };
  try {
    auto pf = factors(pat);
    if (pf.size() == 1 && is_meta(pf[0]) && !b0.count(pf[0].name())) {
      Binding b = b0;
      b.emplace(pf[0].name(), sub);
      m.tick();
      emit(b, {});
    } else {
      m.match_spine(pf, factors(sub), true, b0, emit);
    }
  } catch (const Stop&) {
  }
  return out;
}

// Relation between old and new formula for a use of `lemma` at a position
// of polarity `pol`; nullopt when the use strengthens the formula.
std::optional<Relation> induced(const LemmaEntry& lemma, bool reversed, std::optional<Polarity> pol) {
  if (lemma.relation == Relation::Equiv) return Relation::Equiv;
  if (!pol) return std::nullopt;
  bool weakening = (*pol == Polarity::Positive) != reversed;
  if (weakening) return Relation::Geq;
  return std::nullopt;
}

}  // namespace

RewriteResult apply_rewrite(const Formula& f, const LemmaEntry& lemma, bool reversed, const Position& p,
                            const Substitution& with) {
  if (!valid_position(f, p)) throw std::invalid_argument("invalid position " + format_position(p));
  Formula from = metaize(reversed ? lemma.rhs : lemma.lhs, lemma);
  Formula to = metaize(reversed ? lemma.lhs : lemma.rhs, lemma);
  auto cands = rewrite_candidates(canonical(subterm_at(f, p)), from, to, initial_binding(lemma, with), std::nullopt);
  if (cands.empty())
    throw std::invalid_argument("lemma " + lemma.id + " does not match at " + format_position(p));
  return {replace_at(f, p, cands.front()), induced(lemma, reversed, occurrence_polarity(f, p))};
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(const Registry& other) {
  std::lock_guard<std::mutex> lock(other.mu_);
  entries_ = other.entries_;
  index_ = other.index_;
}

Registry& Registry::operator=(const Registry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  entries_ = other.entries_;
  index_ = other.index_;
  return *this;
}

std::optional<LemmaEntry> Registry::find(std::string_view id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second];
}

std::vector<LemmaEntry> Registry::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

Verdict Registry::insert(const LemmaEntry& e) {
  std::lock_guard<std::mutex> lock(mu_);
  if (index_.count(e.id)) return Verdict::fail("duplicate lemma id '" + e.id + "'");
  index_.emplace(e.id, entries_.size());
  entries_.push_back(e);
  return Verdict::pass();
}

LemmaEntry entry_of(const EqScript& s) {
  return LemmaEntry{s.id, s.lhs, s.rhs, s.relation, s.theory, s.id, false};
}

Verdict Registry::register_lemma(const LemmaEntry& e, const EqScript& proof, const CheckOptions& opt,
                                 ScriptResult* result) {
  if (e.rigid) return Verdict::fail("rigid entries cannot be registered");
  if (proof.hypothetical()) return Verdict::fail("script '" + proof.id + "' depends on hypotheses");
  if (!(proof.theory == e.theory)) return Verdict::fail("script theory differs from the entry theory");
  if (!(canonical(proof.lhs) == canonical(e.lhs)) || !(canonical(proof.rhs) == canonical(e.rhs)))
    return Verdict::fail("script claim differs from the entry");
  if (e.relation == Relation::Equiv && proof.relation != Relation::Equiv)
    return Verdict::fail("script proves only >=");
  auto r = check_script(proof, *this, opt);
  if (result) *result = r;
  if (!r.verdict) return Verdict::fail("script '" + proof.id + "' rejected: " + r.verdict.message);
  return insert(e);
}

Verdict Registry::register_lemma(const LemmaEntry& e, const std::vector<ProofTree>& proofs) {
  if (e.rigid) return Verdict::fail("rigid entries cannot be registered");
  auto covers = [&](const ProofTree& p, const Formula& from, const Formula& to) {
    const Sequent& s = p.conclusion;
    if (!(canonical(s.goal) == canonical(to))) return false;
    if (s.context.size() == 1) return canonical(s.context[0]) == canonical(from);
    return s.context.empty() && canonical(from) == zero_core();
  };
  std::size_t need = e.relation == Relation::Equiv ? 2 : 1;
  if (proofs.size() < need) return Verdict::fail("missing proof for lemma '" + e.id + "'");
  for (std::size_t i = 0; i < need; ++i) {
    const Formula& from = i == 0 ? e.lhs : e.rhs;
    const Formula& to = i == 0 ? e.rhs : e.lhs;
    if (!covers(proofs[i], from, to)) return Verdict::fail("proof " + std::to_string(i) + " does not state the lemma");
    auto v = check_proof(proofs[i], e.theory);
    if (!v) return Verdict::fail("proof " + std::to_string(i) + " rejected: " + v.message);
  }
  return insert(e);
}

Registry Registry::primitives() {
  static const Registry kit = [] {
    Registry r;
    struct Def {
      const char* id;
      const char* lhs;
      Relation rel;
      const char* rhs;
      TheoryId t;
    };
    const Def defs[] = {
        {"cwc", "A * (A -o B)", Relation::Equiv, "B * (B -o A)", LLm},
        {"wk", "A * B", Relation::Geq, "A", ALm},
        {"efq", "1", Relation::Geq, "A", ALi},
        {"dne", "A^^", Relation::Equiv, "A", ALc},
        {"con", "A", Relation::Equiv, "A * A", ML},
        {"curry", "A * B -o C", Relation::Equiv, "A -o B -o C", ALm},
        {"exch", "A -o B -o C", Relation::Equiv, "B -o A -o C", ALm},
        {"dn-intro", "A", Relation::Geq, "A^^", ALm},
        {"tneg", "A^^^", Relation::Equiv, "A^", ALm},
        {"mp", "A * (A -o B)", Relation::Geq, "B", ALm},
        {"neg-tensor", "(A * B)^", Relation::Equiv, "A -o B^", ALm},
        {"wk-imp", "A", Relation::Geq, "B -o A", ALm},
        {"imp-refl", "0", Relation::Geq, "A -o A", ALm},
        {"pre-comp", "A -o B", Relation::Geq, "(B -o C) -o A -o C", ALm},
        {"post-comp", "A -o B", Relation::Geq, "(C -o A) -o C -o B", ALm},
        {"contrapose", "A -o B", Relation::Geq, "B^ -o A^", ALm},
        {"efq-imp", "0", Relation::Geq, "1 -o A", ALi},
        {"dn-imp-in", "A -o B^^", Relation::Equiv, "A^^ -o B^^", ALm},
        {"wconj-lower", "A /\\ B", Relation::Geq, "B", ALm},
        {"sdisj-upper", "A", Relation::Geq, "B \\/ A", ALm},
        {"sdisj-upper-left", "A", Relation::Geq, "A \\/ B", ALm},
        {"tensor-imp", "A * (B -o C)", Relation::Geq, "B -o A * C", ALm},
        {"trans", "(A -o B) * (B -o C)", Relation::Geq, "A -o C", ALm},
        {"dn-imp-in2", "A -o B -o C^^", Relation::Equiv, "A^^ -o B -o C^^", ALm},
        {"dn-imp-in3", "A -o B -o C -o D^^", Relation::Equiv, "A^^ -o B -o C -o D^^", ALm},
        {"dn-imp-stable", "(A -o B^^)^^", Relation::Equiv, "A -o B^^", ALm},
        {"dn-imp-stable2", "(A -o B -o C^^)^^", Relation::Equiv, "A -o B -o C^^", ALm},
        {"dn-imp-stable3", "(A -o B -o C -o D^^)^^", Relation::Equiv, "A -o B -o C -o D^^", ALm},
    };
    for (const auto& d : defs) {
      LemmaEntry e{d.id, parse(d.lhs), parse(d.rhs), d.rel, d.t, "primitive", false};
      std::vector<ProofTree> proofs;
      auto prove = [&](const Formula& from, const Formula& to) {
        Sequent s{{}, to};
        if (!(canonical(from) == zero_core())) s.context.push_back(from);
        auto p = bounded_prove(s, d.t, 8);
        if (!p) throw std::logic_error(std::string("primitive lemma without proof: ") + d.id);
        proofs.push_back(*p);
      };
      prove(e.lhs, e.rhs);
      if (d.rel == Relation::Equiv) prove(e.rhs, e.lhs);
      auto v = r.register_lemma(e, proofs);
      if (!v) throw std::logic_error(v.message);
    }
    return r;
  }();
  return kit;
}

// ---------------------------------------------------------------------------
// Script text

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Kind connective_kind(std::string_view c) {
  if (c == "/\\" || c == "and") return Kind::WConj;
  if (c == "\\/" || c == "or") return Kind::SDisj;
  if (c == "=>" || c == "simp") return Kind::SImp;
  if (c == "!!" || c == "nor") return Kind::Nor;
  if (c == "^" || c == "neg") return Kind::Neg;
  if (c == "0" || c == "zero") return Kind::Zero;
  throw std::invalid_argument("unknown connective '" + std::string(c) + "'");
}

Substitution parse_with(const std::string& text, std::size_t line) {
  Substitution s;
  std::size_t k = 0;
  while (k <= text.size()) {
    std::size_t comma = text.find(',', k);
    if (comma == std::string::npos) comma = text.size();
    std::string item = trim(std::string_view(text).substr(k, comma - k));
    auto eq = item.find(":=");
    if (eq == std::string::npos) throw ParseError("bad substitution '" + item + "'", line);
    s.insert_or_assign(trim(item.substr(0, eq)), parse(item.substr(eq + 2)));
    k = comma + 1;
  }
  return s;
}

Position parse_pos(const std::string& tok, Justification& j) {
  if (tok == "?") {
    j.locate = true;
    return {};
  }
  return parse_position(tok);
}

// "<id> [at <pos>] [rev] [with ...]"
Justification parse_citation(const std::string& text, bool want_position, std::size_t line) {
  Justification j;
  j.kind = want_position ? Justification::Kind::Rewrite : Justification::Kind::Cite;
  std::string rest = text;
  auto with = rest.find(" with ");
  if (with != std::string::npos) {
    j.with = parse_with(rest.substr(with + 6), line);
    rest = rest.substr(0, with);
  }
  std::istringstream in(rest);
  std::string tok;
  in >> j.lemma;
  if (j.lemma.empty()) throw ParseError("missing lemma id", line);
  bool have_pos = false;
  while (in >> tok) {
    if (tok == "rev") {
      j.reversed = true;
    } else if (tok == "at" && want_position) {
      if (!(in >> tok)) throw ParseError("missing position", line);
      j.position = parse_pos(tok, j);
      have_pos = true;
    } else {
      throw ParseError("unexpected '" + tok + "' in justification", line);
    }
  }
  if (want_position && !have_pos) throw ParseError("rewrite needs 'at <position>'", line);
  return j;
}

Justification parse_just(const std::string& text, std::size_t line) {
  Justification j;
  std::istringstream in(text);
  std::string head;
  in >> head;
  if (head == "easy") {
    j.kind = Justification::Kind::Easy;
    if (!(in >> j.depth)) throw ParseError("easy needs a depth", line);
    return j;
  }
  if (head == "ac") {
    j.kind = Justification::Kind::Ac;
    return j;
  }
  if (head == "def") {
    j.kind = Justification::Kind::Def;
    std::string at, pos;
    in >> j.connective >> at >> pos;
    if (at != "at" || pos.empty()) throw ParseError("def needs 'def <conn> at <position>'", line);
    connective_kind(j.connective);
    j.position = parse_pos(pos, j);
    return j;
  }
  if (head == "ins" || head == "del") {
    j.kind = head == "ins" ? Justification::Kind::Insert : Justification::Kind::Delete;
    std::string body = trim(std::string_view(text).substr(3));
    auto at = body.find(" at ");
    auto by = body.find(" by ", at == std::string::npos ? 0 : at);
    if (at == std::string::npos || by == std::string::npos)
      throw ParseError(head + " needs '<formula> at <position> by <justification>'", line);
    j.conjunct = parse(body.substr(0, at));
    j.position = parse_pos(trim(body.substr(at + 4, by - at - 4)), j);
    std::string sub = trim(body.substr(by + 4));
    if (sub.rfind("easy", 0) == 0)
      j.discharge.push_back(parse_just(sub, line));
    else
      j.discharge.push_back(parse_citation(sub, false, line));
    return j;
  }
  return parse_citation(text, true, line);
}

std::pair<Formula, Formula> split_claim(const std::string& text, Relation& rel, std::size_t line) {
  auto e = text.find(" ~= ");
  auto g = text.find(" >= ");
  if (e == std::string::npos && g == std::string::npos) throw ParseError("claim needs ~= or >=", line);
  std::size_t k = e != std::string::npos ? e : g;
  rel = e != std::string::npos ? Relation::Equiv : Relation::Geq;
  return {parse(text.substr(0, k)), parse(text.substr(k + 4))};
}

}  // namespace

std::string Justification::str() const {
  std::string pos = locate ? "?" : format_position(position);
  std::string w;
  if (!with.empty()) {
    w = " with ";
    bool first = true;
    for (const auto& [k, v] : with) {
      w += (first ? "" : ", ") + k + " := " + print(v);
      first = false;
    }
  }
  switch (kind) {
    case Kind::Easy: return "easy " + std::to_string(depth);
    case Kind::Ac: return "ac";
    case Kind::Def: return "def " + connective + " at " + pos;
    case Kind::Insert:
    case Kind::Delete:
      return std::string(kind == Kind::Insert ? "ins " : "del ") + print(*conjunct) + " at " + pos + " by " +
             discharge.at(0).str();
    case Kind::Cite: return lemma + (reversed ? " rev" : "") + w;
    case Kind::Rewrite: return lemma + " at " + pos + (reversed ? " rev" : "") + w;
  }
  return {};
}

std::vector<EqScript> parse_scripts(std::string_view text) {
  std::vector<EqScript> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto need_script = [&]() -> EqScript& {
      if (out.empty()) throw ParseError("statement before any 'lemma' header", lineno);
      return out.back();
    };
    if (line.rfind("lemma ", 0) == 0) {
      std::istringstream h(line.substr(6));
      EqScript s;
      std::string kw1, th, kw2;
      h >> s.id >> kw1 >> th >> kw2;
      if (kw1 != "theory" || kw2 != "claim") throw ParseError("header is 'lemma <id> theory <T> claim ...'", lineno);
      try {
        s.theory = TheoryId::parse(th);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
      std::string claim;
      std::getline(h, claim);
      auto [l, r] = split_claim(trim(claim), s.relation, lineno);
      s.lhs = l;
      s.rhs = r;
      out.push_back(std::move(s));
    } else if (line.rfind("assume ", 0) == 0) {
      EqScript& s = need_script();
      std::istringstream h(line.substr(7));
      LemmaEntry e;
      h >> e.id;
      std::string claim;
      std::getline(h, claim);
      auto [l, r] = split_claim(trim(claim), e.relation, lineno);
      e.lhs = l;
      e.rhs = r;
      e.theory = s.theory;
      e.provenance = "hypothesis";
      e.rigid = true;
      s.hypotheses.push_back(std::move(e));
    } else if (line.rfind("start ", 0) == 0) {
      need_script().chains.push_back(Chain{parse(line.substr(6)), {}});
    } else if (line[0] == '=' || line.rfind(">=", 0) == 0) {
      EqScript& s = need_script();
      if (s.chains.empty()) throw ParseError("step before 'start'", lineno);
      EqStep st;
      st.claimed = line[0] == '=' ? Relation::Equiv : Relation::Geq;
      std::string body = line.substr(line[0] == '=' ? 1 : 2);
      auto by = body.find(" by ");
      if (by == std::string::npos) throw ParseError("step needs 'by <justification>'", lineno);
      st.result = parse(trim(body.substr(0, by)));
      st.just = parse_just(trim(body.substr(by + 4)), lineno);
      s.chains.back().steps.push_back(std::move(st));
    } else {
      throw ParseError("unrecognized line", lineno);
    }
  }
  return out;
}

std::string write_script(const EqScript& s) {
  std::ostringstream o;
  o << "lemma " << s.id << " theory " << s.theory.name() << " claim " << print(s.lhs) << ' '
    << relation_symbol(s.relation) << ' ' << print(s.rhs) << '\n';
  for (const auto& h : s.hypotheses)
    o << "assume " << h.id << ' ' << print(h.lhs) << ' ' << relation_symbol(h.relation) << ' ' << print(h.rhs) << '\n';
  for (const auto& c : s.chains) {
    o << "start " << print(c.start) << '\n';
    for (const auto& st : c.steps)
      o << (st.claimed == Relation::Equiv ? "= " : ">= ") << print(st.result) << " by " << st.just.str() << '\n';
  }
  return o.str();
}

// ---------------------------------------------------------------------------
// Checking

namespace {

struct StepContext {
  const EqScript& script;
  const Registry& reg;
  const CheckOptions& opt;
  int max_easy = 0;
  std::vector<ProofTree> proofs;
};

std::optional<LemmaEntry> lookup(const StepContext& c, const std::string& id, std::string& err) {
  for (const auto& h : c.script.hypotheses)
    if (h.id == id) return h;
  auto e = c.reg.find(id);
  if (!e) {
    err = "unknown lemma '" + id + "'";
    return std::nullopt;
  }
  if (!e->theory.leq(c.script.theory)) {
    err = "lemma '" + id + "' belongs to " + e->theory.name() + ", not usable in " + c.script.theory.name();
    return std::nullopt;
  }
  return e;
}

bool provable(StepContext& c, const Sequent& s, int depth) {
  c.max_easy = std::max(c.max_easy, depth);
  auto p = bounded_prove(s, c.script.theory, depth);
  if (p && c.opt.keep_proofs) c.proofs.push_back(std::move(*p));
  return p.has_value();
}

// Discharges |- g by a citation or a bounded proof.
std::string discharge(StepContext& c, const Justification& j, const Formula& g) {
  if (j.kind == Justification::Kind::Easy) {
    if (j.depth > c.opt.easy_depth) return "easy depth " + std::to_string(j.depth) + " exceeds the budget";
    if (!provable(c, Sequent{{}, g}, j.depth))
      return "no proof of |- " + print(g) + " within depth " + std::to_string(j.depth);
    return {};
  }
  std::string err;
  auto e = lookup(c, j.lemma, err);
  if (!e) return err;
  std::vector<std::pair<Formula, Formula>> forms;  // (from, to) readings as lhs >= rhs
  if (j.reversed && e->relation != Relation::Equiv) return "lemma '" + e->id + "' cannot be used reversed";
  if (!j.reversed) forms.emplace_back(e->lhs, e->rhs);
  if (e->relation == Relation::Equiv) forms.emplace_back(e->rhs, e->lhs);
  const Formula target = canonical(g);
  Binding b0;
  try {
    b0 = initial_binding(*e, j.with);
  } catch (const std::invalid_argument& ex) {
    return ex.what();
  }
  for (const auto& [from, to] : forms) {
    std::vector<Formula> thms{Formula::imp(from, to)};
    if (canonical(from) == zero_core()) thms.push_back(to);
    for (const auto& t : thms) {
      Formula pat = instantiate(metaize(t, *e), b0);
      bool found = false;
      Matcher m(kMatchCap);
      try {
        m.match(pat, target, b0, [&](const Binding&) {
          found = true;
          throw Stop{};
        });
      } catch (const Stop&) {
      }
      if (found) return {};
    }
  }
  return "lemma '" + e->id + "' does not yield |- " + print(g);
}

// Relation old -> new established by the step, or an error message.
std::string check_step(StepContext& c, const Formula& f, const EqStep& st, const Position& pos, Relation& got) {
  const Justification& j = st.just;
  const Formula& g = st.result;
  using K = Justification::Kind;
  switch (j.kind) {
    case K::Ac:
      if (!(canonical(f) == canonical(g))) return "formulas differ beyond AC and unit laws";
      got = Relation::Equiv;
      return {};
    case K::Def: {
      Kind want = connective_kind(j.connective);
      bool here = (valid_position(f, pos) && subterm_at(f, pos).is(want)) ||
                  (valid_position(g, pos) && subterm_at(g, pos).is(want));
      if (!here) return "no " + j.connective + " at " + format_position(pos);
      if (!(canonical(f) == canonical(g))) return "unfolding does not produce the stated formula";
      got = Relation::Equiv;
      return {};
    }
    case K::Easy: {
      if (j.depth > c.opt.easy_depth) return "easy depth " + std::to_string(j.depth) + " exceeds the budget";
      if (!provable(c, Sequent{{f}, g}, j.depth)) return "no bounded proof of the step within depth " + std::to_string(j.depth);
      got = Relation::Geq;
      if (st.claimed == Relation::Equiv) {
        if (!provable(c, Sequent{{g}, f}, j.depth)) return "converse direction has no bounded proof";
        got = Relation::Equiv;
      }
      return {};
    }
    case K::Insert:
    case K::Delete: {
      if (!valid_position(f, pos)) return "invalid position " + format_position(pos);
      const Formula& conj = *j.conjunct;
      Formula sub = subterm_at(f, pos);
      Formula next = f;
      if (j.kind == K::Insert) {
        next = replace_at(f, pos, Formula::tensor(sub, conj));
      } else {
        auto fs = factors(canonical(sub));
        for (const auto& x : factors(canonical(conj))) {
          auto it = std::find(fs.begin(), fs.end(), x);
          if (it == fs.end()) return "no factor " + print(sugar(x)) + " at " + format_position(pos);
          fs.erase(it);
        }
        next = replace_at(f, pos, prod(fs));
      }
      if (!(canonical(next) == canonical(g))) return "result differs from the stated formula";
      std::string err = discharge(c, j.discharge.at(0), conj);
      if (!err.empty()) return "conjunct " + print(conj) + ": " + err;
      got = Relation::Equiv;
      return {};
    }
    case K::Rewrite: {
      std::string err;
      auto e = lookup(c, j.lemma, err);
      if (!e) return err;
      if (!valid_position(f, pos)) return "invalid position " + format_position(pos);
      Binding b0;
      try {
        b0 = initial_binding(*e, j.with);
      } catch (const std::invalid_argument& ex) {
        return ex.what();
      }
      auto rel = induced(*e, j.reversed, occurrence_polarity(f, pos));
      if (!rel) {
        auto pol = occurrence_polarity(f, pos);
        return std::string("polarity violation: ") + (j.reversed ? "reversed " : "") + "use of >= lemma '" + e->id +
               "' at a " + (pol ? (*pol == Polarity::Positive ? "positive" : "negative") : "mixed") +
               " position strengthens the formula";
      }
      Formula from = metaize(j.reversed ? e->rhs : e->lhs, *e);
      Formula to = metaize(j.reversed ? e->lhs : e->rhs, *e);
      std::optional<Formula> hint;
      if (valid_position(g, pos)) hint = canonical(subterm_at(g, pos));
      auto cands = rewrite_candidates(canonical(subterm_at(f, pos)), from, to, b0, hint);
      if (cands.empty()) return "lemma '" + e->id + "' does not match at " + format_position(pos);
      const Formula target = canonical(g);
      for (const auto& r : cands) {
        if (canonical(replace_at(f, pos, r)) == target) {
          got = *rel;
          return {};
        }
      }
      return "rewriting with '" + e->id + "' at " + format_position(pos) + " does not give the stated formula";
    }
    case K::Cite: break;
  }
  return "malformed justification";
}

}  // namespace

std::optional<std::string> cite_theorem(const Registry& reg, TheoryId t, const Formula& g) {
  EqScript ctx;
  ctx.theory = t;
  CheckOptions opt;
  StepContext c{ctx, reg, opt, 0, {}};
  for (const auto& e : reg.entries()) {
    if (e.rigid || !e.theory.leq(t)) continue;
    Justification j;
    j.kind = Justification::Kind::Cite;
    j.lemma = e.id;
    if (discharge(c, j, g).empty()) return e.id;
  }
  return std::nullopt;
}

ScriptResult check_script(const EqScript& s, const Registry& reg, const CheckOptions& opt) {
  ScriptResult res;
  StepContext c{s, reg, opt, 0, {}};
  auto fail = [&](std::string msg) {
    res.verdict = Verdict::fail("lemma " + s.id + ": " + std::move(msg));
    res.max_easy_depth = c.max_easy;
    return res;
  };
  if (s.chains.empty()) return fail("no chain");
  if (s.chains.size() > 2) return fail("at most two chains");
  const Formula L = canonical(s.lhs), R = canonical(s.rhs);
  std::vector<Relation> chain_rel;
  for (std::size_t ci = 0; ci < s.chains.size(); ++ci) {
    const Chain& ch = s.chains[ci];
    const Formula& want_start = ci == 0 ? L : R;
    const Formula& want_end = ci == 0 ? R : L;
    if (!(canonical(ch.start) == want_start))
      return fail(std::string("chain ") + std::to_string(ci + 1) + " must start at the claim's " + (ci == 0 ? "left" : "right") + " side");
    Formula cur = ch.start;
    Relation acc = Relation::Equiv;
    for (std::size_t k = 0; k < ch.steps.size(); ++k) {
      const EqStep& st = ch.steps[k];
      ++res.steps;
      std::string where = "step " + std::to_string(k + 1) + (ci ? " of the converse chain" : "");
      Relation got = Relation::Equiv;
      std::string err;
      if (st.just.locate) {
        if (!opt.locate) return fail(where + ": position '?' is not allowed");
        err = "no position works";
        for (const auto& p : positions(cur)) {
          Relation r = Relation::Equiv;
          std::string e2;
          try {
            e2 = check_step(c, cur, st, p, r);
          } catch (const std::exception& ex) {
            e2 = ex.what();
          }
          if (e2.empty() && !(st.claimed == Relation::Equiv && r == Relation::Geq)) {
            err.clear();
            got = r;
            res.located.push_back(format_position(p));
            break;
          }
        }
      } else {
        try {
          err = check_step(c, cur, st, st.just.position, got);
        } catch (const std::exception& ex) {
          err = ex.what();
        }
      }
      if (!err.empty()) return fail(where + " (" + st.just.str() + "): " + err);
      if (st.claimed == Relation::Equiv && got == Relation::Geq)
        return fail(where + ": claimed = but the justification only gives >=");
      acc = compose(acc, st.claimed == Relation::Equiv ? Relation::Equiv : got);
      cur = st.result;
    }
    if (!(canonical(cur) == want_end))
      return fail(std::string("chain ") + std::to_string(ci + 1) + " ends at " + print(cur) + ", not at the claim's " +
                  (ci == 0 ? "right" : "left") + " side");
    chain_rel.push_back(acc);
  }
  Relation est = chain_rel[0];
  if (chain_rel.size() == 2) est = Relation::Equiv;
  res.established = est;
  res.max_easy_depth = c.max_easy;
  res.proofs = std::move(c.proofs);
  if (s.relation == Relation::Equiv && est != Relation::Equiv)
    return fail("chain establishes only >=; an equivalence needs all steps = or a converse chain");
  if (s.relation == Relation::Geq && chain_rel.size() == 2) return fail("a >= claim takes one chain");
  res.verdict = Verdict::pass();
  return res;
}

std::string fill_positions(std::string_view text, const Registry& reg, int easy_depth) {
  Registry local = reg;
  auto scripts = parse_scripts(text);
  std::vector<std::string> found;
  CheckOptions opt;
  opt.easy_depth = easy_depth;
  opt.locate = true;
  for (const auto& s : scripts) {
    auto r = check_script(s, local, opt);
    if (!r.verdict) throw std::runtime_error(r.verdict.message);
    found.insert(found.end(), r.located.begin(), r.located.end());
    if (!s.hypothetical()) local.register_lemma(entry_of(s), s, opt);
  }
  std::string out(text);
  std::size_t at = 0;
  for (const auto& p : found) {
    at = out.find(" at ?", at);
    if (at == std::string::npos) break;
    out.replace(at + 4, 1, p);
    at += 4 + p.size();
  }
  return out;
}

}  // namespace luk
