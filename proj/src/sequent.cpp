#include "lukprover/sequent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <mutex>
#include <sstream>

#include "lukprover/algebra.hpp"

namespace luk {

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::ImpI: return "impi";
    case Rule::ImpE: return "impe";
    case Rule::TensorI: return "tensori";
    case Rule::TensorE: return "tensore";
    case Rule::AxASM: return "asm";
    case Rule::AxCON: return "con";
    case Rule::AxEFQ: return "efq";
    case Rule::AxDNE: return "dne";
    case Rule::AxCWC: return "cwc";
  }
  return "?";
}

Rule parse_rule(std::string_view s) {
  for (Rule r : {Rule::ImpI, Rule::ImpE, Rule::TensorI, Rule::TensorE, Rule::AxASM, Rule::AxCON,
                 Rule::AxEFQ, Rule::AxDNE, Rule::AxCWC})
    if (rule_name(r) == s) return r;
  throw ParseError("unknown rule '" + std::string(s) + "'", 0);
}

bool is_axiom(Rule r) {
  return r == Rule::AxASM || r == Rule::AxCON || r == Rule::AxEFQ || r == Rule::AxDNE || r == Rule::AxCWC;
}

std::size_t ProofTree::size() const {
  std::size_t s = 1;
  for (const auto& p : premises) s += p.size();
  return s;
}

std::size_t ProofTree::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

namespace {

using Multiset = std::vector<Formula>;  // sorted

Multiset expanded(const std::vector<Formula>& ctx) {
  Multiset out;
  out.reserve(ctx.size());
  for (const auto& f : ctx) out.push_back(expand_derived(f));
  std::sort(out.begin(), out.end());
  return out;
}

Multiset plus(Multiset a, const Multiset& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

Multiset with(Multiset a, const Formula& f) {
  a.insert(std::upper_bound(a.begin(), a.end(), f), f);
  return a;
}

bool contains(const Multiset& a, const Formula& f) { return std::binary_search(a.begin(), a.end(), f); }

// Removes one copy of f; returns false if absent.
bool take(Multiset& a, const Formula& f) {
  auto it = std::lower_bound(a.begin(), a.end(), f);
  if (it == a.end() || !(*it == f)) return false;
  a.erase(it);
  return true;
}

std::string show(const Multiset& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + print(m[i]);
  return out + "}";
}

const Formula& one() {
  static const Formula f = Formula::one();
  return f;
}

Formula dneg(const Formula& a) { return Formula::imp(Formula::imp(a, one()), one()); }

Verdict check_node(const ProofTree& p, TheoryId t) {
  auto fail = [&](const std::string& why) {
    return Verdict::fail(std::string(rule_name(p.rule)) + " node '" + p.conclusion.str() + "': " + why);
  };
  const Multiset ctx = expanded(p.conclusion.context);
  const Formula goal = expand_derived(p.conclusion.goal);

  if (is_axiom(p.rule)) {
    if (!p.premises.empty()) return fail("axiom leaf with premises");
    std::size_t want = p.rule == Rule::AxCWC ? 2 : 1;
    if (p.inst.size() != want) return fail("expected " + std::to_string(want) + " instantiation formula(s)");
    const Formula a = expand_derived(p.inst[0]);
    switch (p.rule) {
      case Rule::AxASM:
        if (!contains(ctx, a)) return fail("context lacks A = " + print(a));
        if (!(goal == a)) return fail("goal is not A");
        return Verdict::pass();
      case Rule::AxCON:
        if (!t.has_con()) return fail("CON is not an axiom of " + t.name());
        if (!contains(ctx, a)) return fail("context lacks A = " + print(a));
        if (!(goal == Formula::tensor(a, a))) return fail("goal is not A * A");
        return Verdict::pass();
      case Rule::AxEFQ:
        if (!t.has_efq()) return fail("EFQ is not an axiom of " + t.name());
        if (!contains(ctx, one())) return fail("context lacks 1");
        if (!(goal == a)) return fail("goal is not A");
        return Verdict::pass();
      case Rule::AxDNE:
        if (!t.has_dne()) return fail("DNE is not an axiom of " + t.name());
        if (!contains(ctx, dneg(a))) return fail("context lacks A^^");
        if (!(goal == a)) return fail("goal is not A");
        return Verdict::pass();
      case Rule::AxCWC: {
        if (!t.has_cwc()) return fail("CWC is not an axiom of " + t.name());
        const Formula b = expand_derived(p.inst[1]);
        Multiset need = ctx;
        if (!take(need, a) || !take(need, Formula::imp(a, b))) return fail("context lacks A, A -o B");
        if (!(goal == Formula::tensor(b, Formula::imp(b, a)))) return fail("goal is not B * (B -o A)");
        return Verdict::pass();
      }
      default: break;
    }
  }

  auto premise_ctx = [&](std::size_t i) { return expanded(p.premises[i].conclusion.context); };
  auto premise_goal = [&](std::size_t i) { return expand_derived(p.premises[i].conclusion.goal); };

  switch (p.rule) {
    case Rule::ImpI: {
      if (p.premises.size() != 1) return fail("expects one premise");
      if (!goal.is(Kind::Imp)) return fail("goal is not an implication");
      if (!(premise_ctx(0) == with(ctx, goal.left()))) return fail("premise context is not G, A");
      if (!(premise_goal(0) == goal.right())) return fail("premise goal is not B");
      return Verdict::pass();
    }
    case Rule::ImpE: {
      if (p.premises.size() != 2) return fail("expects two premises");
      const Formula a = premise_goal(0);
      if (!(premise_goal(1) == Formula::imp(a, goal))) return fail("second premise goal is not A -o B");
      if (!(plus(premise_ctx(0), premise_ctx(1)) == ctx))
        return fail("premise contexts " + show(premise_ctx(0)) + " + " + show(premise_ctx(1)) +
                    " do not partition " + show(ctx));
      return Verdict::pass();
    }
    case Rule::TensorI: {
      if (p.premises.size() != 2) return fail("expects two premises");
      if (!(goal == Formula::tensor(premise_goal(0), premise_goal(1)))) return fail("goal is not A * B");
      if (!(plus(premise_ctx(0), premise_ctx(1)) == ctx)) return fail("premise contexts do not partition the context");
      return Verdict::pass();
    }
    case Rule::TensorE: {
      if (p.premises.size() != 2) return fail("expects two premises");
      const Formula ab = premise_goal(0);
      if (!ab.is(Kind::Tensor)) return fail("first premise goal is not a tensor");
      Multiset delta = premise_ctx(1);
      if (!take(delta, ab.left()) || !take(delta, ab.right()))
        return fail("second premise context lacks A, B");
      if (!(premise_goal(1) == goal)) return fail("second premise goal differs from the conclusion");
      if (!(plus(premise_ctx(0), delta) == ctx)) return fail("premise contexts do not partition the context");
      return Verdict::pass();
    }
    default: return fail("unknown rule");
  }
}

}  // namespace

Verdict check_proof(const ProofTree& p, TheoryId t) {
  for (const auto& q : p.premises)
    if (Verdict v = check_proof(q, t); !v) return v;
  return check_node(p, t);
}

ProofTree weaken(const ProofTree& p, const Formula& extra) {
  ProofTree out = p;
  out.conclusion.context.push_back(extra);
  if (!out.premises.empty()) out.premises[0] = weaken(p.premises[0], extra);
  return out;
}

ProofTree substitute(const ProofTree& p, const Substitution& sigma) {
  ProofTree out{{{}, substitute(p.conclusion.goal, sigma)}, p.rule, {}, {}};
  for (const auto& f : p.conclusion.context) out.conclusion.context.push_back(substitute(f, sigma));
  for (const auto& f : p.inst) out.inst.push_back(substitute(f, sigma));
  for (const auto& q : p.premises) out.premises.push_back(substitute(q, sigma));
  return out;
}

ProofTree contraction_rule_via_axiom(const ProofTree& premise, const Formula& a) {
  Multiset ctx = expanded(premise.conclusion.context);
  Formula ea = expand_derived(a);
  take(ctx, ea);  // now G, A
  ProofTree con{{{ea}, Formula::tensor(ea, ea)}, Rule::AxCON, {}, {ea}};
  return ProofTree{{ctx, premise.conclusion.goal}, Rule::TensorE, {con, premise}, {}};
}

ProofTree contraction_axiom_premise(const Formula& a, const std::vector<Formula>& extra) {
  std::vector<Formula> left = extra;
  left.push_back(a);
  ProofTree l{{left, a}, Rule::AxASM, {}, {a}};
  ProofTree r{{{a}, a}, Rule::AxASM, {}, {a}};
  std::vector<Formula> all = left;
  all.push_back(a);
  return ProofTree{{all, Formula::tensor(a, a)}, Rule::TensorI, {l, r}, {}};
}

// ---------------------------------------------------------------------------
// Bounded search

namespace {

struct Key {
  Multiset ctx;
  Formula goal;
  friend bool operator<(const Key& a, const Key& b) {
    if (auto c = a.goal <=> b.goal; c != 0) return c < 0;
    return std::lexicographical_compare_three_way(a.ctx.begin(), a.ctx.end(), b.ctx.begin(), b.ctx.end()) < 0;
  }
};

// Small algebras of each class, used to discard invalid subgoals early.
const std::vector<FiniteAlgebra>& pruning_models(TheoryId t) {
  static std::mutex mu;
  static std::map<std::string, std::vector<FiniteAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(t.name());
  if (it != cache.end()) return it->second;
  std::vector<FiniteAlgebra> models;
  enumerate(4, class_of(t), [&](const FiniteAlgebra& m) {
    if (m.n > 1) models.push_back(m);
    return models.size() < 24;
  });
  return cache.emplace(t.name(), std::move(models)).first->second;
}

class Search {
 public:
  Search(TheoryId t, const SearchOptions& opt, SearchStats* stats)
      : t_(t), opt_(opt), stats_(stats), models_(opt.semantic_pruning ? &pruning_models(t) : nullptr) {}

  std::optional<ProofTree> prove(const Multiset& ctx, const Formula& goal, int d) {
    if (d <= 0) return std::nullopt;
    if (opt_.node_limit && nodes_ >= opt_.node_limit) return std::nullopt;
    ++nodes_;
    if (stats_) ++stats_->nodes;
    Key key{ctx, goal};
    if (auto it = proved_.find(key); it != proved_.end() && it->second.first <= d) return it->second.second;
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= d) return std::nullopt;
    if (!semantically_possible(key)) {
      if (stats_) ++stats_->pruned;
      failed_[key] = 1 << 20;
      return std::nullopt;
    }
    auto r = attempt(ctx, goal, d);
    if (r)
      proved_.insert_or_assign(key, std::make_pair(d, *r));
    else
      failed_[key] = std::max(failed_[key], d);
    return r;
  }

 private:
  bool semantically_possible(const Key& key) {
    if (!models_) return true;
    auto it = semantic_.find(key);
    if (it != semantic_.end()) return it->second;
    Sequent s{key.ctx, key.goal};
    if (t_.level == Level::Minimal) s = free_falsum(s);
    std::set<std::string> vars = variables(s.goal);
    for (const auto& c : s.context) vars.merge(variables(c));
    bool ok = true;
    if (vars.size() <= 6) {
      for (const auto& m : *models_) {
        if (std::pow(m.n, static_cast<double>(vars.size())) > 5000) continue;
        if (!valid(s, m)) {
          ok = false;
          break;
        }
      }
    }
    semantic_.emplace(key, ok);
    return ok;
  }

  static ProofTree leaf(Rule r, const Multiset& ctx, const Formula& goal, std::vector<Formula> inst) {
    return ProofTree{{ctx, goal}, r, {}, std::move(inst)};
  }

  // Splits of a multiset into (left, right), enumerated in lexicographic
  // order of the multiplicity vector sent left.
  template <class F>
  bool for_each_split(const Multiset& ctx, F&& f) {
    std::vector<std::pair<Formula, int>> groups;
    for (const auto& x : ctx) {
      if (!groups.empty() && groups.back().first == x)
        ++groups.back().second;
      else
        groups.emplace_back(x, 1);
    }
    std::vector<int> k(groups.size(), 0);
    while (true) {
      Multiset l, r;
      for (std::size_t i = 0; i < groups.size(); ++i) {
        for (int j = 0; j < groups[i].second; ++j) (j < k[i] ? l : r).push_back(groups[i].first);
      }
      if (f(l, r)) return true;
      std::size_t i = 0;
      while (i < groups.size() && k[i] == groups[i].second) k[i++] = 0;
      if (i == groups.size()) return false;
      ++k[i];
    }
  }

  std::optional<ProofTree> attempt(const Multiset& ctx, const Formula& goal, int d) {
    // Axioms: ASM, then the theory's own schemata.
    if (contains(ctx, goal)) return leaf(Rule::AxASM, ctx, goal, {goal});
    if (t_.has_con() && goal.is(Kind::Tensor) && goal.left() == goal.right() && contains(ctx, goal.left()))
      return leaf(Rule::AxCON, ctx, goal, {goal.left()});
    if (t_.has_efq() && contains(ctx, one())) return leaf(Rule::AxEFQ, ctx, goal, {goal});
    if (t_.has_dne() && contains(ctx, dneg(goal))) return leaf(Rule::AxDNE, ctx, goal, {goal});
    if (t_.has_cwc() && goal.is(Kind::Tensor) && goal.right().is(Kind::Imp) &&
        goal.right().left() == goal.left()) {
      const Formula& b = goal.left();
      const Formula& a = goal.right().right();
      Multiset need = ctx;
      if (take(need, a) && take(need, Formula::imp(a, b))) return leaf(Rule::AxCWC, ctx, goal, {a, b});
    }

    // Invertible steps do not consume depth.
    if (goal.is(Kind::Imp)) {
      auto p = prove(with(ctx, goal.left()), goal.right(), d);
      if (!p) return std::nullopt;
      return ProofTree{{ctx, goal}, Rule::ImpI, {*p}, {}};
    }
    for (const auto& f : ctx) {
      if (!f.is(Kind::Tensor)) continue;
      Multiset rest = ctx;
      take(rest, f);
      auto p = prove(with(with(rest, f.left()), f.right()), goal, d);
      if (!p) return std::nullopt;
      return ProofTree{{ctx, goal}, Rule::TensorE, {leaf(Rule::AxASM, {f}, f, {f}), *p}, {}};
    }

    const int e = d - 1;
    if (e <= 0) return std::nullopt;
    std::optional<ProofTree> out;

    if (goal.is(Kind::Tensor)) {
      for_each_split(ctx, [&](const Multiset& l, const Multiset& r) {
        auto p0 = prove(l, goal.left(), e);
        if (!p0) return false;
        auto p1 = prove(r, goal.right(), e);
        if (!p1) return false;
        out = ProofTree{{ctx, goal}, Rule::TensorI, {*p0, *p1}, {}};
        return true;
      });
      if (out) return out;
    }

    // Weak conjunction on the right: G, D |- B * (B -o A) from G |- A and
    // D |- A -o B.
    if (t_.has_cwc() && goal.is(Kind::Tensor) && goal.right().is(Kind::Imp) &&
        goal.right().left() == goal.left()) {
      const Formula& b = goal.left();
      const Formula& a = goal.right().right();
      Formula ab = Formula::imp(a, b);
      for_each_split(ctx, [&](const Multiset& l, const Multiset& r) {
        auto p0 = prove(l, a, e);
        if (!p0) return false;
        auto p1 = prove(r, ab, e);
        if (!p1) return false;
        ProofTree cwc = leaf(Rule::AxCWC, {a, ab}, goal, {a, b});
        ProofTree k1{{{a}, Formula::imp(ab, goal)}, Rule::ImpI, {cwc}, {}};
        ProofTree k{{{}, Formula::imp(a, Formula::imp(ab, goal))}, Rule::ImpI, {k1}, {}};
        ProofTree half{{l, Formula::imp(ab, goal)}, Rule::ImpE, {*p0, k}, {}};
        out = ProofTree{{ctx, goal}, Rule::ImpE, {*p1, half}, {}};
        return true;
      });
      if (out) return out;
    }
    if (t_.has_con() && goal.is(Kind::Tensor) && goal.left() == goal.right()) {
      const Formula& a = goal.left();
      if (auto p = prove(ctx, a, e)) {
        ProofTree k{{{}, Formula::imp(a, goal)}, Rule::ImpI, {leaf(Rule::AxCON, {a}, goal, {a})}, {}};
        return ProofTree{{ctx, goal}, Rule::ImpE, {*p, k}, {}};
      }
    }

    // Left implication: G, D, A -o B |- C from G |- A and D, B |- C.
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      const Formula& f = ctx[i];
      if (!f.is(Kind::Imp) || (i > 0 && ctx[i - 1] == f)) continue;
      Multiset rest = ctx;
      take(rest, f);
      for_each_split(rest, [&](const Multiset& l, const Multiset& r) {
        auto p0 = prove(l, f.left(), e);
        if (!p0) return false;
        auto p1 = prove(with(r, f.right()), goal, e);
        if (!p1) return false;
        ProofTree apply{{with(l, f), f.right()}, Rule::ImpE, {*p0, leaf(Rule::AxASM, {f}, f, {f})}, {}};
        ProofTree lam{{r, Formula::imp(f.right(), goal)}, Rule::ImpI, {*p1}, {}};
        out = ProofTree{{ctx, goal}, Rule::ImpE, {apply, lam}, {}};
        return true;
      });
      if (out) return out;
    }

    // Weak conjunction swap: G, A, A -o B |- C from G, B, B -o A |- C.
    if (t_.has_cwc()) {
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        const Formula& f = ctx[i];
        if (!f.is(Kind::Imp) || (i > 0 && ctx[i - 1] == f)) continue;
        Multiset rest = ctx;
        take(rest, f);
        if (!take(rest, f.left())) continue;
        const Formula& a = f.left();
        const Formula& b = f.right();
        Formula ba = Formula::imp(b, a);
        auto p = prove(with(with(rest, b), ba), goal, e);
        if (!p) continue;
        ProofTree cwc = leaf(Rule::AxCWC, {a, f}, Formula::tensor(b, ba), {a, b});
        return ProofTree{{ctx, goal}, Rule::TensorE, {cwc, *p}, {}};
      }
    }

    if (t_.has_con()) {
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        const Formula& f = ctx[i];
        if (i > 0 && ctx[i - 1] == f) continue;
        auto p = prove(with(ctx, f), goal, e);
        if (!p) continue;
        ProofTree con = leaf(Rule::AxCON, {f}, Formula::tensor(f, f), {f});
        Multiset rest = ctx;
        take(rest, f);
        return ProofTree{{ctx, goal}, Rule::TensorE, {con, *p}, {}};
      }
    }

    if (t_.has_dne() && !goal.is(Kind::One)) {
      auto p = prove(ctx, dneg(goal), e);
      if (p) {
        ProofTree elim{{{}, Formula::imp(dneg(goal), goal)}, Rule::ImpI,
                       {leaf(Rule::AxDNE, {dneg(goal)}, goal, {goal})}, {}};
        return ProofTree{{ctx, goal}, Rule::ImpE, {*p, elim}, {}};
      }
    }
    return std::nullopt;
  }

  TheoryId t_;
  SearchOptions opt_;
  SearchStats* stats_;
  const std::vector<FiniteAlgebra>* models_;
  std::size_t nodes_ = 0;
  std::map<Key, int> failed_;
  std::map<Key, std::pair<int, ProofTree>> proved_;
  std::map<Key, bool> semantic_;
};

}  // namespace

std::optional<ProofTree> bounded_prove(const Sequent& s, TheoryId t, const SearchOptions& opt,
                                       SearchStats* stats) {
  Search search(t, opt, stats);
  auto p = search.prove(expanded(s.context), expand_derived(s.goal), opt.depth);
  if (p) p->conclusion = s;
  return p;
}

std::optional<ProofTree> bounded_prove(const Sequent& s, TheoryId t, int depth, SearchStats* stats) {
  SearchOptions opt;
  opt.depth = depth;
  return bounded_prove(s, t, opt, stats);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

void write_node(const ProofTree& p, int indent, std::ostringstream& out) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << rule_name(p.rule) << " | " << p.conclusion.str();
  if (!p.inst.empty()) {
    static const char* names[] = {"A", "B", "C", "D"};
    out << " | ";
    for (std::size_t i = 0; i < p.inst.size(); ++i)
      out << (i ? "; " : "") << names[i] << " := " << print(p.inst[i]);
  }
  out << '\n';
  for (const auto& q : p.premises) write_node(q, indent + 2, out);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string write_proof(const ProofTree& p) {
  std::ostringstream out;
  write_node(p, 0, out);
  return out.str();
}

ProofTree read_proof(std::string_view text) {
  struct Line {
    int indent;
    ProofTree node;
  };
  std::vector<Line> lines;
  std::size_t pos = 0, lineno = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    std::string_view body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    int indent = static_cast<int>(raw.find_first_not_of(' '));
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (true) {
      std::size_t j = body.find(" | ", i);
      if (j == std::string_view::npos) {
        parts.push_back(body.substr(i));
        break;
      }
      parts.push_back(body.substr(i, j - i));
      i = j + 3;
    }
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("bad proof line " + std::to_string(lineno), lineno);
    ProofTree node{parse_sequent(parts[1]), parse_rule(trim(parts[0])), {}, {}};
    if (parts.size() == 3) {
      std::string_view inst = parts[2];
      std::size_t k = 0;
      while (k <= inst.size()) {
        std::size_t semi = inst.find(';', k);
        if (semi == std::string_view::npos) semi = inst.size();
        std::string_view item = inst.substr(k, semi - k);
        auto eq = item.find(":=");
        if (eq == std::string_view::npos) throw ParseError("bad instantiation on line " + std::to_string(lineno), lineno);
        node.inst.push_back(parse(item.substr(eq + 2)));
        k = semi + 1;
      }
    }
    lines.push_back({indent, std::move(node)});
  }
  if (lines.empty()) throw ParseError("empty proof", 0);
  // Rebuild the tree from indentation.
  std::size_t idx = 0;
  std::function<ProofTree(int)> build = [&](int indent) {
    ProofTree node = std::move(lines[idx].node);
    ++idx;
    while (idx < lines.size() && lines[idx].indent > indent) {
      if (lines[idx].indent != indent + 2) throw ParseError("bad indentation in proof", idx);
      node.premises.push_back(build(indent + 2));
    }
    return node;
  };
  if (lines[0].indent != 0) throw ParseError("proof root must not be indented", 0);
  ProofTree root = build(0);
  if (idx != lines.size()) throw ParseError("trailing lines after proof root", idx);
  return root;
}

}  // namespace luk
