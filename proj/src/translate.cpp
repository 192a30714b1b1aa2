#include "lukprover/translate.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "lukprover/sequent.hpp"

namespace luk {

std::string_view translation_name(Translation t) {
  switch (t) {
    case Translation::Kolmogorov: return "kolmogorov";
    case Translation::Goedel: return "goedel";
    case Translation::Gentzen: return "gentzen";
    case Translation::Glivenko: return "glivenko";
  }
  return "?";
}

Translation parse_translation(std::string_view s) {
  for (auto t : {Translation::Kolmogorov, Translation::Goedel, Translation::Gentzen, Translation::Glivenko})
    if (translation_name(t) == s) return t;
  throw std::invalid_argument("unknown translation '" + std::string(s) + "'");
}

namespace {

Formula dn(const Formula& f) { return Formula::neg(Formula::neg(f)); }

bool is_dn(const Formula& f) {
  return f.is(Kind::Imp) && f.right().is(Kind::One) && f.left().is(Kind::Imp) && f.left().right().is(Kind::One);
}

Formula tr(Translation t, const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
      return t == Translation::Goedel ? f : dn(f);
    case Kind::One:
      return f;
    case Kind::Tensor: {
      Formula r = Formula::tensor(tr(t, f.left()), tr(t, f.right()));
      return t == Translation::Kolmogorov ? dn(r) : r;
    }
    case Kind::Imp: {
      Formula a = tr(t, f.left()), b = tr(t, f.right());
      if (t == Translation::Goedel) return Formula::neg(Formula::tensor(a, Formula::neg(b)));
      Formula r = Formula::imp(a, b);
      return t == Translation::Kolmogorov ? dn(r) : r;
    }
    default:
      throw std::logic_error("translate: formula not in core form");
  }
}

}  // namespace

Formula translate(Translation t, const Formula& f) {
  Formula core = expand_derived(f);
  if (t == Translation::Glivenko) return dn(sugar(core));
  return tr(t, core);
}

namespace {

using Ctx = std::vector<Formula>;

Ctx concat(Ctx a, const Ctx& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

ProofTree asm_leaf(const Formula& a) { return ProofTree{{{a}, a}, Rule::AxASM, {}, {a}}; }

ProofTree impi(const ProofTree& p, const Formula& a) {
  Ctx g = p.conclusion.context;
  for (auto it = g.begin(); it != g.end(); ++it)
    if (*it == a) {
      g.erase(it);
      return ProofTree{{g, Formula::imp(a, p.conclusion.goal)}, Rule::ImpI, {p}, {}};
    }
  throw std::logic_error("impi: hypothesis not in context");
}

ProofTree impe(const ProofTree& arg, const ProofTree& fn) {
  return ProofTree{{concat(arg.conclusion.context, fn.conclusion.context), fn.conclusion.goal.right()},
                   Rule::ImpE, {arg, fn}, {}};
}

// p: G |- A and q: D, A |- C give G, D |- C.
ProofTree cut(const ProofTree& p, const ProofTree& q) { return impe(p, impi(q, p.conclusion.goal)); }

// G |- Y gives G |- Y^^.
ProofTree dn_intro(const ProofTree& p) {
  const Formula y = p.conclusion.goal;
  return impi(impe(p, asm_leaf(Formula::imp(y, Formula::one()))), Formula::imp(y, Formula::one()));
}

// q: D, X |- N with N = M -o 1 or N = 1 gives D, X^^ |- N.
std::optional<ProofTree> dn_elim_left(const ProofTree& q, const Formula& x) {
  const Formula one = Formula::one();
  const Formula nx = Formula::imp(x, one), nnx = Formula::imp(nx, one);
  const Formula n = q.conclusion.goal;
  if (n.is(Kind::One)) return impe(impi(q, x), asm_leaf(nnx));
  if (!n.is(Kind::Imp) || !n.right().is(Kind::One)) return std::nullopt;
  const Formula m = n.left();
  ProofTree falsum = impe(asm_leaf(m), q);            // D, X, M |- 1
  ProofTree refute = impi(falsum, x);                  // D, M |- X^
  ProofTree again = impe(refute, asm_leaf(nnx));       // D, M, X^^ |- 1
  return impi(again, m);
}

std::optional<ProofTree> kolm(const ProofTree& p, TheoryId theory) {
  const auto K = [](const Formula& f) { return expand_derived(translate(Translation::Kolmogorov, f)); };
  Ctx g;
  for (const auto& f : p.conclusion.context) g.push_back(K(f));
  const Formula goal = K(p.conclusion.goal);
  switch (p.rule) {
    case Rule::AxASM:
    case Rule::AxEFQ: {
      Formula a = K(p.inst.at(0));
      return ProofTree{{g, goal}, p.rule, {}, {a}};
    }
    case Rule::AxDNE: {
      // K(A^^) |- K(A). K(A) is W^^ or 1; the first case is proved once with
      // W atomic and instantiated.
      const Formula ka = K(p.inst.at(0));
      const Formula kdn = K(Formula::neg(Formula::neg(p.inst.at(0))));
      std::optional<ProofTree> base;
      if (is_dn(ka)) {
        const Formula w = Formula::var("W");
        const Formula dw = expand_derived(dn(w));
        const Formula sw = expand_derived(dn(Formula::imp(dn(Formula::imp(dw, Formula::one())), Formula::one())));
        auto schema = bounded_prove(Sequent{{sw}, dw}, theory, 8);
        if (schema) base = substitute(*schema, {{"W", ka.left().left()}});
      } else {
        base = bounded_prove(Sequent{{kdn}, ka}, theory, 8);
      }
      if (!base) return std::nullopt;
      ProofTree out = *base;
      Ctx extra = g;
      for (auto it = extra.begin(); it != extra.end(); ++it)
        if (*it == kdn) {
          extra.erase(it);
          break;
        }
      for (const auto& f : extra) out = weaken(out, f);
      return out;
    }
    case Rule::ImpI: {
      auto q = kolm(p.premises.at(0), theory);
      if (!q) return std::nullopt;
      const Formula a = K(p.conclusion.goal.left());
      return dn_intro(impi(*q, a));
    }
    case Rule::TensorI: {
      auto l = kolm(p.premises.at(0), theory), r = kolm(p.premises.at(1), theory);
      if (!l || !r) return std::nullopt;
      ProofTree t{{concat(l->conclusion.context, r->conclusion.context),
                   Formula::tensor(l->conclusion.goal, r->conclusion.goal)},
                  Rule::TensorI, {*l, *r}, {}};
      return dn_intro(t);
    }
    case Rule::ImpE: {
      auto arg = kolm(p.premises.at(0), theory), fn = kolm(p.premises.at(1), theory);
      if (!arg || !fn) return std::nullopt;
      const Formula ka = arg->conclusion.goal;
      const Formula x = Formula::imp(ka, goal);  // fn proves x^^
      auto step = dn_elim_left(impe(asm_leaf(ka), asm_leaf(x)), x);
      if (!step) return std::nullopt;
      return cut(*arg, cut(*fn, *step));
    }
    case Rule::TensorE: {
      auto pair = kolm(p.premises.at(0), theory), body = kolm(p.premises.at(1), theory);
      if (!pair || !body) return std::nullopt;
      const Formula ab = pair->conclusion.goal;  // (KA * KB)^^
      const Formula x = ab.left().left();
      ProofTree open{{concat(body->conclusion.context, {}), body->conclusion.goal}, Rule::TensorE,
                     {asm_leaf(x), *body}, {}};
      // context of `open`: D, x (body's context minus KA, KB, plus x)
      Ctx d = body->conclusion.context;
      for (const Formula& f : {x.left(), x.right()})
        for (auto it = d.begin(); it != d.end(); ++it)
          if (*it == f) {
            d.erase(it);
            break;
          }
      d.push_back(x);
      open.conclusion.context = d;
      auto step = dn_elim_left(open, x);
      if (!step) return std::nullopt;
      return cut(*pair, *step);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<ProofTree> kolmogorov_proof(const ProofTree& p, TheoryId theory) {
  auto out = kolm(p, theory);
  if (!out || !check_proof(*out, theory)) return std::nullopt;
  return out;
}

Normalized normalize(const Formula& f, const Registry& reg, TheoryId theory,
                     const std::vector<std::pair<std::string, bool>>& rules) {
  std::vector<std::pair<LemmaEntry, bool>> usable;
  for (const auto& [id, rev] : rules) {
    auto e = reg.find(id);
    if (e && e->theory.leq(theory) && e->relation == Relation::Equiv) usable.emplace_back(*e, rev);
  }
  Normalized out{f, {}};
  for (int iter = 0; iter < 500; ++iter) {
    bool changed = false;
    auto ps = positions(out.formula);
    for (auto it = ps.rbegin(); it != ps.rend() && !changed; ++it) {
      for (const auto& [e, rev] : usable) {
        RewriteResult r;
        try {
          r = apply_rewrite(out.formula, e, rev, *it);
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (!r.relation || canonical(r.formula) == canonical(out.formula)) continue;
        Justification j;
        j.kind = Justification::Kind::Rewrite;
        j.lemma = e.id;
        j.reversed = rev;
        j.position = *it;
        out.steps.push_back(EqStep{Relation::Equiv, r.formula, j});
        out.formula = r.formula;
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  return out;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "FAIL";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t DnsReport::count(Outcome o) const {
  std::size_t n = 0;
  for (const auto& i : items) n += i.outcome == o;
  return n;
}

std::string DnsReport::str() const {
  std::ostringstream o;
  for (const auto& i : items)
    o << i.condition << ' ' << outcome_name(i.outcome) << " [" << i.theory.name() << "] " << i.goal.str() << "  -- "
      << i.evidence << '\n';
  o << "dns " << translation_name(translation) << ' ' << theory.name() << ": " << count(Outcome::Pass) << " pass, "
    << count(Outcome::Fail) << " fail, " << count(Outcome::Inconclusive) << " inconclusive\n";
  return o.str();
}

std::vector<Formula> dns_base_formulas() {
  return {parse("P"), parse("Q"), parse("P * Q"), parse("P -o Q"), parse("1"), parse("P^")};
}

std::vector<Formula> dne_instances() {
  std::vector<Formula> out;
  for (const char* x : {"P", "Q", "P * Q", "P -o Q"}) {
    Formula f = parse(x);
    out.push_back(Formula::imp(dn(f), f));
  }
  return out;
}

std::vector<Formula> regression_list(const Registry& reg, TheoryId theory) {
  std::vector<Formula> out;
  const TheoryId classical = theory.with_dne();
  const Formula zero = canonical(Formula::zero());
  auto add = [&](const Formula& f) {
    for (const auto& g : out)
      if (g == f) return;
    out.push_back(f);
  };
  for (const auto& e : reg.entries()) {
    if (e.rigid || !e.theory.leq(classical)) continue;
    add(canonical(e.lhs) == zero ? e.rhs : Formula::imp(e.lhs, e.rhs));
    if (e.relation == Relation::Equiv) add(canonical(e.rhs) == zero ? e.lhs : Formula::imp(e.rhs, e.lhs));
  }
  for (const auto& f : dne_instances()) add(f);
  return out;
}

namespace {

// Over a Lukasiewicz base double negations are pushed down to the atoms;
// over the affine base only the ones known to be stable are removed.
const std::vector<std::pair<std::string, bool>>& normal_rules(TheoryId t) {
  static const std::vector<std::pair<std::string, bool>> affine{
      {"dne", false},           {"tneg", false},       {"dn-imp-stable", false}, {"dn-imp-stable2", false},
      {"dn-imp-stable3", false}, {"dn-hom-tensor", false}, {"dn-hom-imp", false}, {"dn-imp-in", true},
      {"dn-imp-in2", true},     {"dn-imp-in3", true}};
  static const std::vector<std::pair<std::string, bool>> luk{
      {"dne", false}, {"tneg", false}, {"dn-hom-tensor", false}, {"dn-hom-imp", false}};
  return t.has_cwc() ? luk : affine;
}

// Steps leading from n.formula back to the formula n was computed from. A
// forward rewrite may reorder a tensor spine, so the reversed step is
// relocated when the original position no longer reproduces the source.
std::vector<EqStep> undo(const Normalized& n, const Formula& original, const Registry& reg) {
  std::vector<EqStep> out;
  for (std::size_t k = n.steps.size(); k-- > 0;) {
    EqStep s = n.steps[k];
    const Formula& from = n.steps[k].result;
    s.result = k == 0 ? original : n.steps[k - 1].result;
    s.just.reversed = !s.just.reversed;
    const Formula want = canonical(s.result);
    auto e = reg.find(s.just.lemma);
    auto works = [&](const Position& p) {
      try {
        return canonical(apply_rewrite(from, *e, s.just.reversed, p).formula) == want;
      } catch (const std::invalid_argument&) {
        return false;
      }
    };
    if (e && !works(s.just.position))
      for (const auto& p : positions(from))
        if (works(p)) {
          s.just.position = p;
          break;
        }
    out.push_back(s);
  }
  return out;
}

// Drops double negations at positive positions of the goal as long as the
// sequent stays valid in the small algebras of the theory. Returns the
// formulas visited and the positions stripped.
std::vector<std::pair<Formula, Position>> strip_dn(const std::vector<Formula>& ctx, const Formula& goal,
                                                  TheoryId theory) {
  std::vector<std::pair<Formula, Position>> out;
  Formula cur = expand_derived(goal);
  for (bool again = true; again;) {
    again = false;
    for (const auto& p : positions(cur)) {
      const Formula& sub = subterm_at(cur, p);
      if (!is_dn(sub) || polarity_at(cur, p) != Polarity::Positive) continue;
      Formula next = replace_at(cur, p, sub.left().left());
      if (!valid_in_class(Sequent{ctx, next}, theory, 4)) continue;
      out.emplace_back(next, p);
      cur = next;
      again = true;
      break;
    }
  }
  return out;
}

struct Attempt {
  Outcome outcome = Outcome::Inconclusive;
  std::string evidence;
  std::optional<Countermodel> cm;
};

Justification rewrite_just(std::string lemma, bool rev, Position p) {
  Justification j;
  j.kind = Justification::Kind::Rewrite;
  j.lemma = std::move(lemma);
  j.reversed = rev;
  j.position = std::move(p);
  return j;
}

// Chain from `from` to `to` (or nullopt): normalize both ends with oriented
// equivalences, close the gap with a bounded proof, walk back to `to`.
std::optional<Chain> bridge(const Formula& from, const Formula& to, bool has_context, TheoryId theory,
                            const DnsOptions& opt, const Registry& reg) {
  Normalized nl = normalize(from, reg, theory, normal_rules(theory));
  Normalized nr = normalize(to, reg, theory, normal_rules(theory));
  Chain ch{from, nl.steps};
  if (!(canonical(nl.formula) == canonical(nr.formula))) {
    std::vector<Formula> ctx;
    if (has_context) ctx.push_back(nl.formula);
    auto stripped = strip_dn(ctx, nr.formula, theory);
    Formula target = stripped.empty() ? nr.formula : stripped.back().first;
    if (!bounded_prove(Sequent{ctx, target}, theory, opt.depth)) return std::nullopt;
    Justification j;
    j.kind = Justification::Kind::Easy;
    j.depth = opt.depth;
    ch.steps.push_back(EqStep{Relation::Geq, target, j});
    for (std::size_t k = stripped.size(); k-- > 0;)
      ch.steps.push_back(EqStep{Relation::Geq, k == 0 ? nr.formula : stripped[k - 1].first,
                                rewrite_just("dn-intro", false, stripped[k].second)});
  }
  const Formula& last = ch.steps.empty() ? ch.start : ch.steps.back().result;
  if (!(last == nr.formula)) {
    Justification j;
    j.kind = Justification::Kind::Ac;
    ch.steps.push_back(EqStep{Relation::Equiv, nr.formula, j});
  }
  for (auto& st : undo(nr, to, reg)) ch.steps.push_back(st);
  return ch;
}

// Turns the Gentzen image of f into f^^ by pulling double negations up
// through every connective, leaves first. `cur` is the whole formula, p the
// position of the image of f inside it. The constants need no step: their
// double negations are equal to them up to canonical().
void pull_dn(const Formula& f, Formula& cur, const Position& p, std::vector<EqStep>& out, const Registry& reg) {
  if (!f.is(Kind::Tensor) && !f.is(Kind::Imp)) return;
  for (int i : {0, 1}) {
    Position q = p;
    q.push_back(i);
    pull_dn(i == 0 ? f.left() : f.right(), cur, q, out, reg);
  }
  const std::string lemma = f.is(Kind::Tensor) ? "dn-hom-tensor" : "dn-hom-imp";
  auto e = reg.find(lemma);
  if (!e) throw std::invalid_argument("missing lemma " + lemma);
  Justification j = rewrite_just(lemma, true, p);
  j.with.insert_or_assign("A", f.left());
  j.with.insert_or_assign("B", f.right());
  cur = apply_rewrite(cur, *e, true, p, j.with).formula;
  out.push_back(EqStep{Relation::Equiv, cur, j});
}

// Chain 0 >= X[P := P^^] when X is the theorem form of a registered lemma.
std::optional<Chain> cite_instance(const Formula& x, TheoryId theory, const Registry& reg) {
  const Formula cx = canonical(x), zero = canonical(Formula::zero());
  for (const auto& e : reg.entries()) {
    if (e.rigid || !e.theory.leq(theory)) continue;
    Substitution sigma;
    for (const auto& v : variables(e.lhs)) sigma.insert_or_assign(v, dn(Formula::var(v)));
    for (const auto& v : variables(e.rhs)) sigma.insert_or_assign(v, dn(Formula::var(v)));
    for (bool rev : {false, true}) {
      if (rev && e.relation != Relation::Equiv) continue;
      const Formula& l = rev ? e.rhs : e.lhs;
      const Formula& r = rev ? e.lhs : e.rhs;
      Chain ch{Formula::zero(), {}};
      try {
        if (canonical(l) == zero) {
          if (!(canonical(r) == cx)) continue;
          Formula g = substitute(r, sigma);
          apply_rewrite(Formula::zero(), e, rev, {}, sigma);
          ch.steps.push_back(EqStep{Relation::Geq, g, rewrite_just(e.id, rev, {})});
        } else {
          if (!(canonical(Formula::imp(l, r)) == cx)) continue;
          Formula gl = substitute(l, sigma), gr = substitute(r, sigma);
          Justification refl = rewrite_just("imp-refl", false, {});
          refl.with.insert_or_assign("A", gl);
          ch.steps.push_back(EqStep{Relation::Geq, Formula::imp(gl, gl), refl});
          Justification use = rewrite_just(e.id, rev, {1});
          use.with = sigma;
          ch.steps.push_back(EqStep{Relation::Geq, Formula::imp(gl, gr), use});
        }
      } catch (const std::invalid_argument&) {
        continue;
      }
      return ch;
    }
  }
  return std::nullopt;
}

// |- X^^ through |- gentzen(X).
std::optional<Chain> via_gentzen(const Formula& goal, TheoryId theory, const DnsOptions& opt, const Registry& reg) {
  Formula core = expand_derived(goal);
  if (!is_dn(core)) return std::nullopt;
  Formula x = core.left().left();
  Formula g = translate(Translation::Gentzen, x);
  std::optional<Chain> ch;
  if (bounded_prove(Sequent{{}, g}, theory, opt.depth)) {
    Justification j;
    j.kind = Justification::Kind::Easy;
    j.depth = opt.depth;
    ch = Chain{Formula::zero(), {EqStep{Relation::Geq, g, j}}};
  } else if (!(ch = cite_instance(x, theory, reg))) {
    ch = bridge(Formula::zero(), g, false, theory, opt, reg);
  }
  if (!ch) return std::nullopt;
  Formula cur = g;
  if (!ch->steps.empty() && !(ch->steps.back().result == g)) {
    Justification j;
    j.kind = Justification::Kind::Ac;
    ch->steps.push_back(EqStep{Relation::Equiv, g, j});
  }
  try {
    pull_dn(expand_derived(x), cur, {}, ch->steps, reg);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  Justification j;
  j.kind = Justification::Kind::Ac;
  ch->steps.push_back(EqStep{Relation::Equiv, goal, j});
  return ch;
}

// `origin`: for a DNS2 obligation, the translation and the classical theorem
// it came from.
struct Origin {
  Translation t;
  Formula source;
  TheoryId classical;
};

Attempt discharge(const Sequent& s, TheoryId theory, const DnsOptions& opt, const Registry& reg,
                  std::chrono::steady_clock::time_point deadline, const std::optional<Origin>& origin) {
  Attempt a;
  if (bounded_prove(s, theory, opt.depth)) {
    a.outcome = Outcome::Pass;
    a.evidence = "bounded proof, depth " + std::to_string(opt.depth);
    return a;
  }
  const Formula g = s.context.empty() ? s.goal : Formula::imp(s.context[0], s.goal);
  if (auto id = cite_theorem(reg, theory, g)) {
    a.outcome = Outcome::Pass;
    a.evidence = "lemma " + *id;
    return a;
  }
  EqScript sc;
  sc.id = "dns-obligation";
  sc.theory = theory;
  sc.lhs = s.context.empty() ? Formula::zero() : s.context[0];
  sc.relation = Relation::Geq;
  sc.rhs = s.goal;
  CheckOptions co;
  co.easy_depth = opt.depth;
  auto try_chain = [&](std::optional<Chain> ch, const char* how) {
    if (!ch) return false;
    sc.chains = {*ch};
    auto r = check_script(sc, reg, co);
    if (!r.verdict) return false;
    a.outcome = Outcome::Pass;
    a.evidence = std::string(how) + ", " + std::to_string(r.steps) + " steps";
    return true;
  };
  if (try_chain(bridge(sc.lhs, sc.rhs, !s.context.empty(), theory, opt, reg), "script")) return a;
  if (s.context.empty() && try_chain(via_gentzen(s.goal, theory, opt, reg), "script via gentzen image")) return a;
  if (origin && origin->t == Translation::Kolmogorov) {
    if (auto src = bounded_prove(Sequent{{}, origin->source}, origin->classical, opt.depth))
      if (auto k = kolmogorov_proof(*src, theory)) {
        a.outcome = Outcome::Pass;
        a.evidence = "translated derivation, height " + std::to_string(k->height());
        return a;
      }
  }
  bool exhausted = false;
  double left = std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
  if (left > 0) {
    if (auto cm = find_countermodel(s, theory, opt.max_size, left, &exhausted)) {
      a.outcome = Outcome::Fail;
      a.evidence = "countermodel, size " + std::to_string(cm->algebra.n) + ", " + format_assignment(cm->assignment);
      a.cm = std::move(cm);
      return a;
    }
  }
  a.evidence = "no proof within depth " + std::to_string(opt.depth) + ", " +
               (exhausted ? "no countermodel up to size " + std::to_string(opt.max_size)
                          : std::string("countermodel search stopped by the time budget"));
  return a;
}

}  // namespace

DnsReport check_dns(Translation t, TheoryId theory, const std::vector<Formula>& formulas,
                    const std::vector<Formula>& theorems, const DnsOptions& opt) {
  if (!theory.has_efq()) throw std::invalid_argument("double negation translations need an intuitionistic base");
  const Registry& reg = opt.registry ? *opt.registry : Registry::primitives();
  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(opt.seconds));
  DnsReport rep;
  rep.translation = t;
  rep.theory = theory;
  auto item = [&](std::string cond, const Formula& src, Sequent goal, TheoryId th) {
    std::optional<Origin> origin;
    if (cond == "DNS2") origin = Origin{t, src, theory.with_dne()};
    Attempt a = discharge(goal, th, opt, reg, deadline, origin);
    rep.items.push_back(DnsItem{std::move(cond), src, std::move(goal), th, a.outcome, a.evidence, a.cm});
  };
  const TheoryId classical = theory.with_dne();
  for (const auto& a : formulas) {
    Formula at = translate(t, a);
    item("DNS1", a, Sequent{{at}, a}, classical);
    item("DNS1", a, Sequent{{a}, at}, classical);
  }
  for (const auto& a : theorems) item("DNS2", a, Sequent{{}, translate(t, a)}, theory);
  for (const auto& a : formulas) {
    Formula at = translate(t, a);
    item("DNS3", a, Sequent{{dn(at)}, at}, theory);
  }
  return rep;
}

}  // namespace luk
