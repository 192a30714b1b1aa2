#include "lukprover/hilbert.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace luk {

std::string HilbertSystemId::name() const {
  return rose_rosser ? "RoseRosser" : "H-" + theory.name();
}

HilbertSystemId HilbertSystemId::parse(std::string_view s) {
  if (s == "RoseRosser") return rosser();
  if (s.substr(0, 2) == "H-") s.remove_prefix(2);
  return of(TheoryId::parse(s));
}

const Formula& schema(std::string_view name) {
  static const std::map<std::string, Formula, std::less<>> table = [] {
    std::map<std::string, Formula, std::less<>> m;
    auto def = [&](const char* n, const char* f) { m.emplace(n, parse(f)); };
    def("Comp", "(A -o B) -o (B -o C) -o A -o C");
    def("Comm", "A * B -o B * A");
    def("Curry", "(A * B -o C) -o A -o B -o C");
    def("Uncurry", "(A -o B -o C) -o A * B -o C");
    def("Wk", "A * B -o A");
    def("EFQ", "1 -o A");
    def("DNE", "A^^ -o A");
    def("CWC", "A * (A -o B) -o B * (B -o A)");
    def("Con", "A -o A * A");
    def("A1", "A -o B -o A");
    def("A2", "(A -o B) -o (B -o C) -o A -o C");
    def("A3", "((A -o B) -o B) -o (B -o A) -o A");
    def("A4", "(A^ -o B^) -o B -o A");
    return m;
  }();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown schema '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> schemata(const HilbertSystemId& s) {
  if (s.rose_rosser) return {"A1", "A2", "A3", "A4"};
  std::vector<std::string> out{"Comp", "Comm", "Curry", "Uncurry", "Wk"};
  if (s.theory.has_efq()) out.push_back("EFQ");
  if (s.theory.has_dne()) out.push_back("DNE");
  if (s.theory.has_cwc()) out.push_back("CWC");
  if (s.theory.has_con()) out.push_back("Con");
  return out;
}

Verdict check_derivation(const HilbertDerivation& d, const HilbertSystemId& s) {
  auto allowed = schemata(s);
  std::vector<Formula> seen;
  for (std::size_t k = 0; k < d.lines.size(); ++k) {
    const HilbertLine& l = d.lines[k];
    const Formula f = expand_derived(l.formula);
    auto fail = [&](const std::string& why) {
      return Verdict::fail("line " + std::to_string(k + 1) + " '" + print(l.formula) + "': " + why);
    };
    if (l.by_axiom) {
      if (std::find(allowed.begin(), allowed.end(), l.schema) == allowed.end())
        return fail("schema " + l.schema + " is not an axiom of " + s.name());
      if (!(expand_derived(substitute(schema(l.schema), l.subst)) == f))
        return fail("not an instance of " + l.schema + " under the given substitution");
    } else {
      if (l.minor < 1 || l.major < 1 || static_cast<std::size_t>(l.minor) > k || static_cast<std::size_t>(l.major) > k)
        return fail("modus ponens cites a line that is not earlier");
      const Formula& a = seen[static_cast<std::size_t>(l.minor - 1)];
      const Formula& ab = seen[static_cast<std::size_t>(l.major - 1)];
      if (!(ab == Formula::imp(a, f)))
        return fail("line " + std::to_string(l.major) + " is not line " + std::to_string(l.minor) + " -o this line");
    }
    seen.push_back(f);
  }
  return Verdict::pass();
}

namespace {

Formula telescope(const std::vector<Formula>& ctx, const Formula& goal) {
  Formula f = goal;
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) f = Formula::imp(*it, f);
  return f;
}

}  // namespace

Formula curry_sequent(const Sequent& s, const std::vector<Formula>& order) {
  std::vector<Formula> a, b;
  for (const auto& f : s.context) a.push_back(expand_derived(f));
  for (const auto& f : order) b.push_back(expand_derived(f));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (!(a == b)) throw std::invalid_argument("order is not a permutation of the context");
  return telescope(order, s.goal);
}

Formula curry_sequent(const Sequent& s) { return telescope(s.context, s.goal); }

// ---------------------------------------------------------------------------
// Sequent proofs to derivations

namespace {

class Builder {
 public:
  std::vector<HilbertLine> lines;

  Formula at(int i) const { return lines[static_cast<std::size_t>(i - 1)].formula; }

  int ax(const char* name, Substitution sigma) {
    Formula f = expand_derived(substitute(schema(name), sigma));
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    lines.push_back({f, true, name, std::move(sigma), -1, -1});
    return remember(f);
  }

  int mp(int minor, int major) {
    const Formula ab = at(major);
    if (!ab.is(Kind::Imp) || !(ab.left() == at(minor)))
      throw std::logic_error("modus ponens mismatch: " + print(at(minor)) + " / " + print(ab));
    Formula b = ab.right();
    if (auto it = index_.find(b); it != index_.end()) return it->second;
    lines.push_back({b, false, {}, {}, minor, major});
    return remember(b);
  }

  // Re-states line i as the final line.
  void finish(int i) {
    if (static_cast<std::size_t>(i) == lines.size()) return;
    lines.push_back(lines[static_cast<std::size_t>(i - 1)]);
  }

  // |- X -o Y -o X
  int k(const Formula& x, const Formula& y) {
    return mp(ax("Wk", {{"A", x}, {"B", y}}), ax("Curry", {{"A", x}, {"B", y}, {"C", x}}));
  }

  // from |- X -o Y and |- Y -o Z
  int trans(int p, int q) {
    const Formula xy = at(p);
    const Formula yz = at(q);
    int c = ax("Comp", {{"A", xy.left()}, {"B", xy.right()}, {"C", yz.right()}});
    return mp(q, mp(p, c));
  }

  // |- (X -o Y -o Z) -o Y -o X -o Z
  int exchange(const Formula& x, const Formula& y, const Formula& z) {
    auto key = Formula::imp(x, Formula::imp(y, z));
    if (auto it = exchange_.find(key); it != exchange_.end()) return it->second;
    int u = ax("Uncurry", {{"A", x}, {"B", y}, {"C", z}});
    Formula xy = Formula::tensor(x, y), yx = Formula::tensor(y, x);
    int c1 = mp(ax("Comm", {{"A", y}, {"B", x}}), ax("Comp", {{"A", yx}, {"B", xy}, {"C", z}}));
    int cu = ax("Curry", {{"A", y}, {"B", x}, {"C", z}});
    int r = trans(trans(u, c1), cu);
    exchange_.emplace(key, r);
    return r;
  }

  int swap(int p) {
    const Formula f = at(p);
    return mp(p, exchange(f.left(), f.right().left(), f.right().right()));
  }

  int identity(const Formula& x) {
    int w = ax("Wk", {{"A", x}, {"B", x}});
    return mp(w, swap(k(x, at(w))));
  }

  // from |- X -o Y to |- (D -o X) -o D -o Y
  int lift(int p, const Formula& d) {
    const Formula xy = at(p);
    int c = ax("Comp", {{"A", d}, {"B", xy.left()}, {"C", xy.right()}});
    return mp(p, swap(c));
  }

  int lift_over(int p, const std::vector<Formula>& prefix) {
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) p = lift(p, *it);
    return p;
  }

 private:
  int remember(const Formula& f) {
    int i = static_cast<int>(lines.size());
    index_.emplace(f, i);
    return i;
  }
  std::map<Formula, int> index_;
  std::map<Formula, int> exchange_;
};

struct Telescope {
  int line;
  std::vector<Formula> ctx;
  Formula goal;
};

class Translator {
 public:
  Builder b;

  Telescope run(const ProofTree& p) {
    std::vector<Formula> ctx;
    for (const auto& f : p.conclusion.context) ctx.push_back(expand_derived(f));
    Formula goal = expand_derived(p.conclusion.goal);
    auto inst = [&](std::size_t i) { return expand_derived(p.inst.at(i)); };
    const Formula one = Formula::one();

    if (is_axiom(p.rule)) {
      Telescope t{0, {}, goal};
      std::vector<Formula> used;
      switch (p.rule) {
        case Rule::AxASM:
          used = {inst(0)};
          t.line = b.identity(inst(0));
          break;
        case Rule::AxCON:
          used = {inst(0)};
          t.line = b.ax("Con", {{"A", inst(0)}});
          break;
        case Rule::AxEFQ:
          used = {one};
          t.line = b.ax("EFQ", {{"A", inst(0)}});
          break;
        case Rule::AxDNE:
          used = {Formula::imp(Formula::imp(inst(0), one), one)};
          t.line = b.ax("DNE", {{"A", inst(0)}});
          break;
        case Rule::AxCWC: {
          Formula a = inst(0), bb = inst(1);
          used = {a, Formula::imp(a, bb)};
          int cwc = b.ax("CWC", {{"A", a}, {"B", bb}});
          t.line = b.mp(cwc, b.ax("Curry", {{"A", a}, {"B", used[1]}, {"C", goal}}));
          break;
        }
        default: break;
      }
      t.ctx = used;
      std::vector<Formula> extra = ctx;
      for (const auto& u : used) extra.erase(std::find(extra.begin(), extra.end(), u));
      for (const auto& e : extra) {
        t.line = b.mp(t.line, b.k(b.at(t.line), e));
        t.ctx.insert(t.ctx.begin(), e);
      }
      return t;
    }

    switch (p.rule) {
      case Rule::ImpI: {
        Telescope t = run(p.premises[0]);
        std::vector<Formula> target = t.ctx;
        target.erase(std::find(target.begin(), target.end(), goal.left()));
        target.push_back(goal.left());
        permute(t, target);
        t.ctx.pop_back();
        t.goal = goal;
        return t;
      }
      case Rule::ImpE: {
        Telescope t1 = run(p.premises[0]);
        Telescope t2 = run(p.premises[1]);
        const Formula a = t1.goal;
        t2.ctx.push_back(a);
        t2.goal = t2.goal.right();
        std::vector<Formula> target{a};
        target.insert(target.end(), t2.ctx.begin(), t2.ctx.end() - 1);
        permute(t2, target);
        int lifted = b.lift_over(t2.line, t1.ctx);
        Telescope out{b.mp(t1.line, lifted), t1.ctx, t2.goal};
        out.ctx.insert(out.ctx.end(), t2.ctx.begin() + 1, t2.ctx.end());
        return out;
      }
      case Rule::TensorI: {
        Telescope t1 = run(p.premises[0]);
        Telescope t2 = run(p.premises[1]);
        const Formula& x = t1.goal;
        const Formula& y = t2.goal;
        Formula xy = Formula::tensor(x, y);
        int pair = b.mp(b.identity(xy), b.ax("Curry", {{"A", x}, {"B", y}, {"C", xy}}));
        Telescope mid{b.mp(t1.line, b.lift_over(pair, t1.ctx)), t1.ctx, xy};
        mid.ctx.push_back(y);
        std::vector<Formula> target{y};
        target.insert(target.end(), t1.ctx.begin(), t1.ctx.end());
        permute(mid, target);
        // mid: y -o o1 -o x * y
        Telescope out{b.mp(t2.line, b.lift_over(mid.line, t2.ctx)), t2.ctx, xy};
        out.ctx.insert(out.ctx.end(), t1.ctx.begin(), t1.ctx.end());
        return out;
      }
      case Rule::TensorE: {
        Telescope t1 = run(p.premises[0]);
        Telescope t2 = run(p.premises[1]);
        const Formula x = t1.goal.left();
        const Formula y = t1.goal.right();
        std::vector<Formula> rest = t2.ctx;
        rest.erase(std::find(rest.begin(), rest.end(), x));
        rest.erase(std::find(rest.begin(), rest.end(), y));
        std::vector<Formula> target{x, y};
        target.insert(target.end(), rest.begin(), rest.end());
        permute(t2, target);
        Formula r = telescope(rest, t2.goal);
        int u = b.mp(t2.line, b.ax("Uncurry", {{"A", x}, {"B", y}, {"C", r}}));
        Telescope out{b.mp(t1.line, b.lift_over(u, t1.ctx)), t1.ctx, t2.goal};
        out.ctx.insert(out.ctx.end(), rest.begin(), rest.end());
        return out;
      }
      default: throw std::logic_error("unexpected rule");
    }
  }

  void permute(Telescope& t, const std::vector<Formula>& target) {
    for (std::size_t i = 0; i < target.size(); ++i) {
      std::size_t j = i;
      while (!(t.ctx[j] == target[i])) ++j;
      while (j > i) {
        swap_at(t, j - 1);
        --j;
      }
    }
  }

  // Exchanges ctx[i] and ctx[i+1].
  void swap_at(Telescope& t, std::size_t i) {
    std::vector<Formula> prefix(t.ctx.begin(), t.ctx.begin() + static_cast<long>(i));
    std::vector<Formula> tail(t.ctx.begin() + static_cast<long>(i) + 2, t.ctx.end());
    Formula r = telescope(tail, t.goal);
    int ex = b.exchange(t.ctx[i], t.ctx[i + 1], r);
    t.line = b.mp(t.line, b.lift_over(ex, prefix));
    std::swap(t.ctx[i], t.ctx[i + 1]);
  }
};

}  // namespace

HilbertDerivation sequent_to_hilbert(const ProofTree& p) {
  Translator tr;
  Telescope t = tr.run(p);
  std::vector<Formula> target;
  for (const auto& f : p.conclusion.context) target.push_back(expand_derived(f));
  tr.permute(t, target);
  tr.b.finish(t.line);
  return HilbertDerivation{std::move(tr.b.lines)};
}

// ---------------------------------------------------------------------------

ProofTree hilbert_to_sequent(const HilbertDerivation& d, TheoryId t) {
  static std::mutex mu;
  static std::map<std::string, ProofTree> schema_proofs;
  std::vector<ProofTree> proofs;
  for (const auto& l : d.lines) {
    if (l.by_axiom) {
      ProofTree base = [&] {
        std::lock_guard<std::mutex> lock(mu);
        auto key = l.schema + "/" + t.name();
        auto it = schema_proofs.find(key);
        if (it != schema_proofs.end()) return it->second;
        auto p = bounded_prove(Sequent{{}, schema(l.schema)}, t, 8);
        if (!p) throw std::runtime_error("schema " + l.schema + " has no proof in " + t.name());
        schema_proofs.emplace(key, *p);
        return *p;
      }();
      proofs.push_back(substitute(base, l.subst));
    } else {
      const ProofTree& a = proofs[static_cast<std::size_t>(l.minor - 1)];
      const ProofTree& ab = proofs[static_cast<std::size_t>(l.major - 1)];
      proofs.push_back(ProofTree{{{}, l.formula}, Rule::ImpE, {a, ab}, {}});
    }
  }
  if (proofs.empty()) throw std::invalid_argument("empty derivation");
  return proofs.back();
}

Formula rose_rosser_embed(const Formula& f) {
  Formula e = expand_derived(f);
  if (e.arity() == 0) return e;
  Formula l = rose_rosser_embed(e.left());
  Formula r = rose_rosser_embed(e.right());
  const Formula one = Formula::one();
  if (e.is(Kind::Tensor)) return Formula::imp(Formula::imp(l, Formula::imp(r, one)), one);
  return Formula::imp(l, r);
}

// ---------------------------------------------------------------------------

std::string write_derivation(const HilbertDerivation& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& l = d.lines[i];
    out << i + 1 << ". " << print(sugar(l.formula)) << " | ";
    if (l.by_axiom) {
      out << "axiom " << l.schema << " {";
      bool first = true;
      for (const auto& [k, v] : l.subst) {
        out << (first ? "" : ", ") << k << " := " << print(sugar(v));
        first = false;
      }
      out << "}";
    } else {
      out << "mp " << l.minor << ' ' << l.major;
    }
    out << '\n';
  }
  return out.str();
}

HilbertDerivation read_derivation(std::string_view text) {
  HilbertDerivation d;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto dot = line.find(". ");
    auto bar = line.rfind(" | ");
    if (dot == std::string::npos || bar == std::string::npos || bar < dot)
      throw ParseError("bad derivation line " + std::to_string(lineno), lineno);
    if (std::stoul(line.substr(first, dot - first)) != d.lines.size() + 1)
      throw ParseError("derivation lines must be numbered 1, 2, ...", lineno);
    HilbertLine l{parse(line.substr(dot + 2, bar - dot - 2)), true, {}, {}, -1, -1};
    std::istringstream just(line.substr(bar + 3));
    std::string kind;
    just >> kind;
    if (kind == "mp") {
      l.by_axiom = false;
      if (!(just >> l.minor >> l.major)) throw ParseError("bad mp justification", lineno);
    } else if (kind == "axiom") {
      just >> l.schema;
      std::string rest;
      std::getline(just, rest);
      auto open = rest.find('{'), close = rest.rfind('}');
      if (open == std::string::npos || close == std::string::npos)
        throw ParseError("axiom line needs a {substitution}", lineno);
      std::string body = rest.substr(open + 1, close - open - 1);
      std::size_t k = 0;
      while (k < body.size()) {
        std::size_t comma = body.find(',', k);
        if (comma == std::string::npos) comma = body.size();
        std::string item = body.substr(k, comma - k);
        auto eq = item.find(":=");
        if (eq == std::string::npos) {
          if (item.find_first_not_of(' ') != std::string::npos) throw ParseError("bad substitution", lineno);
        } else {
          std::string name = item.substr(0, eq);
          name.erase(0, name.find_first_not_of(' '));
          name.erase(name.find_last_not_of(' ') + 1);
          l.subst.emplace(name, parse(item.substr(eq + 2)));
        }
        k = comma + 1;
      }
    } else {
      throw ParseError("unknown justification '" + kind + "'", lineno);
    }
    d.lines.push_back(std::move(l));
  }
  return d;
}

}  // namespace luk
