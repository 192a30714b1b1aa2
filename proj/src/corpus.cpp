#include "lukprover/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lukprover/algebra.hpp"
#include "lukprover/hilbert.hpp"
#include "lukprover/translate.hpp"

namespace luk {

namespace fs = std::filesystem;

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::Proved: return "proved";
    case Tier::Refuted: return "refuted";
    case Tier::ModelChecked: return "model-checked-only";
  }
  return "?";
}

Tier parse_tier(std::string_view s) {
  if (s == "proved") return Tier::Proved;
  if (s == "refuted") return Tier::Refuted;
  if (s == "model-checked-only") return Tier::ModelChecked;
  throw std::invalid_argument("unknown tier '" + std::string(s) + "'");
}

bool CorpusEntry::numbered() const {
  return kind == "theorem" || kind == "lemma" || kind == "corollary";
}

int CorpusEntry::budget_int(const std::string& key, int fallback) const {
  auto it = budget.find(key);
  return it == budget.end() ? fallback : std::stoi(it->second);
}

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r\n"));
  s.erase(s.find_last_not_of(" \t\r\n") + 1);
  return s;
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, end == std::string::npos ? std::string::npos : end - pos)));
    if (end == std::string::npos) break;
    pos = end + sep.size();
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kMethods{"script", "proofs", "roundtrip", "family", "dns",
                                        "dns-refute", "countermodel", "model-check", "chains"};

// Context as a sorted multiset of core formulas.
std::vector<Formula> core_bag(const std::vector<Formula>& ctx) {
  std::vector<Formula> out;
  for (const auto& c : ctx) out.push_back(expand_derived(c));
  std::sort(out.begin(), out.end());
  return out;
}

bool same_sequent(const Sequent& a, const Sequent& b) {
  return expand_derived(a.goal) == expand_derived(b.goal) && core_bag(a.context) == core_bag(b.context);
}

struct Claim {
  Formula lhs = Formula::zero();
  Relation rel = Relation::Equiv;
  Formula rhs = Formula::zero();
};

Claim parse_claim(const std::string& text) {
  for (auto [sym, rel] : {std::pair{" ~= ", Relation::Equiv}, std::pair{" >= ", Relation::Geq}}) {
    std::size_t at = text.find(sym);
    if (at != std::string::npos) return {parse(text.substr(0, at)), rel, parse(text.substr(at + 4))};
  }
  throw std::runtime_error("claim '" + text + "' has no ~= or >=");
}

bool falsifies(const Sequent& s, TheoryId t, const FiniteAlgebra& m, const Assignment& v) {
  Sequent probe = t.level == Level::Minimal ? free_falsum(s) : s;
  int lhs = 0;
  for (const auto& c : probe.context) lhs = m.add(lhs, eval(c, m, v));
  return !m.geq(lhs, eval(probe.goal, m, v));
}

// model.alg and witness.txt of an entry: class membership, size bound and
// falsification of s.
std::string check_countermodel(const fs::path& dir, const Sequent& s, TheoryId t, int size_max) {
  std::ifstream in(dir / "model.alg");
  if (!in) return "missing model.alg";
  FiniteAlgebra m = read_algebra(in);
  Assignment v = parse_assignment(trim(slurp(dir / "witness.txt")));
  ClassFlags flags = check_class(m);
  if (!flags.pocrim) return "model.alg is not a pocrim: " + flags.violation;
  if (!class_of(t).admits(flags)) return "model.alg is outside the class of " + t.name() + " (" + flags.str() + ")";
  if (m.n > size_max) return "model of size " + std::to_string(m.n) + " exceeds the bound " + std::to_string(size_max);
  if (!falsifies(s, t, m, v)) return "witness " + format_assignment(v) + " does not falsify " + s.str();
  return {};
}

struct Checked {
  std::string error;
  std::string detail;
};

Checked check_script_entry(const CorpusEntry& e, const fs::path& dir, Registry& reg, int easy_depth,
                           bool do_register) {
  auto scripts = parse_scripts(slurp(dir / "proof.eq"));
  const int pin = e.budget_int("easy", 8);
  if (pin > easy_depth) return {"pinned depth " + std::to_string(pin) + " exceeds the budget", {}};
  CheckOptions co;
  co.easy_depth = pin;
  int used = 0;
  std::size_t steps = 0;
  for (const auto& s : scripts) {
    ScriptResult r;
    if (s.hypothetical() || !do_register) {
      r = check_script(s, reg, co);
    } else {
      Verdict v = reg.register_lemma(entry_of(s), s, co, &r);
      if (!v) return {v.message, {}};
    }
    if (!r.verdict) return {r.verdict.message, {}};
    used = std::max(used, r.max_easy_depth);
    steps += r.steps;
  }
  if (used != pin) return {"easy depth used is " + std::to_string(used) + ", ledger pins " + std::to_string(pin), {}};
  for (const auto& text : e.claims) {
    Claim c = parse_claim(text);
    bool hit = std::any_of(scripts.begin(), scripts.end(), [&](const EqScript& s) {
      return s.relation == c.rel && canonical(s.lhs) == canonical(c.lhs) && canonical(s.rhs) == canonical(c.rhs);
    });
    if (!hit) return {"no block proves the claim " + text, {}};
  }
  return {{}, std::to_string(scripts.size()) + " blocks, " + std::to_string(steps) + " steps, easy depth " +
                  std::to_string(used)};
}

Checked check_proofs_entry(const CorpusEntry& e, const fs::path& dir) {
  auto proofs = read_proofs(slurp(dir / "proofs.nd"));
  for (const auto& sp : proofs) {
    if (std::find(e.theories.begin(), e.theories.end(), sp.theory) == e.theories.end())
      return {"proof in " + sp.theory.name() + " outside the entry's theories", {}};
    Verdict v = check_proof(sp.proof, sp.theory);
    if (!v) return {sp.proof.conclusion.str() + ": " + v.message, {}};
  }
  for (const auto& text : e.claims) {
    Sequent want = parse_sequent(text);
    bool hit = std::any_of(proofs.begin(), proofs.end(),
                           [&](const StoredProof& sp) { return same_sequent(sp.proof.conclusion, want); });
    if (!hit) return {"no proof concludes " + text, {}};
  }
  return {{}, std::to_string(proofs.size()) + " proofs"};
}

Checked check_roundtrip_entry(const CorpusEntry& e, const fs::path& dir) {
  auto proofs = read_proofs(slurp(dir / "proofs.nd"));
  std::size_t lines = 0;
  for (const auto& sp : proofs) {
    const std::string at = sp.theory.name() + " " + sp.proof.conclusion.str();
    Verdict v = check_proof(sp.proof, sp.theory);
    if (!v) return {at + ": " + v.message, {}};
    HilbertDerivation d = sequent_to_hilbert(sp.proof);
    v = check_derivation(d, HilbertSystemId::of(sp.theory));
    if (!v) return {at + ": derivation rejected: " + v.message, {}};
    const Formula want = curry_sequent(sp.proof.conclusion);
    if (d.lines.empty() || !(expand_derived(d.lines.back().formula) == expand_derived(want)))
      return {at + ": derivation does not end in " + print(want), {}};
    ProofTree back = hilbert_to_sequent(d, sp.theory);
    v = check_proof(back, sp.theory);
    if (!v) return {at + ": replayed proof rejected: " + v.message, {}};
    if (!back.conclusion.context.empty() || !(expand_derived(back.conclusion.goal) == expand_derived(want)))
      return {at + ": replayed proof concludes " + back.conclusion.str(), {}};
    lines += d.lines.size();
  }
  for (const auto& t : e.theories) {
    bool hit = std::any_of(proofs.begin(), proofs.end(), [&](const StoredProof& sp) { return sp.theory == t; });
    if (!hit) return {"no proof in " + t.name(), {}};
  }
  return {{}, std::to_string(proofs.size()) + " proofs, " + std::to_string(lines) + " Hilbert lines"};
}

std::pair<int, int> parse_range(const std::string& text) {
  // "k=1..4" style values arrive without the key: "1..4"
  std::size_t dots = text.find("..");
  if (dots == std::string::npos) return {std::stoi(text), std::stoi(text)};
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

Checked check_family_entry(const CorpusEntry& e, const Registry& reg, int easy_depth) {
  auto it = e.budget.find("k");
  if (it == e.budget.end()) return {"family entry needs a k range", {}};
  auto [lo, hi] = parse_range(it->second);
  CheckOptions co;
  co.easy_depth = easy_depth;
  int used = 0;
  for (int k = lo; k <= hi; ++k) {
    GeneratedEntry g = generate_k_contradiction(k);
    ScriptResult r = check_script(g.script, reg, co);
    if (!r.verdict) return {"k=" + std::to_string(k) + ": " + r.verdict.message, {}};
    used = std::max(used, r.max_easy_depth);
  }
  return {{}, "k=" + std::to_string(lo) + ".." + std::to_string(hi) + ", easy depth " + std::to_string(used)};
}

Checked check_dns_entry(const CorpusEntry& e, const Registry& reg) {
  DnsOptions o;
  o.depth = e.budget_int("depth", 8);
  o.max_size = e.budget_int("size", 10);
  o.seconds = e.budget_int("seconds", 600);
  o.registry = &reg;
  const TheoryId t = e.theory();
  std::vector<Formula> theorems = regression_list(reg, t);
  std::vector<Formula> formulas = theorems;
  for (const auto& f : dns_base_formulas()) formulas.push_back(f);
  std::string detail, error;
  for (const auto& name : e.claims) {
    Translation tr = parse_translation(name);
    DnsReport rep = check_dns(tr, t, formulas, theorems, o);
    std::string counts = std::string(translation_name(tr)) + " " + std::to_string(rep.count(Outcome::Pass)) + "/" +
                         std::to_string(rep.items.size()) + " pass";
    detail += (detail.empty() ? "" : "; ") + counts;
    if (!rep.passed() && error.empty()) {
      // failures before inconclusive items
      for (Outcome o : {Outcome::Fail, Outcome::Inconclusive}) {
        auto it = std::find_if(rep.items.begin(), rep.items.end(), [&](const DnsItem& x) { return x.outcome == o; });
        if (it == rep.items.end()) continue;
        error = counts + ", " + std::to_string(rep.count(Outcome::Fail)) + " fail; " + it->condition + " " +
                it->goal.str() + ": " + std::string(outcome_name(o)) + ", " + it->evidence;
        break;
      }
    }
  }
  return {error, detail};
}

Checked check_dns_refute_entry(const CorpusEntry& e, const fs::path& dir) {
  const TheoryId t = e.theory();
  for (const auto& text : e.claims) {
    std::size_t colon = text.find(" : ");
    if (colon == std::string::npos) return {"expected 'scheme : source' in " + text, {}};
    Translation tr = parse_translation(trim(text.substr(0, colon)));
    Formula source = parse(text.substr(colon + 3));
    Sequent classical{{}, source};
    if (!bounded_prove(classical, t.with_dne(), 8))
      return {print(source) + " has no bounded proof in " + t.with_dne().name(), {}};
    Sequent image{{}, translate(tr, source)};
    std::string err = check_countermodel(dir, image, t, e.budget_int("size", 10));
    if (!err.empty()) return {err, {}};
  }
  return {{}, "countermodel rechecked"};
}

Checked check_model_entry(const CorpusEntry& e) {
  const int size = e.budget_int("size", 6);
  for (const auto& text : e.claims) {
    for (const auto& t : e.theories) {
      if (!valid_in_class(parse_sequent(text), t, size))
        return {text + " fails in some algebra of " + t.name() + " up to size " + std::to_string(size), {}};
    }
  }
  return {{}, std::to_string(e.claims.size()) + " sequents valid up to size " + std::to_string(size)};
}

Checked check_chains_entry(const CorpusEntry& e) {
  auto it = e.budget.find("n");
  auto [lo, hi] = parse_range(it == e.budget.end() ? "2..11" : it->second);
  for (int n = lo; n <= hi; ++n) {
    FiniteAlgebra m = lukasiewicz_chain(n);
    for (const auto& name : e.claims) {
      Assignment w;
      if (!valid(Sequent{{}, schema(name)}, m, &w))
        return {name + " fails in the " + std::to_string(n) + "-element chain at " + format_assignment(w), {}};
    }
  }
  return {{}, "chains of size " + std::to_string(lo) + ".." + std::to_string(hi)};
}

Checked check_entry(const CorpusEntry& e, const fs::path& root, const Registry& reg, int easy_depth) {
  const fs::path dir = root / e.id;
  if (e.method == "proofs") return check_proofs_entry(e, dir);
  if (e.method == "roundtrip") return check_roundtrip_entry(e, dir);
  if (e.method == "family") return check_family_entry(e, reg, easy_depth);
  if (e.method == "dns") return check_dns_entry(e, reg);
  if (e.method == "dns-refute") return check_dns_refute_entry(e, dir);
  if (e.method == "countermodel") {
    std::string err = check_countermodel(dir, parse_sequent(e.claims.at(0)), e.theory(), e.budget_int("size", 10));
    return {err, err.empty() ? "countermodel rechecked" : ""};
  }
  if (e.method == "model-check") return check_model_entry(e);
  if (e.method == "chains") return check_chains_entry(e);
  return {"no checker for method " + e.method, {}};
}

bool selected(const CorpusEntry& e, const CorpusOptions& opt) {
  return opt.filter.empty() || e.id.find(opt.filter) != std::string::npos;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<CorpusEntry> load_ledger(const fs::path& root) {
  std::ifstream in(root / "ledger.tsv");
  if (!in) throw std::runtime_error("cannot read " + (root / "ledger.tsv").string());
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line[0] == '#') continue;
    auto where = [&] { return "ledger.tsv line " + std::to_string(lineno) + ": "; };
    auto f = split(line, "\t");
    if (f.size() != 7) throw std::runtime_error(where() + "expected 7 tab-separated fields");
    CorpusEntry e;
    e.id = f[0];
    e.kind = f[1];
    try {
      for (const auto& t : split(f[2], ",")) e.theories.push_back(TheoryId::parse(t));
      e.tier = parse_tier(f[3]);
    } catch (const std::invalid_argument& ex) {
      throw std::runtime_error(where() + ex.what());
    }
    e.method = f[4];
    if (std::find(kMethods.begin(), kMethods.end(), e.method) == kMethods.end())
      throw std::runtime_error(where() + "unknown method " + e.method);
    e.claims = split(f[5], " ; ");
    if (f[6] != "-") {
      for (const auto& kv : split(f[6], " ")) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw std::runtime_error(where() + "bad budget item " + kv);
        e.budget[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
    }
    for (const auto& prev : out)
      if (prev.id == e.id) throw std::runtime_error(where() + "duplicate id " + e.id);
    out.push_back(std::move(e));
  }
  return out;
}

bool CorpusReport::passed() const { return failures() == 0; }

std::size_t CorpusReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const EntryResult& r) { return !r.ok; }));
}

std::string CorpusReport::str() const {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const auto& r : entries)
    out << (r.ok ? "PASS " : "FAIL ") << r.id << "  " << r.seconds << "s  " << r.detail << '\n';
  out << "corpus: " << entries.size() - failures() << "/" << entries.size() << " entries pass, " << seconds
      << "s\n";
  return out.str();
}

CorpusReport run_corpus(const fs::path& root, const CorpusOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CorpusReport rep;
  auto entries = load_ledger(root);
  Registry reg = Registry::primitives();
  std::vector<EntryResult> results(entries.size());
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const CorpusEntry& e = entries[i];
    results[i].id = e.id;
    if (e.method != "script") {
      rest.push_back(i);
      continue;
    }
    const auto t1 = std::chrono::steady_clock::now();
    Checked c;
    try {
      c = check_script_entry(e, root / e.id, reg, opt.easy_depth, true);
    } catch (const std::exception& ex) {
      c.error = ex.what();
    }
    results[i].ok = c.error.empty();
    results[i].detail = c.error.empty() ? c.detail : c.error;
    results[i].seconds = since(t1);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < rest.size();) {
      const std::size_t i = rest[k];
      const CorpusEntry& e = entries[i];
      if (!selected(e, opt)) continue;
      const auto t1 = std::chrono::steady_clock::now();
      Checked c;
      try {
        c = check_entry(e, root, reg, opt.easy_depth);
      } catch (const std::exception& ex) {
        c.error = ex.what();
      }
      results[i].ok = c.error.empty();
      results[i].detail = c.error.empty() ? c.detail : c.error;
      results[i].seconds = since(t1);
    }
  };
  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (selected(entries[i], opt)) rep.entries.push_back(results[i]);
  rep.seconds = since(t0);
  return rep;
}

Registry corpus_registry(const fs::path& root) {
  Registry reg = Registry::primitives();
  for (const auto& e : load_ledger(root)) {
    if (e.method != "script") continue;
    Checked c = check_script_entry(e, root / e.id, reg, 8, true);
    if (!c.error.empty()) throw std::runtime_error(e.id + ": " + c.error);
  }
  return reg;
}

std::vector<EqScript> corpus_scripts(const fs::path& root) {
  std::vector<EqScript> out;
  for (const auto& e : load_ledger(root)) {
    if (e.method != "script") continue;
    for (auto& s : parse_scripts(slurp(root / e.id / "proof.eq"))) out.push_back(std::move(s));
  }
  return out;
}

std::vector<StoredProof> read_proofs(std::string_view text) {
  std::vector<StoredProof> out;
  std::optional<TheoryId> theory;
  std::string body;
  std::size_t offset = 0, block = 0;
  auto flush = [&] {
    if (!theory) return;
    try {
      out.push_back({*theory, read_proof(body)});
    } catch (const ParseError& ex) {
      throw ParseError(std::string("proof block: ") + ex.what(), block);
    }
    body.clear();
  };
  while (offset < text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(offset, end - offset));
    if (line.rfind("proof ", 0) == 0) {
      flush();
      block = offset;
      try {
        theory = TheoryId::parse(trim(line.substr(6)));
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), offset);
      }
    } else if (theory) {
      body += line + '\n';
    } else if (!trim(line).empty() && line[0] != '#') {
      throw ParseError("text before the first 'proof' line", offset);
    }
    offset = end + 1;
  }
  flush();
  return out;
}

std::string write_proofs(const std::vector<StoredProof>& proofs) {
  std::string out;
  for (const auto& sp : proofs) {
    if (!out.empty()) out += '\n';
    out += "proof " + sp.theory.name() + '\n' + write_proof(sp.proof);
  }
  return out;
}

std::vector<StoredProof> corpus_proofs(const fs::path& root) {
  std::vector<StoredProof> out;
  for (const auto& e : load_ledger(root)) {
    fs::path p = root / e.id / "proofs.nd";
    if (!fs::exists(p)) continue;
    for (auto& sp : read_proofs(slurp(p))) out.push_back(std::move(sp));
  }
  return out;
}

GeneratedEntry generate_k_contradiction(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  auto line = [](int n) {
    std::string power = "A";
    for (int i = 1; i < n; ++i) power += " * A";
    return (n == 1 ? power : "(" + power + ")") + "^ -o A^^ -o A";
  };
  GeneratedEntry g;
  g.k = k;
  std::ostringstream out;
  out << "lemma k-contradiction-" << k << " theory LLi claim 0 >= " << line(k) << '\n';
  out << "start 0\n";
  out << ">= " << line(1) << " by easy 2\n";
  for (int n = 2; n <= k; ++n) out << ">= " << line(n) << " by kcontr-step at root\n";
  g.text = out.str();
  g.script = parse_scripts(g.text).at(0);
  return g;
}

}  // namespace luk
