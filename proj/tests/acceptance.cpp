// Acceptance run: one PASS/FAIL line per criterion. Exits 0 iff the failing
// criteria are exactly the known ones listed in kKnownFailures (see README).

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "lukprover/corpus.hpp"
#include "oracles.hpp"

using namespace luk;
using Clock = std::chrono::steady_clock;

namespace {

// Goedel's scheme leaves atoms untranslated, and P^^ |- P fails in ALi.
const std::set<int> kKnownFailures{1, 4};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct Line {
  int n;
  bool ok;
  std::string what, detail;
};

std::vector<Line> lines;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  lines.push_back({n, ok, what, detail});
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what << "  [" << detail << "]"
            << std::endl;
}

const EntryResult* entry(const CorpusReport& r, const std::string& id) {
  for (const auto& e : r.entries)
    if (e.id == id) return &e;
  return nullptr;
}

// All listed entries ran and passed; detail names the first that did not.
bool entries_ok(const CorpusReport& r, const std::vector<std::string>& ids, std::string& detail) {
  for (const auto& id : ids) {
    const EntryResult* e = entry(r, id);
    if (!e) {
      detail = id + ": missing";
      return false;
    }
    if (!e->ok) {
      detail = id + ": " + e->detail;
      return false;
    }
  }
  detail = std::to_string(ids.size()) + " entries";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path root = argc > 1 ? argv[1] : LUKP_CORPUS_DIR;
  const Registry reg = corpus_registry(root);
  const auto ledger = load_ledger(root);

  // 1. The whole corpus checks within ten minutes.
  CorpusOptions copt;
  copt.jobs = std::max(1u, std::thread::hardware_concurrency());
  CorpusReport corpus = run_corpus(root, copt);
  {
    std::size_t numbered = 0;
    for (const auto& e : ledger) numbered += e.numbered();
    std::string detail = std::to_string(corpus.entries.size() - corpus.failures()) + "/" +
                         std::to_string(corpus.entries.size()) + " entries, " + std::to_string(numbered) +
                         " numbered, " + fmt(corpus.seconds);
    for (const auto& e : corpus.entries)
      if (!e.ok) detail += "; " + e.id + ": " + e.detail;
    report(1, corpus.passed() && corpus.seconds < 600 && corpus.entries.size() == ledger.size(),
           "corpus checks in full under 10 minutes", detail);
  }

  // 2. A |- A * A has a countermodel in LLc: the three-element chain.
  {
    auto t0 = Clock::now();
    auto cm = find_countermodel(parse_sequent("A |- A * A"), LLc, 10, 1.0);
    double s = since(t0);
    bool ok = cm && s < 1.0 && canonical_form(cm->algebra) == canonical_form(lukasiewicz_chain(3));
    std::string detail = fmt(s);
    if (cm) {
      int a = cm->assignment.at("A");
      ok = ok && a != 0 && cm->algebra.top && a != *cm->algebra.top;
      detail += ", size " + std::to_string(cm->algebra.n) + ", " + format_assignment(cm->assignment);
    }
    std::string d2;
    ok = ok && entries_ok(corpus, {"contraction-separation"}, d2);
    report(2, ok, "contraction separates LLc from BL by the 3-element chain", detail);
  }

  // 3. A6 is refuted in LLi by a model of size <= 10; its double-negated form is proved.
  {
    std::string detail;
    bool ok = entries_ok(corpus, {"a6", "a6-dn"}, detail);
    for (const auto& e : ledger)
      if (e.id == "a6") {
        auto cm = find_countermodel(parse_sequent(e.claims.at(0)), e.theory(), 10, 60);
        ok = ok && cm.has_value();
        if (cm) detail += ", countermodel size " + std::to_string(cm->algebra.n);
      }
    report(3, ok, "A6 refuted at size <= 10, double-negated A6 proved", detail);
  }

  // 4. Double-negation translations.
  {
    std::string detail;
    bool ok = entries_ok(corpus,
                         {"dns-gentzen", "dns-glivenko", "gentzen-not-dns-ali", "glivenko-not-dns-ali",
                          "dns-kolmogorov-goedel"},
                         detail);
    report(4, ok, "DNS checks for the four translations", detail);
  }

  // 5. Every axiom is valid and every rule preserves validity in every
  // algebra of the theory's class up to size 4; the kernel admits exactly
  // the axioms of the theory.
  {
    std::size_t algebras = 0;
    std::vector<std::string> bad;
    for (TheoryId t : TheoryId::all()) {
      for (const auto& m : enumerate(4, class_of(t))) {
        ++algebras;
        auto v = oracle::soundness_violations(m, t);
        bad.insert(bad.end(), v.begin(), v.end());
      }
      Formula a = parse("A"), b = parse("B");
      std::pair<ProofTree, bool> leaves[] = {
          {{parse_sequent("A |- A * A"), Rule::AxCON, {}, {a}}, t.has_con()},
          {{parse_sequent("1 |- A"), Rule::AxEFQ, {}, {a}}, t.has_efq()},
          {{parse_sequent("A^^ |- A"), Rule::AxDNE, {}, {a}}, t.has_dne()},
          {{parse_sequent("A, A -o B |- B * (B -o A)"), Rule::AxCWC, {}, {a, b}}, t.has_cwc()},
      };
      for (const auto& [leaf, want] : leaves)
        if (check_proof(leaf, t).ok != want) bad.push_back(t.name() + ": kernel " + std::string(rule_name(leaf.rule)));
    }
    std::string detail = std::to_string(algebras) + " algebra/theory pairs";
    if (!bad.empty()) detail += "; " + bad.front();
    report(5, bad.empty(), "axioms and rules sound in their classes up to size 4", detail);
  }

  // 6. Sequent -> Hilbert -> sequent on the corpus proofs.
  {
    std::size_t n = 0;
    std::string err;
    auto note = [&](const ProofTree& p, TheoryId t, const std::string& where) {
      ++n;
      std::string e = oracle::roundtrip_error(p, t);
      if (!e.empty() && err.empty()) err = where + ": " + e;
    };
    for (const auto& sp : corpus_proofs(root)) note(sp.proof, sp.theory, "proofs.nd");
    CheckOptions keep;
    keep.keep_proofs = true;
    std::vector<EqScript> scripts = corpus_scripts(root);
    for (int k = 1; k <= 4; ++k) scripts.push_back(generate_k_contradiction(k).script);
    for (const auto& s : scripts) {
      auto r = check_script(s, reg, keep);
      for (const auto& p : r.proofs) note(p, s.theory, s.id);
    }
    report(6, err.empty() && n > 0, "Hilbert round trip of corpus proofs",
           std::to_string(n) + " proofs" + (err.empty() ? "" : "; " + err));
  }

  // 7. Polarity mutants of the corpus scripts are all rejected.
  {
    auto ms = oracle::mutants(corpus_scripts(root), reg);
    auto t = oracle::run_mutants(ms, reg);
    std::string detail = std::to_string(t.killed) + "/" + std::to_string(t.total) + " killed";
    if (!t.survivors.empty()) detail += "; " + t.survivors.front();
    report(7, t.total > 0 && t.killed == t.total, "polarity mutation kill rate 100%", detail);
  }

  // 8. Rose-Rosser axioms in the Lukasiewicz chains of 2..11 elements.
  {
    bool ok = true;
    std::string detail;
    for (const auto& name : schemata(HilbertSystemId::rosser()))
      for (int n = 2; n <= 11; ++n)
        if (!valid(Sequent{{}, schema(name)}, lukasiewicz_chain(n))) {
          ok = false;
          detail = name + " fails in chain " + std::to_string(n);
        }
    std::string d2;
    ok = entries_ok(corpus, {"rose-rosser"}, d2) && ok;
    report(8, ok, "Rose-Rosser axioms valid in chains n = 2..11", detail.empty() ? d2 : detail);
  }

  // 9. Conjectures hold in every algebra of their class up to size 6.
  {
    std::vector<std::string> ids;
    for (const auto& e : ledger)
      if (e.kind == "conjecture") ids.push_back(e.id);
    std::string detail;
    bool ok = !ids.empty() && entries_ok(corpus, ids, detail);
    report(9, ok, "conjectures hold up to size 6", detail);
  }

  // 10. The k-contradiction family for k = 1..4.
  {
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 4; ++k) {
      auto r = check_script(generate_k_contradiction(k).script, reg);
      if (!r.verdict.ok) {
        ok = false;
        detail = "k=" + std::to_string(k) + ": " + r.verdict.message;
      }
    }
    std::string d2;
    ok = entries_ok(corpus, {"k-contradiction"}, d2) && ok;
    report(10, ok, "k-contradiction proved for k = 1..4", detail.empty() ? "k = 1..4 checked" : detail);
  }

  std::set<int> failing;
  for (const auto& l : lines)
    if (!l.ok) failing.insert(l.n);
  std::ostringstream f, k;
  for (int n : failing) f << " " << n;
  for (int n : kKnownFailures) k << " " << n;
  std::cout << "failing:" << (failing.empty() ? " none" : f.str()) << "; known:" << k.str() << std::endl;
  if (failing != kKnownFailures) {
    std::cout << "acceptance: UNEXPECTED" << std::endl;
    return 1;
  }
  std::cout << "acceptance: as documented" << std::endl;
  return 0;
}
