// lukp: command-line front end.
// Exit status: 0 success, 1 logical failure (rejected, refuted, not found),
// 2 usage or IO error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lukprover/algebra.hpp"
#include "lukprover/corpus.hpp"
#include "lukprover/eq.hpp"
#include "lukprover/formula.hpp"
#include "lukprover/hilbert.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/translate.hpp"

#ifndef LUKP_CORPUS_DIR
#define LUKP_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using namespace luk;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TheoryId theory_arg(const std::string& s) {
  try {
    return TheoryId::parse(s);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
}

void print_tree(const Formula& f, int indent, std::ostream& out) {
  out << std::string(static_cast<std::size_t>(indent) * 2, ' ');
  if (f.is(Kind::Var)) {
    out << f.name() << '\n';
    return;
  }
  out << kind_name(f.kind()) << '\n';
  for (const auto& c : f.children()) print_tree(c, indent + 1, out);
}

Registry registry_for(const std::string& corpus) {
  if (corpus.empty()) return Registry::primitives();
  return corpus_registry(corpus);
}

int cmd_parse(const std::string& text) {
  Formula f = parse(text);
  std::cout << print(f) << '\n';
  if (!f.is_core()) std::cout << "core: " << print(expand_derived(f)) << '\n';
  print_tree(f, 0, std::cout);
  return 0;
}

int check_eq(const std::string& text, const std::string& corpus, int depth) {
  Registry reg = registry_for(corpus);
  CheckOptions co;
  co.easy_depth = depth;
  int status = 0;
  for (const auto& s : parse_scripts(text)) {
    ScriptResult r;
    if (s.hypothetical() || reg.find(s.id)) {
      r = check_script(s, reg, co);
    } else {
      Verdict v = reg.register_lemma(entry_of(s), s, co, &r);
      if (!v && r.verdict) r.verdict = v;
    }
    if (r.verdict) {
      std::cout << "ok " << s.id << ": " << relation_symbol(r.established) << ", " << r.steps << " steps, easy depth "
                << r.max_easy_depth << '\n';
    } else {
      std::cout << "rejected " << r.verdict.message << '\n';
      status = 1;
    }
  }
  return status;
}

int check_nd(const std::string& text, const std::string& theory) {
  std::vector<StoredProof> proofs;
  if (text.rfind("proof ", 0) == 0) {
    proofs = read_proofs(text);
  } else {
    if (theory.empty()) throw UsageError("a bare proof tree needs --theory");
    proofs.push_back({theory_arg(theory), read_proof(text)});
  }
  int status = 0;
  for (const auto& sp : proofs) {
    Verdict v = check_proof(sp.proof, sp.theory);
    std::cout << (v ? "ok " : "rejected ") << sp.theory.name() << ' ' << sp.proof.conclusion.str();
    if (!v) std::cout << ": " << v.message;
    std::cout << '\n';
    if (!v) status = 1;
  }
  return status;
}

int check_hil(const std::string& text, const std::string& system) {
  if (system.empty()) throw UsageError("a derivation needs --system (e.g. H-LLi or RoseRosser)");
  HilbertSystemId sys;
  try {
    sys = HilbertSystemId::parse(system);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  HilbertDerivation d = read_derivation(text);
  Verdict v = check_derivation(d, sys);
  if (!v) {
    std::cout << "rejected " << v.message << '\n';
    return 1;
  }
  std::cout << "ok " << sys.name() << ": " << d.lines.size() << " lines, |- " << print(d.lines.back().formula) << '\n';
  return 0;
}

int cmd_check(const std::string& file, const std::string& theory, const std::string& system,
              const std::string& corpus, int depth) {
  std::string text = slurp(file);
  std::string ext = fs::path(file).extension().string();
  if (ext == ".eq") return check_eq(text, corpus, depth);
  if (ext == ".nd") return check_nd(text, theory);
  if (ext == ".hil") return check_hil(text, system);
  throw UsageError("unknown file type " + ext + " (expected .eq, .nd or .hil)");
}

int cmd_prove(const std::string& seq, const std::string& theory, int depth, bool hilbert) {
  TheoryId t = theory_arg(theory);
  Sequent s = parse_sequent(seq);
  SearchStats stats;
  auto p = bounded_prove(s, t, depth, &stats);
  if (!p) {
    std::cout << "no proof of " << s.str() << " in " << t.name() << " within depth " << depth << " (" << stats.nodes
              << " nodes)\n";
    return 1;
  }
  if (hilbert)
    std::cout << write_derivation(sequent_to_hilbert(*p));
  else
    std::cout << write_proof(*p);
  return 0;
}

int cmd_models_find(const std::string& seq, const std::string& theory, int max_size, double seconds,
                    const std::string& out_dir) {
  TheoryId t = theory_arg(theory);
  Sequent s = parse_sequent(seq);
  bool exhausted = false;
  auto cm = find_countermodel(s, t, max_size, seconds, &exhausted);
  if (!cm) {
    std::cout << "no countermodel in the class of " << t.name() << " up to size " << max_size
              << (exhausted ? "" : " (stopped by the time budget)") << '\n';
    return 1;
  }
  std::cout << write_algebra(cm->algebra) << "flags " << check_class(cm->algebra).str() << '\n'
            << "witness " << format_assignment(cm->assignment) << '\n';
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream(fs::path(out_dir) / "model.alg") << write_algebra(cm->algebra);
    std::ofstream(fs::path(out_dir) / "witness.txt") << format_assignment(cm->assignment) << '\n';
  }
  return 0;
}

int cmd_models_count(const std::string& theory, int max_size) {
  TheoryId t = theory_arg(theory);
  std::vector<int> counts(static_cast<std::size_t>(max_size) + 1, 0);
  enumerate(max_size, class_of(t), [&](const FiniteAlgebra& m) {
    ++counts[static_cast<std::size_t>(m.n)];
    return true;
  });
  for (int n = 1; n <= max_size; ++n) std::cout << "size " << n << ": " << counts[static_cast<std::size_t>(n)] << '\n';
  return 0;
}

int cmd_translate(const std::string& scheme, const std::string& text) {
  Translation tr;
  try {
    tr = parse_translation(scheme);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::cout << print(sugar(translate(tr, parse(text)))) << '\n';
  return 0;
}

int cmd_dns(const std::string& scheme, const std::string& theory, int depth, int max_size, double seconds,
            const std::string& corpus) {
  Translation tr;
  try {
    tr = parse_translation(scheme);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  TheoryId t = theory_arg(theory);
  Registry reg = registry_for(corpus);
  DnsOptions o;
  o.depth = depth;
  o.max_size = max_size;
  o.seconds = seconds;
  o.registry = &reg;
  std::vector<Formula> theorems = regression_list(reg, t);
  std::vector<Formula> formulas = theorems;
  for (const auto& f : dns_base_formulas()) formulas.push_back(f);
  DnsReport rep = check_dns(tr, t, formulas, theorems, o);
  std::cout << rep.str();
  return rep.passed() ? 0 : 1;
}

int cmd_corpus_run(const std::string& root, const std::string& filter, unsigned jobs, int depth) {
  CorpusOptions o;
  o.filter = filter;
  o.jobs = jobs;
  o.easy_depth = depth;
  CorpusReport rep = run_corpus(root, o);
  std::cout << rep.str();
  return rep.passed() ? 0 : 1;
}

int cmd_corpus_k(const std::string& corpus, int k, int depth) {
  GeneratedEntry g = generate_k_contradiction(k);
  std::cout << g.text;
  Registry reg = corpus_registry(corpus);
  CheckOptions co;
  co.easy_depth = depth;
  ScriptResult r = check_script(g.script, reg, co);
  std::cout << (r.verdict ? "ok" : "rejected " + r.verdict.message) << '\n';
  return r.verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof workbench for affine and Lukasiewicz logics"};
  app.require_subcommand(1);

  std::string theory = "ALm", scheme, system, corpus_dir = LUKP_CORPUS_DIR, text, file, filter, out_dir;
  int depth = 8, max_size = 10, k = 1;
  double seconds = 600;
  unsigned jobs = 1;
  bool hilbert = false, with_corpus = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
  parse_cmd->add_option("formula", text)->required();

  auto* check_cmd = app.add_subcommand("check", "Check a script (.eq), proof (.nd) or derivation (.hil)");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--theory", theory, "theory of a bare proof tree");
  check_cmd->add_option("--system", system, "Hilbert system for .hil files");
  check_cmd->add_flag("--with-corpus", with_corpus, "cite the corpus lemmas as well as the primitives");
  check_cmd->add_option("--corpus", corpus_dir, "corpus root")->capture_default_str();
  check_cmd->add_option("--depth", depth, "largest easy depth")->capture_default_str();

  auto* prove_cmd = app.add_subcommand("prove", "Bounded proof search");
  prove_cmd->add_option("sequent", text)->required();
  prove_cmd->add_option("--theory", theory)->capture_default_str();
  prove_cmd->add_option("--depth", depth)->capture_default_str();
  prove_cmd->add_flag("--hilbert", hilbert, "print the Hilbert derivation instead");

  auto* models_cmd = app.add_subcommand("models", "Finite algebras");
  models_cmd->require_subcommand(1);
  auto* find_cmd = models_cmd->add_subcommand("find", "Search for a countermodel");
  find_cmd->add_option("--falsify", text, "sequent to falsify")->required();
  find_cmd->add_option("--theory", theory)->capture_default_str();
  find_cmd->add_option("--max-size", max_size)->capture_default_str();
  find_cmd->add_option("--seconds", seconds, "time budget")->capture_default_str();
  find_cmd->add_option("--out", out_dir, "write model.alg and witness.txt here");
  find_cmd->add_option("--jobs", jobs, "accepted for uniformity; the search is sequential");
  auto* count_cmd = models_cmd->add_subcommand("count", "Count algebras of a class up to isomorphism");
  count_cmd->add_option("--theory", theory)->capture_default_str();
  count_cmd->add_option("--max-size", max_size)->capture_default_str();

  auto* tr_cmd = app.add_subcommand("translate", "Apply a negative translation");
  tr_cmd->add_option("--scheme", scheme)->required();
  tr_cmd->add_option("formula", text)->required();

  auto* dns_cmd = app.add_subcommand("dns-check", "Check DNS1-DNS3 over the regression list");
  dns_cmd->add_option("--scheme", scheme)->required();
  dns_cmd->add_option("--theory", theory)->required();
  dns_cmd->add_option("--budget,--depth", depth, "bounded proof depth")->capture_default_str();
  dns_cmd->add_option("--max-size", max_size)->capture_default_str();
  dns_cmd->add_option("--seconds", seconds, "time budget for countermodel searches")->capture_default_str();
  dns_cmd->add_option("--corpus", corpus_dir, "corpus root supplying lemmas and theorems")->capture_default_str();

  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus ledger");
  corpus_cmd->require_subcommand(1);
  auto* run_cmd = corpus_cmd->add_subcommand("run", "Recheck every entry");
  run_cmd->add_option("--root", corpus_dir)->capture_default_str();
  run_cmd->add_option("--filter", filter, "substring of the entry ids");
  run_cmd->add_option("--jobs", jobs)->capture_default_str();
  run_cmd->add_option("--depth", depth, "largest easy depth")->capture_default_str();
  auto* k_cmd = corpus_cmd->add_subcommand("k-contradiction", "Generate and check one family member");
  k_cmd->add_option("k", k)->required()->check(CLI::PositiveNumber);
  k_cmd->add_option("--root", corpus_dir)->capture_default_str();
  k_cmd->add_option("--depth", depth)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*parse_cmd) return cmd_parse(text);
    if (*check_cmd) return cmd_check(file, check_cmd->count("--theory") ? theory : "", system,
                                     with_corpus ? corpus_dir : "", depth);
    if (*prove_cmd) return cmd_prove(text, theory, depth, hilbert);
    if (*find_cmd) return cmd_models_find(text, theory, max_size, seconds, out_dir);
    if (*count_cmd) return cmd_models_count(theory, max_size);
    if (*tr_cmd) return cmd_translate(scheme, text);
    if (*dns_cmd) return cmd_dns(scheme, theory, depth, max_size, seconds, corpus_dir);
    if (*run_cmd) return cmd_corpus_run(corpus_dir, filter, jobs, depth);
    if (*k_cmd) return cmd_corpus_k(corpus_dir, k, depth);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
