#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lukprover/eq.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/theory.hpp"

namespace luk {

enum class Tier { Proved, Refuted, ModelChecked };
std::string_view tier_name(Tier t);  // "proved", "refuted", "model-checked-only"
Tier parse_tier(std::string_view s);

/// One line of <root>/ledger.tsv; the evidence files live in <root>/<id>/.
///
/// Methods and their evidence:
///   script       proof.eq; every block checks, non-hypothetical blocks are
///                registered; each claim matches a block
///   proofs       proofs.nd; each proof checks, each claim is concluded
///   roundtrip    proofs.nd; each proof survives sequent -> Hilbert -> sequent
///   family       generate_k_contradiction for every k in the range
///   dns          check_dns over the regression list, per listed scheme
///   dns-refute   "scheme : source"; model.alg and witness.txt falsify the
///                translated classical theorem
///   countermodel model.alg and witness.txt falsify the claimed sequent
///   model-check  claims valid in the class of the theory up to `size`
///   chains       Rose-Rosser schemas valid in the Lukasiewicz chains
struct CorpusEntry {
  std::string id;
  std::string kind;  // theorem, lemma, corollary, remark, conjecture, supporting
  std::vector<TheoryId> theories;
  Tier tier = Tier::Proved;
  std::string method;
  std::vector<std::string> claims;
  std::map<std::string, std::string> budget;

  TheoryId theory() const { return theories.front(); }
  /// theorem, lemma or corollary
  bool numbered() const;
  int budget_int(const std::string& key, int fallback) const;
};

std::vector<CorpusEntry> load_ledger(const std::filesystem::path& root);  // throws std::runtime_error

struct EntryResult {
  std::string id;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

struct CorpusReport {
  std::vector<EntryResult> entries;
  double seconds = 0;
  bool passed() const;
  std::size_t failures() const;
  /// One line per entry, then a summary line.
  std::string str() const;
};

struct CorpusOptions {
  std::string filter;  // substring of the entry id; empty selects all
  unsigned jobs = 1;
  int easy_depth = 8;
};

/// Script entries are checked in ledger order against one registry, so a
/// script may cite lemmas of the entries above it; scripts of unselected
/// entries are still registered. The other entries then run on `jobs`
/// threads against the full registry.
CorpusReport run_corpus(const std::filesystem::path& root, const CorpusOptions& opt = {});

/// Primitives plus every registrable script block of the corpus, in order.
/// Throws std::runtime_error naming the first block that does not check.
Registry corpus_registry(const std::filesystem::path& root);

/// Every script block of the corpus, in ledger order.
std::vector<EqScript> corpus_scripts(const std::filesystem::path& root);

struct StoredProof {
  TheoryId theory;
  ProofTree proof;
};
/// Blocks "proof <theory>" followed by a proof tree.
std::vector<StoredProof> read_proofs(std::string_view text);  // throws ParseError
std::string write_proofs(const std::vector<StoredProof>& proofs);

/// The proofs.nd files of the corpus.
std::vector<StoredProof> corpus_proofs(const std::filesystem::path& root);

struct GeneratedEntry {
  int k = 1;
  std::string text;  // script source
  EqScript script;
};

/// (A * ... * A)^, A^^ |- A with k factors, in LLi, stated as the theorem
/// 0 >= (A^k)^ -o A^^ -o A. The script proves the k = 1 case by an easy
/// step and then applies kcontr-step k - 1 times at the root.
GeneratedEntry generate_k_contradiction(int k);  // k >= 1, else std::invalid_argument

}  // namespace luk
