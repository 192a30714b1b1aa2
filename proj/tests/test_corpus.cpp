#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "lukprover/corpus.hpp"
#include "oracles.hpp"

using namespace luk;
namespace fs = std::filesystem;

TEST(Corpus, LedgerShape) {
  auto entries = load_ledger(LUKP_CORPUS_DIR);
  std::set<std::string> ids;
  std::size_t numbered = 0;
  for (const auto& e : entries) {
    EXPECT_TRUE(ids.insert(e.id).second) << "duplicate " << e.id;
    EXPECT_TRUE(fs::is_directory(fs::path(LUKP_CORPUS_DIR) / e.id)) << e.id;
    EXPECT_FALSE(e.theories.empty()) << e.id;
    if (e.numbered()) ++numbered;
    if (e.kind == "conjecture") EXPECT_NE(e.tier, Tier::Proved) << e.id;
  }
  EXPECT_GE(numbered, 35u);
  for (Tier t : {Tier::Proved, Tier::Refuted, Tier::ModelChecked}) EXPECT_EQ(parse_tier(tier_name(t)), t);
}

TEST(Corpus, KContradictionFamily) {
  Registry reg = corpus_registry(LUKP_CORPUS_DIR);
  for (int k = 1; k <= 4; ++k) {
    GeneratedEntry g = generate_k_contradiction(k);
    EXPECT_EQ(g.k, k);
    auto parsed = parse_scripts(g.text);
    ASSERT_EQ(parsed.size(), 1u);
    auto r = check_script(g.script, reg);
    EXPECT_TRUE(r.verdict.ok) << "k=" << k << ": " << r.verdict.message;
    // [DERIVED] the claim holds in every LLi algebra up to size 5
    EXPECT_TRUE(valid_in_class(Sequent{{g.script.lhs}, g.script.rhs}, LLi, 5)) << k;
    // k factors in the negated premise
    const Formula& neg = g.script.rhs.left();
    EXPECT_EQ(canonical(neg), canonical(parse(k == 1 ? "A^" : k == 2 ? "(A * A)^" : k == 3 ? "(A * A * A)^" : "(A * A * A * A)^")));
  }
  EXPECT_THROW(generate_k_contradiction(0), std::invalid_argument);
  // the k = 2 claim is not valid once the Lukasiewicz law is dropped
  EXPECT_FALSE(valid_in_class(Sequent{{}, generate_k_contradiction(2).script.rhs}, ALi, 5));
}

TEST(Corpus, ProofsIo) {
  auto proofs = corpus_proofs(LUKP_CORPUS_DIR);
  ASSERT_FALSE(proofs.empty());
  std::string w = write_proofs(proofs);
  auto back = read_proofs(w);
  ASSERT_EQ(back.size(), proofs.size());
  EXPECT_EQ(write_proofs(back), w);
  for (const auto& p : back) EXPECT_TRUE(check_proof(p.proof, p.theory).ok);
  EXPECT_THROW(read_proofs("proof XYZ\n"), ParseError);
}

TEST(Corpus, FilteredRunPasses) {
  CorpusOptions opt;
  opt.filter = "wconj";
  CorpusReport r = run_corpus(LUKP_CORPUS_DIR, opt);
  EXPECT_TRUE(r.passed()) << r.str();
  EXPECT_GE(r.entries.size(), 3u);
  for (const auto& e : r.entries) EXPECT_NE(e.id.find("wconj"), std::string::npos);
}

TEST(Corpus, RefutationEntriesPass) {
  for (const char* id : {"a6", "contraction-separation", "gentzen-not-dns-ali", "glivenko-not-dns-ali"}) {
    CorpusOptions opt;
    opt.filter = id;
    CorpusReport r = run_corpus(LUKP_CORPUS_DIR, opt);
    for (const auto& e : r.entries)
      if (e.id == id) EXPECT_TRUE(e.ok) << id << ": " << e.detail;
  }
}

namespace {

fs::path copy_corpus() {
  fs::path dst = fs::temp_directory_path() / ("lukp-corpus-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                              "-" + std::to_string(reinterpret_cast<std::uintptr_t>(&dst)));
  fs::remove_all(dst);
  fs::copy(LUKP_CORPUS_DIR, dst, fs::copy_options::recursive);
  return dst;
}

}  // namespace

TEST(Corpus, CorruptedEvidenceIsReported) {
  fs::path root = copy_corpus();
  {
    // break the last step of a script
    fs::path f = root / "sdisj-split" / "proof.eq";
    std::ifstream in(f);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    in.close();
    auto pos = text.rfind(" by ");
    ASSERT_NE(pos, std::string::npos);
    text = text.substr(0, pos) + " * A" + text.substr(pos);
    std::ofstream(f) << text;
  }
  {
    // wrong witness for a countermodel
    std::ofstream(root / "a6" / "witness.txt") << "A := 0, B := 0, C := 0\n";
  }
  CorpusOptions opt;
  opt.filter = "a6";
  CorpusReport r = run_corpus(root, opt);
  bool a6 = false;
  for (const auto& e : r.entries)
    if (e.id == "a6") {
      a6 = true;
      EXPECT_FALSE(e.ok);
    }
  EXPECT_TRUE(a6);
  opt.filter = "sdisj-split";
  r = run_corpus(root, opt);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.str().find("sdisj-split"), std::string::npos);
  fs::remove_all(root);
}
