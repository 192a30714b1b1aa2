#include <gtest/gtest.h>

#include "lukprover/corpus.hpp"
#include "oracles.hpp"

using namespace luk;

TEST(Mutation, CorpusScriptsCheckUnmutated) {
  Registry reg = corpus_registry(LUKP_CORPUS_DIR);
  for (const auto& s : corpus_scripts(LUKP_CORPUS_DIR)) EXPECT_TRUE(check_script(s, reg).verdict.ok) << s.id;
}

TEST(Mutation, PolarityMutantsAreKilled) {
  Registry reg = corpus_registry(LUKP_CORPUS_DIR);
  auto ms = oracle::mutants(corpus_scripts(LUKP_CORPUS_DIR), reg);
  std::size_t flips = 0, moves = 0;
  for (const auto& m : ms) (m.kind == "flip" ? flips : moves)++;
  EXPECT_GE(flips, 20u);
  EXPECT_GE(moves, 5u);
  oracle::MutationTally t = oracle::run_mutants(ms, reg);
  EXPECT_EQ(t.killed, t.total);
  for (const auto& s : t.survivors) ADD_FAILURE() << "survivor: " << s;
}

TEST(Mutation, HandWrittenMutant) {
  Registry reg = Registry::primitives();
  auto s = parse_scripts(
      "lemma ok theory ALm claim (A -o C) * B >= (A * B -o C) * B\n"
      "start (A -o C) * B\n"
      ">= (A * B -o C) * B by wk at 0.0 rev with B := B\n");
  ASSERT_TRUE(check_script(s[0], reg).verdict.ok) << check_script(s[0], reg).verdict.message;
  auto ms = oracle::mutants(s, reg);
  ASSERT_FALSE(ms.empty());
  auto t = oracle::run_mutants(ms, reg);
  EXPECT_EQ(t.killed, t.total);
}
