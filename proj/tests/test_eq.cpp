#include <gtest/gtest.h>

#include "lukprover/corpus.hpp"
#include "oracles.hpp"

using namespace luk;

namespace {

const Registry& prims() {
  static const Registry r = Registry::primitives();
  return r;
}

ScriptResult check_text(const std::string& text, const Registry& reg = prims()) {
  auto scripts = parse_scripts(text);
  EXPECT_EQ(scripts.size(), 1u);
  return check_script(scripts.at(0), reg);
}

bool semantically_valid(const LemmaEntry& e, int size) {
  if (!valid_in_class(Sequent{{e.lhs}, e.rhs}, e.theory, size)) return false;
  return e.relation == Relation::Geq || valid_in_class(Sequent{{e.rhs}, e.lhs}, e.theory, size);
}

}  // namespace

// canonical() may only identify formulas that agree in every pocrim
TEST(Eq, CanonicalIsSemanticallyConservative) {
  oracle::FormulaGen gen(31);
  auto ms = enumerate(3, FlagFilter{});
  for (int i = 0; i < 400; ++i) {
    Formula f = gen(4);
    Formula c = canonical(f);
    EXPECT_EQ(canonical(c), c);
    Formula ff = free_falsum(f), fc = free_falsum(c);
    std::set<std::string> names = variables(ff);
    names.merge(variables(fc));
    std::vector<std::string> vs(names.begin(), names.end());
    for (const auto& m : ms) {
      std::vector<int> val(vs.size(), 0);
      while (true) {
        Assignment v;
        for (std::size_t k = 0; k < vs.size(); ++k) v[vs[k]] = val[k];
        ASSERT_EQ(eval(fc, m, v), eval(ff, m, v)) << print(f);
        std::size_t k = 0;
        while (k < val.size() && ++val[k] == m.n) val[k++] = 0;
        if (k == val.size()) break;
      }
    }
  }
}

TEST(Eq, CanonicalModuloAcAndUnits) {
  EXPECT_EQ(canonical(parse("A * B * C")), canonical(parse("C * (A * B)")));
  EXPECT_EQ(canonical(parse("(B * A) -o C")), canonical(parse("A * B -o C")));
  EXPECT_EQ(canonical(parse("A * 0")), canonical(parse("A")));
  EXPECT_EQ(canonical(parse("0 -o A")), canonical(parse("A")));
  EXPECT_EQ(canonical(parse("A -o 0")), canonical(parse("0")));
  EXPECT_NE(canonical(parse("A -o B")), canonical(parse("B -o A")));
  EXPECT_EQ(ac_normalize(parse("B * A")), ac_normalize(parse("A * B")));
}

TEST(Eq, PrimitivesAreValidInTheirClass) {
  for (const auto& e : prims().entries()) EXPECT_TRUE(semantically_valid(e, 4)) << e.id;
}

TEST(Eq, CorpusLemmasAreValidInTheirClass) {
  Registry reg = corpus_registry(LUKP_CORPUS_DIR);
  std::size_t corpus = 0;
  for (const auto& e : reg.entries()) {
    if (e.provenance == "primitive") continue;
    ++corpus;
    EXPECT_TRUE(semantically_valid(e, 4)) << e.id;
  }
  EXPECT_GT(corpus, 20u);
}

TEST(Eq, PolarityViolationIsRejected) {
  auto good = check_text(
      "lemma ok theory ALm claim A -o C >= A * B -o C\n"
      "start A -o C\n"
      ">= A * B -o C by wk at 0 rev with B := B\n");
  EXPECT_TRUE(good.verdict.ok) << good.verdict.message;
  auto bad = check_text(
      "lemma bad theory ALm claim A * B -o C >= A -o C\n"
      "start A * B -o C\n"
      ">= A -o C by wk at 0\n");
  EXPECT_FALSE(bad.verdict.ok);
  EXPECT_NE(bad.verdict.message.find("polarity"), std::string::npos) << bad.verdict.message;
  // a >= step may not be claimed as an equivalence
  auto eq = check_text(
      "lemma eq theory ALm claim A * B ~= A\n"
      "start A * B\n"
      "= A by wk at root\n");
  EXPECT_FALSE(eq.verdict.ok);
}

TEST(Eq, ScriptErrors) {
  // unknown lemma
  EXPECT_FALSE(check_text("lemma x theory ALm claim A >= A\nstart A\n= A by nothing-here at root\n").verdict.ok);
  // chain ends elsewhere
  EXPECT_FALSE(check_text("lemma x theory ALm claim A * B >= B\nstart A * B\n>= A by wk at root\n").verdict.ok);
  // lemma outside the theory
  EXPECT_FALSE(
      check_text("lemma x theory ALm claim A * (A -o B) >= B * (B -o A)\nstart A * (A -o B)\n= B * (B -o A) by cwc at root\n")
          .verdict.ok);
  EXPECT_TRUE(
      check_text("lemma x theory LLm claim A * (A -o B) >= B * (B -o A)\nstart A * (A -o B)\n= B * (B -o A) by cwc at root\n")
          .verdict.ok);
  // easy step beyond the search
  EXPECT_FALSE(check_text("lemma x theory LLi claim A^^ >= A\nstart A^^\n>= A by easy 8\n").verdict.ok);
  // wrong result of a rewrite
  EXPECT_FALSE(check_text("lemma x theory ALm claim A * B >= B\nstart A * B\n>= B * B by wk at root\n").verdict.ok);
  EXPECT_THROW(parse_scripts("lemma x theory ALm claim A\nstart A\n"), ParseError);
  EXPECT_THROW(parse_scripts("lemma x theory XYZ claim A >= A\nstart A\n"), ParseError);
}

TEST(Eq, AcDefAndEasySteps) {
  CheckOptions opt;
  opt.keep_proofs = true;
  auto s = parse_scripts(
      "lemma x theory ALm claim (A * B) /\\ C ~= (A * B -o C) * B * A\n"
      "start (A * B) /\\ C\n"
      "= A * B * (A * B -o C) by def /\\ at root\n"
      "= (A * B -o C) * B * A by ac\n");
  auto r = check_script(s.at(0), prims(), opt);
  EXPECT_TRUE(r.verdict.ok) << r.verdict.message;
  auto e = parse_scripts("lemma y theory ALm claim A * (A -o B) >= B\nstart A * (A -o B)\n>= B by easy 2\n");
  auto re = check_script(e.at(0), prims(), opt);
  ASSERT_TRUE(re.verdict.ok) << re.verdict.message;
  ASSERT_EQ(re.proofs.size(), 1u);
  EXPECT_TRUE(check_proof(re.proofs[0], ALm).ok);
  EXPECT_EQ(re.max_easy_depth, 2);
}

TEST(Eq, RegistryRejectsDuplicates) {
  Registry reg = prims();
  auto s = parse_scripts("lemma mp2 theory ALm claim A * (A -o B) >= B\nstart A * (A -o B)\n>= B by mp at root\n");
  EXPECT_TRUE(reg.register_lemma(entry_of(s[0]), s[0]).ok);
  EXPECT_FALSE(reg.register_lemma(entry_of(s[0]), s[0]).ok);
  auto mp = parse_scripts("lemma mp theory ALm claim A * (A -o B) >= B\nstart A * (A -o B)\n>= B by easy 2\n");
  EXPECT_FALSE(reg.register_lemma(entry_of(mp[0]), mp[0]).ok);
  // a registered lemma can be cited
  EXPECT_TRUE(check_text("lemma z theory ALm claim (C -o D) * C >= D\nstart (C -o D) * C\n>= D by mp2 at root\n", reg)
                  .verdict.ok);
}

TEST(Eq, WriteScriptRoundTrip) {
  for (const auto& s : corpus_scripts(LUKP_CORPUS_DIR)) {
    std::string w = write_script(s);
    auto back = parse_scripts(w);
    ASSERT_EQ(back.size(), 1u) << s.id;
    EXPECT_EQ(write_script(back[0]), w);
  }
}

TEST(Eq, RewriteMatchesInsideTensorSpines) {
  auto e = prims().find("mp");
  ASSERT_TRUE(e);
  RewriteResult r = apply_rewrite(parse("C * A * (A -o B)"), *e, false, {});
  EXPECT_EQ(canonical(r.formula), canonical(parse("C * B")));
  ASSERT_TRUE(r.relation);
  EXPECT_EQ(*r.relation, Relation::Geq);
  EXPECT_THROW(apply_rewrite(parse("C * A"), *e, false, {}), std::invalid_argument);
}
