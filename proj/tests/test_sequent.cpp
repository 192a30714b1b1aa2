#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace luk;

namespace {

bool valid_up_to(const Sequent& s, TheoryId t, int size) { return valid_in_class(s, t, size); }

ProofTree axiom_leaf(Rule r, std::vector<Formula> inst, Sequent concl) {
  return ProofTree{std::move(concl), r, {}, std::move(inst)};
}

}  // namespace

TEST(Sequent, FoundProofsCheckAndAreValid) {
  const char* seqs[] = {
      "A |- A",
      "A, A -o B |- B",
      "A * B |- B * A",
      "A -o B -o C |- B -o A -o C",
      "A, B |- A * B",
      "A * (A -o B) |- B * (B -o A)",
      "1 |- A",
      "A^^ |- A",
      "A |- A * A",
      "A -o B, B -o C |- A -o C",
      "A |- B -o A",
  };
  int proved = 0;
  for (const auto* text : seqs) {
    Sequent s = parse_sequent(text);
    for (TheoryId t : TheoryId::all()) {
      auto p = bounded_prove(s, t, 6);
      if (!p) continue;
      ++proved;
      EXPECT_TRUE(check_proof(*p, t).ok) << text << " in " << t.name();
      EXPECT_EQ(expand_derived(p->conclusion.goal), expand_derived(s.goal));
      EXPECT_TRUE(valid_up_to(s, t, 4)) << text << " in " << t.name();
      // the full base has CON but not CWC as an axiom
      for (TheoryId u : TheoryId::all())
        if (t.level <= u.level && (t.base == u.base || t.base == Base::Affine))
          EXPECT_TRUE(check_proof(*p, u).ok) << text << " " << t.name() << " -> " << u.name();
    }
  }
  EXPECT_GT(proved, 40);
}

TEST(Sequent, UnprovableStaysUnproved) {
  // [DERIVED] each has a countermodel in the class of the theory
  std::pair<const char*, TheoryId> cases[] = {
      {"A |- A * A", LLc}, {"1 |- A", LLm}, {"A^^ |- A", LLi}, {"A * (A -o B) |- B * (B -o A)", ALc}};
  for (auto [text, t] : cases) {
    Sequent s = parse_sequent(text);
    EXPECT_FALSE(bounded_prove(s, t, 8).has_value()) << text;
    EXPECT_TRUE(find_countermodel(s, t, 5).has_value()) << text;
  }
}

TEST(Sequent, AxiomLeavesRespectTheories) {
  Formula a = parse("A"), b = parse("B");
  struct Case {
    Rule r;
    ProofTree leaf;
    bool (TheoryId::*needs)() const;
  };
  std::vector<Case> cases = {
      {Rule::AxCON, axiom_leaf(Rule::AxCON, {a}, parse_sequent("A |- A * A")), &TheoryId::has_con},
      {Rule::AxEFQ, axiom_leaf(Rule::AxEFQ, {a}, parse_sequent("1 |- A")), &TheoryId::has_efq},
      {Rule::AxDNE, axiom_leaf(Rule::AxDNE, {a}, parse_sequent("A^^ |- A")), &TheoryId::has_dne},
      {Rule::AxCWC, axiom_leaf(Rule::AxCWC, {a, b}, parse_sequent("A, A -o B |- B * (B -o A)")),
       &TheoryId::has_cwc},
  };
  for (const auto& c : cases)
    for (TheoryId t : TheoryId::all())
      EXPECT_EQ(check_proof(c.leaf, t).ok, (t.*c.needs)()) << rule_name(c.r) << " in " << t.name();
  ProofTree asmleaf = axiom_leaf(Rule::AxASM, {a}, parse_sequent("B, A |- A"));
  for (TheoryId t : TheoryId::all()) EXPECT_TRUE(check_proof(asmleaf, t).ok);
  ProofTree wrong = axiom_leaf(Rule::AxASM, {a}, parse_sequent("B |- A"));
  EXPECT_FALSE(check_proof(wrong, ALm).ok);
}

TEST(Sequent, BadRuleApplicationsAreRejected) {
  auto p = bounded_prove(parse_sequent("A, A -o B |- B"), ALm, 4);
  ASSERT_TRUE(p);
  ProofTree q = *p;
  q.conclusion.goal = parse("A");
  EXPECT_FALSE(check_proof(q, ALm).ok);
  ProofTree r = *p;
  r.conclusion.context.push_back(parse("C"));
  EXPECT_FALSE(check_proof(r, ALm).ok);
}

TEST(Sequent, ContractionRuleAndAxiomDeriveEachOther) {
  Formula a = parse("A -o B");
  auto premise = bounded_prove(parse_sequent("A -o B, A -o B, C |- (A -o B) * ((A -o B) * C)"), ALm, 6);
  ASSERT_TRUE(premise);
  ProofTree via = contraction_rule_via_axiom(*premise, a);
  EXPECT_TRUE(check_proof(via, ML).ok);
  EXPECT_FALSE(check_proof(via, LLc).ok);
  EXPECT_EQ(via.conclusion.goal, parse("(A -o B) * ((A -o B) * C)"));
  EXPECT_EQ(via.conclusion.context.size(), 2u);

  ProofTree base = contraction_axiom_premise(a, {parse("C")});
  EXPECT_TRUE(check_proof(base, ALm).ok);
  EXPECT_EQ(base.conclusion.goal, parse("(A -o B) * (A -o B)"));
}

TEST(Sequent, WeakenAndSubstitutePreserveProofs) {
  Formula extra = parse("C * C");
  Substitution sigma;
  sigma.insert_or_assign("A", parse("B -o C"));
  sigma.insert_or_assign("B", parse("C^"));
  const char* seqs[] = {"A, A -o B |- B", "A * B |- B * A", "A -o B -o C |- B -o A -o C", "A^^ |- A"};
  for (const auto* text : seqs) {
    for (TheoryId t : {ALm, LLc, BL}) {
      auto p = bounded_prove(parse_sequent(text), t, 6);
      if (!p) continue;
      ProofTree w = weaken(*p, extra);
      EXPECT_TRUE(check_proof(w, t).ok) << text;
      EXPECT_EQ(w.conclusion.context.size(), p->conclusion.context.size() + 1);
      ProofTree s = substitute(*p, sigma);
      EXPECT_TRUE(check_proof(s, t).ok) << text;
      EXPECT_EQ(s.conclusion.goal, substitute(p->conclusion.goal, sigma));
    }
  }
}

TEST(Sequent, WriteReadRoundTrip) {
  for (const auto* text : {"A * (A -o B) |- B * (B -o A)", "A -o B, B -o C |- A -o C", "1 |- A"}) {
    auto p = bounded_prove(parse_sequent(text), LLi, 6);
    ASSERT_TRUE(p) << text;
    std::string w = write_proof(*p);
    ProofTree q = read_proof(w);
    EXPECT_EQ(write_proof(q), w);
    EXPECT_TRUE(check_proof(q, LLi).ok);
  }
  EXPECT_THROW(read_proof("nonsense"), ParseError);
}
