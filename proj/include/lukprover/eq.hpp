#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lukprover/formula.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/theory.hpp"

namespace luk {

/// Geq: lhs |- rhs.  Equiv: both directions.
enum class Relation { Equiv, Geq };

std::string_view relation_symbol(Relation r);  // "~=", ">="
/// Equiv is the identity; anything composed with Geq is Geq.
Relation compose(Relation a, Relation b);

/// Flattens * spines, drops 0 factors, sorts factors; recursive, no expansion
/// of derived connectives.
Formula ac_normalize(const Formula& f);

/// Normal form modulo AC of *, unit 0 and the laws 0 -o X = X, X -o 0 = 0,
/// computed on the core expansion. Two formulas with equal canonical forms
/// are interderivable in ALm.
Formula canonical(const Formula& f);

struct LemmaEntry {
  std::string id;
  Formula lhs = Formula::zero();
  Formula rhs = Formula::zero();
  Relation relation = Relation::Equiv;
  TheoryId theory = ALm;
  std::string provenance;  // "primitive", "hypothesis" or the corpus entry id
  /// Variables are fixed (script hypotheses), not schematic.
  bool rigid = false;
};

/// How a step is justified.
struct Justification {
  enum class Kind { Rewrite, Def, Ac, Insert, Delete, Easy, Cite };
  Kind kind = Kind::Easy;
  std::string lemma;         // Rewrite, Cite
  bool reversed = false;     // Rewrite, Cite
  Substitution with;         // Rewrite, Cite (keys are lemma variables)
  Position position;         // Rewrite, Def, Insert, Delete
  bool locate = false;       // position written as "?" (authoring aid)
  std::string connective;    // Def
  std::optional<Formula> conjunct;  // Insert, Delete
  std::vector<Justification> discharge;  // Insert, Delete: one Easy or Cite
  int depth = 0;             // Easy

  std::string str() const;
};

struct EqStep {
  Relation claimed = Relation::Equiv;
  Formula result = Formula::zero();
  Justification just;
};

struct Chain {
  Formula start = Formula::zero();
  std::vector<EqStep> steps;
};

/// A chain proof of lhs ~= rhs or lhs >= rhs. An equivalence may be proved
/// by one all-equivalence chain, or by a second chain from rhs back to lhs.
struct EqScript {
  std::string id;
  TheoryId theory = ALm;
  Formula lhs = Formula::zero();
  Relation relation = Relation::Equiv;
  Formula rhs = Formula::zero();
  std::vector<LemmaEntry> hypotheses;  // script-scoped, rigid
  std::vector<Chain> chains;

  bool hypothetical() const { return !hypotheses.empty(); }
};

/// Parses one or more `lemma` blocks.
std::vector<EqScript> parse_scripts(std::string_view text);  // throws ParseError
std::string write_script(const EqScript& s);

struct CheckOptions {
  int easy_depth = 8;
  /// Accept "?" positions by trying every position (authoring aid).
  bool locate = false;
  /// Keep the sequent proofs found for easy steps in ScriptResult::proofs.
  bool keep_proofs = false;
};

struct ScriptResult {
  Verdict verdict;
  Relation established = Relation::Equiv;
  int max_easy_depth = 0;     // largest depth actually used by easy steps
  std::size_t steps = 0;
  std::vector<std::string> located;  // positions found for "?" steps, in order
  std::vector<ProofTree> proofs;     // with CheckOptions::keep_proofs
};

/// Append-only lemma table. Lookups and registration are thread safe.
class Registry {
 public:
  Registry() = default;
  Registry(const Registry& other);
  Registry& operator=(const Registry& other);

  /// Registry holding the primitive kit, each entry backed by sequent
  /// proofs found and checked at construction.
  static Registry primitives();

  std::optional<LemmaEntry> find(std::string_view id) const;
  std::vector<LemmaEntry> entries() const;

  /// The script must check against *this and establish the entry's claim
  /// in the entry's theory. The check outcome is stored in *result.
  Verdict register_lemma(const LemmaEntry& e, const EqScript& proof, const CheckOptions& opt = {},
                         ScriptResult* result = nullptr);
  /// proofs[0]: lhs |- rhs (empty context allowed when lhs is 0); for an
  /// equivalence proofs[1]: rhs |- lhs.
  Verdict register_lemma(const LemmaEntry& e, const std::vector<ProofTree>& proofs);

 private:
  Verdict insert(const LemmaEntry& e);
  mutable std::mutex mu_;
  std::vector<LemmaEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Lemma entry stated by a script's claim.
LemmaEntry entry_of(const EqScript& s);

struct RewriteResult {
  Formula formula = Formula::zero();
  /// Relation between the old and the new formula; nullopt = the rewrite
  /// would make the formula stronger (new >= old only), i.e. unusable.
  std::optional<Relation> relation;
};

/// Rewrites the subterm at p of f with the lemma (rhs for lhs, or the other
/// way when reversed). Matching is modulo canonical(); a tensor pattern may
/// match part of a tensor spine, the other factors are kept. All variables
/// of the replacement must be bound by the match or by `with`.
/// Throws std::invalid_argument on mismatch.
RewriteResult apply_rewrite(const Formula& f, const LemmaEntry& lemma, bool reversed,
                            const Position& p, const Substitution& with = {});

ScriptResult check_script(const EqScript& s, const Registry& reg, const CheckOptions& opt = {});

/// Id of a registered lemma usable in t whose theorem form is an instance
/// of |- g (up to canonical()), if any.
std::optional<std::string> cite_theorem(const Registry& reg, TheoryId t, const Formula& g);

/// Replaces each "?" position in the script text with the first position
/// at which the step checks. Other text is left as written.
std::string fill_positions(std::string_view text, const Registry& reg, int easy_depth = 8);

}  // namespace luk
