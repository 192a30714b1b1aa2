#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lukprover/algebra.hpp"
#include "lukprover/eq.hpp"
#include "lukprover/formula.hpp"
#include "lukprover/theory.hpp"

namespace luk {

enum class Translation { Kolmogorov, Goedel, Gentzen, Glivenko };

std::string_view translation_name(Translation t);
Translation parse_translation(std::string_view s);  // throws std::invalid_argument

/// Structural translation of the core expansion of f. Glivenko's scheme
/// gives 1^^, the others map 1 to 1.
Formula translate(Translation t, const Formula& f);

/// Proof of K(G) |- K(C) from a proof of G |- C, rule by rule: double
/// negations are introduced on the right and removed on the left against a
/// goal of the form M -o 1 or 1. DNE leaves are reproved by bounded search.
/// nullopt when the proof uses CON or CWC, or the result does not check in
/// `theory`.
std::optional<ProofTree> kolmogorov_proof(const ProofTree& p, TheoryId theory);

/// Oriented equivalence lemmas: rewrites f to a fixpoint, deepest positions
/// first. Each entry is (lemma id, reversed); lemmas not usable in `theory`
/// are skipped. The steps form a chain from f to the returned formula.
struct Normalized {
  Formula formula = Formula::zero();
  std::vector<EqStep> steps;
};
Normalized normalize(const Formula& f, const Registry& reg, TheoryId theory,
                     const std::vector<std::pair<std::string, bool>>& rules);

enum class Outcome { Pass, Fail, Inconclusive };
std::string_view outcome_name(Outcome o);

struct DnsItem {
  std::string condition;  // "DNS1", "DNS2" or "DNS3"
  Formula source = Formula::zero();
  Sequent goal;           // obligation, read in `theory`
  TheoryId theory;
  Outcome outcome = Outcome::Inconclusive;
  /// "bounded proof, depth d", "lemma <id>", "script, n steps", or the
  /// countermodel summary.
  std::string evidence;
  std::optional<Countermodel> countermodel;
};

struct DnsReport {
  Translation translation = Translation::Kolmogorov;
  TheoryId theory;
  std::vector<DnsItem> items;

  std::size_t count(Outcome o) const;
  bool passed() const { return count(Outcome::Pass) == items.size(); }
  /// One line per item, then a summary line. Stable across runs.
  std::string str() const;
};

struct DnsOptions {
  int depth = 8;      // bounded proof budget
  int max_size = 10;  // countermodel search budget
  double seconds = 600;  // wall time shared by all countermodel searches
  /// Lemmas for citation and normalization; primitives when null.
  const Registry* registry = nullptr;
};

/// P, Q, P * Q, P -o Q, 1, P^.
std::vector<Formula> dns_base_formulas();
/// X^^ -o X for X in {P, Q, P * Q, P -o Q}.
std::vector<Formula> dne_instances();
/// Theorem forms of the non-rigid registry entries provable in
/// theory + DNE, followed by dne_instances().
std::vector<Formula> regression_list(const Registry& reg, TheoryId theory);

/// DNS1 (A^t -||- A in theory + DNE) and DNS3 ((A^t)^^ |- A^t in theory) for
/// every formula; DNS2 (|- A^t in theory) for every theorem. Each obligation
/// is tried by bounded proof, lemma citation, and normalization followed by
/// a checked chain script; failing that, by countermodel search.
DnsReport check_dns(Translation t, TheoryId theory, const std::vector<Formula>& formulas,
                    const std::vector<Formula>& theorems, const DnsOptions& opt = {});

}  // namespace luk
