#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lukprover/formula.hpp"
#include "lukprover/theory.hpp"

namespace luk {

enum class Rule { ImpI, ImpE, TensorI, TensorE, AxASM, AxCON, AxEFQ, AxDNE, AxCWC };

std::string_view rule_name(Rule r);   // "impi", "asm", ...
Rule parse_rule(std::string_view s);  // throws ParseError
bool is_axiom(Rule r);

/// Natural-deduction proof tree. Premise contexts are stored explicitly, so
/// the context split of every binary rule is part of the tree.
///
///   ImpI     [P: G, A |- B]                    G |- A -o B
///   ImpE     [P0: G |- A, P1: D |- A -o B]     G, D |- B
///   TensorI  [P0: G |- A, P1: D |- B]          G, D |- A * B
///   TensorE  [P0: G |- A * B, P1: D, A, B |- C]  G, D |- C
///
/// Axiom leaves carry their schema instance in `inst`: ASM/CON/EFQ/DNE take
/// [A], CWC takes [A, B]; the rest of the context is the extra G.
struct ProofTree {
  Sequent conclusion;
  Rule rule;
  std::vector<ProofTree> premises;
  std::vector<Formula> inst;

  std::size_t size() const;
  std::size_t height() const;
};

/// Checks every node; formulas are compared after expanding derived
/// connectives. The message names the first failing node.
Verdict check_proof(const ProofTree& p, TheoryId t);

/// Proof of context(p), extra |- goal(p), threading `extra` along the path
/// that always follows the first premise.
ProofTree weaken(const ProofTree& p, const Formula& extra);

ProofTree substitute(const ProofTree& p, const Substitution& sigma);

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t pruned = 0;
};

struct SearchOptions {
  int depth = 8;
  /// Reject subgoals that fail in the small algebras of the theory's class.
  /// This never loses a proof (invalid sequents are unprovable).
  bool semantic_pruning = true;
  /// Safety valve on explored nodes; 0 = unlimited.
  std::size_t node_limit = 2000000;
};

/// Bounded backward search. `depth` counts non-invertible steps along a
/// branch (an axiom leaf counts 1; ImpI and left tensor splitting are free).
/// Returned proofs always pass check_proof.
std::optional<ProofTree> bounded_prove(const Sequent& s, TheoryId t, int depth,
                                       SearchStats* stats = nullptr);
std::optional<ProofTree> bounded_prove(const Sequent& s, TheoryId t, const SearchOptions& opt,
                                       SearchStats* stats = nullptr);

/// The contraction axiom and the contraction rule
///   G, A, A |- B  ==>  G, A |- B
/// derive each other. `contraction_rule_via_axiom` realizes one rule step
/// on a proof of the premise (TensorE over a CON leaf; checks where CON is
/// available). `contraction_axiom_premise` proves extra, A, A |- A * A with
/// rules alone; one rule step on it yields exactly the CON instance.
ProofTree contraction_rule_via_axiom(const ProofTree& premise, const Formula& a);
ProofTree contraction_axiom_premise(const Formula& a, const std::vector<Formula>& extra);

std::string write_proof(const ProofTree& p);
ProofTree read_proof(std::string_view text);  // throws ParseError

}  // namespace luk
