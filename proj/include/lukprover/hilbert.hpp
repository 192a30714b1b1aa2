#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lukprover/formula.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/theory.hpp"

namespace luk {

/// One of the nine modus-ponens systems matching the sequent calculi, or
/// the Rose-Rosser axiomatization (A1-A4).
struct HilbertSystemId {
  TheoryId theory = ALm;
  bool rose_rosser = false;

  std::string name() const;  // "H-LLi", "RoseRosser"
  static HilbertSystemId parse(std::string_view s);
  static HilbertSystemId of(TheoryId t) { return {t, false}; }
  static HilbertSystemId rosser() { return {LLc, true}; }
};

/// Schema formulas over metavariables A, B, C.
const Formula& schema(std::string_view name);  // throws std::invalid_argument
/// Schema names available in a system.
std::vector<std::string> schemata(const HilbertSystemId& s);

struct HilbertLine {
  Formula formula;
  bool by_axiom = true;
  std::string schema;  // when by_axiom
  Substitution subst;  // when by_axiom
  int minor = -1;      // mp: index of A
  int major = -1;      // mp: index of A -o B
};

struct HilbertDerivation {
  std::vector<HilbertLine> lines;
};

/// Line indices in the checker and in the file format are 1-based.
Verdict check_derivation(const HilbertDerivation& d, const HilbertSystemId& s);

/// C1 -o C2 -o ... -o Ck -o A for the context listed in `order`; `order`
/// must be a permutation of s.context (compared after expansion).
Formula curry_sequent(const Sequent& s, const std::vector<Formula>& order);
Formula curry_sequent(const Sequent& s);  // context order as stored

/// Derivation whose last line is curry_sequent(conclusion(p)), built by
/// structural recursion over p.
HilbertDerivation sequent_to_hilbert(const ProofTree& p);

/// Replays a derivation as a sequent proof of |- last line. Axiom lines use
/// a once-found sequent proof of their schema, instantiated.
ProofTree hilbert_to_sequent(const HilbertDerivation& d, TheoryId t);

/// Replaces every A * B by (A -o B^)^, innermost first; output is core and
/// free of Tensor.
Formula rose_rosser_embed(const Formula& f);

std::string write_derivation(const HilbertDerivation& d);
HilbertDerivation read_derivation(std::string_view text);  // throws ParseError

}  // namespace luk
