#pragma once

#include <chrono>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lukprover/formula.hpp"
#include "lukprover/theory.hpp"

namespace luk {

/// Finite pocrim candidate. Element 0 is the monoid identity (truth) and
/// the least element; a >= b iff res(a, b) == 0.
struct FiniteAlgebra {
  int n = 0;
  std::vector<int> add_table;  // n*n, row-major
  std::vector<int> res_table;  // n*n; res(a, b) interprets a -o b
  std::optional<int> top;      // interprets the constant 1 when present

  int add(int a, int b) const { return add_table[static_cast<std::size_t>(a * n + b)]; }
  int res(int a, int b) const { return res_table[static_cast<std::size_t>(a * n + b)]; }
  bool geq(int a, int b) const { return res(a, b) == 0; }

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;
};

struct ClassFlags {
  bool pocrim = false;
  bool hoop = false;
  bool bounded = false;
  bool involutive = false;
  bool idempotent = false;
  /// First violated law (pocrim axioms first), or empty.
  std::string violation;

  std::string str() const;
};

ClassFlags check_class(const FiniteAlgebra& m);

/// Selection of flags for enumeration. Unset entries are unconstrained.
struct FlagFilter {
  std::optional<bool> hoop, bounded, involutive, idempotent;
  bool admits(const ClassFlags& f) const;
};

/// The class of algebras matching a theory: affine -> pocrims, Lukasiewicz ->
/// hoops, full -> idempotent; intuitionistic adds bounded, classical adds
/// involutive.
FlagFilter class_of(TheoryId t);

FiniteAlgebra lukasiewicz_chain(int k);

using Assignment = std::map<std::string, int>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Homomorphic evaluation (derived nodes are expanded on the fly).
int eval(const Formula& f, const FiniteAlgebra& m, const Assignment& v);

/// Replaces the constant 1 by a fresh variable. In the minimal logics 1 has
/// no special rules, so validity there is validity with 1 free.
Formula free_falsum(const Formula& f);
Sequent free_falsum(const Sequent& s);

/// True iff eval(*context) >= eval(goal) for all assignments. On failure the
/// falsifying assignment is stored in *witness when given.
bool valid(const Sequent& s, const FiniteAlgebra& m, Assignment* witness = nullptr);

/// Calls `visit` on one representative per isomorphism class of pocrims of
/// each size 1..size_max admitted by `filter`, chains first within a size,
/// then by canonical form. Stops early when `visit` returns false. Returns
/// false iff the deadline passed first.
bool enumerate(int size_max, const FlagFilter& filter, const std::function<bool(const FiniteAlgebra&)>& visit,
               std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);
std::vector<FiniteAlgebra> enumerate(int size_max, const FlagFilter& filter);

/// Lexicographically least relabelling over permutations fixing 0.
FiniteAlgebra canonical_form(const FiniteAlgebra& m);

struct Countermodel {
  FiniteAlgebra algebra;
  Assignment assignment;
};

/// Searches the class of `t` for an algebra falsifying s. In minimal
/// theories the constant 1 is evaluated as a free element. `seconds` > 0
/// bounds the wall time; *exhausted tells whether every algebra up to
/// size_max was tried without finding one.
std::optional<Countermodel> find_countermodel(const Sequent& s, TheoryId t, int size_max, double seconds = 0,
                                              bool* exhausted = nullptr);

/// Validity of s in every algebra of the class of t up to size_max.
bool valid_in_class(const Sequent& s, TheoryId t, int size_max);

std::string write_algebra(const FiniteAlgebra& m);
FiniteAlgebra read_algebra(std::istream& in);  // throws ParseError
std::string format_assignment(const Assignment& v);
Assignment parse_assignment(std::string_view text);  // "A := 1, B := 0"; throws ParseError

}  // namespace luk
