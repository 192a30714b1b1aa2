#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lukprover/formula.hpp"

namespace luk {

enum class Base { Affine, Lukasiewicz, Full };
enum class Level { Minimal, Intuitionistic, Classical };

/// One of the nine logics, as a point of the 3x3 lattice.
struct TheoryId {
  Base base = Base::Affine;
  Level level = Level::Minimal;

  bool has_cwc() const { return base == Base::Lukasiewicz; }
  bool has_con() const { return base == Base::Full; }
  bool has_efq() const { return level != Level::Minimal; }
  bool has_dne() const { return level == Level::Classical; }

  /// Componentwise order; a lemma proved in *this is usable in `other`
  /// iff this->leq(other).
  bool leq(const TheoryId& other) const {
    return base <= other.base && level <= other.level;
  }
  TheoryId with_dne() const { return {base, Level::Classical}; }

  std::string name() const;
  static TheoryId parse(std::string_view name);  // throws std::invalid_argument
  static std::vector<TheoryId> all();

  friend bool operator==(const TheoryId&, const TheoryId&) = default;
};

inline constexpr TheoryId ALm{Base::Affine, Level::Minimal};
inline constexpr TheoryId ALi{Base::Affine, Level::Intuitionistic};
inline constexpr TheoryId ALc{Base::Affine, Level::Classical};
inline constexpr TheoryId LLm{Base::Lukasiewicz, Level::Minimal};
inline constexpr TheoryId LLi{Base::Lukasiewicz, Level::Intuitionistic};
inline constexpr TheoryId LLc{Base::Lukasiewicz, Level::Classical};
inline constexpr TheoryId ML{Base::Full, Level::Minimal};
inline constexpr TheoryId IL{Base::Full, Level::Intuitionistic};
inline constexpr TheoryId BL{Base::Full, Level::Classical};

/// Context is a multiset: order is irrelevant, duplicates count.
struct Sequent {
  std::vector<Formula> context;
  Formula goal;

  std::string str() const;
};

/// Parses "F1, F2 |- G" (context may be empty).
Sequent parse_sequent(std::string_view text);

/// Outcome of a check. `message` names the failing node or law when !ok.
struct Verdict {
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string msg) { return {false, std::move(msg)}; }
};

}  // namespace luk
