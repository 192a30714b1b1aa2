#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace luk {

/// Node kinds. The first four make up the core language; the rest are
/// abbreviations that expand_derived() rewrites into core form.
enum class Kind : std::uint8_t {
  Var,
  One,     // the constant 1 (falsehood)
  Imp,     // -o
  Tensor,  // *
  Zero,    // 0  := 1 -o 1
  Neg,     // A^ := A -o 1
  WConj,   // A /\ B := A * (A -o B)
  SDisj,   // A \/ B := (B -o A) -o A
  SImp,    // A => B := A -o A * B
  Nor,     // A !! B := A^ * (B -o A)
};

std::string_view kind_name(Kind k);

/// Immutable formula tree with shared structure. Copies are cheap; equality
/// is structural (with a hash pre-check).
class Formula {
 public:
  static Formula var(std::string name);
  static Formula one();
  static Formula zero();
  static Formula imp(Formula a, Formula b);
  static Formula tensor(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula wconj(Formula a, Formula b);
  static Formula sdisj(Formula a, Formula b);
  static Formula simp(Formula a, Formula b);
  static Formula nor(Formula a, Formula b);
  static Formula make(Kind k, std::vector<Formula> kids);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->kids.size(); }
  const Formula& child(std::size_t i) const { return node_->kids.at(i); }
  const std::vector<Formula>& children() const { return node_->kids; }
  const Formula& left() const { return node_->kids.at(0); }
  const Formula& right() const { return node_->kids.at(1); }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  /// True when the tree contains only Var/One/Imp/Tensor.
  bool is_core() const { return node_->core; }

  friend bool operator==(const Formula& a, const Formula& b);
  /// Deterministic structural order; used for AC canonical forms.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  std::string str() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> kids;
    std::size_t hash = 0;
    std::size_t size = 1;
    bool core = true;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using Substitution = std::map<std::string, Formula>;

/// Path of child indices from the root.
using Position = std::vector<int>;

enum class Polarity { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Formula parse(std::string_view text);
std::string print(const Formula& f);

Formula expand_derived(const Formula& f);
Formula substitute(const Formula& f, const Substitution& sigma);

/// Variable names occurring in f, sorted.
std::set<std::string> variables(const Formula& f);

bool valid_position(const Formula& f, const Position& p);
const Formula& subterm_at(const Formula& f, const Position& p);
Formula replace_at(const Formula& f, const Position& p, const Formula& repl);
/// All positions of f in pre-order.
std::vector<Position> positions(const Formula& f);

/// Polarity of the subterm at p. Only defined on core formulas; throws
/// std::invalid_argument otherwise.
Polarity polarity_at(const Formula& f, const Position& p);

/// Polarity through derived nodes as well. Returns nullopt when the path
/// crosses an operand that occurs with both signs in the expansion (the
/// left operand of /\, \/, => and !!).
std::optional<Polarity> occurrence_polarity(const Formula& f, const Position& p);

std::string format_position(const Position& p);
Position parse_position(std::string_view text);

/// Replaces every subterm X -o 1 by X^ (and 1 -o 1 by 0) for display; the
/// result expands back to the same core formula.
Formula sugar(const Formula& f);

}  // namespace luk
