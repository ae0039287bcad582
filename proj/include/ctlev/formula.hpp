// CTL formulas: abstract syntax, surface syntax, desugaring and subformula
// closure.
//
// Formulas are hash-consed: two structurally equal formulas share one node, so
// equality is a pointer comparison and copies are free. Nodes are never freed.

#ifndef CTLEV_FORMULA_HPP
#define CTLEV_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctlev {

/// Base class of all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Op : std::uint8_t {
  Prop,
  True,
  False,
  Not,
  And,
  Or,
  EX,
  AX,
  EF,
  AF,
  EG,
  AG,
  EU,
  AU,
};

std::size_t arity(Op op);
std::string_view op_name(Op op);

/// Operators of the existential core {True, Not, Or, EX, EU, EG}.
bool is_core_op(Op op);
/// Operators whose truth depends on other states (path quantifiers).
bool is_temporal_op(Op op);

class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula prop(std::string_view name);
  /// Throws Error if the number of children does not match the arity.
  static Formula make(Op op, std::vector<Formula> children);

  static Formula truth() { return make(Op::True, {}); }
  static Formula falsity() { return make(Op::False, {}); }
  static Formula negation(Formula f) { return make(Op::Not, {f}); }
  static Formula conj(Formula a, Formula b) { return make(Op::And, {a, b}); }
  static Formula disj(Formula a, Formula b) { return make(Op::Or, {a, b}); }
  static Formula unary(Op op, Formula f) { return make(op, {f}); }
  static Formula until(Op op, Formula a, Formula b) { return make(op, {a, b}); }

  Op op() const;
  /// Proposition name; empty for compound formulas.
  const std::string& name() const;
  std::span<const Formula> children() const;
  const Formula& child(std::size_t i) const { return children()[i]; }

  bool is_prop() const { return op() == Op::Prop; }
  bool is_compound() const { return op() != Op::Prop; }
  bool is_core() const;  // the whole tree uses core operators only
  bool is_temporal() const { return is_temporal_op(op()); }

  /// 1 for leaves, otherwise 1 + the maximum child depth.
  int depth() const;
  std::size_t node_count() const;
  std::size_t hash() const;

  /// Surface syntax; parse_formula(f.to_string()) == f.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_; }
  /// Canonical order: depth, then operator, then name, then children.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(const Node* node) : node_(node) {}
  const Node* node_;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, std::string token);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

Formula parse_formula(std::string_view text);

/// Rewrites into the core fragment {True, Not, Or, EX, EU, EG}.
Formula desugar(const Formula& f);

/// Ordered set of distinct formulas, ascending by the canonical order (and so
/// by depth).
class FormulaSet {
 public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> fs);
  explicit FormulaSet(std::span<const Formula> fs);

  void insert(const Formula& f);
  void insert_all(const FormulaSet& other);
  bool contains(const Formula& f) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<Formula>& members() const { return members_; }

  bool is_subformula_closed() const;
  bool core_only() const;
  /// Maximum member depth; 0 for the empty set.
  int depth() const;
  std::vector<Formula> propositions() const;
  std::vector<Formula> compounds() const;

  friend bool operator==(const FormulaSet&, const FormulaSet&) = default;

 private:
  std::vector<Formula> members_;
};

/// Smallest subformula-closed set containing f.
FormulaSet subformula_closure(const Formula& f);

/// Nodes of the tree in preorder (duplicates kept), children left to right.
std::vector<Formula> preorder(const Formula& f);

}  // namespace ctlev

template <>
struct std::hash<ctlev::Formula> {
  std::size_t operator()(const ctlev::Formula& f) const noexcept { return f.hash(); }
};

#endif  // CTLEV_FORMULA_HPP
