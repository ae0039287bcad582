// Models with open and closed states, the submodel order and paths.

#ifndef CTLEV_MODEL_HPP
#define CTLEV_MODEL_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctlev/formula.hpp"

namespace ctlev {

using StateId = std::string;
using StateIndex = std::size_t;

class ModelError : public Error {
 public:
  using Error::Error;
};

/// A claim that `formula` has truth value `value` in `state`.
struct Assertion {
  StateId state;
  Formula formula;
  bool value;

  friend bool operator==(const Assertion&, const Assertion&) = default;
  friend auto operator<=>(const Assertion&, const Assertion&) = default;
};

struct LabelEntry {
  StateIndex state;
  Formula formula;
  bool value;
};

/// A model <S, C, R, L> over a subformula-closed context F.
///
/// States are fixed at construction and kept in lexicographic order, so state
/// indices iterate deterministically. The labelling is partial: a pair that was
/// never set is undefined.
class Model {
 public:
  Model() = default;
  /// Throws ModelError on duplicate state ids or a context that is not
  /// subformula-closed. All states start open, without transitions or labels.
  Model(std::vector<StateId> states, FormulaSet context);

  std::size_t size() const { return ids_.size(); }
  const std::vector<StateId>& states() const { return ids_; }
  const StateId& id(StateIndex s) const { return ids_[s]; }
  std::optional<StateIndex> find(std::string_view id) const;
  /// Throws ModelError for an unknown id.
  StateIndex index_of(std::string_view id) const;

  const FormulaSet& context() const { return context_; }
  /// Adds formulas (and their subformulas) to the context.
  void extend_context(const FormulaSet& fs);

  bool is_closed(StateIndex s) const { return closed_[s]; }
  void set_closed(StateIndex s, bool closed = true) { closed_[s] = closed; }
  std::size_t closed_count() const;

  const std::vector<StateIndex>& successors(StateIndex s) const { return succ_[s]; }
  bool has_transition(StateIndex from, StateIndex to) const;
  void add_transition(StateIndex from, StateIndex to);
  void remove_transition(StateIndex from, StateIndex to);
  std::size_t transition_count() const;
  std::vector<std::pair<StateIndex, StateIndex>> transitions() const;
  /// Predecessor lists, rebuilt on every call.
  std::vector<std::vector<StateIndex>> predecessors() const;

  std::optional<bool> label(StateIndex s, const Formula& f) const;
  /// Throws ModelError if f is outside the context.
  void set_label(StateIndex s, const Formula& f, bool value);
  void erase_label(StateIndex s, const Formula& f);
  /// Drops every label of f.
  void erase_labels(const Formula& f);
  std::size_t label_count() const;
  /// All defined labels, ordered by formula then state.
  std::vector<LabelEntry> labels() const;
  /// Formulas with at least one defined label.
  std::vector<Formula> labelled_formulas() const;

  /// All states closed and only propositions labelled.
  bool is_kripke() const;
  /// All states closed and the labelling total on states x context.
  bool is_full() const;

  friend bool operator==(const Model& a, const Model& b);

 private:
  struct FormulaLabels {
    Formula formula;
    std::vector<signed char> values;  // -1 undefined, 0 ff, 1 tt
  };
  FormulaLabels* find_labels(const Formula& f);
  const FormulaLabels* find_labels(const Formula& f) const;

  std::vector<StateId> ids_;
  FormulaSet context_;
  std::vector<bool> closed_;
  std::vector<std::vector<StateIndex>> succ_;  // sorted
  std::vector<FormulaLabels> labels_;          // sorted by formula
};

/// A finite path, or a lasso when loop_index is set: the infinite path
/// stem . (stem[loop_index..])^omega.
struct Path {
  std::vector<StateIndex> stem;
  std::optional<std::size_t> loop_index;

  bool is_lasso() const { return loop_index.has_value(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

std::vector<StateId> successors(const Model& m, std::string_view s);

/// The submodel order: component-wise inclusion where every transition of m2
/// missing from m1 starts at a state that is open in m1. Requires the context
/// of m1 to be contained in that of m2.
bool is_submodel(const Model& m1, const Model& m2);

/// States reachable from s (including s), with everything among them.
Model restrict_reachable(const Model& m, std::string_view s);
/// Same, rooted at several states.
Model restrict_to(const Model& m, const std::vector<StateIndex>& keep);

/// Adds the given labels. Throws ModelError on a conflicting label, an unknown
/// state or a formula outside the context.
Model join(const Model& m, const std::vector<Assertion>& extra);

/// Keeps only labels of the given formulas.
Model restrict_labels(const Model& m, const FormulaSet& keep);

/// All maximal finite paths from s with at most max_len states, and all lassos
/// from s whose stem has at most max_len states.
std::vector<Path> maximal_lassos(const Model& m, std::string_view s, std::size_t max_len);

/// Models obtained from m by deleting exactly one element (a label, a closed
/// flag, a transition out of an open state, or an isolated unlabelled open
/// state) such that the result is still a submodel of m.
std::vector<Model> direct_predecessors(const Model& m);

}  // namespace ctlev

#endif  // CTLEV_MODEL_HPP
