// Brute-force semantics for cross-checking the checker and the evidence
// conditions on small models.
//
// Nothing here shares code with the fixpoint algorithms in checker.cpp or
// evidence.cpp: satisfaction is decided by enumerating maximal paths, and
// evidence by enumerating sound supermodels.
//
// Path bound. In a model with n states, every maximal path from s that
// satisfies an EU or EG condition has a witness among the finite maximal paths
// and lassos whose stem has at most 2n states:
//   * E[a U b]: a shortest satisfying prefix visits no state twice (a repeated
//     state could be cut out), so it has at most n states; any maximal path
//     through it can be replaced by the prefix followed by a simple path to a
//     deadlock or a first repeated state, adding at most n more states.
//   * EG a: an infinite path inside the a-states can be cut at its first
//     repeated state, giving a lasso with a stem of at most n states; a finite
//     maximal path can be shortened by removing cycles to at most n states.

#ifndef CTLEV_ORACLE_HPP
#define CTLEV_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"

namespace ctlev {

class GuardError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kNaiveStateLimit = 12;
inline constexpr std::size_t kSupermodelStateLimit = 8;
inline constexpr std::size_t kSupermodelPropLimit = 4;

/// Path-quantifying satisfaction on a Kripke model with total proposition
/// labels. Caches maximal paths per state, so reuse one instance per model.
class NaiveSemantics {
 public:
  /// Throws GuardError above kNaiveStateLimit states.
  explicit NaiveSemantics(const Model& m);
  bool sat(StateIndex s, const Formula& f);

 private:
  bool eval(StateIndex s, const Formula& f);
  const std::vector<Path>& paths(StateIndex s);

  const Model& m_;
  std::vector<std::optional<std::vector<Path>>> paths_;
  std::map<std::pair<Formula, StateIndex>, bool> memo_;
};

bool naive_sat(const Model& m, std::string_view s, const Formula& f);

struct SupermodelBounds {
  std::size_t fresh_budget = 1;
  /// Upper bound on added transitions; unbounded when empty.
  std::optional<std::size_t> max_new_transitions;
};

/// Calls visit for every sound supermodel N of m in the bounded family: the
/// states of m plus up to fresh_budget fresh states (each reachable from a
/// state of m), every state closed, new transitions only out of open states of
/// m or fresh states, every total proposition labelling, compound labels
/// computed by the checker, and N's labelling extending m's. Stops early when
/// visit returns false. Returns the number of models visited.
std::size_t enumerate_supermodels(const Model& m, const SupermodelBounds& bounds,
                                  const std::function<bool(const Model&)>& visit);

/// True iff the bounded supermodel family of m is non-empty and every member
/// labels the assertion's pair with its value. Throws GuardError if m labels
/// anything outside the children of the assertion's formula.
bool is_evidence_semantic(const Model& m, const Assertion& a, const SupermodelBounds& bounds);

/// Sufficient test for an unconstrained formula set: only Not, Or and EU over
/// propositions, and no proposition occurring twice anywhere in the set.
bool syntactically_unconstrained(std::span<const Formula> g);

/// Searches fully closed models with up to max_states states for a labelling
/// on g that no sound supermodel extends.
bool is_constrained_closed_bounded(std::span<const Formula> g, std::size_t max_states);

}  // namespace ctlev

#endif  // CTLEV_ORACLE_HPP
