// Compact construction of hand-written models in tests.

#ifndef CTLEV_TESTS_BUILD_HPP
#define CTLEV_TESTS_BUILD_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"
#include "ctlev/model_io.hpp"

namespace ctlev::testing {

struct Spec {
  std::vector<StateId> states;
  std::set<StateId> closed;
  std::vector<std::pair<StateId, StateId>> transitions;
  std::vector<Assertion> labels;
};

/// The context is the closure of `context` plus every labelled formula.
inline Model build(const Spec& spec, std::vector<Formula> context = {}) {
  FormulaSet ctx;
  for (const Formula& f : context) ctx.insert_all(subformula_closure(f));
  for (const Assertion& a : spec.labels) ctx.insert_all(subformula_closure(a.formula));
  Model m(spec.states, ctx);
  for (const StateId& s : spec.closed) m.set_closed(m.index_of(s));
  for (const auto& [s, t] : spec.transitions) m.add_transition(m.index_of(s), m.index_of(t));
  for (const Assertion& a : spec.labels) m.set_label(m.index_of(a.state), a.formula, a.value);
  return m;
}

inline Model fixture(const std::string& name) {
  return load_model_file(std::string(CTLEV_DATA_DIR) + "/" + name).model;
}

inline Formula F(const char* text) { return parse_formula(text); }

}  // namespace ctlev::testing

#endif  // CTLEV_TESTS_BUILD_HPP
