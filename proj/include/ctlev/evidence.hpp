// Witnesses and counterexamples for single operators.
//
// Evidence for an assertion (s, f, b) is a model labelled only on the children
// of f that forces f to have value b at s in every sound supermodel. This
// header provides the syntactic sufficient conditions, recognizers for the
// submodel-minimal shapes, and constructive generation from a sound model.
//
// All functions here take core compound formulas (True, Not, Or, EX, EU, EG).

#ifndef CTLEV_EVIDENCE_HPP
#define CTLEV_EVIDENCE_HPP

#include <string_view>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"

namespace ctlev {

class EvidenceError : public Error {
 public:
  using Error::Error;
};

enum class Flavor { Minimal, Natural };

struct EvidenceRequest {
  StateId state;
  Formula formula;
  Flavor flavor = Flavor::Minimal;
  bool locally_closed = false;
};

/// Sufficient condition for m to be a witness for (s, f).
bool witness_cond(const Model& m, std::string_view s, const Formula& f);
/// Sufficient condition for m to be a counterexample for (s, f).
bool counter_cond(const Model& m, std::string_view s, const Formula& f);

/// m has exactly a submodel-minimal witness shape for (s, f).
bool is_min_witness(const Model& m, std::string_view s, const Formula& f);
/// m has exactly a submodel-minimal counterexample shape for (s, f). For EU
/// the labelling is psi2 -> ff everywhere and psi1 -> ff on the open states.
bool is_min_counter(const Model& m, std::string_view s, const Formula& f);
/// The alternative EU-counterexample reading with the roles of the children
/// swapped (psi1 -> ff everywhere, psi2 -> ff on open states). Only used for
/// diagnostics.
bool is_min_counter_eu_swapped(const Model& m, std::string_view s, const Formula& f);

/// Every state with an outgoing transition labels every child of f.
bool is_natural(const Model& e, const Formula& f);

/// Minimal evidence for (s, f) inside the sound model `full`: a witness when
/// f holds at s, a counterexample otherwise. For EU and EG this is the
/// reachable part of the combined evidence at s.
Model build_min_evidence(const Model& full, std::string_view s, const Formula& f);

/// Copies full's labels of f's children onto every state of e that has an
/// outgoing transition. Other operators are returned unchanged.
Model naturalize(const Model& e, const Model& full, const Formula& f);

/// For every child of f labelled at a state of e, copies full's labels of its
/// non-temporal descendants at that state, stopping below temporal operators.
Model locally_close(const Model& e, const Model& full, const Formula& f);

/// One submodel of full that is evidence for f at every state at once.
Model build_combined_evidence(const Model& full, const Formula& f, Flavor flavor);

/// build_min_evidence followed by the requested refinements.
Model build_evidence(const Model& full, const EvidenceRequest& request);

/// Non-temporal descendants of f's children, as reached by locally_close.
FormulaSet local_descendants(const Formula& f);

}  // namespace ctlev

#endif  // CTLEV_EVIDENCE_HPP
