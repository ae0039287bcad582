// Proof objects: a sound model together with evidence for every compound
// assertion it makes.

#ifndef CTLEV_PROOF_HPP
#define CTLEV_PROOF_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctlev/model.hpp"

namespace ctlev {

struct Proof {
  Model model;
  std::map<Assertion, Model> evidence;

  friend bool operator==(const Proof&, const Proof&) = default;
};

/// Labels of sugared formulas are dropped first; evidence is built on the core
/// part. Temporal assertions get the reachable part of the operator's combined
/// evidence, local ones the single-state shape.
Proof build_proof(const Model& full);

enum class Clause {
  NotCompound,
  LabelMismatch,
  NotSubmodel,
  WrongLabelDomain,
  Table1ConditionFails,
  MissingEvidence,
};

std::string_view clause_name(Clause c);

struct ProofFailure {
  Assertion assertion;
  Clause clause;
  std::string detail;
};

struct ProofReport {
  std::vector<ProofFailure> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

ProofReport validate_proof(const Proof& p);

}  // namespace ctlev

#endif  // CTLEV_PROOF_HPP
