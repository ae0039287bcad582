#include "ctlev/proof.hpp"

#include <algorithm>
#include <sstream>

#include "ctlev/checker.hpp"
#include "ctlev/evidence.hpp"

namespace ctlev {

Proof build_proof(const Model& full) {
  Proof p{core_part(full), {}};
  for (const Formula& f : p.model.context()) {
    if (!f.is_compound()) continue;
    if (f.is_temporal()) {
      const Model combined = build_combined_evidence(p.model, f, Flavor::Minimal);
      for (StateIndex s = 0; s < p.model.size(); ++s) {
        auto v = p.model.label(s, f);
        if (v) p.evidence.emplace(Assertion{p.model.id(s), f, *v}, restrict_reachable(combined, p.model.id(s)));
      }
    } else {
      for (StateIndex s = 0; s < p.model.size(); ++s) {
        auto v = p.model.label(s, f);
        if (v) p.evidence.emplace(Assertion{p.model.id(s), f, *v}, build_min_evidence(p.model, p.model.id(s), f));
      }
    }
  }
  return p;
}

std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::NotCompound:
      return "not-compound";
    case Clause::LabelMismatch:
      return "label-mismatch";
    case Clause::NotSubmodel:
      return "not-submodel";
    case Clause::WrongLabelDomain:
      return "wrong-label-domain";
    case Clause::Table1ConditionFails:
      return "table1-condition-fails";
    case Clause::MissingEvidence:
      return "missing-evidence";
  }
  return "?";
}

std::string ProofReport::to_string() const {
  std::ostringstream out;
  for (const ProofFailure& f : failures) {
    out << clause_name(f.clause) << ": (" << f.assertion.state << ", " << f.assertion.formula.to_string() << ", "
        << (f.assertion.value ? "tt" : "ff") << ")";
    if (!f.detail.empty()) out << ": " << f.detail;
    out << '\n';
  }
  return out.str();
}

ProofReport validate_proof(const Proof& p) {
  ProofReport report;
  auto fail = [&](const Assertion& a, Clause c, std::string detail = {}) {
    report.failures.push_back({a, c, std::move(detail)});
  };

  for (const auto& [a, e] : p.evidence) {
    if (!a.formula.is_compound()) {
      fail(a, Clause::NotCompound);
      continue;
    }
    auto s = p.model.find(a.state);
    if (!s) {
      fail(a, Clause::NotSubmodel, "unknown state");
      continue;
    }
    if (p.model.label(*s, a.formula) != a.value) fail(a, Clause::LabelMismatch);
    if (!is_submodel(e, p.model)) fail(a, Clause::NotSubmodel);
    for (const LabelEntry& l : e.labels()) {
      const auto kids = a.formula.children();
      if (std::find(kids.begin(), kids.end(), l.formula) == kids.end()) {
        fail(a, Clause::WrongLabelDomain, "label of '" + l.formula.to_string() + "' at '" + e.id(l.state) + "'");
        break;
      }
    }
    bool holds = false;
    try {
      holds = a.value ? witness_cond(e, a.state, a.formula) : counter_cond(e, a.state, a.formula);
    } catch (const Error& err) {
      fail(a, Clause::Table1ConditionFails, err.what());
      continue;
    }
    if (!holds) fail(a, Clause::Table1ConditionFails);
  }

  for (const LabelEntry& l : p.model.labels()) {
    if (!l.formula.is_compound()) continue;
    Assertion a{p.model.id(l.state), l.formula, l.value};
    if (!p.evidence.contains(a)) fail(a, Clause::MissingEvidence);
  }
  return report;
}

}  // namespace ctlev
