// Explicit-state CTL labelling of Kripke models.

#ifndef CTLEV_CHECKER_HPP
#define CTLEV_CHECKER_HPP

#include <span>
#include <string>
#include <vector>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"

namespace ctlev {

struct CheckOptions {
  /// Treat unlabelled propositions as false instead of failing.
  bool permissive_labels = false;
};

/// Returns m extended with a total labelling over every subformula of each
/// formula and of its desugared image. A sugared node carries the labels of its
/// desugared image. The transition relation need not be total: deadlock states
/// end finite maximal paths.
///
/// Throws ModelError if m is not Kripke or, in strict mode, if a proposition of
/// a formula is unlabelled somewhere.
Model check(const Model& m, const Formula& f, const CheckOptions& options = {});
Model check(const Model& m, std::span<const Formula> fs, const CheckOptions& options = {});

/// Closure of f together with the closure of desugar(f).
FormulaSet check_context(const Formula& f);

/// Drops every non-core formula from the context and labelling.
Model core_part(const Model& m);

}  // namespace ctlev

#endif  // CTLEV_CHECKER_HPP
