// Graphviz rendering of models with per-state formula tables.

#ifndef CTLEV_DOT_HPP
#define CTLEV_DOT_HPP

#include <optional>
#include <string>

#include "ctlev/formula.hpp"
#include "ctlev/model.hpp"

namespace ctlev {

/// One node per state listing the nodes of f's tree, root first, coloured by
/// label (green tt, red ff, grey undefined). With a highlight, its states are
/// tinted blue, rows it does not label and all other states are greyed.
/// Open states get dotted borders. Throws ModelError unless highlight is a
/// submodel of m.
std::string export_dot(const Model& m, const std::optional<Model>& highlight, const Formula& f);

}  // namespace ctlev

#endif  // CTLEV_DOT_HPP
