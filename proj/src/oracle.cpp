#include "ctlev/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "ctlev/checker.hpp"

namespace ctlev {

NaiveSemantics::NaiveSemantics(const Model& m) : m_(m), paths_(m.size()) {
  if (m.size() > kNaiveStateLimit) {
    throw GuardError("naive semantics is limited to " + std::to_string(kNaiveStateLimit) + " states");
  }
}

const std::vector<Path>& NaiveSemantics::paths(StateIndex s) {
  if (!paths_[s]) paths_[s] = maximal_lassos(m_, m_.id(s), 2 * m_.size());
  return *paths_[s];
}

bool NaiveSemantics::sat(StateIndex s, const Formula& f) { return eval(s, desugar(f)); }

bool NaiveSemantics::eval(StateIndex s, const Formula& f) {
  auto key = std::make_pair(f, s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  bool result = false;
  switch (f.op()) {
    case Op::Prop: {
      auto v = m_.label(s, f);
      if (!v) throw GuardError("proposition '" + f.name() + "' unlabelled in state '" + m_.id(s) + "'");
      result = *v;
      break;
    }
    case Op::True:
      result = true;
      break;
    case Op::Not:
      result = !eval(s, f.child(0));
      break;
    case Op::Or:
      result = eval(s, f.child(0)) || eval(s, f.child(1));
      break;
    case Op::EX:
      for (StateIndex t : m_.successors(s)) result = result || eval(t, f.child(0));
      break;
    case Op::EU:
      // Positions past the stem of a lasso repeat states already on it.
      for (const Path& p : paths(s)) {
        for (StateIndex x : p.stem) {
          if (eval(x, f.child(1))) {
            result = true;
            break;
          }
          if (!eval(x, f.child(0))) break;
        }
        if (result) break;
      }
      break;
    case Op::EG:
      for (const Path& p : paths(s)) {
        if (std::all_of(p.stem.begin(), p.stem.end(), [&](StateIndex x) { return eval(x, f.child(0)); })) {
          result = true;
          break;
        }
      }
      break;
    default:
      throw Error("unexpected operator after desugaring");
  }
  memo_.emplace(key, result);
  return result;
}

bool naive_sat(const Model& m, std::string_view s, const Formula& f) {
  NaiveSemantics sem(m);
  return sem.sat(m.index_of(s), f);
}

namespace {

// Enumerates subsets of `candidates` of size at most `limit` in order of the
// recursion; `chosen` holds the current subset.
template <typename Visit>
bool for_each_subset(const std::vector<std::pair<StateIndex, StateIndex>>& candidates, std::size_t limit,
                     std::vector<std::pair<StateIndex, StateIndex>>& chosen, std::size_t from, Visit&& visit) {
  if (!visit(chosen)) return false;
  if (chosen.size() == limit) return true;
  for (std::size_t i = from; i < candidates.size(); ++i) {
    chosen.push_back(candidates[i]);
    const bool go_on = for_each_subset(candidates, limit, chosen, i + 1, visit);
    chosen.pop_back();
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

std::size_t enumerate_supermodels(const Model& m, const SupermodelBounds& bounds,
                                  const std::function<bool(const Model&)>& visit) {
  if (m.size() + bounds.fresh_budget > kSupermodelStateLimit) {
    throw GuardError("supermodel enumeration is limited to " + std::to_string(kSupermodelStateLimit) + " states");
  }
  const std::vector<Formula> props = m.context().propositions();
  if (props.size() > kSupermodelPropLimit) {
    throw GuardError("supermodel enumeration is limited to " + std::to_string(kSupermodelPropLimit) +
                     " propositions");
  }
  const std::vector<Formula> compounds = m.context().compounds();
  const auto labels = m.labels();

  std::size_t visited = 0;
  bool stopped = false;
  for (std::size_t k = 0; k <= bounds.fresh_budget && !stopped; ++k) {
    std::vector<StateId> ids = m.states();
    std::vector<StateId> fresh;
    for (std::size_t i = 0; fresh.size() < k; ++i) {
      StateId id = "~" + std::to_string(i);
      if (!m.find(id)) fresh.push_back(id);
    }
    ids.insert(ids.end(), fresh.begin(), fresh.end());

    Model base(ids, m.context());
    std::vector<StateIndex> old_to_new(m.size());
    std::vector<bool> is_fresh(base.size(), true);
    for (StateIndex s = 0; s < m.size(); ++s) {
      old_to_new[s] = base.index_of(m.id(s));
      is_fresh[old_to_new[s]] = false;
    }
    for (StateIndex s = 0; s < base.size(); ++s) base.set_closed(s);
    for (auto [s, t] : m.transitions()) base.add_transition(old_to_new[s], old_to_new[t]);

    std::vector<std::pair<StateIndex, StateIndex>> candidates;
    for (StateIndex s = 0; s < base.size(); ++s) {
      const bool may_grow = is_fresh[s] || !m.is_closed(*m.find(base.id(s)));
      if (!may_grow) continue;
      for (StateIndex t = 0; t < base.size(); ++t)
        if (!base.has_transition(s, t)) candidates.emplace_back(s, t);
    }

    // Free proposition slots; the others are fixed by m.
    std::vector<std::pair<StateIndex, Formula>> free_slots;
    Model seeded = base;
    for (StateIndex s = 0; s < base.size(); ++s) {
      for (const Formula& p : props) {
        std::optional<bool> fixed;
        if (!is_fresh[s]) fixed = m.label(*m.find(base.id(s)), p);
        if (fixed) {
          seeded.set_label(s, p, *fixed);
        } else {
          free_slots.emplace_back(s, p);
        }
      }
    }
    if (free_slots.size() > 24) throw GuardError("too many free proposition labels to enumerate");

    const std::size_t limit = bounds.max_new_transitions.value_or(candidates.size());
    std::vector<std::pair<StateIndex, StateIndex>> chosen;
    for_each_subset(candidates, limit, chosen, 0, [&](const auto& added) {
      Model shape = seeded;
      for (auto [s, t] : added) shape.add_transition(s, t);

      // Every fresh state must be reachable from an original state.
      if (k > 0) {
        std::vector<bool> seen(shape.size(), false);
        std::vector<StateIndex> todo;
        for (StateIndex s : old_to_new) {
          seen[s] = true;
          todo.push_back(s);
        }
        while (!todo.empty()) {
          StateIndex x = todo.back();
          todo.pop_back();
          for (StateIndex y : shape.successors(x)) {
            if (!seen[y]) {
              seen[y] = true;
              todo.push_back(y);
            }
          }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) return true;
      }

      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_slots.size()); ++bits) {
        Model kripke = shape;
        for (std::size_t i = 0; i < free_slots.size(); ++i)
          kripke.set_label(free_slots[i].first, free_slots[i].second, ((bits >> i) & 1) != 0);
        Model full = check(kripke, compounds);

        bool extends = true;
        for (const LabelEntry& e : labels) {
          if (full.label(old_to_new[e.state], e.formula) != e.value) {
            extends = false;
            break;
          }
        }
        if (!extends) continue;

        ++visited;
        if (!visit(restrict_labels(full, m.context()))) {
          stopped = true;
          return false;
        }
      }
      return true;
    });
  }
  return visited;
}

bool is_evidence_semantic(const Model& m, const Assertion& a, const SupermodelBounds& bounds) {
  if (!a.formula.is_compound()) throw GuardError("evidence is only defined for compound formulas");
  const FormulaSet kids(a.formula.children());
  for (const LabelEntry& e : m.labels()) {
    if (!kids.contains(e.formula)) {
      throw GuardError("label of '" + e.formula.to_string() + "' lies outside the children of '" +
                       a.formula.to_string() + "'");
    }
  }
  Model widened = m;
  widened.extend_context(FormulaSet{a.formula});
  const StateIndex s = widened.index_of(a.state);

  bool violated = false;
  const std::size_t n = enumerate_supermodels(widened, bounds, [&](const Model& sound) {
    if (sound.label(sound.index_of(widened.id(s)), a.formula) != a.value) {
      violated = true;
      return false;
    }
    return true;
  });
  return n > 0 && !violated;
}

bool syntactically_unconstrained(std::span<const Formula> g) {
  std::vector<std::string> seen;
  for (const Formula& f : g) {
    for (const Formula& node : preorder(f)) {
      switch (node.op()) {
        case Op::Prop:
          if (std::find(seen.begin(), seen.end(), node.name()) != seen.end()) return false;
          seen.push_back(node.name());
          break;
        case Op::Not:
        case Op::Or:
        case Op::EU:
          break;
        default:
          return false;
      }
    }
  }
  return true;
}

bool is_constrained_closed_bounded(std::span<const Formula> g, std::size_t max_states) {
  FormulaSet context;
  for (const Formula& f : g) context.insert_all(subformula_closure(f));
  const std::vector<Formula> props = context.propositions();
  const std::vector<Formula> members(g.begin(), g.end());

  for (std::size_t n = 1; n <= max_states; ++n) {
    const std::size_t edges = n * n;
    const std::size_t slots = n * props.size();
    const std::size_t cells = n * members.size();
    if (edges + slots > 24 || cells > 63) {
      throw GuardError("constrainedness search is too large for " + std::to_string(n) + " states");
    }
    std::vector<StateId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
    Model base(ids, context);
    for (StateIndex s = 0; s < n; ++s) base.set_closed(s);

    for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << edges); ++rel) {
      Model shape = base;
      for (std::size_t e = 0; e < edges; ++e)
        if ((rel >> e) & 1) shape.add_transition(e / n, e % n);

      std::unordered_set<std::uint64_t> achievable;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots); ++bits) {
        Model kripke = shape;
        for (std::size_t i = 0; i < slots; ++i) kripke.set_label(i / props.size(), props[i % props.size()], (bits >> i) & 1);
        Model full = check(kripke, members);
        std::uint64_t vec = 0;
        for (std::size_t i = 0; i < cells; ++i)
          if (*full.label(i / members.size(), members[i % members.size()])) vec |= std::uint64_t{1} << i;
        achievable.insert(vec);
      }
      // Any total labelling on states x g outside the achievable set has no
      // sound completion.
      if (achievable.size() < (std::uint64_t{1} << cells)) return true;
    }
  }
  return false;
}

}  // namespace ctlev
