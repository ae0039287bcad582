#include "ctlev/checker.hpp"

#include <deque>
#include <map>

namespace ctlev {

namespace {

using Bits = std::vector<char>;

Bits column(const Model& m, const Formula& f) {
  Bits out(m.size(), 0);
  for (StateIndex s = 0; s < m.size(); ++s) out[s] = m.label(s, f).value_or(false) ? 1 : 0;
  return out;
}

Bits label_ex(const Model& m, const Bits& arg) {
  Bits out(m.size(), 0);
  for (StateIndex s = 0; s < m.size(); ++s)
    for (StateIndex t : m.successors(s))
      if (arg[t]) out[s] = 1;
  return out;
}

// Least fixpoint: seed with the target states, then walk transitions backwards
// through states satisfying the left operand.
Bits label_eu(const Model& m, const std::vector<std::vector<StateIndex>>& pred, const Bits& lhs,
              const Bits& rhs) {
  Bits out(m.size(), 0);
  std::deque<StateIndex> queue;
  for (StateIndex s = 0; s < m.size(); ++s) {
    if (rhs[s]) {
      out[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateIndex t = queue.front();
    queue.pop_front();
    for (StateIndex s : pred[t]) {
      if (!out[s] && lhs[s]) {
        out[s] = 1;
        queue.push_back(s);
      }
    }
  }
  return out;
}

// Greatest fixpoint inside the arg-states: a state stays while it is a deadlock
// or keeps a successor that stays. What remains can reach a deadlock or a cycle
// without leaving the arg-states.
Bits label_eg(const Model& m, const std::vector<std::vector<StateIndex>>& pred, const Bits& arg) {
  Bits out = arg;
  std::vector<std::size_t> live(m.size(), 0);
  std::deque<StateIndex> dropped;
  for (StateIndex s = 0; s < m.size(); ++s) {
    if (!out[s]) continue;
    for (StateIndex t : m.successors(s))
      if (arg[t]) ++live[s];
    if (live[s] == 0 && !m.successors(s).empty()) {
      out[s] = 0;
      dropped.push_back(s);
    }
  }
  while (!dropped.empty()) {
    StateIndex t = dropped.front();
    dropped.pop_front();
    for (StateIndex s : pred[t]) {
      if (!out[s]) continue;
      if (--live[s] == 0) {
        out[s] = 0;
        dropped.push_back(s);
      }
    }
  }
  return out;
}

}  // namespace

FormulaSet check_context(const Formula& f) {
  FormulaSet ctx = subformula_closure(f);
  ctx.insert_all(subformula_closure(desugar(f)));
  return ctx;
}

Model check(const Model& m, const Formula& f, const CheckOptions& options) {
  return check(m, std::span<const Formula>(&f, 1), options);
}

Model check(const Model& m, std::span<const Formula> fs, const CheckOptions& options) {
  if (m.closed_count() != m.size()) throw ModelError("model checking requires every state to be closed");
  for (const Formula& g : m.labelled_formulas()) {
    if (!g.is_prop()) throw ModelError("model checking requires a Kripke model (only propositions labelled)");
  }

  FormulaSet core;
  FormulaSet sugar;
  for (const Formula& f : fs) {
    core.insert_all(subformula_closure(desugar(f)));
    for (const Formula& g : subformula_closure(f))
      if (!g.is_core()) sugar.insert(g);
  }

  Model out = m;
  out.extend_context(core);
  out.extend_context(sugar);

  const auto pred = m.predecessors();
  std::map<Formula, Bits> value;
  for (const Formula& g : core) {
    Bits bits;
    switch (g.op()) {
      case Op::Prop:
        for (StateIndex s = 0; s < m.size(); ++s) {
          if (!m.label(s, g) && !options.permissive_labels) {
            throw ModelError("proposition '" + g.name() + "' is not labelled in state '" + m.id(s) + "'");
          }
        }
        bits = column(m, g);
        break;
      case Op::True:
        bits.assign(m.size(), 1);
        break;
      case Op::Not:
        bits = value.at(g.child(0));
        for (char& b : bits) b = !b;
        break;
      case Op::Or: {
        const Bits& a = value.at(g.child(0));
        const Bits& b = value.at(g.child(1));
        bits.resize(m.size());
        for (StateIndex s = 0; s < m.size(); ++s) bits[s] = a[s] || b[s];
        break;
      }
      case Op::EX:
        bits = label_ex(m, value.at(g.child(0)));
        break;
      case Op::EU:
        bits = label_eu(m, pred, value.at(g.child(0)), value.at(g.child(1)));
        break;
      case Op::EG:
        bits = label_eg(m, pred, value.at(g.child(0)));
        break;
      default:
        throw Error("non-core operator after desugaring");
    }
    for (StateIndex s = 0; s < m.size(); ++s) out.set_label(s, g, bits[s] != 0);
    value.emplace(g, std::move(bits));
  }
  for (const Formula& g : sugar) {
    const Bits& bits = value.at(desugar(g));
    for (StateIndex s = 0; s < m.size(); ++s) out.set_label(s, g, bits[s] != 0);
  }
  return out;
}

Model core_part(const Model& m) {
  FormulaSet core;
  for (const Formula& f : m.context())
    if (f.is_core()) core.insert(f);
  Model out(m.states(), core);
  for (StateIndex s = 0; s < m.size(); ++s) {
    out.set_closed(s, m.is_closed(s));
    for (StateIndex t : m.successors(s)) out.add_transition(s, t);
  }
  for (const LabelEntry& e : m.labels())
    if (e.formula.is_core()) out.set_label(e.state, e.formula, e.value);
  return out;
}

}  // namespace ctlev
