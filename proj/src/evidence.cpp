#include "ctlev/evidence.hpp"

#include <algorithm>
#include <deque>

namespace ctlev {

namespace {

bool has(const Model& m, StateIndex s, const Formula& f, bool v) { return m.label(s, f) == v; }

void require_core_compound(const Model& m, const Formula& f) {
  if (!f.is_compound() || !is_core_op(f.op())) {
    throw EvidenceError("evidence is defined for core compound formulas, got '" + f.to_string() + "'");
  }
  for (const Formula& c : f.children()) {
    if (!m.context().contains(c)) {
      throw EvidenceError("child '" + c.to_string() + "' of '" + f.to_string() + "' is outside the model context");
    }
  }
}

// Forward search through psi1-tt states for a psi2-tt state.
bool eu_witness(const Model& m, StateIndex s, const Formula& lhs, const Formula& rhs) {
  std::vector<bool> seen(m.size(), false);
  std::deque<StateIndex> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    StateIndex x = queue.front();
    queue.pop_front();
    if (has(m, x, rhs, true)) return true;
    if (!has(m, x, lhs, true)) continue;
    for (StateIndex y : m.successors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return false;
}

// Inside the psi-tt states: a closed deadlock, or any cycle.
bool eg_witness(const Model& m, StateIndex s, const Formula& psi) {
  if (!has(m, s, psi, true)) return false;
  std::vector<int> color(m.size(), 0);  // 0 new, 1 on stack, 2 done
  bool found = false;
  auto dfs = [&](auto&& self, StateIndex x) -> void {
    color[x] = 1;
    if (m.successors(x).empty() && m.is_closed(x)) found = true;
    for (StateIndex y : m.successors(x)) {
      if (found) break;
      if (!has(m, y, psi, true)) continue;
      if (color[y] == 1) {
        found = true;
      } else if (color[y] == 0) {
        self(self, y);
      }
    }
    color[x] = 2;
  };
  dfs(dfs, s);
  return found;
}

// Every maximal path stays in closed psi2-ff states, or reaches a psi1-ff and
// psi2-ff state after such a prefix. Greatest fixpoint.
bool eu_counter(const Model& m, StateIndex s, const Formula& lhs, const Formula& rhs) {
  std::vector<bool> stop(m.size()), pass(m.size()), good(m.size());
  for (StateIndex x = 0; x < m.size(); ++x) {
    stop[x] = has(m, x, lhs, false) && has(m, x, rhs, false);
    pass[x] = m.is_closed(x) && has(m, x, rhs, false);
    good[x] = stop[x] || pass[x];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (StateIndex x = 0; x < m.size(); ++x) {
      if (!good[x] || stop[x]) continue;
      const auto& next = m.successors(x);
      if (std::any_of(next.begin(), next.end(), [&](StateIndex y) { return !good[y]; })) {
        good[x] = false;
        changed = true;
      }
    }
  }
  return good[s];
}

// Every maximal path reaches a psi-ff state after a closed prefix. Least
// fixpoint, so cycles avoiding psi-ff fail.
bool eg_counter(const Model& m, StateIndex s, const Formula& psi) {
  std::vector<bool> ok(m.size());
  for (StateIndex x = 0; x < m.size(); ++x) ok[x] = has(m, x, psi, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateIndex x = 0; x < m.size(); ++x) {
      if (ok[x] || !m.is_closed(x) || m.successors(x).empty()) continue;
      const auto& next = m.successors(x);
      if (std::all_of(next.begin(), next.end(), [&](StateIndex y) { return ok[y]; })) {
        ok[x] = true;
        changed = true;
      }
    }
  }
  return ok[s];
}

Model skeleton(const Model& like, std::vector<StateId> ids) { return Model(std::move(ids), like.context()); }

// The only state with no predecessor is s, every state is reachable from it
// and there is no cycle.
bool rooted_dag(const Model& m, StateIndex s) {
  const auto pred = m.predecessors();
  for (StateIndex x = 0; x < m.size(); ++x)
    if (pred[x].empty() != (x == s)) return false;
  std::vector<std::size_t> indeg(m.size());
  for (StateIndex x = 0; x < m.size(); ++x) indeg[x] = pred[x].size();
  std::deque<StateIndex> queue{s};
  std::size_t visited = 0;
  while (!queue.empty()) {
    StateIndex x = queue.front();
    queue.pop_front();
    ++visited;
    for (StateIndex y : m.successors(x))
      if (--indeg[y] == 0) queue.push_back(y);
  }
  return visited == m.size();
}

bool all_reachable(const Model& m, StateIndex s) {
  return restrict_reachable(m, m.id(s)).size() == m.size();
}

// Same states, closed flags and transitions as m, no labels.
Model unlabelled_copy(const Model& m) {
  Model out = m;
  for (const Formula& f : m.labelled_formulas()) out.erase_labels(f);
  return out;
}

// The chain s, next(s), ... when every state has at most one successor.
// Returns false if m is not a single chain or lasso through all its states.
bool walk_chain(const Model& m, StateIndex s, std::vector<StateIndex>& order, bool& lasso) {
  std::vector<bool> seen(m.size(), false);
  lasso = false;
  StateIndex x = s;
  for (;;) {
    seen[x] = true;
    order.push_back(x);
    const auto& next = m.successors(x);
    if (next.empty()) break;
    if (next.size() > 1) return false;
    if (seen[next[0]]) {
      lasso = true;
      break;
    }
    x = next[0];
  }
  return order.size() == m.size();
}

}  // namespace

bool witness_cond(const Model& m, std::string_view sid, const Formula& f) {
  require_core_compound(m, f);
  const StateIndex s = m.index_of(sid);
  switch (f.op()) {
    case Op::True:
      return true;
    case Op::Not:
      return has(m, s, f.child(0), false);
    case Op::Or:
      return has(m, s, f.child(0), true) || has(m, s, f.child(1), true);
    case Op::EX: {
      const auto& next = m.successors(s);
      return std::any_of(next.begin(), next.end(), [&](StateIndex t) { return has(m, t, f.child(0), true); });
    }
    case Op::EU:
      return eu_witness(m, s, f.child(0), f.child(1));
    case Op::EG:
      return eg_witness(m, s, f.child(0));
    default:
      return false;
  }
}

bool counter_cond(const Model& m, std::string_view sid, const Formula& f) {
  require_core_compound(m, f);
  const StateIndex s = m.index_of(sid);
  switch (f.op()) {
    case Op::True:
      return false;
    case Op::Not:
      return has(m, s, f.child(0), true);
    case Op::Or:
      return has(m, s, f.child(0), false) && has(m, s, f.child(1), false);
    case Op::EX: {
      const auto& next = m.successors(s);
      return m.is_closed(s) &&
             std::all_of(next.begin(), next.end(), [&](StateIndex t) { return has(m, t, f.child(0), false); });
    }
    case Op::EU:
      return eu_counter(m, s, f.child(0), f.child(1));
    case Op::EG:
      return eg_counter(m, s, f.child(0));
    default:
      return false;
  }
}

bool is_min_witness(const Model& m, std::string_view sid, const Formula& f) {
  require_core_compound(m, f);
  const StateIndex s = m.index_of(sid);
  switch (f.op()) {
    case Op::True: {
      Model want = skeleton(m, {m.id(s)});
      return m == want;
    }
    case Op::Not: {
      Model want = skeleton(m, {m.id(s)});
      want.set_label(0, f.child(0), false);
      return m == want;
    }
    case Op::Or: {
      for (const Formula& c : f.children()) {
        Model want = skeleton(m, {m.id(s)});
        want.set_label(0, c, true);
        if (m == want) return true;
      }
      return false;
    }
    case Op::EX: {
      if (m.size() > 2 || m.successors(s).size() != 1) return false;
      const StateIndex t = m.successors(s)[0];
      Model want = skeleton(m, m.states());
      want.add_transition(s, t);
      want.set_label(t, f.child(0), true);
      return (m.size() == 1 || t != s) && m == want;
    }
    case Op::EU: {
      std::vector<StateIndex> order;
      bool lasso = false;
      if (!walk_chain(m, s, order, lasso) || lasso) return false;
      Model want = skeleton(m, m.states());
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        want.add_transition(order[i], order[i + 1]);
        want.set_label(order[i], f.child(0), true);
      }
      want.set_label(order.back(), f.child(1), true);
      return m == want;
    }
    case Op::EG: {
      std::vector<StateIndex> order;
      bool lasso = false;
      if (!walk_chain(m, s, order, lasso)) return false;
      Model want = unlabelled_copy(m);
      for (StateIndex x = 0; x < m.size(); ++x) want.set_closed(x, false);
      if (!lasso) want.set_closed(order.back());
      for (StateIndex x : order) want.set_label(x, f.child(0), true);
      return m == want;
    }
    default:
      return false;
  }
}

namespace {

bool min_counter_eu(const Model& m, StateIndex s, const Formula& everywhere, const Formula& on_open) {
  if (!all_reachable(m, s)) return false;
  Model want = unlabelled_copy(m);
  for (StateIndex x = 0; x < m.size(); ++x) {
    if (!m.successors(x).empty() && !m.is_closed(x)) return false;
    want.set_label(x, everywhere, false);
    if (!m.is_closed(x)) want.set_label(x, on_open, false);
  }
  return m == want;
}

}  // namespace

bool is_min_counter(const Model& m, std::string_view sid, const Formula& f) {
  require_core_compound(m, f);
  const StateIndex s = m.index_of(sid);
  switch (f.op()) {
    case Op::True:
      return false;
    case Op::Not: {
      Model want = skeleton(m, {m.id(s)});
      want.set_label(0, f.child(0), true);
      return m == want;
    }
    case Op::Or: {
      Model want = skeleton(m, {m.id(s)});
      want.set_label(0, f.child(0), false);
      want.set_label(0, f.child(1), false);
      return m == want;
    }
    case Op::EX: {
      Model want = skeleton(m, m.states());
      want.set_closed(s);
      for (StateIndex t : m.successors(s)) {
        want.add_transition(s, t);
        want.set_label(t, f.child(0), false);
      }
      if (m.size() != m.successors(s).size() + (m.has_transition(s, s) ? 0 : 1)) return false;
      return m == want;
    }
    case Op::EU:
      return min_counter_eu(m, s, f.child(1), f.child(0));
    case Op::EG: {
      if (!rooted_dag(m, s)) return false;
      Model want = unlabelled_copy(m);
      for (StateIndex x = 0; x < m.size(); ++x) {
        const bool terminal = m.successors(x).empty();
        want.set_closed(x, !terminal);
        if (terminal) want.set_label(x, f.child(0), false);
      }
      return m == want;
    }
    default:
      return false;
  }
}

bool is_min_counter_eu_swapped(const Model& m, std::string_view sid, const Formula& f) {
  require_core_compound(m, f);
  if (f.op() != Op::EU) return false;
  return min_counter_eu(m, m.index_of(sid), f.child(0), f.child(1));
}

bool is_natural(const Model& e, const Formula& f) {
  if (f.op() != Op::EU && f.op() != Op::EG) return true;
  for (StateIndex x = 0; x < e.size(); ++x) {
    if (e.successors(x).empty()) continue;
    for (const Formula& c : f.children())
      if (!e.label(x, c)) return false;
  }
  return true;
}

namespace {

bool full_value(const Model& full, StateIndex s, const Formula& f) {
  auto v = full.label(s, f);
  if (!v) throw EvidenceError("(" + full.id(s) + ", " + f.to_string() + ") is not labelled in the model");
  return *v;
}

[[noreturn]] void unsound(const Formula& f) {
  throw EvidenceError("labels of '" + f.to_string() + "' are not sound for the model");
}

Model combined_eu(const Model& full, const Formula& f) {
  const Formula& lhs = f.child(0);
  const Formula& rhs = f.child(1);
  Model e = skeleton(full, full.states());
  const auto pred = full.predecessors();

  // Witness part: breadth-first backwards from the rhs-tt states, each state
  // keeping the transition to the state that discovered it.
  std::vector<bool> found(full.size(), false);
  std::deque<StateIndex> queue;
  for (StateIndex x = 0; x < full.size(); ++x) {
    if (full_value(full, x, f) && full_value(full, x, rhs)) {
      found[x] = true;
      queue.push_back(x);
      e.set_label(x, rhs, true);
    }
  }
  while (!queue.empty()) {
    StateIndex y = queue.front();
    queue.pop_front();
    for (StateIndex x : pred[y]) {
      if (found[x] || !full_value(full, x, f) || !full_value(full, x, lhs)) continue;
      found[x] = true;
      queue.push_back(x);
      e.add_transition(x, y);
      e.set_label(x, lhs, true);
    }
  }

  // Counterexample part: lhs-tt states are closed with all their transitions,
  // lhs-ff states end the paths.
  for (StateIndex x = 0; x < full.size(); ++x) {
    if (full_value(full, x, f)) {
      if (!found[x]) unsound(f);
      continue;
    }
    if (full_value(full, x, rhs)) unsound(f);
    e.set_label(x, rhs, false);
    if (full_value(full, x, lhs)) {
      e.set_closed(x);
      for (StateIndex y : full.successors(x)) {
        if (full_value(full, y, f)) unsound(f);
        e.add_transition(x, y);
      }
    } else {
      e.set_label(x, lhs, false);
    }
  }
  return e;
}

Model combined_eg(const Model& full, const Formula& f) {
  const Formula& psi = f.child(0);
  Model e = skeleton(full, full.states());
  for (StateIndex x = 0; x < full.size(); ++x) {
    const auto& next = full.successors(x);
    if (full_value(full, x, f)) {
      if (!full_value(full, x, psi)) unsound(f);
      e.set_label(x, psi, true);
      if (next.empty()) {
        e.set_closed(x);
        continue;
      }
      // Any successor inside the region keeps the chain inside it; the chain
      // ends in a closed deadlock or runs into a cycle.
      auto it = std::find_if(next.begin(), next.end(), [&](StateIndex y) { return full_value(full, y, f); });
      if (it == next.end()) unsound(f);
      e.add_transition(x, *it);
    } else if (!full_value(full, x, psi)) {
      e.set_label(x, psi, false);
    } else {
      if (next.empty()) unsound(f);
      e.set_closed(x);
      for (StateIndex y : next) {
        if (full_value(full, y, f)) unsound(f);
        e.add_transition(x, y);
      }
    }
  }
  return e;
}

Model combined_ex(const Model& full, const Formula& f) {
  const Formula& psi = f.child(0);
  Model e = skeleton(full, full.states());
  for (StateIndex x = 0; x < full.size(); ++x) {
    const auto& next = full.successors(x);
    if (full_value(full, x, f)) {
      auto it = std::find_if(next.begin(), next.end(), [&](StateIndex y) { return full_value(full, y, psi); });
      if (it == next.end()) unsound(f);
      e.add_transition(x, *it);
      e.set_label(*it, psi, true);
    } else {
      e.set_closed(x);
      for (StateIndex y : next) {
        if (full_value(full, y, psi)) unsound(f);
        e.add_transition(x, y);
        e.set_label(y, psi, false);
      }
    }
  }
  return e;
}

void local_shape(const Model& full, Model& e, StateIndex x, const Formula& f) {
  const bool v = full_value(full, x, f);
  switch (f.op()) {
    case Op::True:
      if (!v) unsound(f);
      break;
    case Op::Not:
      if (full_value(full, x, f.child(0)) == v) unsound(f);
      e.set_label(x, f.child(0), !v);
      break;
    case Op::Or:
      if (v) {
        const Formula& pick = full_value(full, x, f.child(0)) ? f.child(0) : f.child(1);
        if (!full_value(full, x, pick)) unsound(f);
        e.set_label(x, pick, true);
      } else {
        if (full_value(full, x, f.child(0)) || full_value(full, x, f.child(1))) unsound(f);
        e.set_label(x, f.child(0), false);
        e.set_label(x, f.child(1), false);
      }
      break;
    default:
      break;
  }
}

}  // namespace

Model build_combined_evidence(const Model& full, const Formula& f, Flavor flavor) {
  require_core_compound(full, f);
  Model e;
  switch (f.op()) {
    case Op::EX:
      e = combined_ex(full, f);
      break;
    case Op::EU:
      e = combined_eu(full, f);
      break;
    case Op::EG:
      e = combined_eg(full, f);
      break;
    default:
      e = skeleton(full, full.states());
      for (StateIndex x = 0; x < full.size(); ++x) local_shape(full, e, x, f);
      break;
  }
  return flavor == Flavor::Natural ? naturalize(e, full, f) : e;
}

Model build_min_evidence(const Model& full, std::string_view sid, const Formula& f) {
  require_core_compound(full, f);
  const StateIndex s = full.index_of(sid);
  const bool v = full_value(full, s, f);
  switch (f.op()) {
    case Op::True:
    case Op::Not:
    case Op::Or: {
      Model e = skeleton(full, {full.id(s)});
      Model scratch = restrict_to(full, {s});
      local_shape(scratch, e, 0, f);
      return e;
    }
    case Op::EX: {
      const Formula& psi = f.child(0);
      const auto& next = full.successors(s);
      if (v) {
        auto it = std::find_if(next.begin(), next.end(), [&](StateIndex y) { return full_value(full, y, psi); });
        if (it == next.end()) unsound(f);
        std::vector<StateId> ids{full.id(s)};
        if (*it != s) ids.push_back(full.id(*it));
        Model e = skeleton(full, ids);
        const StateIndex a = e.index_of(full.id(s));
        const StateIndex b = e.index_of(full.id(*it));
        e.add_transition(a, b);
        e.set_label(b, psi, true);
        return e;
      }
      std::vector<StateId> ids{full.id(s)};
      for (StateIndex y : next)
        if (y != s) ids.push_back(full.id(y));
      Model e = skeleton(full, ids);
      const StateIndex a = e.index_of(full.id(s));
      e.set_closed(a);
      for (StateIndex y : next) {
        if (full_value(full, y, psi)) unsound(f);
        const StateIndex b = e.index_of(full.id(y));
        e.add_transition(a, b);
        e.set_label(b, psi, false);
      }
      return e;
    }
    default:
      return restrict_reachable(build_combined_evidence(full, f, Flavor::Minimal), full.id(s));
  }
}

Model naturalize(const Model& e, const Model& full, const Formula& f) {
  if (f.op() != Op::EU && f.op() != Op::EG) return e;
  Model out = e;
  for (StateIndex x = 0; x < e.size(); ++x) {
    if (e.successors(x).empty()) continue;
    const StateIndex y = full.index_of(e.id(x));
    for (const Formula& c : f.children()) out.set_label(x, c, full_value(full, y, c));
  }
  return out;
}

FormulaSet local_descendants(const Formula& f) {
  FormulaSet out;
  std::vector<Formula> todo;
  for (const Formula& c : f.children())
    if (!c.is_temporal()) todo.push_back(c);
  while (!todo.empty()) {
    Formula g = todo.back();
    todo.pop_back();
    for (const Formula& d : g.children()) {
      if (d.is_temporal() || out.contains(d)) continue;
      out.insert(d);
      todo.push_back(d);
    }
  }
  return out;
}

Model locally_close(const Model& e, const Model& full, const Formula& f) {
  Model out = e;
  for (StateIndex x = 0; x < e.size(); ++x) {
    const StateIndex y = full.index_of(e.id(x));
    for (const Formula& c : f.children()) {
      if (c.is_temporal() || !e.label(x, c)) continue;
      std::vector<Formula> todo{c};
      while (!todo.empty()) {
        Formula g = todo.back();
        todo.pop_back();
        for (const Formula& d : g.children()) {
          if (d.is_temporal()) continue;
          if (auto v = full.label(y, d)) {
            out.set_label(x, d, *v);
            todo.push_back(d);
          }
        }
      }
    }
  }
  return out;
}

Model build_evidence(const Model& full, const EvidenceRequest& request) {
  Model e = build_min_evidence(full, request.state, request.formula);
  if (request.flavor == Flavor::Natural) e = naturalize(e, full, request.formula);
  if (request.locally_closed) e = locally_close(e, full, request.formula);
  return e;
}

}  // namespace ctlev
