#include "ctlev/model.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ctlev {

Model::Model(std::vector<StateId> states, FormulaSet context) : context_(std::move(context)) {
  std::sort(states.begin(), states.end());
  if (std::adjacent_find(states.begin(), states.end()) != states.end()) {
    throw ModelError("duplicate state id '" + *std::adjacent_find(states.begin(), states.end()) + "'");
  }
  if (!context_.is_subformula_closed()) throw ModelError("model context is not subformula-closed");
  ids_ = std::move(states);
  closed_.assign(ids_.size(), false);
  succ_.assign(ids_.size(), {});
}

std::optional<StateIndex> Model::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<StateIndex>(it - ids_.begin());
}

StateIndex Model::index_of(std::string_view id) const {
  if (auto s = find(id)) return *s;
  throw ModelError("unknown state '" + std::string(id) + "'");
}

void Model::extend_context(const FormulaSet& fs) {
  for (const Formula& f : fs) context_.insert_all(subformula_closure(f));
}

std::size_t Model::closed_count() const {
  return static_cast<std::size_t>(std::count(closed_.begin(), closed_.end(), true));
}

bool Model::has_transition(StateIndex from, StateIndex to) const {
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

void Model::add_transition(StateIndex from, StateIndex to) {
  if (from >= size() || to >= size()) throw ModelError("transition endpoint out of range");
  auto& out = succ_[from];
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it == out.end() || *it != to) out.insert(it, to);
}

void Model::remove_transition(StateIndex from, StateIndex to) {
  auto& out = succ_[from];
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it != out.end() && *it == to) out.erase(it);
}

std::size_t Model::transition_count() const {
  std::size_t n = 0;
  for (const auto& out : succ_) n += out.size();
  return n;
}

std::vector<std::pair<StateIndex, StateIndex>> Model::transitions() const {
  std::vector<std::pair<StateIndex, StateIndex>> out;
  for (StateIndex s = 0; s < size(); ++s)
    for (StateIndex t : succ_[s]) out.emplace_back(s, t);
  return out;
}

std::vector<std::vector<StateIndex>> Model::predecessors() const {
  std::vector<std::vector<StateIndex>> pred(size());
  for (StateIndex s = 0; s < size(); ++s)
    for (StateIndex t : succ_[s]) pred[t].push_back(s);
  return pred;
}

Model::FormulaLabels* Model::find_labels(const Formula& f) {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), f,
                             [](const FormulaLabels& l, const Formula& g) { return l.formula < g; });
  return it != labels_.end() && it->formula == f ? &*it : nullptr;
}

const Model::FormulaLabels* Model::find_labels(const Formula& f) const {
  return const_cast<Model*>(this)->find_labels(f);
}

std::optional<bool> Model::label(StateIndex s, const Formula& f) const {
  const FormulaLabels* l = find_labels(f);
  if (l == nullptr || l->values[s] < 0) return std::nullopt;
  return l->values[s] == 1;
}

void Model::set_label(StateIndex s, const Formula& f, bool value) {
  if (s >= size()) throw ModelError("label state out of range");
  FormulaLabels* l = find_labels(f);
  if (l == nullptr) {
    if (!context_.contains(f)) {
      throw ModelError("formula '" + f.to_string() + "' is not in the model context");
    }
    auto it = std::lower_bound(labels_.begin(), labels_.end(), f,
                               [](const FormulaLabels& x, const Formula& g) { return x.formula < g; });
    it = labels_.insert(it, FormulaLabels{f, std::vector<signed char>(size(), -1)});
    l = &*it;
  }
  l->values[s] = value ? 1 : 0;
}

void Model::erase_label(StateIndex s, const Formula& f) {
  FormulaLabels* l = find_labels(f);
  if (l == nullptr) return;
  l->values[s] = -1;
  if (std::all_of(l->values.begin(), l->values.end(), [](signed char v) { return v < 0; })) {
    erase_labels(f);
  }
}

void Model::erase_labels(const Formula& f) {
  std::erase_if(labels_, [&](const FormulaLabels& l) { return l.formula == f; });
}

std::size_t Model::label_count() const {
  std::size_t n = 0;
  for (const auto& l : labels_)
    n += static_cast<std::size_t>(std::count_if(l.values.begin(), l.values.end(),
                                                [](signed char v) { return v >= 0; }));
  return n;
}

std::vector<LabelEntry> Model::labels() const {
  std::vector<LabelEntry> out;
  for (const auto& l : labels_)
    for (StateIndex s = 0; s < size(); ++s)
      if (l.values[s] >= 0) out.push_back({s, l.formula, l.values[s] == 1});
  return out;
}

std::vector<Formula> Model::labelled_formulas() const {
  std::vector<Formula> out;
  for (const auto& l : labels_) out.push_back(l.formula);
  return out;
}

bool Model::is_kripke() const {
  if (closed_count() != size()) return false;
  return std::all_of(labels_.begin(), labels_.end(),
                     [](const FormulaLabels& l) { return l.formula.is_prop(); });
}

bool Model::is_full() const {
  if (closed_count() != size()) return false;
  return label_count() == size() * context_.size();
}

bool operator==(const Model& a, const Model& b) {
  if (a.ids_ != b.ids_ || a.context_ != b.context_ || a.closed_ != b.closed_ || a.succ_ != b.succ_) {
    return false;
  }
  if (a.labels_.size() != b.labels_.size()) return false;
  for (std::size_t i = 0; i < a.labels_.size(); ++i) {
    if (a.labels_[i].formula != b.labels_[i].formula || a.labels_[i].values != b.labels_[i].values) {
      return false;
    }
  }
  return true;
}

std::vector<StateId> successors(const Model& m, std::string_view s) {
  std::vector<StateId> out;
  for (StateIndex t : m.successors(m.index_of(s))) out.push_back(m.id(t));
  return out;
}

bool is_submodel(const Model& m1, const Model& m2) {
  for (const Formula& f : m1.context())
    if (!m2.context().contains(f)) return false;

  std::vector<StateIndex> map(m1.size());
  for (StateIndex s = 0; s < m1.size(); ++s) {
    auto t = m2.find(m1.id(s));
    if (!t) return false;
    map[s] = *t;
  }
  for (StateIndex s = 0; s < m1.size(); ++s) {
    if (m1.is_closed(s) && !m2.is_closed(map[s])) return false;
    for (StateIndex t : m1.successors(s))
      if (!m2.has_transition(map[s], map[t])) return false;
    // Closed states of m1 keep every transition they have in m2.
    if (m1.is_closed(s)) {
      for (StateIndex t2 : m2.successors(map[s])) {
        auto t1 = m1.find(m2.id(t2));
        if (!t1 || !m1.has_transition(s, *t1)) return false;
      }
    }
  }
  for (const LabelEntry& e : m1.labels())
    if (m2.label(map[e.state], e.formula) != e.value) return false;
  return true;
}

Model restrict_to(const Model& m, const std::vector<StateIndex>& keep) {
  std::vector<StateId> ids;
  for (StateIndex s : keep) ids.push_back(m.id(s));
  Model out(ids, m.context());
  std::vector<std::optional<StateIndex>> map(m.size());
  for (StateIndex s : keep) map[s] = out.index_of(m.id(s));
  for (StateIndex s : keep) {
    out.set_closed(*map[s], m.is_closed(s));
    for (StateIndex t : m.successors(s))
      if (map[t]) out.add_transition(*map[s], *map[t]);
  }
  for (const LabelEntry& e : m.labels())
    if (map[e.state]) out.set_label(*map[e.state], e.formula, e.value);
  return out;
}

Model restrict_reachable(const Model& m, std::string_view s) {
  const StateIndex root = m.index_of(s);
  std::vector<bool> seen(m.size(), false);
  std::deque<StateIndex> queue{root};
  seen[root] = true;
  std::vector<StateIndex> keep;
  while (!queue.empty()) {
    StateIndex x = queue.front();
    queue.pop_front();
    keep.push_back(x);
    for (StateIndex y : m.successors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(keep.begin(), keep.end());
  return restrict_to(m, keep);
}

Model join(const Model& m, const std::vector<Assertion>& extra) {
  Model out = m;
  for (const Assertion& a : extra) {
    const StateIndex s = out.index_of(a.state);
    if (auto v = out.label(s, a.formula); v && *v != a.value) {
      throw ModelError("conflicting label for (" + a.state + ", " + a.formula.to_string() + ")");
    }
    out.set_label(s, a.formula, a.value);
  }
  return out;
}

Model restrict_labels(const Model& m, const FormulaSet& keep) {
  Model out = m;
  for (const Formula& f : m.labelled_formulas())
    if (!keep.contains(f)) out.erase_labels(f);
  return out;
}

std::vector<Path> maximal_lassos(const Model& m, std::string_view s, std::size_t max_len) {
  std::vector<Path> out;
  std::vector<StateIndex> stem{m.index_of(s)};
  std::function<void()> extend = [&] {
    const StateIndex last = stem.back();
    const auto& next = m.successors(last);
    if (next.empty()) {
      out.push_back({stem, std::nullopt});
      return;
    }
    for (std::size_t i = 0; i < stem.size(); ++i)
      if (m.has_transition(last, stem[i])) out.push_back({stem, i});
    if (stem.size() == max_len) return;
    for (StateIndex t : next) {
      stem.push_back(t);
      extend();
      stem.pop_back();
    }
  };
  if (max_len > 0) extend();
  return out;
}

std::vector<Model> direct_predecessors(const Model& m) {
  std::vector<Model> out;
  for (const LabelEntry& e : m.labels()) {
    Model n = m;
    n.erase_label(e.state, e.formula);
    out.push_back(std::move(n));
  }
  for (StateIndex s = 0; s < m.size(); ++s) {
    if (m.is_closed(s)) {
      Model n = m;
      n.set_closed(s, false);
      out.push_back(std::move(n));
    }
  }
  for (auto [s, t] : m.transitions()) {
    if (m.is_closed(s)) continue;
    Model n = m;
    n.remove_transition(s, t);
    out.push_back(std::move(n));
  }
  const auto pred = m.predecessors();
  const auto entries = m.labels();
  for (StateIndex s = 0; s < m.size(); ++s) {
    const bool labelled = std::any_of(entries.begin(), entries.end(),
                                      [s](const LabelEntry& e) { return e.state == s; });
    if (m.is_closed(s) || labelled || !m.successors(s).empty() || !pred[s].empty()) continue;
    std::vector<StateIndex> keep;
    for (StateIndex x = 0; x < m.size(); ++x)
      if (x != s) keep.push_back(x);
    out.push_back(restrict_to(m, keep));
  }
  return out;
}

}  // namespace ctlev
