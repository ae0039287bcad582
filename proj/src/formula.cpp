#include "ctlev/formula.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace ctlev {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
  int depth;
  std::size_t nodes;
  std::size_t hash;
  bool core;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct InternKey {
  Op op;
  std::string name;
  std::vector<const void*> kids;
  bool operator==(const InternKey&) const = default;
};

struct InternKeyHash {
  std::size_t operator()(const InternKey& k) const {
    std::size_t h = combine(std::hash<std::string>{}(k.name), static_cast<std::size_t>(k.op));
    for (const void* p : k.kids) h = combine(h, std::hash<const void*>{}(p));
    return h;
  }
};

class InternTable {
 public:
  const Formula::Node* intern(Op op, std::string name, std::vector<Formula> children,
                              const std::vector<const void*>& kid_ptrs) {
    InternKey key{op, name, kid_ptrs};
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();

    auto node = std::make_unique<Formula::Node>();
    node->op = op;
    node->name = std::move(name);
    node->depth = 1;
    node->nodes = 1;
    node->core = is_core_op(op);
    std::size_t h = combine(std::hash<std::string>{}(node->name), static_cast<std::size_t>(op));
    for (const Formula& c : children) {
      node->depth = std::max(node->depth, c.depth() + 1);
      node->nodes += c.node_count();
      node->core = node->core && c.is_core();
      h = combine(h, c.hash());
    }
    node->hash = h;
    node->children = std::move(children);
    const Formula::Node* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<InternKey, std::unique_ptr<Formula::Node>, InternKeyHash> table_;
};

InternTable& interns() {
  static InternTable table;
  return table;
}

}  // namespace

std::size_t arity(Op op) {
  switch (op) {
    case Op::Prop:
    case Op::True:
    case Op::False:
      return 0;
    case Op::And:
    case Op::Or:
    case Op::EU:
    case Op::AU:
      return 2;
    default:
      return 1;
  }
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::Prop: return "prop";
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Not: return "!";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::EX: return "EX";
    case Op::AX: return "AX";
    case Op::EF: return "EF";
    case Op::AF: return "AF";
    case Op::EG: return "EG";
    case Op::AG: return "AG";
    case Op::EU: return "EU";
    case Op::AU: return "AU";
  }
  return "?";
}

bool is_core_op(Op op) {
  switch (op) {
    case Op::Prop:
    case Op::True:
    case Op::Not:
    case Op::Or:
    case Op::EX:
    case Op::EU:
    case Op::EG:
      return true;
    default:
      return false;
  }
}

bool is_temporal_op(Op op) {
  switch (op) {
    case Op::EX:
    case Op::AX:
    case Op::EF:
    case Op::AF:
    case Op::EG:
    case Op::AG:
    case Op::EU:
    case Op::AU:
      return true;
    default:
      return false;
  }
}

Formula::Formula() : Formula(truth()) {}

Formula Formula::prop(std::string_view name) {
  if (name.empty()) throw Error("proposition name must not be empty");
  return Formula(interns().intern(Op::Prop, std::string(name), {}, {}));
}

Formula Formula::make(Op op, std::vector<Formula> children) {
  if (op == Op::Prop) throw Error("use Formula::prop for propositions");
  if (children.size() != arity(op)) {
    throw Error("operator " + std::string(op_name(op)) + " expects " +
                std::to_string(arity(op)) + " operand(s), got " +
                std::to_string(children.size()));
  }
  std::vector<const void*> ptrs;
  ptrs.reserve(children.size());
  for (const Formula& c : children) ptrs.push_back(c.node_);
  return Formula(interns().intern(op, {}, std::move(children), ptrs));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Formula> Formula::children() const { return node_->children; }
bool Formula::is_core() const { return node_->core; }
int Formula::depth() const { return node_->depth; }
std::size_t Formula::node_count() const { return node_->nodes; }
std::size_t Formula::hash() const { return node_->hash; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.depth() <=> b.depth(); c != 0) return c;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  auto ka = a.children();
  auto kb = b.children();
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Or: return 1;
    case Op::And: return 2;
    default: return 3;
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  const bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Prop: out += f.name(); break;
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Not:
      out += '!';
      print(f.child(0), 3, out);
      break;
    case Op::And:
      print(f.child(0), 2, out);
      out += " && ";
      print(f.child(1), 3, out);
      break;
    case Op::Or:
      print(f.child(0), 1, out);
      out += " || ";
      print(f.child(1), 2, out);
      break;
    case Op::EU:
    case Op::AU:
      out += f.op() == Op::EU ? "E[" : "A[";
      print(f.child(0), 1, out);
      out += " U ";
      print(f.child(1), 1, out);
      out += ']';
      break;
    default:
      out += op_name(f.op());
      out += ' ';
      print(f.child(0), 3, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, 1, out);
  return out;
}

Formula desugar(const Formula& f) {
  if (f.is_core()) return f;
  std::vector<Formula> kids;
  for (const Formula& c : f.children()) kids.push_back(desugar(c));
  const Formula tt = Formula::truth();
  auto neg = [](const Formula& x) { return Formula::negation(x); };
  switch (f.op()) {
    case Op::False:
      return neg(tt);
    case Op::And:
      return neg(Formula::disj(neg(kids[0]), neg(kids[1])));
    case Op::AX:
      return neg(Formula::unary(Op::EX, neg(kids[0])));
    case Op::EF:
      return Formula::until(Op::EU, tt, kids[0]);
    case Op::AG:
      return neg(Formula::until(Op::EU, tt, neg(kids[0])));
    case Op::AF:
      return neg(Formula::unary(Op::EG, neg(kids[0])));
    case Op::AU: {
      // A[a U b] == !(E[!b U (!a && !b)] || EG !b)
      const Formula& a = kids[0];
      const Formula& b = kids[1];
      Formula both_fail = desugar(Formula::conj(neg(a), neg(b)));
      return neg(Formula::disj(Formula::until(Op::EU, neg(b), both_fail),
                               Formula::unary(Op::EG, neg(b))));
    }
    default:
      return Formula::make(f.op(), std::move(kids));
  }
}

FormulaSet::FormulaSet(std::initializer_list<Formula> fs) {
  for (const Formula& f : fs) insert(f);
}

FormulaSet::FormulaSet(std::span<const Formula> fs) {
  for (const Formula& f : fs) insert(f);
}

void FormulaSet::insert(const Formula& f) {
  auto it = std::lower_bound(members_.begin(), members_.end(), f);
  if (it == members_.end() || *it != f) members_.insert(it, f);
}

void FormulaSet::insert_all(const FormulaSet& other) {
  for (const Formula& f : other) insert(f);
}

bool FormulaSet::contains(const Formula& f) const {
  return std::binary_search(members_.begin(), members_.end(), f);
}

bool FormulaSet::is_subformula_closed() const {
  return std::all_of(members_.begin(), members_.end(), [this](const Formula& f) {
    return std::all_of(f.children().begin(), f.children().end(),
                       [this](const Formula& c) { return contains(c); });
  });
}

bool FormulaSet::core_only() const {
  return std::all_of(members_.begin(), members_.end(),
                     [](const Formula& f) { return f.is_core(); });
}

int FormulaSet::depth() const { return members_.empty() ? 0 : members_.back().depth(); }

std::vector<Formula> FormulaSet::propositions() const {
  std::vector<Formula> out;
  for (const Formula& f : members_)
    if (f.is_prop()) out.push_back(f);
  return out;
}

std::vector<Formula> FormulaSet::compounds() const {
  std::vector<Formula> out;
  for (const Formula& f : members_)
    if (f.is_compound()) out.push_back(f);
  return out;
}

FormulaSet subformula_closure(const Formula& f) {
  FormulaSet out;
  std::vector<Formula> todo{f};
  while (!todo.empty()) {
    Formula g = todo.back();
    todo.pop_back();
    if (out.contains(g)) continue;
    out.insert(g);
    for (const Formula& c : g.children()) todo.push_back(c);
  }
  return out;
}

std::vector<Formula> preorder(const Formula& f) {
  std::vector<Formula> out;
  std::vector<Formula> todo{f};
  while (!todo.empty()) {
    Formula g = todo.back();
    todo.pop_back();
    out.push_back(g);
    auto kids = g.children();
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) todo.push_back(*it);
  }
  return out;
}

}  // namespace ctlev
