#include "ctlev/bundle.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <set>

#include "ctlev/checker.hpp"
#include "ctlev/evidence.hpp"

namespace ctlev {

using nlohmann::json;

namespace {

std::vector<AstNode> layout_ast(const Formula& f) {
  std::vector<Formula> order;
  std::set<Formula> seen;
  for (const Formula& g : preorder(f))
    if (seen.insert(g).second) order.push_back(g);
  for (const Formula& g : subformula_closure(desugar(f)))
    if (seen.insert(g).second) order.push_back(g);

  std::map<Formula, std::string> ids;
  for (std::size_t i = 0; i < order.size(); ++i) ids.emplace(order[i], "n" + std::to_string(i));
  std::vector<AstNode> nodes;
  for (const Formula& g : order) {
    AstNode n{ids.at(g), g, std::nullopt};
    if (!g.is_core()) n.core = ids.at(desugar(g));
    nodes.push_back(std::move(n));
  }
  return nodes;
}

FormulaSet ast_context(const std::vector<AstNode>& ast) {
  FormulaSet ctx;
  for (const AstNode& n : ast) ctx.insert(n.formula);
  return ctx;
}

FormulaSet core_context(const std::vector<AstNode>& ast) {
  FormulaSet ctx;
  for (const AstNode& n : ast)
    if (n.formula.is_core()) ctx.insert(n.formula);
  return ctx;
}

Op op_from_name(std::string_view name) {
  for (Op op : {Op::Prop, Op::True, Op::False, Op::Not, Op::And, Op::Or, Op::EX, Op::AX, Op::EF, Op::AF, Op::EG,
                Op::AG, Op::EU, Op::AU}) {
    if (op_name(op) == name) return op;
  }
  throw BundleError("unknown operator '" + std::string(name) + "'");
}

json label_table(const Model& m, const EvidenceBundle& b, const std::vector<LabelEntry>& entries) {
  json out = json::object();
  for (const LabelEntry& e : entries) out[b.node(e.formula).id][m.id(e.state)] = e.value;
  return out;
}

json block_to_json(const Model& m, const EvidenceBundle& b) {
  json states = json::array();
  for (StateIndex s = 0; s < m.size(); ++s) states.push_back({{"id", m.id(s)}, {"closed", m.is_closed(s)}});
  json transitions = json::array();
  for (auto [s, t] : m.transitions()) transitions.push_back({m.id(s), m.id(t)});
  return {{"states", states}, {"transitions", transitions}, {"labels", label_table(m, b, m.labels())}};
}

// Labels of `closed` missing from `open`.
std::vector<LabelEntry> added_labels(const Model& open, const Model& closed) {
  std::vector<LabelEntry> out;
  for (const LabelEntry& e : closed.labels())
    if (!open.label(e.state, e.formula)) out.push_back(e);
  return out;
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw BundleError(std::string("missing key '") + key + "'");
  return obj.at(key);
}

Formula formula_of_id(const EvidenceBundle& b, const std::string& id) {
  const AstNode* n = b.find_node(id);
  if (!n) throw BundleError("dangling node reference '" + id + "'");
  return n->formula;
}

void read_labels(const json& table, const EvidenceBundle& b, Model& m) {
  if (!table.is_object()) throw BundleError("labels must be an object");
  for (const auto& [node_id, per_state] : table.items()) {
    const Formula f = formula_of_id(b, node_id);
    if (!m.context().contains(f)) throw BundleError("node '" + node_id + "' cannot be labelled here");
    for (const auto& [state, value] : per_state.items()) {
      auto s = m.find(state);
      if (!s) throw BundleError("dangling state reference '" + state + "'");
      if (!value.is_boolean()) throw BundleError("label values must be booleans");
      m.set_label(*s, f, value.get<bool>());
    }
  }
}

Model block_from_json(const json& doc, const EvidenceBundle& b, const FormulaSet& ctx) {
  std::vector<StateId> ids;
  std::map<StateId, bool> closed;
  for (const json& st : member(doc, "states")) {
    StateId id = member(st, "id").get<std::string>();
    if (!b.model.find(id)) throw BundleError("dangling state reference '" + id + "'");
    closed[id] = st.value("closed", true);
    ids.push_back(std::move(id));
  }
  Model m(ids, ctx);
  for (auto& [id, c] : closed) m.set_closed(m.index_of(id), c);
  for (const json& tr : member(doc, "transitions")) {
    if (!tr.is_array() || tr.size() != 2) throw BundleError("transitions must be pairs");
    auto s = m.find(tr[0].get<std::string>());
    auto t = m.find(tr[1].get<std::string>());
    if (!s || !t) throw BundleError("dangling state reference in transition");
    m.add_transition(*s, *t);
  }
  read_labels(member(doc, "labels"), b, m);
  return m;
}

}  // namespace

const AstNode& EvidenceBundle::node(const Formula& f) const {
  for (const AstNode& n : ast)
    if (n.formula == f) return n;
  throw BundleError("formula '" + f.to_string() + "' is not part of the bundle");
}

const AstNode* EvidenceBundle::find_node(std::string_view id) const {
  for (const AstNode& n : ast)
    if (n.id == id) return &n;
  return nullptr;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

EvidenceBundle make_bundle(const Proof& p, const Formula& f, std::map<std::string, std::string> inputs) {
  EvidenceBundle b;
  b.formula = f;
  b.ast = layout_ast(f);
  b.inputs = std::move(inputs);

  const FormulaSet core_ctx = core_context(b.ast);
  Model core(p.model.states(), core_ctx);
  for (StateIndex s = 0; s < core.size(); ++s) {
    core.set_closed(s, p.model.is_closed(s));
    for (StateIndex t : p.model.successors(s)) core.add_transition(s, t);
    for (const Formula& g : core_ctx) {
      auto v = p.model.label(s, g);
      if (!v) throw BundleError("proof model lacks a label for '" + g.to_string() + "' at '" + core.id(s) + "'");
      core.set_label(s, g, *v);
    }
  }

  b.model = Model(core.states(), ast_context(b.ast));
  for (StateIndex s = 0; s < core.size(); ++s) {
    b.model.set_closed(s, core.is_closed(s));
    for (StateIndex t : core.successors(s)) b.model.add_transition(s, t);
    for (const AstNode& n : b.ast) b.model.set_label(s, n.formula, *core.label(s, desugar(n.formula)));
  }

  for (const Formula& g : core_ctx) {
    if (!g.is_temporal()) continue;
    CombinedBlock block;
    block.minimal = build_combined_evidence(core, g, Flavor::Minimal);
    block.natural = build_combined_evidence(core, g, Flavor::Natural);
    block.minimal_closed = locally_close(block.minimal, core, g);
    block.natural_closed = locally_close(block.natural, core, g);
    b.combined.emplace(g, std::move(block));
  }
  return b;
}

json bundle_to_json(const EvidenceBundle& b) {
  json nodes = json::array();
  for (const AstNode& n : b.ast) {
    json node = {{"id", n.id}, {"op", op_name(n.formula.op())}, {"text", n.formula.to_string()},
                 {"temporal", n.formula.is_temporal()}};
    if (n.formula.is_prop()) node["name"] = n.formula.name();
    json kids = json::array();
    for (const Formula& c : n.formula.children()) kids.push_back(b.node(c).id);
    node["children"] = kids;
    if (n.core) node["core"] = *n.core;
    nodes.push_back(std::move(node));
  }

  json combined = json::object();
  json closure = json::object();
  for (const auto& [g, block] : b.combined) {
    const std::string& id = b.node(g).id;
    combined[id] = {{"minimal", block_to_json(block.minimal, b)}, {"natural", block_to_json(block.natural, b)}};
    closure[id] = {
        {"minimal", label_table(block.minimal_closed, b, added_labels(block.minimal, block.minimal_closed))},
        {"natural", label_table(block.natural_closed, b, added_labels(block.natural, block.natural_closed))}};
  }

  json inputs = json::object();
  for (const auto& [name, digest] : b.inputs) inputs[name] = digest;

  return {{"version", kBundleVersion},
          {"model", block_to_json(b.model, b)},
          {"ast", {{"root", b.node(b.formula).id}, {"nodes", nodes}}},
          {"combined", combined},
          {"localClosure", closure},
          {"provenance", {{"tool", b.tool}, {"inputs", inputs}}}};
}

std::string export_bundle(const EvidenceBundle& b) { return bundle_to_json(b).dump(2) + "\n"; }

std::string export_bundle(const Proof& p, const Formula& f, std::map<std::string, std::string> inputs) {
  return export_bundle(make_bundle(p, f, std::move(inputs)));
}

EvidenceBundle import_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw BundleError(std::string("malformed bundle: ") + e.what());
  }
  return bundle_from_json(doc);
}

EvidenceBundle bundle_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw BundleError("bundle must be a JSON object");
    const std::string version = member(doc, "version").get<std::string>();
    if (version != kBundleVersion) throw BundleError("unsupported bundle version '" + version + "'");

    // Rebuild formulas from the node table; children may appear later.
    const json& ast = member(doc, "ast");
    std::map<std::string, const json*> raw;
    for (const json& n : member(ast, "nodes")) {
      std::string id = member(n, "id").get<std::string>();
      if (!raw.emplace(id, &n).second) throw BundleError("duplicate node id '" + id + "'");
    }
    std::map<std::string, Formula> built;
    std::set<std::string> active;
    auto build = [&](auto&& self, const std::string& id) -> Formula {
      if (auto it = built.find(id); it != built.end()) return it->second;
      auto it = raw.find(id);
      if (it == raw.end()) throw BundleError("dangling node reference '" + id + "'");
      if (!active.insert(id).second) throw BundleError("cyclic node reference '" + id + "'");
      const json& n = *it->second;
      const Op op = op_from_name(member(n, "op").get<std::string>());
      Formula f;
      if (op == Op::Prop) {
        f = Formula::prop(member(n, "name").get<std::string>());
      } else {
        std::vector<Formula> kids;
        for (const json& c : member(n, "children")) kids.push_back(self(self, c.get<std::string>()));
        f = Formula::make(op, std::move(kids));
      }
      active.erase(id);
      built.emplace(id, f);
      return f;
    };

    EvidenceBundle b;
    b.formula = build(build, member(ast, "root").get<std::string>());
    for (const auto& [id, n] : raw) build(build, id);
    b.ast = layout_ast(b.formula);
    if (b.ast.size() != raw.size()) throw BundleError("AST node table does not match its root formula");
    for (const AstNode& n : b.ast) {
      auto it = built.find(n.id);
      if (it == built.end() || it->second != n.formula) {
        throw BundleError("AST node table does not match its root formula");
      }
      const json& node = *raw.at(n.id);
      const std::optional<std::string> core =
          node.contains("core") ? std::optional(node.at("core").get<std::string>()) : std::nullopt;
      if (core != n.core) throw BundleError("node '" + n.id + "' has a wrong core link");
      if (member(node, "text").get<std::string>() != n.formula.to_string()) {
        throw BundleError("node '" + n.id + "' text does not match its structure");
      }
      if (member(node, "temporal").get<bool>() != n.formula.is_temporal()) {
        throw BundleError("node '" + n.id + "' has a wrong temporal flag");
      }
    }

    const json& model = member(doc, "model");
    std::vector<StateId> ids;
    for (const json& st : member(model, "states")) ids.push_back(member(st, "id").get<std::string>());
    b.model = Model(ids, ast_context(b.ast));
    b.model = block_from_json(model, b, ast_context(b.ast));

    const FormulaSet core_ctx = core_context(b.ast);
    const json& closure = member(doc, "localClosure");
    for (const auto& [id, blocks] : member(doc, "combined").items()) {
      const Formula g = formula_of_id(b, id);
      if (!g.is_core() || !g.is_temporal()) throw BundleError("combined block for non-temporal node '" + id + "'");
      CombinedBlock block;
      block.minimal = block_from_json(member(blocks, "minimal"), b, core_ctx);
      block.natural = block_from_json(member(blocks, "natural"), b, core_ctx);
      block.minimal_closed = block.minimal;
      block.natural_closed = block.natural;
      if (closure.contains(id)) {
        read_labels(member(closure.at(id), "minimal"), b, block.minimal_closed);
        read_labels(member(closure.at(id), "natural"), b, block.natural_closed);
      }
      b.combined.emplace(g, std::move(block));
    }

    const json& prov = member(doc, "provenance");
    b.tool = member(prov, "tool").get<std::string>();
    for (const auto& [name, digest] : member(prov, "inputs").items()) b.inputs[name] = digest.get<std::string>();
    return b;
  } catch (const BundleError&) {
    throw;
  } catch (const json::exception& e) {
    throw BundleError(std::string("malformed bundle: ") + e.what());
  } catch (const Error& e) {
    throw BundleError(e.what());
  }
}

Proof proof_from_bundle(const EvidenceBundle& b) {
  Proof p{core_part(b.model), {}};
  for (const Formula& f : p.model.context()) {
    if (!f.is_compound()) continue;
    auto block = f.is_temporal() ? b.combined.find(f) : b.combined.end();
    for (StateIndex s = 0; s < p.model.size(); ++s) {
      auto v = p.model.label(s, f);
      if (!v) continue;
      const Assertion a{p.model.id(s), f, *v};
      if (f.is_temporal()) {
        if (block == b.combined.end() || !block->second.minimal.find(a.state)) continue;
        p.evidence.emplace(a, restrict_reachable(block->second.minimal, a.state));
      } else {
        // An inconsistent model admits no shape; validation then reports the
        // assertion as missing.
        try {
          p.evidence.emplace(a, build_min_evidence(p.model, a.state, f));
        } catch (const Error&) {
        }
      }
    }
  }
  return p;
}

}  // namespace ctlev
