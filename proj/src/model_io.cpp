#include "ctlev/model_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ctlev {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& msg) {
  throw ModelError("model schema violation: " + msg);
}

}  // namespace

LoadResult load_model_json(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) schema_error("top level must be an object");
  if (!doc.contains("version") || doc["version"] != kModelVersion) {
    schema_error("expected version \"" + std::string(kModelVersion) + "\"");
  }
  if (!doc.contains("states") || !doc["states"].is_array()) schema_error("missing \"states\" array");

  std::vector<StateId> ids;
  std::map<StateId, bool> closed;
  for (const json& st : doc["states"]) {
    if (!st.is_object() || !st.contains("id") || !st["id"].is_string()) {
      schema_error("every state needs a string \"id\"");
    }
    StateId id = st["id"].get<std::string>();
    bool c = true;
    if (st.contains("closed")) {
      if (!st["closed"].is_boolean()) schema_error("\"closed\" must be a boolean");
      c = st["closed"].get<bool>();
    }
    if (closed.count(id) != 0) throw ModelError("duplicate state id '" + id + "'");
    closed[id] = c;
    ids.push_back(std::move(id));
  }

  std::vector<std::pair<Formula, json>> label_blocks;
  FormulaSet context;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_object()) schema_error("\"labels\" must be an object");
    for (const auto& [key, per_state] : doc["labels"].items()) {
      Formula f = parse_formula(key);
      if (!per_state.is_object()) schema_error("labels of '" + key + "' must be an object");
      context.insert_all(subformula_closure(f));
      label_blocks.emplace_back(f, per_state);
    }
  }

  LoadResult result{Model(ids, context), {}};
  Model& m = result.model;
  for (const auto& [id, c] : closed) m.set_closed(m.index_of(id), c);

  if (doc.contains("transitions")) {
    if (!doc["transitions"].is_array()) schema_error("\"transitions\" must be an array");
    for (const json& tr : doc["transitions"]) {
      if (!tr.is_array() || tr.size() != 2 || !tr[0].is_string() || !tr[1].is_string()) {
        schema_error("a transition is a pair of state ids");
      }
      const auto from = m.find(tr[0].get<std::string>());
      const auto to = m.find(tr[1].get<std::string>());
      if (!from || !to) {
        throw ModelError("transition (" + tr[0].get<std::string>() + ", " + tr[1].get<std::string>() +
                         ") references an undeclared state");
      }
      m.add_transition(*from, *to);
    }
  }

  for (const auto& [f, per_state] : label_blocks) {
    for (const auto& [id, v] : per_state.items()) {
      if (!v.is_boolean()) schema_error("label values must be booleans");
      auto s = m.find(id);
      if (!s) throw ModelError("label of '" + f.to_string() + "' references undeclared state '" + id + "'");
      m.set_label(*s, f, v.get<bool>());
    }
  }

  // Kripke input: every state closed and only propositions labelled.
  if (m.is_kripke()) {
    for (const Formula& p : context.propositions()) {
      for (StateIndex s = 0; s < m.size(); ++s) {
        if (m.label(s, p)) continue;
        if (!options.permissive_labels) {
          throw ModelError("proposition '" + p.name() + "' is not labelled in state '" + m.id(s) + "'");
        }
        m.set_label(s, p, false);
        result.warnings.push_back("proposition '" + p.name() + "' missing in state '" + m.id(s) +
                                  "', defaulting to false");
      }
    }
  }
  return result;
}

LoadResult load_model(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  return load_model_json(doc, options);
}

LoadResult load_model_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str(), options);
}

json model_to_json(const Model& m) {
  json states = json::array();
  for (StateIndex s = 0; s < m.size(); ++s) states.push_back({{"id", m.id(s)}, {"closed", m.is_closed(s)}});
  json transitions = json::array();
  for (auto [s, t] : m.transitions()) transitions.push_back({m.id(s), m.id(t)});
  json labels = json::object();
  for (const LabelEntry& e : m.labels()) labels[e.formula.to_string()][m.id(e.state)] = e.value;
  return {{"version", kModelVersion}, {"states", states}, {"transitions", transitions}, {"labels", labels}};
}

std::string dump_model(const Model& m) { return model_to_json(m).dump(2) + "\n"; }

}  // namespace ctlev
