// ctl: check CTL formulas on explicit models and export evidence.
//
// Exit codes: 0 satisfied / valid, 1 not satisfied / invalid, 2 usage or
// input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ctlev/bundle.hpp"
#include "ctlev/checker.hpp"
#include "ctlev/dot.hpp"
#include "ctlev/evidence.hpp"
#include "ctlev/model_io.hpp"
#include "ctlev/oracle.hpp"
#include "ctlev/proof.hpp"

using namespace ctlev;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

struct Globals {
  bool permissive = false;
  bool strict_table2 = false;
};

Model load(const std::string& path, const Globals& g) {
  LoadResult r = load_model(read_file(path), LoadOptions{g.permissive});
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(r.model);
}

// Distinct nodes of f in preorder; the indices shown by --show-ast.
std::vector<Formula> display_nodes(const Formula& f) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  for (const Formula& g : preorder(f))
    if (seen.insert(g).second) out.push_back(g);
  return out;
}

void print_tree(std::ostream& out, const Formula& f, const std::vector<Formula>& nodes, std::size_t depth) {
  const auto at = std::find(nodes.begin(), nodes.end(), f) - nodes.begin();
  out << "  [" << at << "] " << std::string(2 * depth, ' ') << f.to_string() << '\n';
  for (const Formula& c : f.children()) print_tree(out, c, nodes, depth + 1);
}

StateId pick_state(const Model& m, const std::string& requested) {
  if (requested.empty()) {
    if (m.size() == 0) throw UsageError("model has no states");
    return m.id(0);
  }
  if (!m.find(requested)) throw UsageError("unknown state '" + requested + "'");
  return requested;
}

Formula select_subformula(const Formula& f, const std::string& which) {
  if (which.empty()) return f;
  const std::vector<Formula> nodes = display_nodes(f);
  if (std::all_of(which.begin(), which.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t i = std::stoul(which);
    if (i >= nodes.size()) throw UsageError("subformula index " + which + " out of range");
    return nodes[i];
  }
  const Formula g = parse_formula(which);
  if (std::find(nodes.begin(), nodes.end(), g) == nodes.end() && !check_context(f).contains(g)) {
    throw UsageError("'" + which + "' is not a subformula of '" + f.to_string() + "'");
  }
  return g;
}

int cmd_check(const Globals& g, const std::string& model_path, std::vector<std::string> texts,
              const std::string& formula_file, const std::string& state, bool show_ast) {
  if (!formula_file.empty()) {
    std::istringstream lines(read_file(formula_file));
    for (std::string line; std::getline(lines, line);) {
      if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t")] != '#')
        texts.push_back(line);
    }
  }
  if (texts.empty()) throw UsageError("no formula given (use --formula or --formula-file)");
  const Model m = load(model_path, g);
  const StateId s0 = pick_state(m, state);

  bool all = true;
  for (const std::string& text : texts) {
    const Formula f = parse_formula(text);
    const Model full = check(m, f, CheckOptions{g.permissive});
    const std::vector<Formula> nodes = display_nodes(f);

    std::cout << "formula: " << f.to_string() << '\n';
    if (show_ast) {
      print_tree(std::cout, f, nodes, 0);
    } else {
      for (std::size_t i = 0; i < nodes.size(); ++i) std::cout << "  [" << i << "] " << nodes[i].to_string() << '\n';
    }
    std::size_t width = 5;
    for (const StateId& id : m.states()) width = std::max(width, id.size());
    auto cell = [](std::string text, std::size_t w) { return text + std::string(w > text.size() ? w - text.size() : 0, ' '); };
    auto emit = [](std::string line) {
      line.erase(line.find_last_not_of(' ') + 1);
      std::cout << line << '\n';
    };
    std::string header = cell("state", width);
    for (std::size_t i = 0; i < nodes.size(); ++i) header += ' ' + cell("[" + std::to_string(i) + "]", std::max<std::size_t>(4, std::to_string(i).size() + 2));
    emit(header);
    for (StateIndex s = 0; s < full.size(); ++s) {
      std::string line = cell(full.id(s), width);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        line += ' ' + cell(*full.label(s, nodes[i]) ? "tt" : "ff", std::max<std::size_t>(4, std::to_string(i).size() + 2));
      }
      emit(line);
    }
    const bool holds = *full.label(full.index_of(s0), f);
    std::cout << s0 << (holds ? " |= " : " |/= ") << f.to_string() << "\n\n";
    all = all && holds;
  }
  return all ? 0 : 1;
}

int cmd_evidence(const Globals& g, const std::string& model_path, const std::string& text, const std::string& state,
                 const std::string& assert_formula, bool natural, bool local_closure, const std::string& format,
                 const std::string& out_path) {
  const Model m = load(model_path, g);
  const Formula f = parse_formula(text);
  const Formula selected = select_subformula(f, assert_formula);
  if (selected.is_prop()) throw UsageError("'" + selected.to_string() + "' is a proposition; nothing to evidence");
  const Formula core_f = desugar(selected);
  const StateId s = pick_state(m, state);

  const Model full = core_part(check(m, f, CheckOptions{g.permissive}));
  const Model e = build_evidence(full, {s, core_f, natural ? Flavor::Natural : Flavor::Minimal, local_closure});

  if (g.strict_table2 && !natural && !local_closure) {
    const bool value = *full.label(full.index_of(s), core_f);
    const bool exact = value ? is_min_witness(e, s, core_f) : is_min_counter(e, s, core_f);
    if (!value && core_f.op() == Op::EU) {
      std::cerr << "EU counterexample readings: strict " << (exact ? "yes" : "no") << ", swapped "
                << (is_min_counter_eu_swapped(e, s, core_f) ? "yes" : "no") << '\n';
    }
    if (!exact) {
      std::cerr << "error: evidence does not have a minimal shape\n";
      return 2;
    }
  }

  if (format == "dot") {
    // The asserted value is shown on the evidence root.
    const Assertion a{s, core_f, *full.label(full.index_of(s), core_f)};
    write_output(out_path, export_dot(full, join(e, {a}), core_f));
  } else {
    write_output(out_path, dump_model(e));
  }
  return 0;
}

// Checks beyond the proof clauses: every combined block is a submodel of the
// model, and its reachable parts have the minimal or natural shape.
std::vector<std::string> check_combined(const EvidenceBundle& b) {
  std::vector<std::string> problems;
  const Model core = core_part(b.model);
  for (const auto& [f, block] : b.combined) {
    const std::string id = b.node(f).id;
    for (const auto& [name, e] : {std::pair{"minimal", &block.minimal}, std::pair{"natural", &block.natural},
                                  std::pair{"minimal+closure", &block.minimal_closed},
                                  std::pair{"natural+closure", &block.natural_closed}}) {
      if (!is_submodel(*e, core)) problems.push_back("combined " + std::string(name) + " block of " + id +
                                                     " is not a submodel of the model");
    }
    if (!is_natural(block.natural, f)) problems.push_back("natural block of " + id + " is not natural");
    for (StateIndex s = 0; s < core.size(); ++s) {
      const StateId& sid = core.id(s);
      if (!block.minimal.find(sid)) {
        problems.push_back("combined block of " + id + " misses state " + sid);
        continue;
      }
      const Model r = restrict_reachable(block.minimal, sid);
      bool ok = false;
      try {
        ok = *core.label(s, f) ? is_min_witness(r, sid, f) : is_min_counter(r, sid, f);
      } catch (const Error&) {
      }
      if (!ok) problems.push_back("combined block of " + id + " is not minimal evidence at " + sid);
    }
  }
  return problems;
}

int validate_bundle_text(const std::string& text) {
  const EvidenceBundle b = import_bundle(text);
  const ProofReport report = validate_proof(proof_from_bundle(b));
  const std::vector<std::string> extra = check_combined(b);
  std::cout << report.to_string();
  for (const std::string& p : extra) std::cout << p << '\n';
  if (report.ok() && extra.empty()) {
    std::cout << "valid\n";
    return 0;
  }
  return 1;
}

int cmd_proof(const Globals& g, const std::string& model_path, const std::string& text, const std::string& out_path,
              bool validate, const std::string& bundle_path) {
  if (!bundle_path.empty()) {
    if (!model_path.empty() || !text.empty()) throw UsageError("--bundle cannot be combined with a model or formula");
    return validate_bundle_text(read_file(bundle_path));
  }
  if (model_path.empty() || text.empty()) throw UsageError("proof needs a model and --formula (or --bundle)");
  const std::string model_text = read_file(model_path);
  LoadResult r = load_model(model_text, LoadOptions{g.permissive});
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  const Formula f = parse_formula(text);
  const Proof p = build_proof(check(r.model, f, CheckOptions{g.permissive}));
  const std::string bundle =
      export_bundle(p, f, {{"model", sha256_hex(model_text)}, {"formula", sha256_hex(f.to_string())}});
  write_output(out_path, bundle);
  if (!validate) return 0;
  if (out_path.empty() || out_path == "-") {
    // Keep the bundle alone on standard output.
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int code = validate_bundle_text(bundle);
    std::cout.rdbuf(old);
    std::cerr << sink.str();
    return code;
  }
  return validate_bundle_text(bundle);
}

int cmd_oracle_sat(const Globals& g, const std::string& model_path, const std::string& text) {
  const Model m = load(model_path, g);
  const Formula f = parse_formula(text);
  NaiveSemantics sem(m);
  for (StateIndex s = 0; s < m.size(); ++s) std::cout << m.id(s) << ' ' << (sem.sat(s, f) ? "tt" : "ff") << '\n';
  return 0;
}

int cmd_oracle_evidence(const std::string& model_path, const std::string& state, const std::string& text,
                        const std::string& value, std::size_t fresh, int max_new) {
  const Model m = load_model(read_file(model_path), LoadOptions{true}).model;
  if (value != "tt" && value != "ff") throw UsageError("--value must be tt or ff");
  SupermodelBounds bounds{fresh, max_new < 0 ? std::nullopt : std::optional<std::size_t>(max_new)};
  const Assertion a{state, parse_formula(text), value == "tt"};
  const bool semantic = is_evidence_semantic(m, a, bounds);
  std::cout << (semantic ? "evidence" : "not evidence") << " within the bounds\n";
  return semantic ? 0 : 1;
}

int cmd_oracle_constrained(const std::vector<std::string>& texts, std::size_t max_states) {
  std::vector<Formula> g;
  for (const std::string& t : texts) g.push_back(parse_formula(t));
  const bool syntactic = syntactically_unconstrained(g);
  const bool constrained = is_constrained_closed_bounded(g, max_states);
  std::cout << "syntactically unconstrained: " << (syntactic ? "yes" : "no") << '\n';
  std::cout << "constrained on closed models up to " << max_states << " states: " << (constrained ? "yes" : "no")
            << '\n';
  return constrained ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit-state CTL model checker with evidence generation"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--permissive-labels", g.permissive, "Treat missing proposition labels as false");
  app.add_flag("--strict-table2", g.strict_table2, "Verify that minimal evidence has the exact minimal shape");

  std::string model_path, state, formula, formula_file, assert_formula, out_path, format = "dot", bundle_path;
  std::vector<std::string> formulas;
  bool show_ast = false, natural = false, local_closure = false, validate = false;

  auto* check_cmd = app.add_subcommand("check", "Print the truth table of a formula over a model");
  check_cmd->add_option("model", model_path, "Model JSON file")->required();
  check_cmd->add_option("-f,--formula", formulas, "Formula text (repeatable)");
  check_cmd->add_option("--formula-file", formula_file, "File with one formula per line");
  check_cmd->add_option("-s,--state", state, "Initial state (default: least id)");
  check_cmd->add_flag("--show-ast", show_ast, "Print the formula tree with subformula indices");

  auto* evidence_cmd = app.add_subcommand("evidence", "Write evidence for one state/subformula pair");
  evidence_cmd->add_option("model", model_path, "Model JSON file")->required();
  evidence_cmd->add_option("-f,--formula", formula, "Formula text")->required();
  evidence_cmd->add_option("-s,--state", state, "State (default: least id)");
  evidence_cmd->add_option("-a,--assert-formula", assert_formula, "Subformula index or text (default: root)");
  evidence_cmd->add_flag("--natural", natural, "Label all children on non-terminal states");
  evidence_cmd->add_flag("--local-closure", local_closure, "Add labels of non-temporal descendants");
  evidence_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  evidence_cmd->add_option("-o,--output", out_path, "Output file (default: standard output)");

  auto* proof_cmd = app.add_subcommand("proof", "Build a proof and write an evidence bundle");
  proof_cmd->add_option("model", model_path, "Model JSON file");
  proof_cmd->add_option("-f,--formula", formula, "Formula text");
  proof_cmd->add_option("-o,--output", out_path, "Bundle file (default: standard output)");
  proof_cmd->add_flag("--validate", validate, "Re-import the bundle and validate it");
  proof_cmd->add_option("--bundle", bundle_path, "Validate an existing bundle instead");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force cross-checks (debugging)");
  oracle_cmd->require_subcommand(1);
  auto* sat_cmd = oracle_cmd->add_subcommand("sat", "Path-enumerating satisfaction per state");
  sat_cmd->add_option("model", model_path, "Model JSON file")->required();
  sat_cmd->add_option("-f,--formula", formula, "Formula text")->required();

  std::string value;
  std::size_t fresh = 1;
  int max_new = -1;
  auto* sem_cmd = oracle_cmd->add_subcommand("evidence", "Is a partial model evidence within bounded supermodels");
  sem_cmd->add_option("model", model_path, "Partial model JSON file")->required();
  sem_cmd->add_option("-s,--state", state, "State of the assertion")->required();
  sem_cmd->add_option("-f,--formula", formula, "Formula of the assertion")->required();
  sem_cmd->add_option("--value", value, "tt or ff")->required();
  sem_cmd->add_option("--fresh", fresh, "Fresh state budget");
  sem_cmd->add_option("--max-new", max_new, "Bound on added transitions (negative: none)");

  std::size_t max_states = 2;
  auto* con_cmd = oracle_cmd->add_subcommand("constrained", "Search small closed models for a constrained labelling");
  con_cmd->add_option("-f,--formula", formulas, "Member of the set (repeatable)")->required();
  con_cmd->add_option("--max-states", max_states, "Largest model size searched");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check_cmd) return cmd_check(g, model_path, formulas, formula_file, state, show_ast);
    if (*evidence_cmd)
      return cmd_evidence(g, model_path, formula, state, assert_formula, natural, local_closure, format, out_path);
    if (*proof_cmd) return cmd_proof(g, model_path, formula, out_path, validate, bundle_path);
    if (*sat_cmd) return cmd_oracle_sat(g, model_path, formula);
    if (*sem_cmd) return cmd_oracle_evidence(model_path, state, formula, value, fresh, max_new);
    if (*con_cmd) return cmd_oracle_constrained(formulas, max_states);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
