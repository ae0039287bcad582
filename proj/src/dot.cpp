#include "ctlev/dot.hpp"

#include <sstream>

namespace ctlev {

namespace {

constexpr const char* kTrue = "#8fd18f";
constexpr const char* kFalse = "#f08c8c";
constexpr const char* kUnknown = "#d9d9d9";
constexpr const char* kTint = "#dbe8ff";
constexpr const char* kGrey = "#f2f2f2";

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string node_text(const Formula& f) {
  switch (f.op()) {
    case Op::Prop: return f.name();
    case Op::EU: return "E U";
    case Op::AU: return "A U";
    default: return std::string(op_name(f.op()));
  }
}

struct Row {
  Formula formula;
  std::size_t depth;
};

// Root first; children are pushed so that the last child comes out first.
void rows_of(const Formula& f, std::size_t depth, std::vector<Row>& out) {
  out.push_back({f, depth});
  const auto kids = f.children();
  for (auto it = kids.rbegin(); it != kids.rend(); ++it) rows_of(*it, depth + 1, out);
}

}  // namespace

std::string export_dot(const Model& m, const std::optional<Model>& highlight, const Formula& f) {
  if (highlight && !is_submodel(*highlight, m)) throw ModelError("highlight is not a submodel of the model");

  std::vector<Row> rows;
  rows_of(f, 0, rows);

  std::ostringstream out;
  out << "digraph model {\n";
  out << "  node [shape=box, margin=0.05, fontname=\"Helvetica\"];\n";
  out << "  edge [arrowsize=0.7];\n";
  for (StateIndex s = 0; s < m.size(); ++s) {
    std::optional<StateIndex> h;
    if (highlight) h = highlight->find(m.id(s));
    const bool greyed = highlight && !h;

    out << "  \"" << escape(m.id(s)) << "\" [style=\"" << (m.is_closed(s) ? "solid" : "dotted") << ",filled\"";
    out << ", fillcolor=\"" << (h ? kTint : greyed ? kGrey : "white") << "\"";
    if (greyed) out << ", color=\"#a0a0a0\", fontcolor=\"#a0a0a0\"";
    out << ", label=<<TABLE BORDER=\"0\" CELLBORDER=\"0\" CELLSPACING=\"1\">";
    out << "<TR><TD ALIGN=\"LEFT\"><B>" << escape(m.id(s)) << "</B></TD></TR>";
    for (const Row& r : rows) {
      std::optional<bool> v;
      if (!greyed && (!h || highlight->label(*h, r.formula))) v = m.label(s, r.formula);
      const char* colour = !v ? kUnknown : *v ? kTrue : kFalse;
      out << "<TR><TD ALIGN=\"LEFT\" BGCOLOR=\"" << colour << "\">" << std::string(2 * r.depth, '.')
          << escape(node_text(r.formula)) << "</TD></TR>";
    }
    out << "</TABLE>>];\n";
  }
  for (auto [s, t] : m.transitions()) {
    out << "  \"" << escape(m.id(s)) << "\" -> \"" << escape(m.id(t)) << "\"";
    if (highlight) {
      auto hs = highlight->find(m.id(s));
      auto ht = highlight->find(m.id(t));
      if (hs && ht && highlight->has_transition(*hs, *ht)) {
        out << " [color=\"#2b6cd4\", penwidth=2]";
      } else {
        out << " [color=\"#c0c0c0\"]";
      }
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ctlev
