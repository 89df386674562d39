#include "bayesball/dot.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace bayesball {
namespace {

std::string quote(const NodeId& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const Network& net, const MarkState* marks) {
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& id : net.topological_order())
    position.emplace(id, position.size());

  std::ostringstream out;
  out << "digraph network {\n";
  for (const auto& id : net.topological_order()) {
    std::size_t i = net.index_of(id);
    std::string shape;
    std::string style;
    switch (net.kind_of(i)) {
      case NodeKind::Chance: shape = "ellipse"; break;
      case NodeKind::Deterministic: shape = "ellipse, peripheries=2"; break;
      case NodeKind::Decision: shape = "box"; break;
      case NodeKind::Value:
        shape = "box";
        style = "rounded";
        break;
    }
    std::string label = id;
    std::string extra;
    if (marks) {
      if (marks->observed(i)) style += style.empty() ? "filled" : ",filled";
      if (marks->visited(i)) extra += ", penwidth=2";
      if (marks->top(i)) label += label == id ? " [t]" : "[t]";
      if (marks->bottom(i)) label += label == id ? " [b]" : "[b]";
    }
    out << "  " << quote(id) << " [shape=" << shape;
    if (!style.empty()) out << ", style=\"" << style << "\"";
    out << extra;
    if (label != id) out << ", label=" << quote(label);
    out << "];\n";
  }

  auto arcs = net.arcs();
  std::stable_sort(arcs.begin(), arcs.end(),
                   [&](const auto& a, const auto& b) {
                     auto ka = std::make_pair(position.at(a.first),
                                              position.at(a.second));
                     auto kb = std::make_pair(position.at(b.first),
                                              position.at(b.second));
                     return ka < kb;
                   });
  for (const auto& [parent, child] : arcs) {
    out << "  " << quote(parent) << " -> " << quote(child);
    if (net.is_informational(parent, child)) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bayesball
