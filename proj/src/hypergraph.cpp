#include "octe/hypergraph.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace octe {

namespace {

using json = nlohmann::ordered_json;

}  // namespace

CausalHypergraph::CausalHypergraph(std::vector<VariableId> nodes,
                                   std::vector<Hyperedge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  VarSet known;
  for (const VariableId& n : nodes_) {
    if (n.name.empty()) throw std::invalid_argument("empty node name");
    if (known.contains(n.index))
      throw std::invalid_argument("duplicate node index " +
                                  std::to_string(n.index));
    known.add(n.index);
  }
  std::map<std::pair<std::uint64_t, int>, const Hyperedge*> seen;
  for (const Hyperedge& e : edges_) {
    if (e.tail.empty()) throw std::invalid_argument("hyperedge with empty tail");
    if (e.tail.contains(e.head))
      throw std::invalid_argument("hyperedge head inside its own tail");
    if (!e.tail.subset_of(known) || !known.contains(e.head))
      throw std::invalid_argument("hyperedge endpoint is not a node");
    if (!(e.weight >= 0.0))
      throw std::invalid_argument("hyperedge weight must be >= 0");
    if (e.unique && e.inherited)
      throw std::invalid_argument("unique hyperedge cannot be inherited");
    if (!seen.emplace(std::make_pair(e.tail.bits(), e.head), &e).second)
      throw std::invalid_argument("duplicate hyperedge " + format_set(e.tail) +
                                  " -> " + std::to_string(e.head));
  }
}

CausalHypergraph from_decisions(
    std::vector<VariableId> nodes,
    const std::vector<HyperedgeDecision>& decisions) {
  std::map<std::pair<std::uint64_t, int>, const HyperedgeDecision*> chosen;
  for (const HyperedgeDecision& d : decisions) {
    if (!d.causal) continue;
    const auto key = std::make_pair(d.tail.bits(), d.head);
    const auto [it, inserted] = chosen.emplace(key, &d);
    if (!inserted && !(*it->second == d))
      throw std::logic_error("conflicting duplicate decisions for " +
                             format_set(d.tail, nodes));
  }
  std::vector<Hyperedge> edges;
  edges.reserve(chosen.size());
  for (const auto& [key, d] : chosen)
    edges.push_back(
        {d->tail, d->head, d->octe, d->max_p, d->unique, d->inherited});
  return CausalHypergraph(std::move(nodes), std::move(edges));
}

CausalHypergraph minimal_frontier(const CausalHypergraph& g) {
  std::vector<Hyperedge> kept;
  for (const Hyperedge& e : g.edges()) {
    const bool covered = std::any_of(
        g.edges().begin(), g.edges().end(), [&e](const Hyperedge& other) {
          return other.head == e.head && other.tail.strict_subset_of(e.tail);
        });
    if (!covered) kept.push_back(e);
  }
  return CausalHypergraph(g.nodes(), std::move(kept));
}

std::string to_json_string(const CausalHypergraph& g) {
  json doc;
  doc["format"] = "octe-hypergraph/1";
  doc["nodes"] = json::array();
  for (const VariableId& n : g.nodes())
    doc["nodes"].push_back({{"id", n.index}, {"name", n.name}});
  doc["edges"] = json::array();
  for (const Hyperedge& e : g.edges()) {
    json edge = {{"tail", e.tail.indices()},
                 {"head", e.head},
                 {"octe_bits", e.weight},
                 {"p_value", nullptr},
                 {"unique", e.unique},
                 {"inherited", e.inherited}};
    if (e.p_value) edge["p_value"] = *e.p_value;
    doc["edges"].push_back(std::move(edge));
  }
  return doc.dump(2);
}

CausalHypergraph hypergraph_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("hypergraph document: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "octe-hypergraph/1")
      throw ParseError("hypergraph document: unsupported format tag");
    std::vector<VariableId> nodes;
    for (const json& n : doc.at("nodes"))
      nodes.push_back({n.at("id").get<int>(), n.at("name").get<std::string>()});
    std::vector<Hyperedge> edges;
    for (std::size_t i = 0; i < doc.at("edges").size(); ++i) {
      const json& e = doc.at("edges")[i];
      Hyperedge edge;
      edge.tail = VarSet::from_indices(e.at("tail").get<std::vector<int>>());
      edge.head = e.at("head").get<int>();
      edge.weight = e.at("octe_bits").get<double>();
      if (e.contains("p_value") && !e.at("p_value").is_null())
        edge.p_value = e.at("p_value").get<double>();
      edge.unique = e.at("unique").get<bool>();
      edge.inherited = e.at("inherited").get<bool>();
      edges.push_back(std::move(edge));
    }
    return CausalHypergraph(std::move(nodes), std::move(edges));
  } catch (const json::exception& e) {
    throw ParseError(std::string("hypergraph document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("hypergraph document: ") + e.what());
  }
}

std::string to_dot(const CausalHypergraph& g) {
  const auto name_of = [&g](int index) -> std::string {
    for (const VariableId& n : g.nodes())
      if (n.index == index) return n.name;
    return "#" + std::to_string(index);
  };

  std::ostringstream out;
  out << "digraph octe {\n  rankdir=LR;\n";
  for (const VariableId& n : g.nodes())
    out << "  \"" << n.name << "\";\n";
  int junction = 0;
  for (const Hyperedge& e : g.edges()) {
    std::ostringstream label;
    label << std::fixed << std::setprecision(3) << e.weight;
    if (e.tail.size() == 1) {
      out << "  \"" << name_of(e.tail.indices().front()) << "\" -> \""
          << name_of(e.head) << "\" [label=\"" << label.str() << "\"];\n";
    } else {
      const std::string j = "j" + std::to_string(junction++);
      out << "  \"" << j << "\" [shape=point, width=0.08];\n";
      for (int t : e.tail.indices())
        out << "  \"" << name_of(t) << "\" -> \"" << j << "\" [dir=none];\n";
      out << "  \"" << j << "\" -> \"" << name_of(e.head) << "\" [label=\""
          << label.str() << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace octe
