#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octe/inference.hpp"

namespace octe {

/// Directed hyperedge: a nonempty tail set of source nodes pointing at a
/// single head node, weighted by the OCTE estimate in bits.
struct Hyperedge {
  VarSet tail;
  int head = -1;
  double weight = 0.0;
  std::optional<double> p_value;
  bool unique = false;
  bool inherited = false;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// The inferred causal structure: nodes plus directed hyperedges. Immutable
/// value type; construction validates all invariants (edge endpoints known,
/// head outside tail, no duplicate (tail, head) pairs, weights >= 0).
class CausalHypergraph {
 public:
  CausalHypergraph() = default;
  CausalHypergraph(std::vector<VariableId> nodes, std::vector<Hyperedge> edges);

  const std::vector<VariableId>& nodes() const { return nodes_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }

  friend bool operator==(const CausalHypergraph&,
                         const CausalHypergraph&) = default;

 private:
  std::vector<VariableId> nodes_;
  std::vector<Hyperedge> edges_;
};

/// Build a hypergraph holding exactly the causal decisions; weights are the
/// decisions' octe values and the flags are copied. Throws std::logic_error
/// on conflicting duplicate (tail, head) decisions.
CausalHypergraph from_decisions(std::vector<VariableId> nodes,
                                const std::vector<HyperedgeDecision>& decisions);

/// Drop every edge whose tail strictly contains another edge's tail with
/// the same head. Idempotent.
CausalHypergraph minimal_frontier(const CausalHypergraph& g);

/// JSON document, schema octe-hypergraph/1:
/// {"format":"octe-hypergraph/1","nodes":[{"id":int,"name":str}],
///  "edges":[{"tail":[int],"head":int,"octe_bits":float,
///            "p_value":float|null,"unique":bool,"inherited":bool}]}
std::string to_json_string(const CausalHypergraph& g);

/// Parse and validate; throws ParseError naming the offending element.
CausalHypergraph hypergraph_from_json_string(const std::string& text);

/// Graphviz DOT rendering. Hyperedges with |tail| >= 2 are drawn through a
/// small junction node (tail -> junction -> head); weights become edge
/// labels.
std::string to_dot(const CausalHypergraph& g);

}  // namespace octe
