#include "concurflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <utility>

#include "concurflow/errors.hpp"

namespace concurflow {

namespace {

template <typename Lookup>
void register_id(Lookup& lookup, const std::string& id, std::size_t index,
                 const char* kind) {
  if (id.empty()) {
    throw ValidationError(std::string(kind) + " " + std::to_string(index) +
                          " has an empty id");
  }
  if (!lookup.emplace(id, index).second) {
    throw ValidationError("duplicate " + std::string(kind) + " id '" + id +
                          "'");
  }
}

std::string at_position(std::size_t j) {
  return " at position " + std::to_string(j);
}

}  // namespace

Network::Network(std::vector<std::string> nodes, std::vector<Edge> edges,
                 std::vector<Commodity> commodities)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      commodities_(std::move(commodities)) {
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    register_id(node_lookup_, nodes_[v], v, "node");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    register_id(edge_lookup_, edge.id, e, "edge");
    if (edge.tail >= nodes_.size() || edge.head >= nodes_.size()) {
      throw ValidationError("edge '" + edge.id +
                            "' references a node that does not exist");
    }
    if (!std::isfinite(edge.capacity) || edge.capacity < 0.0) {
      throw ValidationError("edge '" + edge.id +
                            "' must have a finite nonnegative capacity");
    }
  }
  for (std::size_t i = 0; i < commodities_.size(); ++i) {
    const Commodity& c = commodities_[i];
    register_id(commodity_lookup_, c.id, i, "commodity");
    if (c.source >= nodes_.size() || c.sink >= nodes_.size()) {
      throw ValidationError("commodity '" + c.id +
                            "' references a node that does not exist");
    }
    if (!std::isfinite(c.bound) || c.bound <= 0.0) {
      throw ValidationError("commodity '" + c.id +
                            "' must have a finite positive bound");
    }
  }
}

std::optional<NodeIndex> Network::find_node(const std::string& id) const {
  auto it = node_lookup_.find(id);
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> Network::find_edge(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<CommodityIndex> Network::find_commodity(
    const std::string& id) const {
  auto it = commodity_lookup_.find(id);
  if (it == commodity_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> Network::bounds() const {
  std::vector<double> out;
  out.reserve(commodities_.size());
  for (const Commodity& c : commodities_) out.push_back(c.bound);
  return out;
}

std::vector<EdgeIndex> Path::edge_indices() const {
  std::vector<EdgeIndex> out;
  out.reserve(steps.size());
  for (const Traversal& t : steps) out.push_back(t.edge);
  return out;
}

NodeIndex traversal_from(const Network& network, const Traversal& step) {
  const Edge& e = network.edge(step.edge);
  return step.forward ? e.tail : e.head;
}

NodeIndex traversal_to(const Network& network, const Traversal& step) {
  const Edge& e = network.edge(step.edge);
  return step.forward ? e.head : e.tail;
}

std::optional<std::string> validate_path(const Network& network,
                                         const Path& path, PathRules rules) {
  if (path.commodity >= network.commodity_count()) {
    return "unknown commodity " + std::to_string(path.commodity);
  }
  if (path.steps.empty()) return "empty path";

  for (std::size_t j = 0; j < path.steps.size(); ++j) {
    const Traversal& step = path.steps[j];
    if (step.edge >= network.edge_count()) {
      return "unknown edge" + at_position(j);
    }
    if (network.edge(step.edge).directed && !step.forward) {
      return "directed edge traversed against its orientation" +
             at_position(j);
    }
    if (j > 0 && traversal_from(network, step) !=
                     traversal_to(network, path.steps[j - 1])) {
      return "broken chain" + at_position(j);
    }
  }

  const Commodity& commodity = network.commodity(path.commodity);
  if (traversal_from(network, path.steps.front()) != commodity.source) {
    return std::string("path does not start at the commodity source");
  }
  if (traversal_to(network, path.steps.back()) != commodity.sink) {
    return std::string("path does not end at the commodity sink");
  }

  // Node sequence v_0..v_L must be pairwise distinct, except v_0 == v_L when
  // the commodity's source and sink coincide.
  const bool closed = commodity.source == commodity.sink;
  bool revisit_left = rules.allow_source_revisit;
  std::set<NodeIndex> seen{commodity.source};
  for (std::size_t j = 0; j < path.steps.size(); ++j) {
    const NodeIndex v = traversal_to(network, path.steps[j]);
    const bool last = j + 1 == path.steps.size();
    if (closed && last) break;
    if (v == commodity.source && revisit_left) {
      revisit_left = false;
      continue;
    }
    if (!seen.insert(v).second) return "repeated node" + at_position(j);
  }
  std::set<EdgeIndex> used;
  for (std::size_t j = 0; j < path.steps.size(); ++j) {
    if (!used.insert(path.steps[j].edge).second) {
      return "repeated edge" + at_position(j);
    }
  }

  if (!rules.allow_zero_capacity) {
    for (std::size_t j = 0; j < path.steps.size(); ++j) {
      if (network.edge(path.steps[j].edge).capacity <= 0.0) {
        return "zero-capacity edge" + at_position(j);
      }
    }
  }
  return std::nullopt;
}

Path chain_path(const Network& network, CommodityIndex commodity,
                std::span<const EdgeIndex> edges, PathRules rules) {
  if (commodity >= network.commodity_count()) {
    throw ValidationError("unknown commodity " + std::to_string(commodity));
  }
  Path path{commodity, {}};
  NodeIndex current = network.commodity(commodity).source;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (edges[j] >= network.edge_count()) {
      throw ValidationError("unknown edge" + at_position(j));
    }
    const Edge& e = network.edge(edges[j]);
    Traversal step{edges[j], true};
    if (e.tail == current) {
      step.forward = true;
    } else if (!e.directed && e.head == current) {
      step.forward = false;
    } else {
      throw ValidationError("broken chain" + at_position(j));
    }
    current = traversal_to(network, step);
    path.steps.push_back(step);
  }
  if (auto violation = validate_path(network, path, rules)) {
    throw ValidationError(*violation);
  }
  return path;
}

std::vector<Path> enumerate_paths(const Network& network,
                                  CommodityIndex commodity,
                                  std::size_t max_edges,
                                  std::size_t max_count) {
  if (commodity >= network.commodity_count()) {
    throw ValidationError("unknown commodity " + std::to_string(commodity));
  }
  if (max_edges == 0) {
    throw ValidationError("max_edges must be at least 1");
  }
  const NodeIndex source = network.commodity(commodity).source;
  const NodeIndex sink = network.commodity(commodity).sink;

  std::vector<Path> out;
  std::vector<Traversal> stack;
  std::vector<char> on_path(network.node_count(), 0);
  std::vector<char> edge_used(network.edge_count(), 0);
  on_path[source] = 1;

  // Depth-first search in ascending edge order emits paths in lexicographic
  // order: no emitted path is a prefix of another since paths stop at the sink.
  std::function<void(NodeIndex)> extend = [&](NodeIndex at) {
    for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
      if (out.size() >= max_count) return;
      const Edge& edge = network.edge(e);
      if (edge.capacity <= 0.0 || edge_used[e]) continue;
      Traversal step{e, true};
      if (edge.tail == at) {
        step.forward = true;
      } else if (!edge.directed && edge.head == at) {
        step.forward = false;
      } else {
        continue;
      }
      const NodeIndex next = traversal_to(network, step);
      if (next == sink) {
        stack.push_back(step);
        out.push_back(Path{commodity, stack});
        stack.pop_back();
        continue;
      }
      if (on_path[next] || stack.size() + 1 >= max_edges) continue;
      on_path[next] = 1;
      edge_used[e] = 1;
      stack.push_back(step);
      extend(next);
      stack.pop_back();
      edge_used[e] = 0;
      on_path[next] = 0;
    }
  };
  extend(source);
  return out;
}

PathSystem::PathSystem(std::shared_ptr<const Network> network,
                       std::vector<Path> paths, PathRules rules)
    : network_(std::move(network)), paths_(std::move(paths)) {
  if (!network_) throw ValidationError("path system needs a network");
  by_commodity_.resize(network_->commodity_count());
  local_index_.resize(paths_.size());
  positive_.resize(paths_.size());

  std::vector<std::set<std::vector<std::pair<EdgeIndex, bool>>>> seen(
      network_->commodity_count());
  std::set<EdgeIndex> used;
  for (PathIndex p = 0; p < paths_.size(); ++p) {
    const Path& path = paths_[p];
    if (auto violation = validate_path(*network_, path, rules)) {
      throw ValidationError("path " + std::to_string(p) + ": " + *violation);
    }
    std::vector<std::pair<EdgeIndex, bool>> key;
    bool positive = true;
    for (const Traversal& t : path.steps) {
      key.emplace_back(t.edge, t.forward);
      used.insert(t.edge);
      positive = positive && network_->edge(t.edge).capacity > 0.0;
    }
    if (!seen[path.commodity].insert(std::move(key)).second) {
      throw ValidationError("path " + std::to_string(p) +
                            ": duplicate path for commodity '" +
                            network_->commodity(path.commodity).id + "'");
    }
    local_index_[p] = by_commodity_[path.commodity].size();
    by_commodity_[path.commodity].push_back(p);
    positive_[p] = positive ? 1 : 0;
  }
  used_edges_.assign(used.begin(), used.end());
}

}  // namespace concurflow
