#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace concurflow {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;
using CommodityIndex = std::size_t;
using PathIndex = std::size_t;

// Absolute slack allowed when comparing an edge load against its capacity.
inline constexpr double kCapacityTolerance = 1e-9;

struct Edge {
  std::string id;
  NodeIndex tail = 0;
  NodeIndex head = 0;
  double capacity = 0.0;
  bool directed = true;
};

struct Commodity {
  std::string id;
  NodeIndex source = 0;
  NodeIndex sink = 0;
  // Demand bound b_i, strictly positive.
  double bound = 1.0;
};

// A hybrid graph with capacities plus the commodity list. Immutable once
// built; the constructor rejects dangling endpoints, duplicate ids, negative
// capacities and nonpositive bounds with a ValidationError.
class Network {
 public:
  Network(std::vector<std::string> nodes, std::vector<Edge> edges,
          std::vector<Commodity> commodities);

  std::span<const std::string> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Commodity> commodities() const { return commodities_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t commodity_count() const { return commodities_.size(); }

  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const Commodity& commodity(CommodityIndex i) const {
    return commodities_.at(i);
  }

  std::optional<NodeIndex> find_node(const std::string& id) const;
  std::optional<EdgeIndex> find_edge(const std::string& id) const;
  std::optional<CommodityIndex> find_commodity(const std::string& id) const;

  std::vector<double> bounds() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<Commodity> commodities_;
  std::unordered_map<std::string, NodeIndex> node_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
  std::unordered_map<std::string, CommodityIndex> commodity_lookup_;
};

// One step of a path. `forward` means the edge is crossed tail -> head;
// directed edges only admit forward traversals.
struct Traversal {
  EdgeIndex edge = 0;
  bool forward = true;

  bool operator==(const Traversal&) const = default;
};

struct Path {
  CommodityIndex commodity = 0;
  std::vector<Traversal> steps;

  bool operator==(const Path&) const = default;

  std::vector<EdgeIndex> edge_indices() const;
};

// Node entered and left by a traversal.
NodeIndex traversal_from(const Network& network, const Traversal& step);
NodeIndex traversal_to(const Network& network, const Traversal& step);

struct PathRules {
  // Zero-capacity edges are normally forbidden on a path. The auxiliary
  // network of the EMCFPSC algorithm may carry zero-capacity sink edges.
  bool allow_zero_capacity = false;
  // Lets the source reappear once more along the path. Needed when a closed
  // walk (source == sink) is extended by an edge to a fresh sink.
  bool allow_source_revisit = false;
};

// Returns the first violated path rule, or nullopt when the path is valid.
std::optional<std::string> validate_path(const Network& network,
                                         const Path& path,
                                         PathRules rules = {});

// Builds a path from a bare edge sequence, inferring the orientation of each
// undirected edge by chaining from the commodity source. Throws
// ValidationError if the sequence does not form a valid path.
Path chain_path(const Network& network, CommodityIndex commodity,
                std::span<const EdgeIndex> edges, PathRules rules = {});

// All simple source-sink paths of `commodity` with at most `max_edges`
// positive-capacity edges, ordered lexicographically by edge index sequence.
// At most `max_count` paths are returned (the lexicographically first ones).
std::vector<Path> enumerate_paths(
    const Network& network, CommodityIndex commodity, std::size_t max_edges,
    std::size_t max_count = std::numeric_limits<std::size_t>::max());

// An explicit path system on a network. Paths are kept in insertion order;
// `paths_of(i)` lists the global indices of commodity i's paths in that order.
class PathSystem {
 public:
  PathSystem(std::shared_ptr<const Network> network, std::vector<Path> paths,
             PathRules rules = {});

  const Network& network() const { return *network_; }
  const std::shared_ptr<const Network>& network_ptr() const {
    return network_;
  }

  std::span<const Path> paths() const { return paths_; }
  const Path& path(PathIndex p) const { return paths_.at(p); }
  std::size_t path_count() const { return paths_.size(); }

  std::span<const PathIndex> paths_of(CommodityIndex i) const {
    return by_commodity_.at(i);
  }
  // Position of a path inside its commodity's list.
  std::size_t local_index(PathIndex p) const { return local_index_.at(p); }

  // E(P): edges used by at least one path, ascending.
  std::span<const EdgeIndex> used_edges() const { return used_edges_; }

  // True when every edge of the path has positive capacity.
  bool is_positive(PathIndex p) const { return positive_.at(p) != 0; }

 private:
  std::shared_ptr<const Network> network_;
  std::vector<Path> paths_;
  std::vector<std::vector<PathIndex>> by_commodity_;
  std::vector<std::size_t> local_index_;
  std::vector<EdgeIndex> used_edges_;
  std::vector<char> positive_;
};

}  // namespace concurflow
