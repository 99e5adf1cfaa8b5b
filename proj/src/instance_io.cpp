#include "concurflow/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "concurflow/errors.hpp"

namespace concurflow {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const Json& member(const Json& object, const char* key,
                   const std::string& where) {
  if (!object.is_object()) fail(where, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_member(const Json& object, const char* key,
                         const std::string& where) {
  const Json& value = member(object, key, where);
  if (!value.is_array()) fail(where + "." + key, "expected an array");
  return value;
}

std::string as_string(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected a string");
  return value.get<std::string>();
}

double as_number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  return value.get<double>();
}

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

template <typename Lookup>
std::size_t resolve(const Lookup& lookup, const Json& value,
                    const std::string& where, const char* kind) {
  const std::string id = as_string(value, where);
  auto found = lookup(id);
  if (!found) fail(where, std::string("unknown ") + kind + " '" + id + "'");
  return *found;
}

Json flows_json(const Flow& flow) {
  const PathSystem& system = flow.system();
  const Network& network = system.network();
  Json flows = Json::array();
  for (CommodityIndex i = 0; i < network.commodity_count(); ++i) {
    for (PathIndex p : system.paths_of(i)) {
      flows.push_back(Json{{"commodity", network.commodity(i).id},
                           {"path", system.local_index(p)},
                           {"value", flow[p]}});
    }
  }
  return flows;
}

Json commodities_json(const Flow& flow, std::span<const double> bounds) {
  const Network& network = flow.system().network();
  Json out = Json::array();
  for (CommodityIndex i = 0; i < network.commodity_count(); ++i) {
    out.push_back(Json{{"id", network.commodity(i).id},
                       {"bound", bounds[i]},
                       {"value", branch_value(flow, i)}});
  }
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("$: ") + e.what());
  }
  const std::string root = "$";
  if (!doc.is_object()) fail(root, "expected an object");

  Instance instance;
  if (auto it = doc.find("format"); it != doc.end()) {
    if (as_string(*it, "$.format") != kInstanceFormat) {
      fail("$.format", "unsupported format '" + it->get<std::string>() + "'");
    }
  }
  if (auto it = doc.find("name"); it != doc.end()) {
    instance.name = as_string(*it, "$.name");
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) fail("$.seed", "expected an unsigned integer");
    instance.seed = it->get<std::uint64_t>();
  }

  std::vector<std::string> nodes;
  const Json& node_list = array_member(doc, "nodes", root);
  for (std::size_t v = 0; v < node_list.size(); ++v) {
    nodes.push_back(as_string(node_list[v], indexed("$.nodes", v)));
  }
  std::unordered_map<std::string, NodeIndex> node_index;
  for (NodeIndex v = 0; v < nodes.size(); ++v) {
    if (!node_index.emplace(nodes[v], v).second) {
      fail(indexed("$.nodes", v), "duplicate node id '" + nodes[v] + "'");
    }
  }
  auto find_node = [&](const std::string& id) -> std::optional<NodeIndex> {
    auto it = node_index.find(id);
    if (it == node_index.end()) return std::nullopt;
    return it->second;
  };

  std::vector<Edge> edges;
  const Json& edge_list = array_member(doc, "edges", root);
  for (std::size_t e = 0; e < edge_list.size(); ++e) {
    const std::string where = indexed("$.edges", e);
    const Json& item = edge_list[e];
    Edge edge;
    edge.id = as_string(member(item, "id", where), where + ".id");
    edge.tail = resolve(find_node, member(item, "tail", where), where + ".tail",
                        "node");
    edge.head = resolve(find_node, member(item, "head", where), where + ".head",
                        "node");
    edge.capacity =
        as_number(member(item, "capacity", where), where + ".capacity");
    if (!(edge.capacity >= 0.0)) fail(where + ".capacity", "must be >= 0");
    edge.directed = true;
    if (auto it = item.find("directed"); it != item.end()) {
      if (!it->is_boolean()) fail(where + ".directed", "expected a boolean");
      edge.directed = it->get<bool>();
    }
    edges.push_back(std::move(edge));
  }

  std::vector<Commodity> commodities;
  const Json& commodity_list = array_member(doc, "commodities", root);
  for (std::size_t i = 0; i < commodity_list.size(); ++i) {
    const std::string where = indexed("$.commodities", i);
    const Json& item = commodity_list[i];
    Commodity c;
    c.id = as_string(member(item, "id", where), where + ".id");
    c.source = resolve(find_node, member(item, "source", where),
                       where + ".source", "node");
    c.sink = resolve(find_node, member(item, "sink", where), where + ".sink",
                     "node");
    c.bound = as_number(member(item, "bound", where), where + ".bound");
    if (!(c.bound > 0.0)) fail(where + ".bound", "must be > 0");
    commodities.push_back(std::move(c));
  }

  std::shared_ptr<const Network> network;
  try {
    network = std::make_shared<const Network>(
        std::move(nodes), std::move(edges), std::move(commodities));
  } catch (const ValidationError& e) {
    fail(root, e.what());
  }

  std::vector<Path> paths;
  const Json& path_list = array_member(doc, "paths", root);
  for (std::size_t p = 0; p < path_list.size(); ++p) {
    const std::string where = indexed("$.paths", p);
    const Json& item = path_list[p];
    const CommodityIndex commodity = resolve(
        [&](const std::string& id) { return network->find_commodity(id); },
        member(item, "commodity", where), where + ".commodity", "commodity");
    const Json& edge_ids = array_member(item, "edges", where);
    std::vector<EdgeIndex> sequence;
    for (std::size_t j = 0; j < edge_ids.size(); ++j) {
      sequence.push_back(resolve(
          [&](const std::string& id) { return network->find_edge(id); },
          edge_ids[j], indexed(where + ".edges", j), "edge"));
    }
    try {
      paths.push_back(chain_path(*network, commodity, sequence));
    } catch (const ValidationError& e) {
      fail(where, e.what());
    }
  }

  try {
    instance.system =
        std::make_shared<const PathSystem>(network, std::move(paths));
  } catch (const ValidationError& e) {
    // PathSystem messages start with "path <index>: ".
    fail("$.paths", e.what());
  }
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  const Network& network = instance.network();
  Json doc;
  doc["format"] = std::string(kInstanceFormat);
  doc["name"] = instance.name;
  if (instance.seed) doc["seed"] = *instance.seed;
  doc["nodes"] = Json(std::vector<std::string>(network.nodes().begin(),
                                               network.nodes().end()));
  Json edges = Json::array();
  for (const Edge& e : network.edges()) {
    edges.push_back(Json{{"id", e.id},
                         {"tail", network.nodes()[e.tail]},
                         {"head", network.nodes()[e.head]},
                         {"capacity", e.capacity},
                         {"directed", e.directed}});
  }
  doc["edges"] = std::move(edges);
  Json commodities = Json::array();
  for (const Commodity& c : network.commodities()) {
    commodities.push_back(Json{{"id", c.id},
                               {"source", network.nodes()[c.source]},
                               {"sink", network.nodes()[c.sink]},
                               {"bound", c.bound}});
  }
  doc["commodities"] = std::move(commodities);
  Json paths = Json::array();
  for (const Path& path : instance.system->paths()) {
    Json ids = Json::array();
    for (const Traversal& t : path.steps) ids.push_back(network.edge(t.edge).id);
    paths.push_back(Json{{"commodity", network.commodity(path.commodity).id},
                         {"edges", std::move(ids)}});
  }
  doc["paths"] = std::move(paths);
  return doc.dump(2) + "\n";
}

std::string serialize_solution(const Instance& instance,
                               const SolveReport& report,
                               bool include_timing) {
  Json doc;
  doc["format"] = std::string(kSolutionFormat);
  doc["instance"] = instance.name;
  Json algorithm;
  algorithm["eta"] = report.eta;
  algorithm["epsilon"] = report.epsilon;
  algorithm["subroutine"] = std::string(to_string(report.subroutine));
  algorithm["l_star"] = report.lstar;
  algorithm["h_star"] = report.hstar;
  algorithm["outer_iterations"] = report.outer_iterations;
  algorithm["inner_iterations"] = report.inner_iterations;
  algorithm["subroutine_calls"] = report.subroutine_calls;
  algorithm["fptas_iterations"] = report.fptas_iterations;
  algorithm["certified"] = Json{
      {"value_lower", report.certified.value_lower},
      {"value_upper", report.certified.value_upper},
      {"ratio_lower", report.certified.ratio_lower},
      {"ratio_upper", report.certified.ratio_upper},
      {"optimum_upper", report.certified.optimum_upper}};
  if (include_timing) algorithm["wall_seconds"] = report.wall_seconds;
  doc["algorithm"] = std::move(algorithm);
  doc["value"] = report.value;
  doc["min_ratio"] = report.ratio;
  doc["commodities"] = commodities_json(report.flow, report.bounds);
  doc["flows"] = flows_json(report.flow);
  return doc.dump(2) + "\n";
}

std::string serialize_oracle(const Instance& instance,
                             const OracleOutput& output) {
  Json doc;
  doc["format"] = std::string(kOracleFormat);
  doc["instance"] = instance.name;
  doc["problem"] = output.problem;
  if (output.lambda) doc["lambda"] = *output.lambda;
  doc["value"] = output.value;
  const std::vector<double> bounds = instance.network().bounds();
  doc["commodities"] = commodities_json(output.flow, bounds);
  doc["flows"] = flows_json(output.flow);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

Instance read_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace concurflow
