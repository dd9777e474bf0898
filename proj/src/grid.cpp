#include "voltgrid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "voltgrid/common.hpp"

namespace voltgrid::grid {

using json = nlohmann::json;

Network::Network(std::vector<Bus> buses, std::vector<Line> lines, int slack_bus,
                 double v_slack, double v_min, double v_max, double base_kva, double base_kv)
    : buses_(std::move(buses)),
      lines_(std::move(lines)),
      slack_bus_(slack_bus),
      v_slack_(v_slack),
      v_min_(v_min),
      v_max_(v_max),
      base_kva_(base_kva),
      base_kv_(base_kv) {
  const int n = bus_count();
  if (n < 2) throw std::runtime_error("network needs at least 2 buses");
  if (static_cast<int>(lines_.size()) != n - 1)
    throw std::runtime_error("non-radial topology: " + std::to_string(n) + " buses require " +
                             std::to_string(n - 1) + " lines, got " +
                             std::to_string(lines_.size()));
  if (base_kva_ <= 0 || base_kv_ <= 0) throw std::runtime_error("base_kva/base_kv must be positive");
  if (!(v_min_ < v_slack_ && v_slack_ <= v_max_))
    throw std::runtime_error("voltage limits must satisfy v_min < v_slack <= v_max");

  int max_id = 0;
  std::set<int> seen;
  for (const auto& b : buses_) {
    if (!seen.insert(b.id).second)
      throw std::runtime_error("duplicate bus id " + std::to_string(b.id));
    max_id = std::max(max_id, b.id);
  }
  id_to_index_.assign(max_id + 1, -1);
  for (int i = 0; i < n; ++i) {
    if (buses_[i].id < 0) throw std::runtime_error("negative bus id");
    id_to_index_[buses_[i].id] = i;
  }
  if (!has_bus(slack_bus_)) throw std::runtime_error("slack bus not in bus list");

  adjacency_.assign(n, {});
  std::set<std::pair<int, int>> line_keys;
  for (const auto& ln : lines_) {
    if (!has_bus(ln.from) || !has_bus(ln.to))
      throw std::runtime_error("line references unknown bus: " + std::to_string(ln.from) + "-" +
                               std::to_string(ln.to));
    if (ln.from == ln.to)
      throw std::runtime_error("line connects bus " + std::to_string(ln.from) + " to itself");
    if (ln.r_pu <= 0 || ln.x_pu <= 0)
      throw std::runtime_error("nonpositive impedance on line " + std::to_string(ln.from) + "-" +
                               std::to_string(ln.to));
    const auto key = std::minmax(ln.from, ln.to);
    if (!line_keys.insert(key).second)
      throw std::runtime_error("duplicate line " + std::to_string(key.first) + "-" +
                               std::to_string(key.second));
    adjacency_[index_of(ln.from)].push_back(index_of(ln.to));
    adjacency_[index_of(ln.to)].push_back(index_of(ln.from));
  }

  // Root the tree at the slack bus; with N-1 distinct lines, full reachability
  // is equivalent to the graph being a spanning tree.
  parent_.assign(n, -1);
  z_parent_.assign(n, {0.0, 0.0});
  order_.clear();
  std::vector<char> visited(n, 0);
  std::deque<int> frontier{index_of(slack_bus_)};
  visited[frontier.front()] = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    order_.push_back(u);
    for (int v : adjacency_[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      parent_[v] = u;
      frontier.push_back(v);
    }
  }
  if (static_cast<int>(order_.size()) != n) {
    for (int i = 0; i < n; ++i)
      if (!visited[i])
        throw std::runtime_error("non-radial topology: bus " + std::to_string(buses_[i].id) +
                                 " unreachable from slack");
  }
  for (const auto& ln : lines_) {
    const int a = index_of(ln.from), b = index_of(ln.to);
    const int child = (parent_[b] == a) ? b : (parent_[a] == b ? a : -1);
    if (child < 0)
      throw std::runtime_error("non-radial topology: line " + std::to_string(ln.from) + "-" +
                               std::to_string(ln.to) + " closes a loop");
    z_parent_[child] = {ln.r_pu, ln.x_pu};
  }
}

bool Network::has_bus(int bus_id) const {
  return bus_id >= 0 && bus_id < static_cast<int>(id_to_index_.size()) &&
         id_to_index_[bus_id] >= 0;
}

int Network::index_of(int bus_id) const {
  if (!has_bus(bus_id)) throw std::runtime_error("unknown bus id " + std::to_string(bus_id));
  return id_to_index_[bus_id];
}

std::vector<int> Network::neighbors_one_hop(int bus_id) const {
  const int i = index_of(bus_id);
  std::vector<int> out;
  out.reserve(adjacency_[i].size());
  for (int j : adjacency_[i]) out.push_back(buses_[j].id);
  std::sort(out.begin(), out.end());
  return out;
}

void validate_deployment(const Network& network, const DeploymentMap& deployment) {
  std::set<int> used;
  for (std::size_t k = 0; k < deployment.placements.size(); ++k) {
    const int bus = deployment.placements[k];
    if (!network.has_bus(bus))
      throw std::runtime_error("EVCS " + std::to_string(k) + " placed at unknown bus " +
                               std::to_string(bus));
    if (bus == network.slack_bus())
      throw std::runtime_error("EVCS " + std::to_string(k) + " may not sit on the slack bus");
    if (!used.insert(bus).second)
      throw std::runtime_error("bus " + std::to_string(bus) + " hosts more than one EVCS");
  }
}

std::vector<int> evcs_neighborhood(const Network& network, const DeploymentMap& deployment,
                                   int k) {
  if (k < 0 || k >= static_cast<int>(deployment.placements.size()))
    throw std::runtime_error("EVCS index " + std::to_string(k) + " is not placed");
  return network.neighbors_one_hop(deployment.placements[k]);
}

PowerFlowResult solve_power_flow(const Network& network,
                                 const std::vector<std::complex<double>>& injections,
                                 const PowerFlowOptions& options) {
  const int n = network.bus_count();
  if (static_cast<int>(injections.size()) != n)
    throw std::runtime_error("injection vector size mismatch");

  const auto& order = network.bfs_order();
  const auto& parent = network.parent_index();
  const auto& z = network.parent_impedance();
  const int slack = order.front();

  PowerFlowResult res;
  res.v_complex.assign(n, {network.v_slack(), 0.0});

  std::vector<std::complex<double>> branch_current(n, {0.0, 0.0});  // into bus from parent

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    // Backward sweep: node current conj(S/V), accumulated leaf-to-root.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int b = *it;
      if (b == slack) continue;
      std::complex<double> acc = -std::conj(injections[b] / res.v_complex[b]);
      branch_current[b] = acc;  // children were visited already
      // add to parent later; store own demand first
    }
    // Accumulate child branch currents leaf-to-root.
    std::vector<std::complex<double>> total(branch_current);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int b = *it;
      if (b == slack) continue;
      const int p = parent[b];
      if (p != slack) total[p] += total[b];
      branch_current[b] = total[b];
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int b = *it;
      if (b == slack) continue;
      branch_current[b] = total[b];
    }

    // Forward sweep: voltage drop along each branch, root-to-leaf.
    double max_dv = 0.0;
    for (int b : order) {
      if (b == slack) continue;
      const std::complex<double> v_new = res.v_complex[parent[b]] - z[b] * branch_current[b];
      max_dv = std::max(max_dv, std::abs(v_new - res.v_complex[b]));
      res.v_complex[b] = v_new;
    }

    // Power balance check at every non-slack bus.
    std::vector<std::complex<double>> into(n, {0.0, 0.0});
    for (int b : order) {
      if (b == slack) continue;
      into[b] += branch_current[b];
      into[parent[b]] -= branch_current[b];
    }
    double max_mismatch = 0.0;
    for (int b : order) {
      if (b == slack) continue;
      const std::complex<double> s_calc = res.v_complex[b] * std::conj(into[b]);
      max_mismatch = std::max(max_mismatch, std::abs(injections[b] - s_calc));
    }

    res.iterations = iter;
    res.max_mismatch_pu = max_mismatch;
    if (max_mismatch <= options.tolerance_pu) {
      res.converged = true;
      break;
    }
    // A diverging sweep shows up as non-finite voltages; bail out early.
    if (!std::isfinite(max_dv) || !std::isfinite(max_mismatch)) {
      res.converged = false;
      break;
    }
  }

  res.voltages.resize(n);
  for (int i = 0; i < n; ++i) res.voltages[i] = std::abs(res.v_complex[i]);
  res.voltages[slack] = network.v_slack();
  return res;
}

namespace {

double require_number(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::runtime_error(ctx + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

}  // namespace

Network load_network(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed network document: ") + e.what());
  }
  if (!doc.contains("buses") || !doc["buses"].is_array() || !doc.contains("lines") ||
      !doc["lines"].is_array())
    throw std::runtime_error("network document needs 'buses' and 'lines' arrays");

  const double base_kva = require_number(doc, "base_kva", "network");
  const double base_kv = require_number(doc, "base_kv", "network");
  const double v_min = require_number(doc, "v_min", "network");
  const double v_max = require_number(doc, "v_max", "network");
  const double v_slack = doc.value("v_slack", 1.0);
  if (!doc.contains("slack") || !doc["slack"].is_number_integer())
    throw std::runtime_error("network document needs integer 'slack' bus id");
  const int slack = doc["slack"].get<int>();

  // Ohms to per-unit on the document's base.
  const double z_base_ohm = base_kv * base_kv * 1000.0 / base_kva;

  std::vector<Bus> buses;
  for (const auto& jb : doc["buses"]) {
    Bus b;
    if (!jb.contains("id") || !jb["id"].is_number_integer())
      throw std::runtime_error("bus record without integer 'id': " + jb.dump());
    b.id = jb["id"].get<int>();
    b.p_load_kw = jb.value("p_load_kw", 0.0);
    b.q_load_kvar = jb.value("q_load_kvar", 0.0);
    buses.push_back(b);
  }
  std::vector<Line> lines;
  for (const auto& jl : doc["lines"]) {
    Line ln;
    if (!jl.contains("from") || !jl.contains("to"))
      throw std::runtime_error("line record without from/to: " + jl.dump());
    ln.from = jl["from"].get<int>();
    ln.to = jl["to"].get<int>();
    ln.r_pu = require_number(jl, "r_ohm", "line " + jl.dump()) / z_base_ohm;
    ln.x_pu = require_number(jl, "x_ohm", "line " + jl.dump()) / z_base_ohm;
    if (ln.r_pu <= 0 || ln.x_pu <= 0)
      throw std::runtime_error("nonpositive impedance on line record: " + jl.dump());
    lines.push_back(ln);
  }

  return Network(std::move(buses), std::move(lines), slack, v_slack, v_min, v_max, base_kva,
                 base_kv);
}

Network load_network_file(const std::string& path) {
  try {
    return load_network(read_text_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace voltgrid::grid
