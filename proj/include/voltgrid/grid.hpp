#pragma once

#include <complex>
#include <string>
#include <vector>

namespace voltgrid::grid {

struct Bus {
  int id = 0;
  double p_load_kw = 0.0;
  double q_load_kvar = 0.0;
};

struct Line {
  int from = 0;
  int to = 0;
  double r_pu = 0.0;
  double x_pu = 0.0;
};

// Radial distribution network in per-unit. Immutable after construction;
// solve_power_flow is a pure function of (network, injections).
class Network {
 public:
  Network(std::vector<Bus> buses, std::vector<Line> lines, int slack_bus, double v_slack,
          double v_min, double v_max, double base_kva, double base_kv);

  int bus_count() const { return static_cast<int>(buses_.size()); }
  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<Line>& lines() const { return lines_; }
  int slack_bus() const { return slack_bus_; }
  double v_slack() const { return v_slack_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  double base_kva() const { return base_kva_; }
  double base_kv() const { return base_kv_; }

  int index_of(int bus_id) const;  // throws on unknown id
  bool has_bus(int bus_id) const;
  int bus_id(int index) const { return buses_[index].id; }

  // Ids of buses sharing a line with `bus_id`, ascending, excluding itself.
  std::vector<int> neighbors_one_hop(int bus_id) const;

  // Tree ordering rooted at the slack bus (parent of slack is -1).
  const std::vector<int>& parent_index() const { return parent_; }
  const std::vector<std::complex<double>>& parent_impedance() const { return z_parent_; }
  const std::vector<int>& bfs_order() const { return order_; }

 private:
  std::vector<Bus> buses_;
  std::vector<Line> lines_;
  int slack_bus_;
  double v_slack_, v_min_, v_max_, base_kva_, base_kv_;

  std::vector<std::vector<int>> adjacency_;          // by bus index
  std::vector<int> parent_;                          // by bus index
  std::vector<std::complex<double>> z_parent_;       // impedance to parent, p.u.
  std::vector<int> order_;                           // root-first traversal
  std::vector<int> id_to_index_;
};

// EVCS placement: placements[k] is the hosting bus id of EVCS k.
struct DeploymentMap {
  std::vector<int> placements;
};

void validate_deployment(const Network& network, const DeploymentMap& deployment);

// 1-hop neighborhood of the bus hosting EVCS k.
std::vector<int> evcs_neighborhood(const Network& network, const DeploymentMap& deployment,
                                   int k);

struct PowerFlowResult {
  std::vector<double> voltages;  // p.u. magnitude, by bus index
  std::vector<std::complex<double>> v_complex;
  bool converged = false;
  int iterations = 0;
  double max_mismatch_pu = 0.0;
};

struct PowerFlowOptions {
  double tolerance_pu = 1e-8;
  int max_iterations = 200;
};

// Backward-forward sweep (current summation). `injections` holds the complex
// per-unit power injected at every bus index (generation positive); the entry
// for the slack bus is ignored.
PowerFlowResult solve_power_flow(const Network& network,
                                 const std::vector<std::complex<double>>& injections,
                                 const PowerFlowOptions& options = {});

// Parses the JSON network document (see README for the schema) and validates
// radiality, impedances and voltage limits.
Network load_network(const std::string& json_text);
Network load_network_file(const std::string& path);

}  // namespace voltgrid::grid
