#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctop/time_grid.hpp"

namespace ctop {

enum class ResourceKind { Fca, Pca };

/// A controlled airspace resource. FCAs are artificial control boundaries
/// carrying planned acceptance rates; PCAs are physical regions (including
/// arrival airports) with scenario-dependent capacity.
struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::Fca;
};

/// Directed connection between two resources. split_ratio[t] is the fraction
/// of traffic leaving `from` in period t that is bound for `to`; the ratios
/// of all arcs out of one resource sum to 1 in every period.
struct NetworkArc {
  std::string from;
  std::string to;
  int travel_periods = 0;
  std::vector<double> split_ratio;
};

/// Scenarios indistinguishable from one another while a given stage is
/// current. Decisions taken during that stage must coincide across them.
struct ScenarioBranch {
  int stage = 0;
  std::vector<int> scenarios;  // 0-based scenario indices
};

/// Capacity futures with probabilities, plus the stage/branch structure that
/// records when forecasts resolve. stage_starts[s] is the first period of
/// stage s (stage 0 starts at period 0).
struct ScenarioTree {
  std::vector<double> probabilities;
  std::vector<int> stage_starts;
  std::vector<ScenarioBranch> branches;

  int num_scenarios() const { return static_cast<int>(probabilities.size()); }
  int num_stages() const { return static_cast<int>(stage_starts.size()); }

  int stage_of_period(int p) const {
    int s = 0;
    while (s + 1 < num_stages() && p >= stage_starts[s + 1]) ++s;
    return s;
  }
  /// One past the last period of stage s.
  int stage_end(int s, int total_periods) const {
    return s + 1 < num_stages() ? stage_starts[s + 1] : total_periods;
  }
  const ScenarioBranch* branch_of(int stage, int scenario) const;
};

/// capacity[resource][scenario][period], flights per 15-minute period.
struct CapacityProfile {
  std::map<std::string, std::vector<std::vector<int>>> table;

  int at(const std::string& res, int scenario, int period) const;
  bool has(const std::string& res) const { return table.count(res) > 0; }
};

/// A commodity: the ordered PCA sequence flights of this path traverse, plus
/// the FCA whose slots control the path's ground delay.
struct Path {
  int id = 0;
  std::string entry_fca;
  std::vector<std::string> nodes;  // PCA ids in traversal order
};

/// One route choice of a flight. fca_crossings lists, in crossing order, each
/// FCA on the route with the unimpeded arrival time there. relative_cost_min
/// is the airline's minutes-equivalent penalty versus the preferred option.
struct TrajectoryOption {
  int path_id = 0;
  std::vector<std::pair<std::string, long>> fca_crossings;
  double relative_cost_min = 0.0;

  const std::string& entry_fca() const { return fca_crossings.front().first; }
  long entry_arrival_s() const { return fca_crossings.front().second; }
  std::optional<long> arrival_at(const std::string& fca) const {
    for (const auto& [id, t] : fca_crossings)
      if (id == fca) return t;
    return std::nullopt;
  }
};

struct Flight {
  std::string id;
  long etd_s = 0;
  bool exempt = false;
  std::vector<TrajectoryOption> options;  // ordered by airline preference

  const TrajectoryOption& preferred() const { return options.front(); }
};

struct CostParams {
  double ground = 1.0;  // cost of one period of ground delay
  double air = 2.0;     // cost of one period of airborne holding
};

/// The full planning problem. Immutable after construction; call finalize()
/// once all fields are set to build the lookup tables.
struct Instance {
  TimeGrid grid;
  std::vector<Resource> resources;
  std::vector<NetworkArc> arcs;
  std::vector<Path> paths;
  ScenarioTree tree;
  CapacityProfile capacities;
  std::vector<Flight> flights;
  CostParams cost;

  void finalize();

  const Resource* resource(const std::string& id) const;
  const Path* path(int id) const;
  bool is_fca(const std::string& id) const;
  bool is_pca(const std::string& id) const;
  std::vector<std::string> fca_ids() const;
  std::vector<std::string> pca_ids() const;

  const NetworkArc* arc(const std::string& from, const std::string& to) const;
  std::vector<const NetworkArc*> arcs_out(const std::string& id) const;
  std::vector<const NetworkArc*> arcs_in(const std::string& id) const;
  /// Travel periods along arc (from,to); throws if the arc does not exist.
  int travel_periods(const std::string& from, const std::string& to) const;

  /// Paths whose ground delay is controlled by the given FCA, by id order.
  std::vector<const Path*> paths_entered_at(const std::string& fca) const;

 private:
  std::map<std::string, int> resource_index_;
  std::map<int, int> path_index_;
  std::map<std::pair<std::string, std::string>, int> arc_index_;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Scheduled demand aggregated from flights' most-preferred options. All
/// matrices span the padded horizon; exempt flights are not counted (they
/// are never issued controlled delay).
struct DemandMatrix {
  std::map<std::string, std::vector<int>> direct;                  // per FCA, per period
  std::map<std::string, std::vector<std::vector<int>>> by_stage;   // per FCA: [stage][period]
  std::map<int, std::vector<int>> by_path;                         // per path: [period] at first PCA
  std::map<int, std::vector<std::vector<int>>> by_path_stage;      // per path: [stage][period]

  long total_units() const;
};

/// Per-arc split-ratio vectors, indexed like Instance::arcs.
using SplitRatios = std::vector<std::vector<double>>;

/// Checks every structural invariant of an instance and reports all
/// violations; nothing is thrown.
ValidationReport validate_instance(const Instance& instance);

/// Aggregates flights into the demand matrices used by the rate-planning
/// models. Throws std::runtime_error naming the flight if an arrival falls
/// outside the padded horizon.
DemandMatrix derive_demand(const std::vector<Flight>& flights, const Instance& instance);

/// Fraction of scheduled traffic leaving each resource per period bound for
/// each successor, from the flights' most-preferred options. Periods with no
/// departing traffic fall back to a uniform split over the out-arcs.
SplitRatios derive_split_ratios(const std::vector<Flight>& flights, const Instance& instance);

/// The split ratios currently stored on the instance's arcs.
SplitRatios stored_split_ratios(const Instance& instance);

}  // namespace ctop
