#include "ctop/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

namespace ctop {

namespace {
constexpr double kProbTol = 1e-9;
constexpr double kSplitTol = 1e-9;
}  // namespace

const ScenarioBranch* ScenarioTree::branch_of(int stage, int scenario) const {
  for (const auto& b : branches) {
    if (b.stage != stage) continue;
    if (std::find(b.scenarios.begin(), b.scenarios.end(), scenario) != b.scenarios.end())
      return &b;
  }
  return nullptr;
}

int CapacityProfile::at(const std::string& res, int scenario, int period) const {
  auto it = table.find(res);
  if (it == table.end()) throw std::out_of_range("no capacity row for resource " + res);
  const auto& rows = it->second;
  if (scenario < 0 || scenario >= static_cast<int>(rows.size()))
    throw std::out_of_range("capacity scenario index out of range for " + res);
  const auto& row = rows[scenario];
  if (period < 0 || period >= static_cast<int>(row.size()))
    throw std::out_of_range("capacity period index out of range for " + res);
  return row[period];
}

void Instance::finalize() {
  resource_index_.clear();
  path_index_.clear();
  arc_index_.clear();
  for (int i = 0; i < static_cast<int>(resources.size()); ++i)
    resource_index_.emplace(resources[i].id, i);
  for (int i = 0; i < static_cast<int>(paths.size()); ++i)
    path_index_.emplace(paths[i].id, i);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i)
    arc_index_.emplace(std::make_pair(arcs[i].from, arcs[i].to), i);
}

const Resource* Instance::resource(const std::string& id) const {
  auto it = resource_index_.find(id);
  return it == resource_index_.end() ? nullptr : &resources[it->second];
}

const Path* Instance::path(int id) const {
  auto it = path_index_.find(id);
  return it == path_index_.end() ? nullptr : &paths[it->second];
}

bool Instance::is_fca(const std::string& id) const {
  const Resource* r = resource(id);
  return r && r->kind == ResourceKind::Fca;
}

bool Instance::is_pca(const std::string& id) const {
  const Resource* r = resource(id);
  return r && r->kind == ResourceKind::Pca;
}

std::vector<std::string> Instance::fca_ids() const {
  std::vector<std::string> out;
  for (const auto& r : resources)
    if (r.kind == ResourceKind::Fca) out.push_back(r.id);
  return out;
}

std::vector<std::string> Instance::pca_ids() const {
  std::vector<std::string> out;
  for (const auto& r : resources)
    if (r.kind == ResourceKind::Pca) out.push_back(r.id);
  return out;
}

const NetworkArc* Instance::arc(const std::string& from, const std::string& to) const {
  auto it = arc_index_.find(std::make_pair(from, to));
  return it == arc_index_.end() ? nullptr : &arcs[it->second];
}

std::vector<const NetworkArc*> Instance::arcs_out(const std::string& id) const {
  std::vector<const NetworkArc*> out;
  for (const auto& a : arcs)
    if (a.from == id) out.push_back(&a);
  return out;
}

std::vector<const NetworkArc*> Instance::arcs_in(const std::string& id) const {
  std::vector<const NetworkArc*> out;
  for (const auto& a : arcs)
    if (a.to == id) out.push_back(&a);
  return out;
}

int Instance::travel_periods(const std::string& from, const std::string& to) const {
  const NetworkArc* a = arc(from, to);
  if (!a) throw std::runtime_error("no arc " + from + " -> " + to);
  return a->travel_periods;
}

std::vector<const Path*> Instance::paths_entered_at(const std::string& fca) const {
  std::vector<const Path*> out;
  for (const auto& p : paths)
    if (p.entry_fca == fca) out.push_back(&p);
  std::sort(out.begin(), out.end(), [](const Path* a, const Path* b) { return a->id < b->id; });
  return out;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& i : issues) os << i.code << ": " << i.message << "\n";
  return os.str();
}

long DemandMatrix::total_units() const {
  long n = 0;
  for (const auto& [res, row] : direct)
    for (int v : row) n += v;
  return n;
}

namespace {

void check_scenario_tree(const Instance& ins, ValidationReport& rep) {
  const ScenarioTree& tree = ins.tree;
  double psum = 0.0;
  for (int q = 0; q < tree.num_scenarios(); ++q) {
    if (tree.probabilities[q] <= 0.0)
      rep.issues.push_back({"probability_positive",
                            "scenario " + std::to_string(q) + " has non-positive probability"});
    psum += tree.probabilities[q];
  }
  if (std::abs(psum - 1.0) > kProbTol) {
    std::ostringstream os;
    os << "probabilities sum to " << psum;
    rep.issues.push_back({"probability_sum", os.str()});
  }
  if (tree.stage_starts.empty() || tree.stage_starts.front() != 0)
    rep.issues.push_back({"stage_start", "first stage must start at period 0"});
  for (size_t s = 1; s < tree.stage_starts.size(); ++s)
    if (tree.stage_starts[s] <= tree.stage_starts[s - 1])
      rep.issues.push_back({"stage_order", "stage starts must be strictly increasing"});

  // Every scenario in exactly one branch per stage.
  for (int s = 0; s < tree.num_stages(); ++s) {
    for (int q = 0; q < tree.num_scenarios(); ++q) {
      int hits = 0;
      for (const auto& b : tree.branches)
        if (b.stage == s &&
            std::count(b.scenarios.begin(), b.scenarios.end(), q) > 0)
          ++hits;
      if (hits != 1)
        rep.issues.push_back({"branch_cover", "scenario " + std::to_string(q) + " appears in " +
                                                  std::to_string(hits) + " branches of stage " +
                                                  std::to_string(s)});
    }
  }

  // Scenarios sharing a branch must be indistinguishable (identical
  // capacities) on every period before the branch resolves.
  for (const auto& b : tree.branches) {
    if (b.scenarios.size() < 2) continue;
    int resolve = tree.stage_end(b.stage, ins.grid.total_periods());
    for (const auto& [res, rows] : ins.capacities.table) {
      for (size_t i = 1; i < b.scenarios.size(); ++i) {
        int q0 = b.scenarios[0], qi = b.scenarios[i];
        if (q0 >= static_cast<int>(rows.size()) || qi >= static_cast<int>(rows.size())) continue;
        for (int p = 0; p < resolve && p < static_cast<int>(rows[q0].size()); ++p) {
          if (rows[q0][p] != rows[qi][p]) {
            rep.issues.push_back(
                {"branch_capacity",
                 "scenarios " + std::to_string(q0) + " and " + std::to_string(qi) +
                     " share a stage-" + std::to_string(b.stage) + " branch but differ at " +
                     res + " period " + std::to_string(p)});
            break;
          }
        }
      }
    }
  }
}

void check_network(const Instance& ins, ValidationReport& rep) {
  std::set<std::string> ids;
  for (const auto& r : ins.resources)
    if (!ids.insert(r.id).second)
      rep.issues.push_back({"resource_unique", "duplicate resource id " + r.id});

  const int T = ins.grid.total_periods();
  for (const auto& a : ins.arcs) {
    if (!ins.resource(a.from) || !ins.resource(a.to))
      rep.issues.push_back({"arc_endpoints", "arc " + a.from + " -> " + a.to +
                                                 " references unknown resource"});
    if (a.travel_periods < 0)
      rep.issues.push_back({"arc_travel", "arc " + a.from + " -> " + a.to +
                                              " has negative travel time"});
    // FCAs must come before PCAs along any directed walk.
    if (ins.is_pca(a.from) && ins.is_fca(a.to))
      rep.issues.push_back({"fca_order", "arc " + a.from + " -> " + a.to +
                                             " places an FCA downstream of a PCA"});
  }

  // Split ratios: each vector spans the horizon and sums to 1 per period.
  for (const auto& r : ins.resources) {
    auto out = ins.arcs_out(r.id);
    if (out.empty()) continue;
    for (const auto* a : out) {
      if (static_cast<int>(a->split_ratio.size()) != T) {
        rep.issues.push_back({"split_size", "arc " + a->from + " -> " + a->to +
                                                " split vector does not span the horizon"});
      }
    }
    for (int t = 0; t < T; ++t) {
      double sum = 0.0;
      bool complete = true;
      for (const auto* a : out) {
        if (t >= static_cast<int>(a->split_ratio.size())) {
          complete = false;
          break;
        }
        double f = a->split_ratio[t];
        if (f < -kSplitTol || f > 1.0 + kSplitTol)
          rep.issues.push_back({"split_range", "arc " + a->from + " -> " + a->to +
                                                   " split out of [0,1] at period " +
                                                   std::to_string(t)});
        sum += f;
      }
      if (complete && std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "splits out of " << r.id << " sum to " << sum << " at period " << t;
        rep.issues.push_back({"split_sum", os.str()});
      }
    }
  }

  // DAG check via Kahn's algorithm.
  std::map<std::string, int> indeg;
  for (const auto& r : ins.resources) indeg[r.id] = 0;
  for (const auto& a : ins.arcs)
    if (ins.resource(a.from) && ins.resource(a.to)) indeg[a.to]++;
  std::queue<std::string> q;
  for (const auto& [id, d] : indeg)
    if (d == 0) q.push(id);
  int seen = 0;
  while (!q.empty()) {
    std::string id = q.front();
    q.pop();
    ++seen;
    for (const auto* a : ins.arcs_out(id))
      if (indeg.count(a->to) && --indeg[a->to] == 0) q.push(a->to);
  }
  if (seen != static_cast<int>(ins.resources.size()))
    rep.issues.push_back({"dag", "resource network contains a directed cycle"});
}

int longest_chain_periods(const Instance& ins) {
  // Longest travel time over any directed walk; network is a DAG.
  std::map<std::string, int> best;
  int overall = 0;
  // Repeated relaxation is fine at these sizes.
  for (size_t iter = 0; iter <= ins.resources.size(); ++iter) {
    bool changed = false;
    for (const auto& a : ins.arcs) {
      int cand = best[a.from] + a.travel_periods;
      if (cand > best[a.to]) {
        best[a.to] = cand;
        overall = std::max(overall, cand);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return overall;
}

void check_capacities(const Instance& ins, ValidationReport& rep) {
  const int T = ins.grid.total_periods();
  const int Q = ins.tree.num_scenarios();
  for (const auto& r : ins.resources) {
    if (r.kind != ResourceKind::Pca) continue;
    if (!ins.capacities.has(r.id)) {
      rep.issues.push_back({"capacity_missing", "no capacity table for PCA " + r.id});
      continue;
    }
    const auto& rows = ins.capacities.table.at(r.id);
    if (static_cast<int>(rows.size()) != Q) {
      rep.issues.push_back({"capacity_scenarios", "capacity table for " + r.id +
                                                      " does not cover all scenarios"});
      continue;
    }
    for (int qi = 0; qi < Q; ++qi) {
      if (static_cast<int>(rows[qi].size()) != T)
        rep.issues.push_back({"capacity_periods", "capacity row for " + r.id + " scenario " +
                                                      std::to_string(qi) +
                                                      " does not span the padded horizon"});
      for (int v : rows[qi])
        if (v < 0)
          rep.issues.push_back({"capacity_negative", "negative capacity at " + r.id});
    }
  }
}

void check_paths(const Instance& ins, ValidationReport& rep) {
  std::set<int> ids;
  for (const auto& p : ins.paths) {
    if (!ids.insert(p.id).second)
      rep.issues.push_back({"path_unique", "duplicate path id " + std::to_string(p.id)});
    if (p.nodes.empty()) {
      rep.issues.push_back({"path_empty", "path " + std::to_string(p.id) + " has no nodes"});
      continue;
    }
    if (!ins.is_fca(p.entry_fca))
      rep.issues.push_back({"path_entry", "path " + std::to_string(p.id) +
                                              " entry " + p.entry_fca + " is not an FCA"});
    else if (!ins.arc(p.entry_fca, p.nodes.front()))
      rep.issues.push_back({"path_entry_arc", "path " + std::to_string(p.id) +
                                                  " entry FCA is not connected to " +
                                                  p.nodes.front()});
    for (const auto& n : p.nodes)
      if (!ins.is_pca(n))
        rep.issues.push_back({"path_node", "path " + std::to_string(p.id) + " node " + n +
                                               " is not a PCA"});
    for (size_t i = 0; i + 1 < p.nodes.size(); ++i)
      if (!ins.arc(p.nodes[i], p.nodes[i + 1]))
        rep.issues.push_back({"path_arc", "path " + std::to_string(p.id) + " nodes " +
                                              p.nodes[i] + " -> " + p.nodes[i + 1] +
                                              " are not connected"});
  }
}

void check_flights(const Instance& ins, ValidationReport& rep) {
  std::set<std::string> ids;
  for (const auto& f : ins.flights) {
    if (!ids.insert(f.id).second)
      rep.issues.push_back({"flight_unique", "duplicate flight id " + f.id});
    if (f.options.empty()) {
      rep.issues.push_back({"flight_options", "flight " + f.id + " has no trajectory options"});
      continue;
    }
    if (f.options.front().relative_cost_min != 0.0)
      rep.issues.push_back({"option_cost", "flight " + f.id +
                                               " preferred option has nonzero relative cost"});
    for (const auto& opt : f.options) {
      if (opt.relative_cost_min < 0.0)
        rep.issues.push_back({"option_cost", "flight " + f.id + " option has negative cost"});
      if (!ins.path(opt.path_id))
        rep.issues.push_back({"option_path", "flight " + f.id + " references unknown path " +
                                                 std::to_string(opt.path_id)});
      if (opt.fca_crossings.empty()) {
        rep.issues.push_back({"option_fcas", "flight " + f.id + " option crosses no FCA"});
        continue;
      }
      long prev = -1;
      bool first = true;
      for (const auto& [fca, t] : opt.fca_crossings) {
        if (!ins.is_fca(fca))
          rep.issues.push_back({"option_fca", "flight " + f.id + " crossing " + fca +
                                                  " which is not an FCA"});
        if (!first && t <= prev)
          rep.issues.push_back({"option_order", "flight " + f.id +
                                                    " FCA crossing times not increasing"});
        prev = t;
        first = false;
      }
      const Path* p = ins.path(opt.path_id);
      if (p && !opt.arrival_at(p->entry_fca))
        rep.issues.push_back({"option_entry", "flight " + f.id + " option does not cross " +
                                                  "its path's entry FCA " + p->entry_fca});
    }
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport rep;
  if (instance.grid.active_periods <= 0)
    rep.issues.push_back({"horizon", "horizon has no active periods"});
  check_scenario_tree(instance, rep);
  check_network(instance, rep);
  check_capacities(instance, rep);
  check_paths(instance, rep);
  check_flights(instance, rep);
  int chain = longest_chain_periods(instance);
  if (instance.grid.padding_periods < chain) {
    rep.issues.push_back({"padding", "padding of " +
                                         std::to_string(instance.grid.padding_periods) +
                                         " periods is shorter than the longest travel chain (" +
                                         std::to_string(chain) + ")"});
  }
  return rep;
}

DemandMatrix derive_demand(const std::vector<Flight>& flights, const Instance& instance) {
  DemandMatrix dm;
  const int T = instance.grid.total_periods();
  const int S = instance.tree.num_stages();
  for (const auto& r : instance.resources) {
    if (r.kind != ResourceKind::Fca) continue;
    dm.direct[r.id].assign(T, 0);
    dm.by_stage[r.id].assign(S, std::vector<int>(T, 0));
  }
  for (const auto& p : instance.paths) {
    dm.by_path[p.id].assign(T, 0);
    dm.by_path_stage[p.id].assign(S, std::vector<int>(T, 0));
  }

  for (const auto& f : flights) {
    if (f.exempt) continue;
    const TrajectoryOption& opt = f.preferred();
    const Path* path = instance.path(opt.path_id);
    if (!path) throw std::runtime_error("flight " + f.id + ": unknown path in preferred option");

    const std::string& fca = opt.entry_fca();
    int t_fca = instance.grid.period_of(opt.entry_arrival_s());
    if (!instance.grid.in_horizon(t_fca))
      throw std::runtime_error("flight " + f.id + ": FCA arrival outside the padded horizon");
    int stage = instance.tree.stage_of_period(
        std::max(0, instance.grid.period_of(f.etd_s)));

    dm.direct.at(fca)[t_fca] += 1;
    dm.by_stage.at(fca)[stage][t_fca] += 1;

    auto entry_arr = opt.arrival_at(path->entry_fca);
    if (!entry_arr)
      throw std::runtime_error("flight " + f.id + ": option misses its path entry FCA");
    int lag = instance.travel_periods(path->entry_fca, path->nodes.front());
    int t_pca = instance.grid.period_of(*entry_arr) + lag;
    if (t_pca < 0 || t_pca >= T)
      throw std::runtime_error("flight " + f.id + ": first-PCA arrival outside the padded horizon");
    dm.by_path.at(path->id)[t_pca] += 1;
    dm.by_path_stage.at(path->id)[stage][t_pca] += 1;
  }
  return dm;
}

SplitRatios derive_split_ratios(const std::vector<Flight>& flights, const Instance& instance) {
  const int T = instance.grid.total_periods();
  SplitRatios ratios(instance.arcs.size());

  // Tally scheduled traffic leaving each resource per period per successor.
  // A flight "leaves" a resource in the period it crosses it; the successor
  // is the next resource along its preferred route.
  std::map<std::pair<std::string, std::string>, std::vector<double>> counts;
  std::map<std::string, std::vector<double>> totals;
  for (size_t i = 0; i < instance.arcs.size(); ++i) {
    counts[{instance.arcs[i].from, instance.arcs[i].to}].assign(T, 0.0);
  }
  for (const auto& r : instance.resources) totals[r.id].assign(T, 0.0);

  auto tally = [&](const std::string& from, const std::string& to, int period) {
    if (period < 0 || period >= T) return;
    auto it = counts.find({from, to});
    if (it == counts.end()) return;
    it->second[period] += 1.0;
    totals[from][period] += 1.0;
  };

  for (const auto& f : flights) {
    if (f.exempt) continue;
    const TrajectoryOption& opt = f.preferred();
    const Path* path = instance.path(opt.path_id);
    if (!path) continue;

    // FCA chain: consecutive crossings, then the hand-off into the first PCA.
    const auto& xs = opt.fca_crossings;
    for (size_t i = 0; i + 1 < xs.size(); ++i)
      tally(xs[i].first, xs[i + 1].first, instance.grid.period_of(xs[i].second));
    auto entry_arr = opt.arrival_at(path->entry_fca);
    if (entry_arr)
      tally(path->entry_fca, path->nodes.front(), instance.grid.period_of(*entry_arr));

    // PCA chain: each node hands off to the next at the unimpeded crossing
    // period of the upstream node.
    if (entry_arr) {
      int t = instance.grid.period_of(*entry_arr) +
              instance.travel_periods(path->entry_fca, path->nodes.front());
      for (size_t i = 0; i + 1 < path->nodes.size(); ++i) {
        tally(path->nodes[i], path->nodes[i + 1], t);
        t += instance.travel_periods(path->nodes[i], path->nodes[i + 1]);
      }
    }
  }

  for (size_t i = 0; i < instance.arcs.size(); ++i) {
    const auto& a = instance.arcs[i];
    int out_degree = static_cast<int>(instance.arcs_out(a.from).size());
    ratios[i].assign(T, 0.0);
    for (int t = 0; t < T; ++t) {
      double total = totals[a.from][t];
      if (total > 0.0)
        ratios[i][t] = counts[{a.from, a.to}][t] / total;
      else
        ratios[i][t] = 1.0 / out_degree;
    }
  }
  return ratios;
}

SplitRatios stored_split_ratios(const Instance& instance) {
  SplitRatios out;
  out.reserve(instance.arcs.size());
  for (const auto& a : instance.arcs) out.push_back(a.split_ratio);
  return out;
}

}  // namespace ctop
