#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trussmerge/decomposition.hpp"
#include "trussmerge/graph.hpp"
#include "trussmerge/pruning.hpp"

namespace trussmerge {

/// kOom appears only in exhaustive plans; candidate searches never emit it.
enum class MergerKind { kIom, kIim, kOom };

const char* merger_kind_name(MergerKind kind) noexcept;

/// How the IOM/IIM scores interpret the printed pseudocode.
///
/// kSemantic counts only shell edges whose support actually changes.
/// kLiteral reproduces the pseudocode as printed: new neighbors are taken
/// against N(v; T_k), incident helpers are the union of inside
/// neighborhoods, and the IIM reward fires for any edge with both endpoints
/// outside the common neighborhood.
enum class HeuristicMode { kSemantic, kLiteral };

struct CandidateMerger {
  NodeId v1 = 0;  // survivor; always inside
  NodeId v2 = 0;
  MergerKind kind = MergerKind::kIom;
  long score = 0;
  long tiebreak = 0;  // |Z| for IOMs, 0 for IIMs

  friend bool operator==(const CandidateMerger&, const CandidateMerger&) = default;
};

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

/// Great-circle distance on a sphere of radius 6371 km.
double haversine_km(GeoPoint a, GeoPoint b);

/// Optional distance constraint on candidate pairs.
class ConstraintFilter {
 public:
  ConstraintFilter() = default;
  ConstraintFilter(std::vector<std::optional<GeoPoint>> coords, std::optional<double> threshold_km);

  /// Reads `label lat lon` lines; labels unknown to `g` are ignored.
  static ConstraintFilter from_file(const std::string& path, const Graph& g,
                                    std::optional<double> threshold_km);

  bool active() const noexcept { return threshold_km_.has_value(); }
  /// With a threshold set, a pair is admitted only if both endpoints have
  /// coordinates and lie within the threshold.
  bool admits(NodeId a, NodeId b) const;
  std::optional<GeoPoint> coordinate(NodeId v) const;
  std::optional<double> threshold_km() const noexcept { return threshold_km_; }

 private:
  std::vector<std::optional<GeoPoint>> coords_;
  std::optional<double> threshold_km_;
};

/// Per-snapshot neighborhoods shared by every scoring routine.
class CandidateContext {
 public:
  CandidateContext(const Graph& g, const TrussDecomposition& d, const NodePartition& p);

  const Graph& graph() const noexcept { return *graph_; }
  const TrussDecomposition& decomposition() const noexcept { return *decomposition_; }
  const NodePartition& partition() const noexcept { return *partition_; }
  int k() const noexcept { return partition_->k; }

  /// N(v; T_k)
  std::span<const NodeId> truss_nbrs(NodeId v) const { return truss_nbrs_.at(v); }
  /// N(v; T_{k-1})
  std::span<const NodeId> prev_truss_nbrs(NodeId v) const { return prev_truss_nbrs_.at(v); }
  /// Neighbors y with t(v, y) = k - 1.
  std::span<const NodeId> shell_nbrs(NodeId v) const { return shell_nbrs_.at(v); }
  const std::vector<Edge>& shell_edges() const noexcept { return shell_edges_; }

 private:
  const Graph* graph_;
  const TrussDecomposition* decomposition_;
  const NodePartition* partition_;
  std::vector<std::vector<NodeId>> truss_nbrs_;
  std::vector<std::vector<NodeId>> prev_truss_nbrs_;
  std::vector<std::vector<NodeId>> shell_nbrs_;
  std::vector<Edge> shell_edges_;
};

/// Inside neighbors of v not yet adjacent to v inside T_k.
std::vector<NodeId> incident_prospects(const CandidateContext& ctx, NodeId v);

/// Up to n_i inside nodes by descending incident-prospect count, ties by id.
std::vector<NodeId> top_inside_nodes(const CandidateContext& ctx, std::size_t n_i);

/// Up to n_o nodes of `pruned` by descending inside-neighbor count, ties by id.
std::vector<NodeId> top_outside_nodes(std::span<const NodeId> pruned,
                                      std::span<const std::vector<NodeId>> inside_nbrs,
                                      std::size_t n_o);

/// Z = (Ñ(v_o) ∪ Ñ(v_i)) \ (N(v_i; T_{k-1}) ∪ {v_i}).
std::vector<NodeId> new_inside_neighbors(const CandidateContext& ctx, NodeId v_i, NodeId v_o,
                                         HeuristicMode mode = HeuristicMode::kSemantic);

/// Shell edges gaining support once v_i is joined to every node of Z.
/// Returned sorted.
std::vector<Edge> phse(const CandidateContext& ctx, NodeId v_i, NodeId v_o,
                       HeuristicMode mode = HeuristicMode::kSemantic);

std::vector<CandidateMerger> find_iom_candidates(const CandidateContext& ctx,
                                                 std::span<const NodeId> pruned_outside,
                                                 std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                                 const ConstraintFilter& filter,
                                                 HeuristicMode mode = HeuristicMode::kSemantic);

/// Reward/penalty score of merging two inside nodes: -1 per collision inside
/// T_k, +1 per shell edge that gains support, -1 per shell edge that loses it.
long iim_score(const CandidateContext& ctx, NodeId v1, NodeId v2,
               HeuristicMode mode = HeuristicMode::kSemantic);

std::vector<CandidateMerger> find_iim_candidates(const CandidateContext& ctx, std::size_t n_i,
                                                 std::size_t n_c, const ConstraintFilter& filter,
                                                 HeuristicMode mode = HeuristicMode::kSemantic);

/// Ranking used for every top-n_c selection: score desc, tiebreak desc, then
/// (v1, v2) ascending.
bool candidate_before(const CandidateMerger& a, const CandidateMerger& b) noexcept;

/// Keeps the best n_c candidates in ranking order.
void keep_top(std::vector<CandidateMerger>& candidates, std::size_t n_c);

}  // namespace trussmerge
