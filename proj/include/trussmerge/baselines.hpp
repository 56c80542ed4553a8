#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trussmerge/batman.hpp"
#include "trussmerge/candidates.hpp"
#include "trussmerge/graph.hpp"

namespace trussmerge {

/// Exhaustive routines refuse graphs with more live nodes than this.
inline constexpr std::size_t kExhaustiveNodeLimit = 200;

struct BestMerger {
  NodePair pair{};
  std::size_t size = 0;
};

/// Exact argmax of |E(T_k)| over every single merger of two live nodes, by
/// merging and re-decomposing. Ties go to the smaller pair. Returns nullopt
/// for graphs with fewer than two nodes; throws a guard error above
/// kExhaustiveNodeLimit nodes.
std::optional<BestMerger> brute_force_best_merger(const Graph& g, int k, unsigned threads = 0);

/// Greedy over all node pairs, `budget` rounds. Uses k, budget, threads and
/// filter from cfg.
MergerPlan naive_greedy(const Graph& g, const RunConfig& cfg);

/// Uniform sample of n_c pairs from inside x inside and inside x pruned
/// outside.
MergerPlan baseline_rd(const Graph& g, const RunConfig& cfg);
/// IOMs ranked by the number of new edges into the (k-1)-truss.
MergerPlan baseline_ne(const Graph& g, const RunConfig& cfg);
/// IIMs and IOMs ranked by the exact change in the triangle count of the
/// (k-1)-truss node set.
MergerPlan baseline_nt(const Graph& g, const RunConfig& cfg);

std::vector<CandidateMerger> rd_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_c, const ConstraintFilter& filter,
                                           std::mt19937_64& rng);
std::vector<CandidateMerger> ne_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                           const ConstraintFilter& filter);
std::vector<CandidateMerger> nt_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                           const ConstraintFilter& filter);

/// Triangles with all nodes inside the (k-1)-truss node set S, after merging
/// v2 into v1 (v1 in S), minus the same count before.
long triangle_gain(const CandidateContext& ctx, NodeId v1, NodeId v2);

/// Set-cover style instance used to build the reduction graph. Elements are
/// numbered 1..element_count.
struct FixtureSpec {
  std::vector<std::vector<int>> sets;
  int element_count = 0;
  int k = 4;
  int d = 1;
};

struct Fixture {
  Graph graph;
  /// (s_i1, s_i2) for each set, in input order.
  std::vector<NodePair> set_pairs;
};

/// Per element j: nodes t_{jp1}, t_{jp2} (p = 1..d) with edges
/// (t_{jp1}, t_{jp'2}) for p != p'. Per set i: s_i1 joined to every t_{jp1}
/// and s_i2 to every t_{jp2}, for j in the set. k-3 r-nodes joined to all
/// t-nodes.
Fixture hardness_fixture(const FixtureSpec& spec);

struct NonsubmodularityWitness {
  Graph graph;
  int k = 5;
  int d = 0;
  std::vector<NodePair> x_set;
  std::vector<NodePair> y_set;
  NodePair x{};
};

/// Smallest d for which the default witness holds (found by search, see the
/// witness tests).
inline constexpr int kWitnessMinimalD = 4;

/// Fixture over S1 = {1,2}, S2 = {2,3}, S3 = {3,4}, built for k = 4 and
/// evaluated at k = 5. X = {(s11,s12)}, Y = X + {(s21,s22)}, x = (s31,s32).
NonsubmodularityWitness nonsubmodularity_witness(int d = kWitnessMinimalD);

}  // namespace trussmerge
