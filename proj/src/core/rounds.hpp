#pragma once

// Round loop shared by the adaptive algorithm and the ranking baselines:
// decompose, partition, prune, ask a source for candidates, evaluate them on
// the restricted graph, execute the best one.

#include <functional>

#include "trussmerge/batman.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/pruning.hpp"

namespace trussmerge::detail {

struct RoundView {
  const Graph& graph;
  const TrussDecomposition& decomposition;
  const NodePartition& partition;
  const std::vector<NodeId>& pruned_outside;
  const CandidateContext& context;
  std::size_t round;
};

/// Candidates for one round. `n_io` is the IOM share for adaptive sources.
using CandidateSource = std::function<std::vector<CandidateMerger>(const RoundView&, std::size_t n_io)>;

struct LoopOptions {
  bool adaptive = false;  // update n_io after each round
  std::optional<std::size_t> pinned_n_io;
};

MergerPlan run_rounds(const Graph& g, const RunConfig& cfg, const CandidateSource& source,
                      const LoopOptions& options);

}  // namespace trussmerge::detail
