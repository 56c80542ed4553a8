#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trussmerge/candidates.hpp"
#include "trussmerge/graph.hpp"

namespace trussmerge {

/// BM is the adaptive algorithm; EQ, II and IO pin the IOM share of the
/// per-round candidate budget to half, zero and all of it. RD, NE and NT are
/// the ranking baselines, NAIVE is exhaustive greedy.
enum class Method { kBm, kEq, kIi, kIo, kRd, kNe, kNt, kNaive };

const char* method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name);

struct RunConfig {
  int k = 10;
  std::size_t budget = 10;
  std::size_t n_i = 100;
  std::size_t n_o = 50;
  std::size_t n_c = 10;
  Method method = Method::kBm;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  ConstraintFilter filter;
  HeuristicMode mode = HeuristicMode::kSemantic;
  /// When false, the run stops at the first round whose best candidate does
  /// not enlarge the truss.
  bool allow_no_op = true;
  /// Keep every evaluated candidate in the plan (tests and diagnostics).
  bool record_candidates = false;

  /// Throws DomainError on k < 3, budget or counts of zero.
  void validate() const;
};

struct EvaluatedCandidate {
  CandidateMerger merger;
  std::size_t size_after = 0;
};

struct MergerStep {
  NodePair pair{};  // (survivor, absorbed)
  MergerKind kind = MergerKind::kIom;
  std::optional<std::size_t> n_io;  // IOM share used this round (BM variants)
  std::size_t candidates = 0;       // number of evaluated candidates
  std::size_t inside_nodes = 0;
  std::size_t pruned_outside = 0;   // outside nodes left after pruning
  std::size_t size_after = 0;
  bool skipped = false;  // no candidate was available; budget still spent
  std::vector<EvaluatedCandidate> evaluated;
  double seconds = 0.0;  // wall time of the round
};

struct MergerPlan {
  std::size_t initial_size = 0;
  std::size_t final_size = 0;
  std::vector<MergerStep> steps;

  /// Executed pairs in order, skipped rounds left out.
  std::vector<NodePair> pairs() const;
  std::size_t increase() const noexcept {
    return final_size >= initial_size ? final_size - initial_size : 0;
  }
};

/// |E(T_k)| after applying `pairs` with merge_all.
std::size_t objective(const Graph& g, int k, std::span<const NodePair> pairs = {});

/// New IOM share after a round won by `winner`.
std::size_t adaptive_update(std::size_t n_io, MergerKind winner, std::size_t n_c, std::size_t b);

/// Runs BM, or the pinned variants EQ/II/IO, depending on cfg.method.
MergerPlan batman(const Graph& g, const RunConfig& cfg);

/// Dispatches on cfg.method to batman or one of the baselines.
MergerPlan maximize(const Graph& g, const RunConfig& cfg);

/// Execution order among equally good evaluations: larger size, then smaller
/// (v1, v2).
bool evaluation_before(const EvaluatedCandidate& a, const EvaluatedCandidate& b) noexcept;

}  // namespace trussmerge
