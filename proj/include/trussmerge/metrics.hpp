#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trussmerge/batman.hpp"
#include "trussmerge/graph.hpp"

namespace trussmerge {

enum class MetricId { kVb, kEb, kEr, kSg, kNc, kAd, kTs, kLc };

inline constexpr MetricId kAllMetrics[] = {MetricId::kVb, MetricId::kEb, MetricId::kEr, MetricId::kSg,
                                           MetricId::kNc, MetricId::kAd, MetricId::kTs, MetricId::kLc};
/// The five robustness measures used by the merge-vs-add and correlation
/// studies.
inline constexpr MetricId kRobustnessMetrics[] = {MetricId::kVb, MetricId::kEb, MetricId::kEr, MetricId::kSg,
                                                  MetricId::kNc};

const char* metric_name(MetricId m) noexcept;
std::optional<MetricId> parse_metric(std::string_view name);
/// VB, EB, ER and AD improve downwards, the rest upwards.
bool higher_is_better(MetricId m) noexcept;

struct Betweenness {
  std::vector<double> vertex;  // by NodeId; endpoints excluded, each unordered pair once
  std::vector<double> edge;    // parallel to Graph::edges()
};

/// Exact Brandes accumulation over all sources. Unreachable pairs add
/// nothing.
Betweenness betweenness(const Graph& g, unsigned threads = 1);
double avg_vertex_betweenness(const Graph& g, unsigned threads = 1);
double avg_edge_betweenness(const Graph& g, unsigned threads = 1);

/// Kirchhoff index n * sum 1/mu_i over the non-zero Laplacian eigenvalues.
/// Throws DomainError for disconnected graphs.
double effective_resistance_total(const Graph& g);
/// lambda_1 - lambda_2 of the adjacency matrix.
double spectral_gap(const Graph& g);
/// ln(mean(exp(lambda_i))) over the adjacency spectrum.
double natural_connectivity(const Graph& g);
/// Mean shortest-path length over connected unordered pairs (0 if none).
double average_distance(const Graph& g);
double transitivity(const Graph& g);
/// Mean local clustering; nodes of degree < 2 count as 0.
double avg_local_clustering(const Graph& g);

/// NaN when the metric is undefined for g (ER on a disconnected graph).
double metric_value(const Graph& g, MetricId m, unsigned threads = 1);

/// G(n, p): every pair independently.
Graph gen_er(std::size_t n, double p, std::uint64_t seed);
/// Ring lattice with k_nbrs/2 neighbors per side, each lattice edge rewired
/// with probability p.
Graph gen_ws(std::size_t n, std::size_t k_nbrs, double p, std::uint64_t seed);
/// Holme-Kim powerlaw cluster graph: preferential attachment of m_attach
/// edges per node, each followed by a triad-closing step with probability p.
Graph gen_hk(std::size_t n, std::size_t m_attach, double p, std::uint64_t seed);

/// Copy of the largest connected component (ties: the one holding the
/// smallest id), ids renumbered, labels kept.
Graph largest_component(const Graph& g);
bool is_connected(const Graph& g);

/// Sample correlation; nullopt for mismatched lengths, fewer than two
/// points or zero variance.
std::optional<double> pearson_r(std::span<const double> xs, std::span<const double> ys);

enum class StudyOp { kMerge, kAddEdge };

struct StudyRow {
  std::string operation;  // "baseline", "merge" or "add"
  std::optional<std::pair<std::string, std::string>> pair;  // external labels
  std::vector<double> values;                               // parallel to StudyTrace::metrics
  std::optional<std::size_t> truss_size;
  std::optional<std::size_t> core_size;  // nodes of the (k+1)-core
};

struct StudyTrace {
  std::vector<MetricId> metrics;
  std::vector<StudyRow> rows;
  /// Correlation of truss size with each metric; empty unless truss sizes
  /// were recorded.
  std::vector<std::optional<double>> pearson_truss;
  std::vector<std::optional<double>> pearson_core;
};

/// Each round tries every node pair (merge) or non-edge (add) and applies the
/// one that improves `target` most, ties to the smaller pair. Every row
/// records all of `record`.
StudyTrace greedy_improve(const Graph& g, MetricId target, StudyOp op, std::size_t rounds,
                          std::span<const MetricId> record, unsigned threads = 0);

/// Runs the maximizer for `rounds` mergers (cfg.budget is overridden) and
/// records truss size, (k+1)-core size and every metric after each step.
StudyTrace correlation_study(const Graph& g, const RunConfig& cfg, std::size_t rounds,
                             std::span<const MetricId> record);

}  // namespace trussmerge
