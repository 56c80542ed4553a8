#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trussmerge/batman.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/graph.hpp"
#include "trussmerge/metrics.hpp"

namespace trussmerge {

inline constexpr int kReportSchemaVersion = 1;

const char* version_string() noexcept;

struct ReportOptions {
  std::string dataset;     // echoed as given
  bool timings = false;    // wall times make reports differ run to run
  std::vector<int> truss_ks;  // per-k truss sizes of the input to include
};

/// JSON run report. Node ids in the plan are written as external labels.
std::string run_report_json(const Graph& g, const RunConfig& cfg, const MergerPlan& plan,
                            const ReportOptions& options);

/// Executed pairs of a run report, resolved against the graph it was run on.
std::vector<NodePair> plan_pairs_from_report(std::string_view json, const Graph& g);
/// `final_size` recorded in a run report.
std::size_t final_size_from_report(std::string_view json);

/// `k,nodes,edges` rows for each requested k, plus a kmax line.
void write_decompose_csv(std::ostream& out, const TrussDecomposition& d, std::span<const int> ks);
/// `u,v,trussness` with external labels.
void write_trussness_csv(std::ostream& out, const Graph& g, const TrussDecomposition& d);

struct CompareRow {
  Method method = Method::kBm;
  int k = 0;
  std::size_t trials = 1;
  std::size_t initial_size = 0;
  double mean_final_size = 0.0;
  double mean_increase = 0.0;
  double mean_seconds = 0.0;
};

/// Runs every method at every k. RD is averaged over `trials` seeds
/// (base.seed, base.seed + 1, ...); the others are deterministic and run once.
std::vector<CompareRow> run_compare(const Graph& g, const RunConfig& base, std::span<const Method> methods,
                                    std::span<const int> ks, std::size_t trials);
void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows, bool timings);

struct StudyLabel {
  std::string source;  // model name or dataset
  std::uint64_t seed = 0;
  std::string target;  // metric being optimized, or "truss"
  std::string op;
};

/// Header line; then write_study_csv rows for any number of traces.
void write_study_csv_header(std::ostream& out, std::span<const MetricId> metrics);
/// One row per trace row, then `pearson_truss` / `pearson_core` rows when
/// correlations were computed.
void write_study_csv(std::ostream& out, const StudyTrace& trace, const StudyLabel& label);

}  // namespace trussmerge
