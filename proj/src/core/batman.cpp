#include "trussmerge/batman.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <string>

#include "parallel.hpp"
#include "rounds.hpp"
#include "trussmerge/baselines.hpp"
#include "trussmerge/error.hpp"

namespace trussmerge {

namespace {

constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::kBm, "BM"}, {Method::kEq, "EQ"}, {Method::kIi, "II"}, {Method::kIo, "IO"},
    {Method::kRd, "RD"}, {Method::kNe, "NE"}, {Method::kNt, "NT"}, {Method::kNaive, "NAIVE"},
};

}  // namespace

const char* method_name(Method m) noexcept {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& [method, label] : kMethodNames) {
    if (upper == label) return method;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  require_k(k);
  if (budget == 0) throw DomainError("budget must be at least 1");
  if (n_c == 0) throw DomainError("n_c must be at least 1");
  if (n_i == 0) throw DomainError("n_i must be at least 1");
  if (n_o == 0) throw DomainError("n_o must be at least 1");
}

std::vector<NodePair> MergerPlan::pairs() const {
  std::vector<NodePair> out;
  for (const auto& s : steps) {
    if (!s.skipped) out.push_back(s.pair);
  }
  return out;
}

std::size_t objective(const Graph& g, int k, std::span<const NodePair> pairs) {
  require_k(k);
  if (pairs.empty()) return k_truss_size(g, k);
  return k_truss_size(merge_all(g, pairs).graph, k);
}

std::size_t adaptive_update(std::size_t n_io, MergerKind winner, std::size_t n_c, std::size_t b) {
  if (b == 0) throw DomainError("budget must be at least 1");
  const std::size_t step = n_c / b;
  if (winner == MergerKind::kIom) {
    const std::size_t cap = (n_c * (b - 1) + b - 1) / b;
    return std::min(n_io + step, cap);
  }
  return std::max(n_io > step ? n_io - step : 0, step);
}

bool evaluation_before(const EvaluatedCandidate& a, const EvaluatedCandidate& b) noexcept {
  if (a.size_after != b.size_after) return a.size_after > b.size_after;
  if (a.merger.v1 != b.merger.v1) return a.merger.v1 < b.merger.v1;
  return a.merger.v2 < b.merger.v2;
}

namespace detail {

MergerPlan run_rounds(const Graph& g, const RunConfig& cfg, const CandidateSource& source,
                      const LoopOptions& options) {
  cfg.validate();
  MergerPlan plan;
  Graph current = g;
  std::size_t n_io = options.pinned_n_io.value_or(cfg.n_c / 2);
  const bool track_n_io = options.adaptive || options.pinned_n_io.has_value();

  for (std::size_t round = 0; round < cfg.budget; ++round) {
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    TrussDecomposition d = truss_decompose(current);
    const std::size_t size_now = d.truss_size(cfg.k);
    if (round == 0) plan.initial_size = size_now;
    NodePartition p = partition_nodes(current, d, cfg.k);
    std::vector<NodeId> pruned = prune_outside_maximal(p.outside, p.inside_neighbors);
    CandidateContext ctx(current, d, p);
    RoundView view{current, d, p, pruned, ctx, round};

    std::vector<CandidateMerger> candidates = source(view, n_io);

    MergerStep step;
    if (track_n_io) step.n_io = n_io;
    step.inside_nodes = p.inside.size();
    step.pruned_outside = pruned.size();
    if (candidates.empty()) {
      // The graph cannot change any more, so neither can later rounds.
      step.skipped = true;
      step.size_after = size_now;
      step.seconds = elapsed();
      while (plan.steps.size() < cfg.budget) plan.steps.push_back(step);
      break;
    }

    PostMergerEvaluator evaluator(current, d, cfg.k);
    std::vector<EvaluatedCandidate> evaluated(candidates.size());
    parallel_for(candidates.size(), cfg.threads, [&](std::size_t i) {
      evaluated[i] = {candidates[i], evaluator.size_after(candidates[i].v1, candidates[i].v2)};
    });
    const EvaluatedCandidate best = *std::min_element(evaluated.begin(), evaluated.end(), evaluation_before);
    if (!cfg.allow_no_op && best.size_after <= size_now) break;

    step.pair = {best.merger.v1, best.merger.v2};
    step.kind = best.merger.kind;
    step.candidates = evaluated.size();
    step.size_after = best.size_after;
    if (cfg.record_candidates) step.evaluated = std::move(evaluated);
    current.merge_into(best.merger.v1, best.merger.v2);
    step.seconds = elapsed();
    plan.steps.push_back(std::move(step));

    if (options.adaptive && round + 1 < cfg.budget) {
      n_io = adaptive_update(n_io, best.merger.kind, cfg.n_c, cfg.budget);
    }
  }

  plan.final_size = plan.initial_size;
  for (const auto& s : plan.steps) plan.final_size = s.size_after;
  return plan;
}

}  // namespace detail

MergerPlan batman(const Graph& g, const RunConfig& cfg) {
  detail::LoopOptions options;
  switch (cfg.method) {
    case Method::kBm: options.adaptive = true; break;
    case Method::kEq: options.pinned_n_io = cfg.n_c / 2; break;
    case Method::kIi: options.pinned_n_io = 0; break;
    case Method::kIo: options.pinned_n_io = cfg.n_c; break;
    default: throw DomainError(std::string("batman does not run method ") + method_name(cfg.method));
  }
  auto source = [&cfg](const detail::RoundView& view, std::size_t n_io) {
    std::vector<CandidateMerger> out;
    if (n_io > 0) {
      out = find_iom_candidates(view.context, view.pruned_outside, cfg.n_i, cfg.n_o, n_io, cfg.filter,
                                cfg.mode);
    }
    if (n_io < cfg.n_c) {
      auto iim = find_iim_candidates(view.context, cfg.n_i, cfg.n_c - n_io, cfg.filter, cfg.mode);
      out.insert(out.end(), iim.begin(), iim.end());
    }
    return out;
  };
  return detail::run_rounds(g, cfg, source, options);
}

MergerPlan maximize(const Graph& g, const RunConfig& cfg) {
  switch (cfg.method) {
    case Method::kRd: return baseline_rd(g, cfg);
    case Method::kNe: return baseline_ne(g, cfg);
    case Method::kNt: return baseline_nt(g, cfg);
    case Method::kNaive: return naive_greedy(g, cfg);
    default: return batman(g, cfg);
  }
}

}  // namespace trussmerge
