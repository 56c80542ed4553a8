#include "trussmerge/baselines.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "parallel.hpp"
#include "rounds.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/error.hpp"

namespace trussmerge {
namespace {

void guard_exhaustive(const Graph& g) {
  if (g.node_count() > kExhaustiveNodeLimit) {
    throw Error(ErrorCode::kGuard, "exhaustive search is limited to " + std::to_string(kExhaustiveNodeLimit) +
                                       " nodes, graph has " + std::to_string(g.node_count()));
  }
}

struct PairScore {
  NodePair pair{};
  std::size_t size = 0;
};

// All admitted pairs u < v of live nodes, each scored by full recomputation.
std::vector<PairScore> score_all_pairs(const Graph& g, int k, const ConstraintFilter& filter,
                                       unsigned threads) {
  std::vector<NodeId> nodes = g.nodes();
  std::vector<PairScore> scores;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (filter.admits(nodes[a], nodes[b])) scores.push_back({{nodes[a], nodes[b]}, 0});
    }
  }
  detail::parallel_for(scores.size(), threads, [&](std::size_t i) {
    scores[i].size = k_truss_size(g.merged(scores[i].pair.first, scores[i].pair.second), k);
  });
  return scores;
}

const PairScore* best_of(const std::vector<PairScore>& scores) {
  const PairScore* best = nullptr;
  for (const auto& s : scores) {
    if (!best || s.size > best->size) best = &s;  // scores are in ascending pair order
  }
  return best;
}

std::vector<std::uint64_t> floyd_sample(std::uint64_t population, std::uint64_t count, std::mt19937_64& rng) {
  count = std::min(count, population);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = population - count; j < population; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    if (!chosen.insert(pick(rng)).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

// Position `idx` of the pool laid out as all inside pairs (lexicographic)
// followed by inside x outside.
CandidateMerger pool_pair(std::span<const NodeId> inside, std::span<const NodeId> outside, std::uint64_t idx) {
  const std::uint64_t ni = inside.size();
  const std::uint64_t iim_count = ni * (ni - (ni > 0 ? 1 : 0)) / 2;
  CandidateMerger c;
  if (idx < iim_count) {
    for (std::uint64_t a = 0;; ++a) {
      std::uint64_t row = ni - 1 - a;
      if (idx < row) {
        c.v1 = inside[a];
        c.v2 = inside[a + 1 + idx];
        break;
      }
      idx -= row;
    }
    c.kind = MergerKind::kIim;
  } else {
    idx -= iim_count;
    c.v1 = inside[idx / outside.size()];
    c.v2 = outside[idx % outside.size()];
    c.kind = MergerKind::kIom;
  }
  return c;
}

std::size_t edges_within(const Graph& g, std::span<const NodeId> set, std::vector<std::uint8_t>& mark) {
  for (NodeId x : set) mark[x] = 1;
  std::size_t count = 0;
  for (NodeId x : set) {
    for (NodeId y : g.neighbors(x)) {
      if (y > x && mark[y]) ++count;
    }
  }
  for (NodeId x : set) mark[x] = 0;
  return count;
}

std::vector<NodeId> without(std::span<const NodeId> set, NodeId drop) {
  std::vector<NodeId> out;
  out.reserve(set.size());
  for (NodeId x : set) {
    if (x != drop) out.push_back(x);
  }
  return out;
}

}  // namespace

std::optional<BestMerger> brute_force_best_merger(const Graph& g, int k, unsigned threads) {
  require_k(k);
  guard_exhaustive(g);
  auto scores = score_all_pairs(g, k, ConstraintFilter{}, threads);
  const PairScore* best = best_of(scores);
  if (!best) return std::nullopt;
  return BestMerger{best->pair, best->size};
}

MergerPlan naive_greedy(const Graph& g, const RunConfig& cfg) {
  cfg.validate();
  guard_exhaustive(g);
  MergerPlan plan;
  Graph current = g;
  plan.initial_size = k_truss_size(current, cfg.k);
  plan.final_size = plan.initial_size;
  for (std::size_t round = 0; round < cfg.budget; ++round) {
    auto scores = score_all_pairs(current, cfg.k, cfg.filter, cfg.threads);
    const PairScore* best = best_of(scores);
    MergerStep step;
    if (!best) {
      step.skipped = true;
      step.size_after = plan.final_size;
      while (plan.steps.size() < cfg.budget) plan.steps.push_back(step);
      break;
    }
    if (!cfg.allow_no_op && best->size <= plan.final_size) break;
    // Orient the pair so an inside node survives, as in the candidate searches.
    TrussDecomposition d = truss_decompose(current);
    auto [u, v] = best->pair;
    const bool u_in = d.node_trussness(u) >= cfg.k - 1;
    const bool v_in = d.node_trussness(v) >= cfg.k - 1;
    if (!u_in && v_in) std::swap(u, v);
    step.pair = {u, v};
    step.kind = u_in && v_in ? MergerKind::kIim : (u_in || v_in ? MergerKind::kIom : MergerKind::kOom);
    step.candidates = scores.size();
    step.size_after = best->size;
    if (cfg.record_candidates) {
      for (const auto& s : scores) {
        CandidateMerger c;
        c.v1 = s.pair.first;
        c.v2 = s.pair.second;
        step.evaluated.push_back({c, s.size});
      }
    }
    plan.steps.push_back(std::move(step));
    current.merge_into(u, v);
    plan.final_size = best->size;
  }
  return plan;
}

std::vector<CandidateMerger> rd_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_c, const ConstraintFilter& filter,
                                           std::mt19937_64& rng) {
  std::span<const NodeId> inside = ctx.partition().inside;
  const std::uint64_t ni = inside.size();
  const std::uint64_t total = (ni > 0 ? ni * (ni - 1) / 2 : 0) + ni * pruned_outside.size();
  std::vector<CandidateMerger> out;
  if (total == 0) return out;
  if (!filter.active()) {
    for (std::uint64_t idx : floyd_sample(total, n_c, rng)) out.push_back(pool_pair(inside, pruned_outside, idx));
    return out;
  }
  std::vector<std::uint64_t> admitted;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    CandidateMerger c = pool_pair(inside, pruned_outside, idx);
    if (filter.admits(c.v1, c.v2)) admitted.push_back(idx);
  }
  for (std::uint64_t pos : floyd_sample(admitted.size(), n_c, rng)) {
    out.push_back(pool_pair(inside, pruned_outside, admitted[pos]));
  }
  return out;
}

std::vector<CandidateMerger> ne_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                           const ConstraintFilter& filter) {
  std::vector<NodeId> inside = top_inside_nodes(ctx, n_i);
  std::vector<NodeId> outside = top_outside_nodes(pruned_outside, ctx.partition().inside_neighbors, n_o);
  std::vector<CandidateMerger> out;
  for (NodeId vi : inside) {
    for (NodeId vo : outside) {
      if (!filter.admits(vi, vo)) continue;
      CandidateMerger c;
      c.v1 = vi;
      c.v2 = vo;
      c.kind = MergerKind::kIom;
      c.score = static_cast<long>(new_inside_neighbors(ctx, vi, vo).size());
      out.push_back(c);
    }
  }
  keep_top(out, n_c);
  return out;
}

long triangle_gain(const CandidateContext& ctx, NodeId v1, NodeId v2) {
  const Graph& g = ctx.graph();
  const NodePartition& p = ctx.partition();
  if (!p.is_inside(v1)) throw DomainError("node " + std::to_string(v1) + " is not an inside node");
  if (!g.contains(v2) || v1 == v2) throw DomainError("invalid merger partner " + std::to_string(v2));
  thread_local std::vector<std::uint8_t> mark;
  if (mark.size() < g.id_bound()) mark.resize(g.id_bound(), 0);

  const bool v2_inside = p.is_inside(v2);
  std::span<const NodeId> n1 = p.inside_nbrs(v1);
  std::span<const NodeId> n2 = p.inside_nbrs(v2);
  std::vector<NodeId> merged_nbrs;
  for (NodeId x : set_union(n1, n2)) {
    if (x != v1 && x != v2) merged_nbrs.push_back(x);
  }
  long after = static_cast<long>(edges_within(g, merged_nbrs, mark));
  long at_v1 = static_cast<long>(edges_within(g, without(n1, v2), mark));
  long at_v2 = v2_inside ? static_cast<long>(edges_within(g, without(n2, v1), mark)) : 0;
  long shared = v2_inside && g.has_edge(v1, v2) ? static_cast<long>(intersection_size(n1, n2)) : 0;
  return after - at_v1 - at_v2 - shared;
}

std::vector<CandidateMerger> nt_candidates(const CandidateContext& ctx, std::span<const NodeId> pruned_outside,
                                           std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                           const ConstraintFilter& filter) {
  std::vector<NodeId> inside = top_inside_nodes(ctx, n_i);
  std::vector<NodeId> outside = top_outside_nodes(pruned_outside, ctx.partition().inside_neighbors, n_o);
  std::vector<CandidateMerger> out;
  for (std::size_t a = 0; a < inside.size(); ++a) {
    for (std::size_t b = a + 1; b < inside.size(); ++b) {
      NodeId v1 = std::min(inside[a], inside[b]);
      NodeId v2 = std::max(inside[a], inside[b]);
      if (!filter.admits(v1, v2)) continue;
      out.push_back({v1, v2, MergerKind::kIim, triangle_gain(ctx, v1, v2), 0});
    }
  }
  for (NodeId vi : inside) {
    for (NodeId vo : outside) {
      if (!filter.admits(vi, vo)) continue;
      out.push_back({vi, vo, MergerKind::kIom, triangle_gain(ctx, vi, vo), 0});
    }
  }
  keep_top(out, n_c);
  return out;
}

MergerPlan baseline_rd(const Graph& g, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  auto source = [&](const detail::RoundView& view, std::size_t) {
    return rd_candidates(view.context, view.pruned_outside, cfg.n_c, cfg.filter, rng);
  };
  return detail::run_rounds(g, cfg, source, {});
}

MergerPlan baseline_ne(const Graph& g, const RunConfig& cfg) {
  auto source = [&](const detail::RoundView& view, std::size_t) {
    return ne_candidates(view.context, view.pruned_outside, cfg.n_i, cfg.n_o, cfg.n_c, cfg.filter);
  };
  return detail::run_rounds(g, cfg, source, {});
}

MergerPlan baseline_nt(const Graph& g, const RunConfig& cfg) {
  auto source = [&](const detail::RoundView& view, std::size_t) {
    return nt_candidates(view.context, view.pruned_outside, cfg.n_i, cfg.n_o, cfg.n_c, cfg.filter);
  };
  return detail::run_rounds(g, cfg, source, {});
}

Fixture hardness_fixture(const FixtureSpec& spec) {
  require_k(spec.k);
  if (spec.d < 1) throw DomainError("fixture width d must be at least 1");
  if (spec.element_count < 0) throw DomainError("element count must be non-negative");
  for (const auto& set : spec.sets) {
    for (int j : set) {
      if (j < 1 || j > spec.element_count) throw DomainError("set element " + std::to_string(j) + " out of range");
    }
  }
  Fixture fx;
  Graph& g = fx.graph;
  const int m = spec.element_count;
  const int d = spec.d;
  // t-node id for element j (1-based), copy p (1-based), side 1 or 2.
  std::vector<NodeId> t_ids(static_cast<std::size_t>(m) * d * 2);
  auto t_at = [&](int j, int p, int side) -> NodeId& {
    return t_ids[((static_cast<std::size_t>(j - 1) * d) + (p - 1)) * 2 + (side - 1)];
  };
  for (int j = 1; j <= m; ++j) {
    for (int p = 1; p <= d; ++p) {
      for (int side = 1; side <= 2; ++side) {
        t_at(j, p, side) = g.add_node("t" + std::to_string(j) + "_" + std::to_string(p) + "_" + std::to_string(side));
      }
    }
  }
  for (int j = 1; j <= m; ++j) {
    for (int p = 1; p <= d; ++p) {
      for (int q = 1; q <= d; ++q) {
        if (p != q) g.add_edge(t_at(j, p, 1), t_at(j, q, 2));
      }
    }
  }
  for (std::size_t i = 0; i < spec.sets.size(); ++i) {
    NodeId s1 = g.add_node("s" + std::to_string(i + 1) + "_1");
    NodeId s2 = g.add_node("s" + std::to_string(i + 1) + "_2");
    for (int j : spec.sets[i]) {
      for (int p = 1; p <= d; ++p) {
        g.add_edge(s1, t_at(j, p, 1));
        g.add_edge(s2, t_at(j, p, 2));
      }
    }
    fx.set_pairs.emplace_back(s1, s2);
  }
  for (int r = 1; r <= spec.k - 3; ++r) {
    NodeId rid = g.add_node("r" + std::to_string(r));
    for (NodeId t : t_ids) g.add_edge(rid, t);
  }
  return fx;
}

NonsubmodularityWitness nonsubmodularity_witness(int d) {
  FixtureSpec spec;
  spec.sets = {{1, 2}, {2, 3}, {3, 4}};
  spec.element_count = 4;
  spec.k = 4;
  spec.d = d;
  Fixture fx = hardness_fixture(spec);
  NonsubmodularityWitness w;
  w.graph = std::move(fx.graph);
  w.k = 5;
  w.d = d;
  w.x_set = {fx.set_pairs[0]};
  w.y_set = {fx.set_pairs[0], fx.set_pairs[1]};
  w.x = fx.set_pairs[2];
  return w;
}

}  // namespace trussmerge
