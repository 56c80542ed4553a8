#include "trussmerge/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>

#include "parallel.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/error.hpp"

namespace trussmerge {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sources are split into this many fixed blocks whose partial sums are added
// in block order, so results do not depend on the thread count.
constexpr std::size_t kSourceBlocks = 64;

struct Dense {
  std::vector<NodeId> ids;              // local -> NodeId
  std::vector<std::uint32_t> local;     // NodeId -> local
  Eigen::MatrixXd adjacency;
};

Dense dense_adjacency(const Graph& g) {
  Dense out;
  out.ids = g.nodes();
  out.local.assign(g.id_bound(), UINT32_MAX);
  for (std::size_t i = 0; i < out.ids.size(); ++i) out.local[out.ids[i]] = static_cast<std::uint32_t>(i);
  const auto n = static_cast<Eigen::Index>(out.ids.size());
  out.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    out.adjacency(out.local[e.u], out.local[e.v]) = 1.0;
    out.adjacency(out.local[e.v], out.local[e.u]) = 1.0;
  }
  return out;
}

Eigen::VectorXd adjacency_spectrum(const Graph& g) {
  Dense d = dense_adjacency(g);
  if (d.ids.empty()) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d.adjacency, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::kInternal, "adjacency eigensolve failed");
  return solver.eigenvalues();  // ascending
}

double gap_from(const Eigen::VectorXd& ev) {
  const auto n = ev.size();
  return n < 2 ? 0.0 : ev(n - 1) - ev(n - 2);
}

double nc_from(const Eigen::VectorXd& ev) {
  const auto n = ev.size();
  if (n == 0) return 0.0;
  const double top = ev(n - 1);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) sum += std::exp(ev(i) - top);
  return top + std::log(sum / static_cast<double>(n));
}

// BFS distances from s over live nodes; -1 for unreachable.
void bfs(const Graph& g, NodeId s, std::vector<int>& dist, std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  dist[s] = 0;
  queue.push_back(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
}

struct EdgeIndex {
  std::vector<std::size_t> offset;  // by NodeId, into the neighbor lists
  std::vector<std::uint32_t> id;    // edge id for each adjacency slot
};

EdgeIndex index_edges(const Graph& g, const std::vector<Edge>& edges) {
  EdgeIndex idx;
  idx.offset.assign(g.id_bound() + 1, 0);
  for (NodeId v = 0; v < g.id_bound(); ++v) {
    idx.offset[v + 1] = idx.offset[v] + (g.contains(v) ? g.degree(v) : 0);
  }
  idx.id.assign(idx.offset.back(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto set_slot = [&](NodeId a, NodeId b) {
      auto nb = g.neighbors(a);
      auto pos = std::lower_bound(nb.begin(), nb.end(), b) - nb.begin();
      idx.id[idx.offset[a] + static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(e);
    };
    set_slot(edges[e].u, edges[e].v);
    set_slot(edges[e].v, edges[e].u);
  }
  return idx;
}

}  // namespace

const char* metric_name(MetricId m) noexcept {
  switch (m) {
    case MetricId::kVb: return "VB";
    case MetricId::kEb: return "EB";
    case MetricId::kEr: return "ER";
    case MetricId::kSg: return "SG";
    case MetricId::kNc: return "NC";
    case MetricId::kAd: return "AD";
    case MetricId::kTs: return "TS";
    case MetricId::kLc: return "LC";
  }
  return "?";
}

std::optional<MetricId> parse_metric(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (MetricId m : kAllMetrics) {
    if (upper == metric_name(m)) return m;
  }
  return std::nullopt;
}

bool higher_is_better(MetricId m) noexcept {
  switch (m) {
    case MetricId::kVb:
    case MetricId::kEb:
    case MetricId::kEr:
    case MetricId::kAd: return false;
    default: return true;
  }
}

Betweenness betweenness(const Graph& g, unsigned threads) {
  const std::vector<Edge> edges = g.edges();
  const EdgeIndex eidx = index_edges(g, edges);
  const std::vector<NodeId> sources = g.nodes();
  const std::size_t n = g.id_bound();

  std::vector<Betweenness> partial(kSourceBlocks);
  detail::parallel_for(kSourceBlocks, threads, [&](std::size_t block) {
    Betweenness& acc = partial[block];
    acc.vertex.assign(n, 0.0);
    acc.edge.assign(edges.size(), 0.0);
    std::vector<int> dist(n, -1);
    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    std::vector<NodeId> order;
    const std::size_t begin = sources.size() * block / kSourceBlocks;
    const std::size_t end = sources.size() * (block + 1) / kSourceBlocks;
    for (std::size_t si = begin; si < end; ++si) {
      const NodeId s = sources[si];
      for (NodeId v : order) {
        dist[v] = -1;
        sigma[v] = 0.0;
        delta[v] = 0.0;
      }
      order.clear();
      dist[s] = 0;
      sigma[s] = 1.0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        NodeId u = order[head];
        for (NodeId w : g.neighbors(u)) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            order.push_back(w);
          }
          if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
        }
      }
      for (std::size_t i = order.size(); i-- > 1;) {
        const NodeId w = order[i];
        auto nb = g.neighbors(w);
        for (std::size_t j = 0; j < nb.size(); ++j) {
          const NodeId u = nb[j];
          if (dist[u] != dist[w] - 1) continue;
          const double c = sigma[u] / sigma[w] * (1.0 + delta[w]);
          acc.edge[eidx.id[eidx.offset[w] + j]] += c;
          delta[u] += c;
        }
        acc.vertex[w] += delta[w];
      }
    }
  });

  Betweenness total;
  total.vertex.assign(n, 0.0);
  total.edge.assign(edges.size(), 0.0);
  for (const auto& p : partial) {
    for (std::size_t v = 0; v < n; ++v) total.vertex[v] += p.vertex[v];
    for (std::size_t e = 0; e < edges.size(); ++e) total.edge[e] += p.edge[e];
  }
  // Every unordered pair was counted from both ends.
  for (double& x : total.vertex) x /= 2.0;
  for (double& x : total.edge) x /= 2.0;
  return total;
}

double avg_vertex_betweenness(const Graph& g, unsigned threads) {
  if (g.node_count() == 0) return 0.0;
  Betweenness b = betweenness(g, threads);
  double sum = 0.0;
  for (NodeId v : g.nodes()) sum += b.vertex[v];
  return sum / static_cast<double>(g.node_count());
}

double avg_edge_betweenness(const Graph& g, unsigned threads) {
  if (g.edge_count() == 0) return 0.0;
  Betweenness b = betweenness(g, threads);
  double sum = 0.0;
  for (double x : b.edge) sum += x;
  return sum / static_cast<double>(g.edge_count());
}

double effective_resistance_total(const Graph& g) {
  if (!is_connected(g)) throw DomainError("effective resistance is infinite on a disconnected graph");
  Dense d = dense_adjacency(g);
  const auto n = static_cast<Eigen::Index>(d.ids.size());
  if (n < 2) return 0.0;
  Eigen::MatrixXd lap = -d.adjacency;
  for (Eigen::Index i = 0; i < n; ++i) lap(i, i) = d.adjacency.row(i).sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::kInternal, "Laplacian eigensolve failed");
  const Eigen::VectorXd& mu = solver.eigenvalues();
  double sum = 0.0;
  for (Eigen::Index i = 1; i < n; ++i) sum += 1.0 / mu(i);  // mu(0) is the zero eigenvalue
  return static_cast<double>(n) * sum;
}

double spectral_gap(const Graph& g) { return gap_from(adjacency_spectrum(g)); }

double natural_connectivity(const Graph& g) { return nc_from(adjacency_spectrum(g)); }

double average_distance(const Graph& g) {
  std::vector<int> dist(g.id_bound(), -1);
  std::vector<NodeId> queue;
  double total = 0.0;
  std::size_t pairs = 0;
  for (NodeId s : g.nodes()) {
    bfs(g, s, dist, queue);
    for (NodeId t : queue) {
      if (t > s) {
        total += dist[t];
        ++pairs;
      }
    }
  }
  return pairs == 0 ? 0.0 : total / static_cast<double>(pairs);
}

double transitivity(const Graph& g) {
  double closed = 0.0;
  double triads = 0.0;
  for (NodeId v : g.nodes()) {
    const double deg = static_cast<double>(g.degree(v));
    triads += deg * (deg - 1.0) / 2.0;
    for (NodeId u : g.neighbors(v)) {
      if (u > v) closed += static_cast<double>(g.support(v, u));
    }
  }
  // Each triangle is seen once per edge, i.e. three times, and closes three
  // triads.
  return triads == 0.0 ? 0.0 : closed / triads;
}

double avg_local_clustering(const Graph& g) {
  if (g.node_count() == 0) return 0.0;
  double sum = 0.0;
  for (NodeId v : g.nodes()) {
    const std::size_t deg = g.degree(v);
    if (deg < 2) continue;
    std::size_t links = 0;
    for (NodeId u : g.neighbors(v)) links += intersection_size(g.neighbors(v), g.neighbors(u));
    sum += static_cast<double>(links) / static_cast<double>(deg * (deg - 1));
  }
  return sum / static_cast<double>(g.node_count());
}

double metric_value(const Graph& g, MetricId m, unsigned threads) {
  switch (m) {
    case MetricId::kVb: return avg_vertex_betweenness(g, threads);
    case MetricId::kEb: return avg_edge_betweenness(g, threads);
    case MetricId::kEr: return is_connected(g) ? effective_resistance_total(g) : kNaN;
    case MetricId::kSg: return spectral_gap(g);
    case MetricId::kNc: return natural_connectivity(g);
    case MetricId::kAd: return average_distance(g);
    case MetricId::kTs: return transitivity(g);
    case MetricId::kLc: return avg_local_clustering(g);
  }
  return kNaN;
}

std::optional<double> pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0 || !std::isfinite(sxy)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// All requested metrics, sharing the betweenness pass and the adjacency
// spectrum between the metrics that need them.
std::vector<double> metric_values(const Graph& g, std::span<const MetricId> metrics, unsigned threads) {
  std::vector<double> out;
  std::optional<Betweenness> bc;
  std::optional<Eigen::VectorXd> spectrum;
  for (MetricId m : metrics) {
    switch (m) {
      case MetricId::kVb:
      case MetricId::kEb: {
        if (!bc) bc = betweenness(g, threads);
        double sum = 0.0;
        std::size_t count = 0;
        if (m == MetricId::kVb) {
          for (NodeId v : g.nodes()) sum += bc->vertex[v];
          count = g.node_count();
        } else {
          for (double x : bc->edge) sum += x;
          count = g.edge_count();
        }
        out.push_back(count == 0 ? 0.0 : sum / static_cast<double>(count));
        break;
      }
      case MetricId::kSg:
      case MetricId::kNc:
        if (!spectrum) spectrum = adjacency_spectrum(g);
        out.push_back(m == MetricId::kSg ? gap_from(*spectrum) : nc_from(*spectrum));
        break;
      default: out.push_back(metric_value(g, m, threads));
    }
  }
  return out;
}

bool improves_on(MetricId m, double candidate, double incumbent) {
  if (std::isnan(candidate)) return false;
  if (std::isnan(incumbent)) return true;
  return higher_is_better(m) ? candidate > incumbent : candidate < incumbent;
}

std::vector<std::optional<double>> correlations(const StudyTrace& trace, bool core) {
  std::vector<std::optional<double>> out;
  for (std::size_t mi = 0; mi < trace.metrics.size(); ++mi) {
    std::vector<double> xs, ys;
    for (const auto& row : trace.rows) {
      const auto& size = core ? row.core_size : row.truss_size;
      if (!size || !std::isfinite(row.values[mi])) continue;
      xs.push_back(static_cast<double>(*size));
      ys.push_back(row.values[mi]);
    }
    out.push_back(pearson_r(xs, ys));
  }
  return out;
}

}  // namespace

StudyTrace greedy_improve(const Graph& g, MetricId target, StudyOp op, std::size_t rounds,
                          std::span<const MetricId> record, unsigned threads) {
  StudyTrace trace;
  trace.metrics.assign(record.begin(), record.end());
  Graph current = g;
  trace.rows.push_back({"baseline", std::nullopt, metric_values(current, record, 1), std::nullopt, std::nullopt});

  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<NodePair> options;
    std::vector<NodeId> nodes = current.nodes();
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) {
        if (op == StudyOp::kMerge || !current.has_edge(nodes[a], nodes[b])) options.emplace_back(nodes[a], nodes[b]);
      }
    }
    if (options.empty()) break;
    std::vector<double> scores(options.size());
    detail::parallel_for(options.size(), threads, [&](std::size_t i) {
      Graph trial = current;
      if (op == StudyOp::kMerge) {
        trial.merge_into(options[i].first, options[i].second);
      } else {
        trial.add_edge(options[i].first, options[i].second);
      }
      scores[i] = metric_value(trial, target, 1);
    });
    std::size_t best = options.size();
    for (std::size_t i = 0; i < options.size(); ++i) {
      if (best == options.size() ? !std::isnan(scores[i]) : improves_on(target, scores[i], scores[best])) best = i;
    }
    if (best == options.size()) break;
    auto [u, v] = options[best];
    StudyRow row;
    row.pair = std::make_pair(current.label(u), current.label(v));
    if (op == StudyOp::kMerge) {
      current.merge_into(u, v);
      row.operation = "merge";
    } else {
      current.add_edge(u, v);
      row.operation = "add";
    }
    row.values = metric_values(current, record, 1);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

StudyTrace correlation_study(const Graph& g, const RunConfig& cfg, std::size_t rounds,
                             std::span<const MetricId> record) {
  StudyTrace trace;
  trace.metrics.assign(record.begin(), record.end());
  Graph current = g;
  auto snapshot = [&](std::string op, std::optional<std::pair<std::string, std::string>> pair) {
    StudyRow row;
    row.operation = std::move(op);
    row.pair = std::move(pair);
    row.values = metric_values(current, record, cfg.threads);
    row.truss_size = k_truss_size(current, cfg.k);
    row.core_size = core_decompose(current).k_core_nodes(cfg.k + 1).size();
    trace.rows.push_back(std::move(row));
  };
  snapshot("baseline", std::nullopt);
  if (rounds > 0) {
    RunConfig run = cfg;
    run.budget = rounds;
    MergerPlan plan = maximize(g, run);
    for (const auto& step : plan.steps) {
      if (step.skipped) continue;
      auto labels = std::make_pair(current.label(step.pair.first), current.label(step.pair.second));
      current.merge_into(step.pair.first, step.pair.second);
      snapshot("merge", std::move(labels));
    }
  }
  trace.pearson_truss = correlations(trace, false);
  trace.pearson_core = correlations(trace, true);
  return trace;
}

}  // namespace trussmerge
