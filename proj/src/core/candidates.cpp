#include "trussmerge/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "trussmerge/error.hpp"

namespace trussmerge {
namespace {

// Per-thread node marks, cleared by touched-list so that repeated scoring
// stays proportional to the neighborhoods involved.
class Marks {
 public:
  void reset(std::size_t n) {
    for (NodeId v : touched_) flags_[v] = 0;
    touched_.clear();
    if (flags_.size() < n) flags_.resize(n, 0);
  }
  void add(NodeId v, std::uint8_t bits) {
    if (flags_[v] == 0) touched_.push_back(v);
    flags_[v] |= bits;
  }
  std::uint8_t get(NodeId v) const { return flags_[v]; }

 private:
  std::vector<std::uint8_t> flags_;
  std::vector<NodeId> touched_;
};

Marks& scratch_marks() {
  thread_local Marks marks;
  return marks;
}

void require_inside(const CandidateContext& ctx, NodeId v) {
  if (!ctx.graph().contains(v)) throw DomainError("node " + std::to_string(v) + " is not in the graph");
  if (!ctx.partition().is_inside(v)) {
    throw DomainError("node " + std::to_string(v) + " is not an inside node");
  }
}

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

const char* merger_kind_name(MergerKind kind) noexcept {
  switch (kind) {
    case MergerKind::kIom: return "IOM";
    case MergerKind::kIim: return "IIM";
    case MergerKind::kOom: return "OOM";
  }
  return "?";
}

double haversine_km(GeoPoint a, GeoPoint b) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  double dlat = (b.lat - a.lat) * kRad;
  double dlon = (b.lon - a.lon) * kRad;
  double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

ConstraintFilter::ConstraintFilter(std::vector<std::optional<GeoPoint>> coords,
                                   std::optional<double> threshold_km)
    : coords_(std::move(coords)), threshold_km_(threshold_km) {
  if (threshold_km_ && !(*threshold_km_ >= 0.0)) throw DomainError("distance threshold must be non-negative");
}

ConstraintFilter ConstraintFilter::from_file(const std::string& path, const Graph& g,
                                             std::optional<double> threshold_km) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::optional<GeoPoint>> coords(g.id_bound());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string label;
    GeoPoint p;
    if (!(tokens >> label >> p.lat >> p.lon)) throw ParseError(line_no, "expected 'label lat lon'");
    if (g.has_label(label)) coords[g.id_of(label)] = p;
  }
  return ConstraintFilter(std::move(coords), threshold_km);
}

std::optional<GeoPoint> ConstraintFilter::coordinate(NodeId v) const {
  if (v >= coords_.size()) return std::nullopt;
  return coords_[v];
}

bool ConstraintFilter::admits(NodeId a, NodeId b) const {
  if (!threshold_km_) return true;
  auto pa = coordinate(a);
  auto pb = coordinate(b);
  if (!pa || !pb) return false;
  return haversine_km(*pa, *pb) <= *threshold_km_;
}

CandidateContext::CandidateContext(const Graph& g, const TrussDecomposition& d, const NodePartition& p)
    : graph_(&g), decomposition_(&d), partition_(&p) {
  const int k = p.k;
  const std::size_t n = g.id_bound();
  truss_nbrs_.assign(n, {});
  prev_truss_nbrs_.assign(n, {});
  shell_nbrs_.assign(n, {});
  auto edges = d.edges();
  auto truss = d.edge_trussness();
  // Canonical edge order keeps every per-node list sorted once both
  // directions are appended and sorted.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (truss[i] >= k) {
      truss_nbrs_[e.u].push_back(e.v);
      truss_nbrs_[e.v].push_back(e.u);
    }
    if (truss[i] >= k - 1) {
      prev_truss_nbrs_[e.u].push_back(e.v);
      prev_truss_nbrs_[e.v].push_back(e.u);
    }
    if (truss[i] == k - 1) {
      shell_nbrs_[e.u].push_back(e.v);
      shell_nbrs_[e.v].push_back(e.u);
      shell_edges_.push_back(e);
    }
  }
  for (auto* lists : {&truss_nbrs_, &prev_truss_nbrs_, &shell_nbrs_}) {
    for (auto& l : *lists) std::sort(l.begin(), l.end());
  }
}

std::vector<NodeId> incident_prospects(const CandidateContext& ctx, NodeId v) {
  require_inside(ctx, v);
  return set_difference(ctx.partition().inside_nbrs(v), ctx.truss_nbrs(v));
}

std::vector<NodeId> top_inside_nodes(const CandidateContext& ctx, std::size_t n_i) {
  const auto& inside = ctx.partition().inside;
  std::vector<std::pair<std::size_t, NodeId>> keyed;
  keyed.reserve(inside.size());
  for (NodeId v : inside) {
    std::size_t ip = ctx.partition().inside_nbrs(v).size() -
                     intersection_size(ctx.partition().inside_nbrs(v), ctx.truss_nbrs(v));
    keyed.emplace_back(ip, v);
  }
  auto by_rank = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::size_t take = std::min(n_i, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end(), by_rank);
  std::vector<NodeId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(keyed[i].second);
  return out;
}

std::vector<NodeId> top_outside_nodes(std::span<const NodeId> pruned,
                                      std::span<const std::vector<NodeId>> inside_nbrs,
                                      std::size_t n_o) {
  std::vector<std::pair<std::size_t, NodeId>> keyed;
  keyed.reserve(pruned.size());
  for (NodeId v : pruned) keyed.emplace_back(inside_nbrs[v].size(), v);
  auto by_rank = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::size_t take = std::min(n_o, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end(), by_rank);
  std::vector<NodeId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(keyed[i].second);
  return out;
}

std::vector<NodeId> new_inside_neighbors(const CandidateContext& ctx, NodeId v_i, NodeId v_o,
                                         HeuristicMode mode) {
  require_inside(ctx, v_i);
  if (!ctx.graph().contains(v_o)) throw DomainError("node " + std::to_string(v_o) + " is not in the graph");
  const auto& p = ctx.partition();
  std::vector<NodeId> both = set_union(p.inside_nbrs(v_o), p.inside_nbrs(v_i));
  std::span<const NodeId> existing =
      mode == HeuristicMode::kSemantic ? ctx.prev_truss_nbrs(v_i) : ctx.truss_nbrs(v_i);
  std::vector<NodeId> z = set_difference(both, existing);
  auto self = std::lower_bound(z.begin(), z.end(), v_i);
  if (self != z.end() && *self == v_i) z.erase(self);
  return z;
}

std::vector<Edge> phse(const CandidateContext& ctx, NodeId v_i, NodeId v_o, HeuristicMode mode) {
  const auto& g = ctx.graph();
  const auto& p = ctx.partition();
  std::vector<NodeId> z = new_inside_neighbors(ctx, v_i, v_o, mode);
  std::vector<Edge> helped;
  if (z.empty() || ctx.shell_edges().empty()) return helped;

  constexpr std::uint8_t kReach = 1;   // joined to v_i after the merge
  constexpr std::uint8_t kFresh = 2;   // joined by an edge that did not exist
  Marks& marks = scratch_marks();
  marks.reset(g.id_bound());

  if (mode == HeuristicMode::kSemantic) {
    std::vector<NodeId> fresh = set_difference(z, g.neighbors(v_i));
    if (fresh.empty()) return helped;
    for (NodeId x : p.inside_nbrs(v_i)) marks.add(x, kReach);
    for (NodeId x : z) marks.add(x, kReach);
    for (NodeId x : fresh) marks.add(x, kFresh);
    // Shell edges at v_i closed into a triangle by a fresh edge (v_i, z).
    for (NodeId w : ctx.shell_nbrs(v_i)) {
      for (NodeId x : p.inside_nbrs(w)) {
        if (marks.get(x) & kFresh) {
          helped.emplace_back(v_i, w);
          break;
        }
      }
    }
    // Shell edges (x, y) closed into a triangle with v_i.
    for (NodeId x : fresh) {
      for (NodeId y : ctx.shell_nbrs(x)) {
        if (y != v_i && (marks.get(y) & kReach)) helped.emplace_back(x, y);
      }
    }
  } else {
    std::span<const NodeId> own = p.inside_nbrs(v_i);
    for (NodeId x : own) marks.add(x, kReach);
    for (NodeId x : z) marks.add(x, kReach | kFresh);
    bool any_helper = false;
    std::vector<NodeId> helper_nodes(own.begin(), own.end());
    for (NodeId t : z) {
      if (sorted_contains(own, t)) continue;
      any_helper = true;
      auto nt = p.inside_nbrs(t);
      helper_nodes.insert(helper_nodes.end(), nt.begin(), nt.end());
    }
    if (any_helper) {
      std::sort(helper_nodes.begin(), helper_nodes.end());
      for (NodeId w : ctx.shell_nbrs(v_i)) {
        if (std::binary_search(helper_nodes.begin(), helper_nodes.end(), w)) helped.emplace_back(v_i, w);
      }
    }
    for (NodeId x : z) {
      for (NodeId y : ctx.shell_nbrs(x)) {
        if (y != v_i && (marks.get(y) & kReach)) helped.emplace_back(x, y);
      }
    }
  }
  sort_unique(helped);
  return helped;
}

bool candidate_before(const CandidateMerger& a, const CandidateMerger& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  if (a.tiebreak != b.tiebreak) return a.tiebreak > b.tiebreak;
  if (a.v1 != b.v1) return a.v1 < b.v1;
  return a.v2 < b.v2;
}

void keep_top(std::vector<CandidateMerger>& candidates, std::size_t n_c) {
  std::size_t take = std::min(n_c, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), candidate_before);
  candidates.resize(take);
}

std::vector<CandidateMerger> find_iom_candidates(const CandidateContext& ctx,
                                                 std::span<const NodeId> pruned_outside,
                                                 std::size_t n_i, std::size_t n_o, std::size_t n_c,
                                                 const ConstraintFilter& filter, HeuristicMode mode) {
  std::vector<CandidateMerger> out;
  if (n_c == 0) return out;
  std::vector<NodeId> inside = top_inside_nodes(ctx, n_i);
  std::vector<NodeId> outside = top_outside_nodes(pruned_outside, ctx.partition().inside_neighbors, n_o);
  for (NodeId vi : inside) {
    for (NodeId vo : outside) {
      if (!filter.admits(vi, vo)) continue;
      CandidateMerger c;
      c.v1 = vi;
      c.v2 = vo;
      c.kind = MergerKind::kIom;
      c.score = static_cast<long>(phse(ctx, vi, vo, mode).size());
      c.tiebreak = static_cast<long>(new_inside_neighbors(ctx, vi, vo, mode).size());
      out.push_back(c);
    }
  }
  keep_top(out, n_c);
  return out;
}

long iim_score(const CandidateContext& ctx, NodeId v1, NodeId v2, HeuristicMode mode) {
  require_inside(ctx, v1);
  require_inside(ctx, v2);
  if (v1 == v2) throw DomainError("cannot score a merge of a node with itself");
  const auto& p = ctx.partition();

  long h = -static_cast<long>(intersection_size(ctx.truss_nbrs(v1), ctx.truss_nbrs(v2)));

  constexpr std::uint8_t kFirst = 1;
  constexpr std::uint8_t kSecond = 2;
  constexpr std::uint8_t kBoth = kFirst | kSecond;
  Marks& marks = scratch_marks();
  marks.reset(ctx.graph().id_bound());
  for (NodeId x : p.inside_nbrs(v1)) marks.add(x, kFirst);
  for (NodeId x : p.inside_nbrs(v2)) marks.add(x, kSecond);

  std::vector<NodeId> reach = set_union(p.inside_nbrs(v1), p.inside_nbrs(v2));
  for (NodeId x : reach) {
    if (x == v1 || x == v2) continue;
    const std::uint8_t cx = marks.get(x);
    for (NodeId y : ctx.shell_nbrs(x)) {
      if (y <= x || y == v1 || y == v2) continue;
      const std::uint8_t cy = marks.get(y);
      if (cy == 0) continue;
      if (cx == kBoth && cy == kBoth) {
        --h;
      } else if (mode == HeuristicMode::kSemantic) {
        if ((cx == kFirst && cy == kSecond) || (cx == kSecond && cy == kFirst)) ++h;
      } else if (cx != kBoth && cy != kBoth) {
        ++h;
      }
    }
  }
  return h;
}

std::vector<CandidateMerger> find_iim_candidates(const CandidateContext& ctx, std::size_t n_i,
                                                 std::size_t n_c, const ConstraintFilter& filter,
                                                 HeuristicMode mode) {
  std::vector<CandidateMerger> out;
  if (n_c == 0) return out;
  std::vector<NodeId> inside = top_inside_nodes(ctx, n_i);
  for (std::size_t a = 0; a < inside.size(); ++a) {
    for (std::size_t b = a + 1; b < inside.size(); ++b) {
      NodeId v1 = std::min(inside[a], inside[b]);
      NodeId v2 = std::max(inside[a], inside[b]);
      if (!filter.admits(v1, v2)) continue;
      CandidateMerger c;
      c.v1 = v1;
      c.v2 = v2;
      c.kind = MergerKind::kIim;
      c.score = iim_score(ctx, v1, v2, mode);
      out.push_back(c);
    }
  }
  keep_top(out, n_c);
  return out;
}

}  // namespace trussmerge
