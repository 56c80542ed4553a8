#include "trussmerge/trussmerge.h"

#include <new>
#include <sstream>
#include <string>

#include "trussmerge/baselines.hpp"
#include "trussmerge/batman.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/error.hpp"
#include "trussmerge/graph.hpp"
#include "trussmerge/metrics.hpp"
#include "trussmerge/report.hpp"

struct tm_graph {
  trussmerge::Graph graph;
};

struct tm_string {
  std::string text;
};

namespace {

using namespace trussmerge;

thread_local std::string last_error;

tm_status fail(tm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
tm_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return TM_OK;
  } catch (const Error& e) {
    return fail(static_cast<tm_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TM_ERR_INTERNAL, e.what());
  }
}

void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

tm_string* make_string(std::string text) { return new tm_string{std::move(text)}; }

RunConfig to_run_config(const Graph& g, const tm_config* c) {
  need(c != nullptr, "config is null");
  RunConfig cfg;
  cfg.k = c->k;
  cfg.budget = c->budget;
  cfg.n_i = c->n_i;
  cfg.n_o = c->n_o;
  cfg.n_c = c->n_c;
  if (c->method) {
    auto m = parse_method(c->method);
    need(m.has_value(), "unknown method");
    cfg.method = *m;
  }
  cfg.seed = c->seed;
  cfg.threads = c->threads;
  cfg.mode = c->literal_heuristics ? HeuristicMode::kLiteral : HeuristicMode::kSemantic;
  cfg.allow_no_op = c->allow_no_op != 0;
  std::optional<double> threshold;
  if (c->dist_threshold_km >= 0.0) threshold = c->dist_threshold_km;
  if (c->coords_path) {
    cfg.filter = ConstraintFilter::from_file(c->coords_path, g, threshold);
  } else {
    need(!threshold, "a distance threshold needs a coordinate file");
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

const char* tm_version(void) { return version_string(); }

const char* tm_status_name(tm_status status) {
  if (status == TM_OK) return "ok";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* tm_last_error(void) { return last_error.c_str(); }

const char* tm_string_data(const tm_string* s) { return s ? s->text.c_str() : ""; }
size_t tm_string_size(const tm_string* s) { return s ? s->text.size() : 0; }
void tm_string_free(tm_string* s) { delete s; }

tm_status tm_graph_load_file(const char* path, tm_graph** out) {
  return guarded([&] {
    need(path && out, "null argument");
    *out = new tm_graph{Graph::from_edge_list_file(path)};
  });
}

tm_status tm_graph_from_text(const char* text, tm_graph** out) {
  return guarded([&] {
    need(text && out, "null argument");
    *out = new tm_graph{Graph::from_edge_list_text(text)};
  });
}

void tm_graph_free(tm_graph* g) { delete g; }

tm_status tm_graph_stats(const tm_graph* g, size_t* nodes, size_t* edges) {
  return guarded([&] {
    need(g && nodes && edges, "null argument");
    *nodes = g->graph.node_count();
    *edges = g->graph.edge_count();
  });
}

tm_status tm_graph_largest_component(const tm_graph* g, tm_graph** out) {
  return guarded([&] {
    need(g && out, "null argument");
    *out = new tm_graph{largest_component(g->graph)};
  });
}

tm_status tm_graph_write_edge_list(const tm_graph* g, int labelled, tm_string** out) {
  return guarded([&] {
    need(g && out, "null argument");
    std::ostringstream text;
    if (labelled) g->graph.write_labelled_edge_list(text);
    else g->graph.write_edge_list(text);
    *out = make_string(text.str());
  });
}

tm_status tm_truss_size(const tm_graph* g, int k, size_t* out) {
  return guarded([&] {
    need(g && out, "null argument");
    *out = k_truss_size(g->graph, k);
  });
}

tm_status tm_kmax(const tm_graph* g, int* out) {
  return guarded([&] {
    need(g && out, "null argument");
    *out = truss_decompose(g->graph).kmax();
  });
}

tm_status tm_decompose_csv(const tm_graph* g, const int* ks, size_t k_count, tm_string** out) {
  return guarded([&] {
    need(g && out && (ks || k_count == 0), "null argument");
    std::span<const int> kspan(ks, k_count);
    for (int k : kspan) require_k(k);
    std::ostringstream text;
    write_decompose_csv(text, truss_decompose(g->graph), kspan);
    *out = make_string(text.str());
  });
}

tm_status tm_trussness_csv(const tm_graph* g, tm_string** out) {
  return guarded([&] {
    need(g && out, "null argument");
    std::ostringstream text;
    write_trussness_csv(text, g->graph, truss_decompose(g->graph));
    *out = make_string(text.str());
  });
}

void tm_config_init(tm_config* cfg) {
  if (!cfg) return;
  RunConfig defaults;
  cfg->k = defaults.k;
  cfg->budget = defaults.budget;
  cfg->n_i = defaults.n_i;
  cfg->n_o = defaults.n_o;
  cfg->n_c = defaults.n_c;
  cfg->method = "BM";
  cfg->seed = defaults.seed;
  cfg->threads = defaults.threads;
  cfg->literal_heuristics = 0;
  cfg->allow_no_op = 1;
  cfg->coords_path = nullptr;
  cfg->dist_threshold_km = -1.0;
}

tm_status tm_maximize(const tm_graph* g, const tm_config* cfg, const char* dataset_name, int include_timings,
                      tm_string** report_json) {
  return guarded([&] {
    need(g && report_json, "null argument");
    RunConfig run = to_run_config(g->graph, cfg);
    MergerPlan plan = maximize(g->graph, run);
    ReportOptions options;
    options.dataset = dataset_name ? dataset_name : "";
    options.timings = include_timings != 0;
    options.truss_ks = {run.k};
    *report_json = make_string(run_report_json(g->graph, run, plan, options));
  });
}

tm_status tm_objective_from_report(const tm_graph* g, int k, const char* report_json, size_t* out) {
  return guarded([&] {
    need(g && report_json && out, "null argument");
    auto pairs = plan_pairs_from_report(report_json, g->graph);
    *out = objective(g->graph, k, pairs);
  });
}

tm_status tm_compare(const tm_graph* g, const tm_config* base, const char* const* methods, size_t method_count,
                     const int* ks, size_t k_count, size_t trials, int include_timings, tm_string** csv) {
  return guarded([&] {
    need(g && csv && (methods || method_count == 0) && (ks || k_count == 0), "null argument");
    RunConfig run = to_run_config(g->graph, base);
    std::vector<Method> parsed;
    for (size_t i = 0; i < method_count; ++i) {
      auto m = methods[i] ? parse_method(methods[i]) : std::nullopt;
      need(m.has_value(), "unknown method");
      parsed.push_back(*m);
    }
    std::span<const int> kspan(ks, k_count);
    for (int k : kspan) require_k(k);
    auto rows = run_compare(g->graph, run, parsed, kspan, trials);
    std::ostringstream text;
    write_compare_csv(text, rows, include_timings != 0);
    *csv = make_string(text.str());
  });
}

tm_status tm_hardness_fixture(const char* sets, int element_count, int k, int d, tm_graph** out) {
  return guarded([&] {
    need(sets && out, "null argument");
    FixtureSpec spec;
    spec.element_count = element_count;
    spec.k = k;
    spec.d = d;
    for (const std::string& set : split(sets, ';')) {
      std::vector<int> elems;
      for (const std::string& item : split(set, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        int value = 0;
        try {
          value = std::stoi(item, &used);
        } catch (const std::exception&) {
          throw Error(ErrorCode::kParse, "bad set element '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
          throw Error(ErrorCode::kParse, "bad set element '" + item + "'");
        }
        elems.push_back(value);
      }
      spec.sets.push_back(std::move(elems));
    }
    *out = new tm_graph{hardness_fixture(spec).graph};
  });
}

tm_status tm_witness_fixture(int d, tm_graph** out) {
  return guarded([&] {
    need(out != nullptr, "null argument");
    *out = new tm_graph{nonsubmodularity_witness(d).graph};
  });
}

void tm_study_config_init(tm_study_config* cfg) {
  if (!cfg) return;
  cfg->model = "er";
  cfg->n = 50;
  cfg->p = 0.1;
  cfg->model_param = 0;
  cfg->metrics = "VB,EB,ER,SG,NC";
  cfg->op = "both";
  cfg->rounds = 10;
  cfg->seeds = 5;
  cfg->seed = 0;
  cfg->threads = 0;
}

tm_status tm_model_study(const tm_study_config* cfg, tm_string** csv) {
  return guarded([&] {
    need(cfg && csv && cfg->model && cfg->metrics && cfg->op, "null argument");
    const std::string model = cfg->model;
    need(model == "er" || model == "ws" || model == "hk", "model must be er, ws or hk");
    std::vector<MetricId> targets;
    for (const std::string& name : split(cfg->metrics, ',')) {
      auto m = parse_metric(name);
      need(m.has_value(), "unknown metric");
      targets.push_back(*m);
    }
    const std::string op = cfg->op;
    std::vector<StudyOp> ops;
    if (op == "merge" || op == "both") ops.push_back(StudyOp::kMerge);
    if (op == "add" || op == "both") ops.push_back(StudyOp::kAddEdge);
    need(!ops.empty(), "op must be merge, add or both");

    std::ostringstream text;
    write_study_csv_header(text, kRobustnessMetrics);
    for (size_t s = 0; s < cfg->seeds; ++s) {
      const uint64_t seed = cfg->seed + s;
      Graph g;
      if (model == "er") g = gen_er(cfg->n, cfg->p, seed);
      else if (model == "ws") g = gen_ws(cfg->n, cfg->model_param, cfg->p, seed);
      else g = gen_hk(cfg->n, cfg->model_param, cfg->p, seed);
      g = largest_component(g);
      for (MetricId target : targets) {
        for (StudyOp o : ops) {
          StudyTrace trace = greedy_improve(g, target, o, cfg->rounds, kRobustnessMetrics, cfg->threads);
          write_study_csv(text, trace, {model, seed, metric_name(target), o == StudyOp::kMerge ? "merge" : "add"});
        }
      }
    }
    *csv = make_string(text.str());
  });
}

tm_status tm_correlation_study(const tm_graph* g, const tm_config* cfg, size_t rounds, const char* dataset_name,
                               tm_string** csv) {
  return guarded([&] {
    need(g && csv, "null argument");
    Graph lcc = largest_component(g->graph);
    RunConfig run = to_run_config(lcc, cfg);
    StudyTrace trace = correlation_study(lcc, run, rounds, kRobustnessMetrics);
    std::ostringstream text;
    write_study_csv_header(text, kRobustnessMetrics);
    write_study_csv(text, trace, {dataset_name ? dataset_name : "", run.seed, "truss", method_name(run.method)});
    *csv = make_string(text.str());
  });
}

}  // extern "C"
