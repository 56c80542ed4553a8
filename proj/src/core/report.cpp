#include "trussmerge/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "trussmerge/error.hpp"

namespace trussmerge {
namespace {

using Json = nlohmann::ordered_json;

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Quotes a CSV field only when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json parse_report(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("invalid report: ") + e.what());
  }
}

}  // namespace

const char* version_string() noexcept { return TRUSSMERGE_VERSION; }

std::string run_report_json(const Graph& g, const RunConfig& cfg, const MergerPlan& plan,
                            const ReportOptions& options) {
  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["tool"] = "trussmerge";
  report["version"] = version_string();

  Json config;
  config["k"] = cfg.k;
  config["budget"] = cfg.budget;
  config["n_i"] = cfg.n_i;
  config["n_o"] = cfg.n_o;
  config["n_c"] = cfg.n_c;
  config["method"] = method_name(cfg.method);
  config["seed"] = cfg.seed;
  config["heuristics"] = cfg.mode == HeuristicMode::kSemantic ? "semantic" : "literal";
  config["allow_no_op"] = cfg.allow_no_op;
  config["dist_threshold_km"] = cfg.filter.threshold_km() ? Json(*cfg.filter.threshold_km()) : Json(nullptr);
  report["config"] = config;

  Json dataset;
  dataset["path"] = options.dataset;
  dataset["nodes"] = g.node_count();
  dataset["edges"] = g.edge_count();
  if (!options.truss_ks.empty()) {
    TrussDecomposition d = truss_decompose(g);
    dataset["kmax"] = d.kmax();
    Json sizes = Json::array();
    for (int k : options.truss_ks) {
      sizes.push_back({{"k", k}, {"nodes", d.truss_node_count(k)}, {"edges", d.truss_size(k)}});
    }
    dataset["truss"] = sizes;
  }
  report["dataset"] = dataset;

  Json steps = Json::array();
  double total_seconds = 0.0;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const MergerStep& s = plan.steps[i];
    Json step;
    step["round"] = i + 1;
    step["skipped"] = s.skipped;
    if (s.skipped) {
      step["v1"] = nullptr;
      step["v2"] = nullptr;
      step["kind"] = nullptr;
    } else {
      step["v1"] = g.label(s.pair.first);
      step["v2"] = g.label(s.pair.second);
      step["kind"] = merger_kind_name(s.kind);
    }
    step["n_io"] = s.n_io ? Json(*s.n_io) : Json(nullptr);
    step["candidates"] = s.candidates;
    step["inside_nodes"] = s.inside_nodes;
    step["pruned_outside"] = s.pruned_outside;
    step["truss_size"] = s.size_after;
    if (options.timings) step["seconds"] = s.seconds;
    total_seconds += s.seconds;
    steps.push_back(step);
  }
  Json plan_json;
  plan_json["initial_size"] = plan.initial_size;
  plan_json["final_size"] = plan.final_size;
  plan_json["increase"] = plan.increase();
  plan_json["steps"] = steps;
  report["plan"] = plan_json;
  if (options.timings) report["timings"] = {{"rounds_seconds", total_seconds}};
  return report.dump(2) + "\n";
}

std::vector<NodePair> plan_pairs_from_report(std::string_view json, const Graph& g) {
  Json report = parse_report(json);
  std::vector<NodePair> pairs;
  try {
    for (const auto& step : report.at("plan").at("steps")) {
      if (step.at("skipped").get<bool>()) continue;
      pairs.emplace_back(g.id_of(step.at("v1").get<std::string>()), g.id_of(step.at("v2").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed plan in report: ") + e.what());
  }
  return pairs;
}

std::size_t final_size_from_report(std::string_view json) {
  Json report = parse_report(json);
  try {
    return report.at("plan").at("final_size").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed plan in report: ") + e.what());
  }
}

void write_decompose_csv(std::ostream& out, const TrussDecomposition& d, std::span<const int> ks) {
  out << "# trussmerge decompose schema " << kReportSchemaVersion << "\n";
  out << "k,nodes,edges\n";
  for (int k : ks) out << k << ',' << d.truss_node_count(k) << ',' << d.truss_size(k) << '\n';
  out << "kmax," << d.kmax() << ",\n";
}

void write_trussness_csv(std::ostream& out, const Graph& g, const TrussDecomposition& d) {
  out << "# trussmerge trussness schema " << kReportSchemaVersion << "\n";
  out << "u,v,trussness\n";
  auto edges = d.edges();
  auto truss = d.edge_trussness();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << csv_field(g.label(edges[i].u)) << ',' << csv_field(g.label(edges[i].v)) << ',' << truss[i] << '\n';
  }
}

std::vector<CompareRow> run_compare(const Graph& g, const RunConfig& base, std::span<const Method> methods,
                                    std::span<const int> ks, std::size_t trials) {
  if (trials == 0) throw DomainError("trials must be at least 1");
  std::vector<CompareRow> rows;
  for (int k : ks) {
    for (Method m : methods) {
      CompareRow row;
      row.method = m;
      row.k = k;
      row.trials = m == Method::kRd ? trials : 1;
      double finals = 0.0, increases = 0.0, seconds = 0.0;
      for (std::size_t t = 0; t < row.trials; ++t) {
        RunConfig cfg = base;
        cfg.k = k;
        cfg.method = m;
        cfg.seed = base.seed + t;
        const auto started = std::chrono::steady_clock::now();
        MergerPlan plan = maximize(g, cfg);
        seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        row.initial_size = plan.initial_size;
        finals += static_cast<double>(plan.final_size);
        increases += static_cast<double>(plan.final_size) - static_cast<double>(plan.initial_size);
      }
      const double n = static_cast<double>(row.trials);
      row.mean_final_size = finals / n;
      row.mean_increase = increases / n;
      row.mean_seconds = seconds / n;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows, bool timings) {
  out << "# trussmerge compare schema " << kReportSchemaVersion << "\n";
  out << "method,k,trials,initial_size,mean_final_size,mean_increase";
  if (timings) out << ",mean_seconds";
  out << '\n';
  for (const auto& r : rows) {
    out << method_name(r.method) << ',' << r.k << ',' << r.trials << ',' << r.initial_size << ','
        << number(r.mean_final_size) << ',' << number(r.mean_increase);
    if (timings) out << ',' << number(r.mean_seconds);
    out << '\n';
  }
}

void write_study_csv_header(std::ostream& out, std::span<const MetricId> metrics) {
  out << "# trussmerge study schema " << kReportSchemaVersion << "\n";
  out << "source,seed,target,op,row,operation,u,v,truss_size,core_size";
  for (MetricId m : metrics) out << ',' << metric_name(m);
  out << '\n';
}

void write_study_csv(std::ostream& out, const StudyTrace& trace, const StudyLabel& label) {
  const std::string prefix = csv_field(label.source) + ',' + std::to_string(label.seed) + ',' +
                             csv_field(label.target) + ',' + csv_field(label.op) + ',';
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const StudyRow& row = trace.rows[i];
    out << prefix << i << ',' << row.operation << ',';
    if (row.pair) out << csv_field(row.pair->first) << ',' << csv_field(row.pair->second);
    else out << ',';
    out << ',' << (row.truss_size ? std::to_string(*row.truss_size) : "") << ','
        << (row.core_size ? std::to_string(*row.core_size) : "");
    for (double v : row.values) out << ',' << number(v);
    out << '\n';
  }
  auto correlation_row = [&](const char* name, const std::vector<std::optional<double>>& rs) {
    if (rs.empty()) return;
    out << prefix << ',' << name << ",,,,";
    for (const auto& r : rs) out << ',' << (r ? number(*r) : "");
    out << '\n';
  };
  correlation_row("pearson_truss", trace.pearson_truss);
  correlation_row("pearson_core", trace.pearson_core);
}

}  // namespace trussmerge
