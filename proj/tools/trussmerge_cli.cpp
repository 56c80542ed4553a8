// trussmerge command-line front end. Talks to the library only through the
// C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trussmerge/trussmerge.h"

namespace {

struct Failure {
  tm_status status;
  std::string message;
};

void check(tm_status status) {
  if (status != TM_OK) throw Failure{status, tm_last_error()};
}

struct GraphDeleter {
  void operator()(tm_graph* g) const { tm_graph_free(g); }
};
struct StringDeleter {
  void operator()(tm_string* s) const { tm_string_free(s); }
};
using GraphPtr = std::unique_ptr<tm_graph, GraphDeleter>;
using StringPtr = std::unique_ptr<tm_string, StringDeleter>;

GraphPtr load(const std::string& path) {
  tm_graph* g = nullptr;
  check(tm_graph_load_file(path.c_str(), &g));
  return GraphPtr(g);
}

void emit(const tm_string* text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(tm_string_data(text), 1, tm_string_size(text), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{TM_ERR_IO, "cannot write '" + out_path + "'"};
  out.write(tm_string_data(text), static_cast<std::streamsize>(tm_string_size(text)));
}

// Flags shared by maximize, compare and the correlation study.
struct RunFlags {
  std::size_t budget = 10;
  std::size_t ni = 100;
  std::size_t no = 50;
  std::size_t nc = 10;
  std::string method = "BM";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string coords;
  std::optional<double> dist_threshold;
  bool literal = false;
  bool allow_no_op = true;

  void attach(CLI::App* app, bool with_method) {
    app->add_option("--budget", budget, "Number of mergers b")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--ni", ni, "Inside nodes checked per round")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--no", no, "Outside nodes checked per round")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--nc", nc, "Candidate pairs evaluated per round")->capture_default_str()->check(CLI::PositiveNumber);
    if (with_method) {
      app->add_option("--method", method, "BM, EQ, II, IO, RD, NE, NT or NAIVE")->capture_default_str();
    }
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
    app->add_option("--coords", coords, "Coordinate file with 'label lat lon' lines");
    app->add_option("--dist-threshold", dist_threshold, "Maximum merger distance in km (needs --coords)");
    app->add_flag("--literal-heuristics", literal, "Score candidates exactly as the printed pseudocode");
    app->add_option("--allow-no-op", allow_no_op, "Execute mergers that do not enlarge the truss")
        ->capture_default_str();
  }

  tm_config config(int k) const {
    tm_config cfg;
    tm_config_init(&cfg);
    cfg.k = k;
    cfg.budget = budget;
    cfg.n_i = ni;
    cfg.n_o = no;
    cfg.n_c = nc;
    cfg.method = method.c_str();
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.literal_heuristics = literal ? 1 : 0;
    cfg.allow_no_op = allow_no_op ? 1 : 0;
    cfg.coords_path = coords.empty() ? nullptr : coords.c_str();
    cfg.dist_threshold_km = dist_threshold.value_or(-1.0);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enlarge k-trusses by merging node pairs"};
  app.set_version_flag("--version", std::string(tm_version()));
  app.require_subcommand(1);

  // decompose
  std::string dec_input, dec_out;
  std::vector<int> dec_ks;
  bool dec_trussness = false;
  auto* dec = app.add_subcommand("decompose", "Per-k truss sizes of an edge list");
  dec->add_option("input", dec_input, "Edge-list file")->required();
  dec->add_option("--k", dec_ks, "k values to report (comma separated)")->delimiter(',');
  dec->add_flag("--trussness", dec_trussness, "Dump per-edge trussness instead");
  dec->add_option("--out", dec_out, "Output file (default stdout)");

  // maximize
  std::string max_input, max_out;
  int max_k = 10;
  bool max_timings = false;
  RunFlags max_flags;
  auto* mx = app.add_subcommand("maximize", "Run the maximizer and write a JSON report");
  mx->add_option("input", max_input, "Edge-list file")->required();
  mx->add_option("--k", max_k, "Target truss level")->capture_default_str();
  max_flags.attach(mx, true);
  mx->add_flag("--timings", max_timings, "Include wall times in the report");
  mx->add_option("--out", max_out, "Report file (default stdout)");

  // compare
  std::string cmp_input, cmp_out;
  std::vector<int> cmp_ks{5, 10, 15, 20};
  std::vector<std::string> cmp_methods{"BM", "EQ", "II", "IO", "RD", "NE", "NT"};
  std::size_t cmp_trials = 5;
  bool cmp_timings = false;
  RunFlags cmp_flags;
  auto* cmp = app.add_subcommand("compare", "Run several methods over several k values");
  cmp->add_option("input", cmp_input, "Edge-list file")->required();
  cmp->add_option("--k", cmp_ks, "k values (comma separated)")->delimiter(',')->capture_default_str();
  cmp->add_option("--methods", cmp_methods, "Methods (comma separated)")->delimiter(',')->capture_default_str();
  cmp->add_option("--trials", cmp_trials, "Seeds averaged for RD")->capture_default_str()->check(CLI::PositiveNumber);
  cmp_flags.attach(cmp, false);
  cmp->add_flag("--timings", cmp_timings, "Include mean wall times");
  cmp->add_option("--out", cmp_out, "CSV file (default stdout)");

  // robustness-study
  tm_study_config study;
  tm_study_config_init(&study);
  std::string st_model = study.model, st_metric = study.metrics, st_op = study.op, st_input, st_out;
  int st_k = 10;
  RunFlags st_flags;
  auto* st = app.add_subcommand("robustness-study", "Greedy merge/add traces or truss-size correlation");
  st->add_option("--model", st_model, "er, ws or hk")->capture_default_str();
  st->add_option("--n", study.n, "Nodes of the generated graph")->capture_default_str();
  st->add_option("--p", study.p, "Model probability")->capture_default_str();
  st->add_option("--param", study.model_param, "ws: neighbors k; hk: edges per node m");
  st->add_option("--metric", st_metric, "Target metrics (comma separated)")->capture_default_str();
  st->add_option("--op", st_op, "merge, add or both")->capture_default_str();
  st->add_option("--rounds", study.rounds, "Operations per trace")->capture_default_str();
  st->add_option("--seeds", study.seeds, "Number of generated graphs")->capture_default_str();
  st->add_option("--input", st_input, "Edge-list file: run the truss-size correlation study instead");
  st->add_option("--k", st_k, "Truss level for the correlation study")->capture_default_str();
  st_flags.attach(st, true);
  st->add_option("--out", st_out, "CSV file (default stdout)");

  // fixtures
  std::string fx_kind = "hardness", fx_sets = "1,2;2,3;3,4", fx_out;
  int fx_elements = 4, fx_k = 4, fx_d = 8;
  bool fx_ids = false;
  auto* fx = app.add_subcommand("fixtures", "Write reduction or witness graphs as edge lists");
  fx->add_option("--kind", fx_kind, "hardness or witness")->capture_default_str();
  fx->add_option("--sets", fx_sets, "Sets as '1,2;2,3'")->capture_default_str();
  fx->add_option("--elements", fx_elements, "Number of elements m")->capture_default_str();
  fx->add_option("--k", fx_k, "k of the construction")->capture_default_str();
  fx->add_option("--d", fx_d, "Replication width d")->capture_default_str();
  fx->add_flag("--ids", fx_ids, "Write dense ids instead of labels");
  fx->add_option("--out", fx_out, "Edge-list file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dec) {
      GraphPtr g = load(dec_input);
      tm_string* text = nullptr;
      if (dec_trussness) check(tm_trussness_csv(g.get(), &text));
      else check(tm_decompose_csv(g.get(), dec_ks.data(), dec_ks.size(), &text));
      emit(StringPtr(text).get(), dec_out);
    } else if (*mx) {
      GraphPtr g = load(max_input);
      tm_config cfg = max_flags.config(max_k);
      tm_string* report = nullptr;
      check(tm_maximize(g.get(), &cfg, max_input.c_str(), max_timings ? 1 : 0, &report));
      emit(StringPtr(report).get(), max_out);
    } else if (*cmp) {
      GraphPtr g = load(cmp_input);
      tm_config cfg = cmp_flags.config(cmp_ks.empty() ? 10 : cmp_ks.front());
      std::vector<const char*> names;
      for (const auto& m : cmp_methods) names.push_back(m.c_str());
      tm_string* csv = nullptr;
      check(tm_compare(g.get(), &cfg, names.data(), names.size(), cmp_ks.data(), cmp_ks.size(), cmp_trials,
                       cmp_timings ? 1 : 0, &csv));
      emit(StringPtr(csv).get(), cmp_out);
    } else if (*st) {
      tm_string* csv = nullptr;
      if (!st_input.empty()) {
        GraphPtr g = load(st_input);
        tm_config cfg = st_flags.config(st_k);
        check(tm_correlation_study(g.get(), &cfg, study.rounds, st_input.c_str(), &csv));
      } else {
        study.model = st_model.c_str();
        study.metrics = st_metric.c_str();
        study.op = st_op.c_str();
        study.seed = st_flags.seed;
        study.threads = st_flags.threads;
        if (study.model_param == 0) study.model_param = st_model == "ws" ? 7 : 3;
        check(tm_model_study(&study, &csv));
      }
      emit(StringPtr(csv).get(), st_out);
    } else if (*fx) {
      tm_graph* raw = nullptr;
      if (fx_kind == "hardness") check(tm_hardness_fixture(fx_sets.c_str(), fx_elements, fx_k, fx_d, &raw));
      else if (fx_kind == "witness") check(tm_witness_fixture(fx_d, &raw));
      else throw Failure{TM_ERR_INVALID_ARGUMENT, "unknown fixture kind '" + fx_kind + "'"};
      GraphPtr g(raw);
      tm_string* text = nullptr;
      check(tm_graph_write_edge_list(g.get(), fx_ids ? 0 : 1, &text));
      emit(StringPtr(text).get(), fx_out);
    }
  } catch (const Failure& f) {
    std::cerr << "error[" << tm_status_name(f.status) << "]: " << f.message << "\n";
    return static_cast<int>(f.status);
  }
  return 0;
}
