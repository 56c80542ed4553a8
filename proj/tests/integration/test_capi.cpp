#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "trussmerge/trussmerge.h"

namespace {

struct Graph {
  tm_graph* g = nullptr;
  ~Graph() { tm_graph_free(g); }
};

struct Text {
  tm_string* s = nullptr;
  ~Text() { tm_string_free(s); }
  std::string str() const { return std::string(tm_string_data(s), tm_string_size(s)); }
};

// Two 5-cliques sharing node c, plus a pendant path.
const char* kToy =
    "a b\na c\na d\na e\nb c\nb d\nb e\nc d\nc e\nd e\n"
    "c f\nc g\nc h\nc i\nf g\nf h\nf i\ng h\ng i\nh i\n"
    "i x\nx y\ny a\n";

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(tm_status_name(TM_OK)) == "ok");
  CHECK(std::string(tm_status_name(TM_ERR_PARSE)) == "parse_error");
  CHECK(std::string(tm_status_name(TM_ERR_GUARD)).size() > 0);
  CHECK(std::string(tm_version()).size() > 0);
}

TEST_CASE("graph load, stats and errors") {
  Graph g;
  REQUIRE(tm_graph_from_text(kToy, &g.g) == TM_OK);
  size_t nodes = 0, edges = 0;
  REQUIRE(tm_graph_stats(g.g, &nodes, &edges) == TM_OK);
  CHECK(nodes == 11);
  CHECK(edges == 23);
  int kmax = 0;
  REQUIRE(tm_kmax(g.g, &kmax) == TM_OK);
  CHECK(kmax == 5);
  size_t size = 0;
  REQUIRE(tm_truss_size(g.g, 5, &size) == TM_OK);
  CHECK(size == 20);
  CHECK(tm_truss_size(g.g, 2, &size) == TM_ERR_DOMAIN);
  CHECK(std::string(tm_last_error()).size() > 0);

  Graph bad;
  CHECK(tm_graph_from_text("a b\nc\n", &bad.g) == TM_ERR_PARSE);
  CHECK(std::string(tm_last_error()).find('2') != std::string::npos);
  CHECK(tm_graph_load_file("/nonexistent/file.txt", &bad.g) == TM_ERR_IO);
  CHECK(tm_graph_stats(nullptr, &nodes, &edges) == TM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("maximize report and replay") {
  Graph g;
  REQUIRE(tm_graph_from_text(kToy, &g.g) == TM_OK);
  tm_config cfg;
  tm_config_init(&cfg);
  CHECK(cfg.budget == 10);
  CHECK(cfg.n_i == 100);
  CHECK(cfg.n_o == 50);
  CHECK(cfg.n_c == 10);
  cfg.k = 5;
  cfg.budget = 2;
  cfg.threads = 1;
  Text one;
  REQUIRE(tm_maximize(g.g, &cfg, "toy", 0, &one.s) == TM_OK);
  CHECK(one.str().find("\"schema_version\": 1") != std::string::npos);
  size_t replayed = 0;
  REQUIRE(tm_objective_from_report(g.g, 5, tm_string_data(one.s), &replayed) == TM_OK);
  CHECK(one.str().find("\"final_size\": " + std::to_string(replayed)) != std::string::npos);

  cfg.threads = 8;
  Text eight;
  REQUIRE(tm_maximize(g.g, &cfg, "toy", 0, &eight.s) == TM_OK);
  CHECK(one.str() == eight.str());

  cfg.method = "nope";
  Text none;
  CHECK(tm_maximize(g.g, &cfg, "toy", 0, &none.s) == TM_ERR_INVALID_ARGUMENT);
  cfg.method = "BM";
  cfg.dist_threshold_km = 10.0;
  CHECK(tm_maximize(g.g, &cfg, "toy", 0, &none.s) == TM_ERR_INVALID_ARGUMENT);
  cfg.dist_threshold_km = -1.0;
  cfg.k = 2;
  CHECK(tm_maximize(g.g, &cfg, "toy", 0, &none.s) == TM_ERR_DOMAIN);
}

TEST_CASE("decompose CSV and compare through the C interface") {
  Graph g;
  REQUIRE(tm_graph_from_text(kToy, &g.g) == TM_OK);
  int ks[] = {3, 5};
  Text csv;
  REQUIRE(tm_decompose_csv(g.g, ks, 2, &csv.s) == TM_OK);
  CHECK(csv.str().find("5,9,20\n") != std::string::npos);

  tm_config cfg;
  tm_config_init(&cfg);
  cfg.budget = 1;
  const char* methods[] = {"BM", "NT"};
  Text cmp;
  REQUIRE(tm_compare(g.g, &cfg, methods, 2, ks, 2, 2, 0, &cmp.s) == TM_OK);
  CHECK(cmp.str().find("NT,5,1,") != std::string::npos);
}

TEST_CASE("fixtures through the C interface") {
  Graph fx;
  REQUIRE(tm_hardness_fixture("1,2;2,3;3,4", 4, 4, 3, &fx.g) == TM_OK);
  size_t nodes = 0, edges = 0;
  tm_graph_stats(fx.g, &nodes, &edges);
  CHECK(nodes == 2u * 3 * 4 + 2 * 3 + 1);
  Graph bad;
  CHECK(tm_hardness_fixture("1,x", 4, 4, 3, &bad.g) == TM_ERR_PARSE);
  CHECK(tm_hardness_fixture("9", 4, 4, 3, &bad.g) == TM_ERR_DOMAIN);

  Graph w;
  REQUIRE(tm_witness_fixture(4, &w.g) == TM_OK);
  Text text;
  REQUIRE(tm_graph_write_edge_list(w.g, 1, &text.s) == TM_OK);
  CHECK(text.str().find("s1_1") != std::string::npos);
}

TEST_CASE("studies through the C interface") {
  tm_study_config st;
  tm_study_config_init(&st);
  st.n = 20;
  st.p = 0.3;
  st.rounds = 1;
  st.seeds = 1;
  st.metrics = "NC";
  st.op = "add";
  Text csv;
  REQUIRE(tm_model_study(&st, &csv.s) == TM_OK);
  CHECK(csv.str().find("er,0,NC,add,1,add,") != std::string::npos);
  st.model = "xx";
  CHECK(tm_model_study(&st, &csv.s) == TM_ERR_INVALID_ARGUMENT);

  Graph g;
  REQUIRE(tm_graph_from_text(kToy, &g.g) == TM_OK);
  tm_config cfg;
  tm_config_init(&cfg);
  cfg.k = 5;
  Text corr;
  REQUIRE(tm_correlation_study(g.g, &cfg, 2, "toy", &corr.s) == TM_OK);
  CHECK(corr.str().find("pearson_truss") != std::string::npos);
}
