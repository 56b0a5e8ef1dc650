#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>

#include "vmlink/graph6.hpp"
#include "vmlink/harness.hpp"

using namespace vmlink;

TEST_SUITE_BEGIN("harness");

TEST_CASE("graph enumeration counts") {
  CHECK(GraphEnumerator(1).total() == 1);
  CHECK(GraphEnumerator(3).total() == 8);
  CHECK(GraphEnumerator(4).total() == 64);
  CHECK_THROWS_AS(GraphEnumerator(10), std::invalid_argument);

  GraphEnumerator en(3);
  int count = 0;
  int edge_sum = 0;
  while (auto g = en.next()) {
    ++count;
    edge_sum += g->edge_count();
  }
  CHECK(count == 8);
  CHECK(edge_sum == 12);  // each of 3 slots present in half of the graphs
}

TEST_CASE("random graphs are deterministic per seed") {
  Rng a(7), b(7);
  CHECK(random_graph(10, 0.5, a) == random_graph(10, 0.5, b));
}

TEST_CASE("sweeps pass on small exhaustive spaces") {
  SweepSpec spec;
  spec.generator = SweepSpec::Exhaustive{5};
  spec.property = "subeq";
  spec.tuple_cap = 1 << 10;  // full 4^5 enumeration
  SweepReport report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.graphs == 1024);
  CHECK(report.checked == 1024ull * 1024ull);

  spec.property = "oum-two-options";
  spec.generator = SweepSpec::Exhaustive{4};
  spec.tuple_cap = 100;  // 3^4 = 81 pairs, fully enumerated
  report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.graphs == 64);
}

TEST_CASE("oracle agreement sweep over a thousand random graphs") {
  SweepSpec spec;
  spec.generator = SweepSpec::Random{12, 0.5, 1000};
  spec.property = "kappa-oracle-agreement";
  spec.seed = 1;
  spec.tuple_cap = 1;
  const SweepReport report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.graphs == 1000);
  CHECK(report.checked == 1000);
}

TEST_CASE("unknown properties and infeasible sizes are usage errors") {
  SweepSpec spec;
  spec.generator = SweepSpec::Exhaustive{3};
  spec.property = "no-such-lemma";
  CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
  spec.property = "subeq";
  spec.generator = SweepSpec::Exhaustive{12};
  CHECK_THROWS_AS((void)run_sweep(spec), std::invalid_argument);
  spec.generator = SweepSpec::FromFile{"/nonexistent/path.g6"};
  CHECK_THROWS_AS((void)run_sweep(spec), std::runtime_error);
}

TEST_CASE("property list is stable and complete enough to cover the lemmas") {
  const auto names = known_properties();
  for (const char* required :
       {"subeq", "subtool", "delrank", "local-invariance", "capcup", "conn", "qset", "nonflex",
        "kmonotone", "subconn", "perm", "pivot-symmetry", "gv-well-defined", "oum-two-options",
        "joint-option-nonempty", "kappa-oracle-agreement", "main-theorem", "st-small",
        "chain-invariants", "nesting-cert", "reduce-preserving", "shrink-terminals",
        "pivot-only-nonempty", "main-assembly"}) {
    CAPTURE(required);
    CHECK(std::find(names.begin(), names.end(), required) != names.end());
  }
}

TEST_CASE("sweep from a graph6 file") {
  const std::string path = "sweep_input_test.g6";
  {
    std::ofstream out(path);
    out << to_graph6(Graph::from_edges(3, {{0, 1}, {1, 2}})) << "\n";
    out << to_graph6(Graph::from_edges(4, {{0, 1}, {2, 3}})) << "\n";
  }
  SweepSpec spec;
  spec.generator = SweepSpec::FromFile{path};
  spec.property = "delrank";
  spec.tuple_cap = 64;
  const SweepReport report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.graphs == 2);
  std::remove(path.c_str());
}

TEST_CASE("report bodies are byte-identical across reruns and thread counts") {
  SweepSpec spec;
  spec.generator = SweepSpec::Random{9, 0.4, 60};
  spec.property = "subconn";
  spec.seed = 99;
  spec.tuple_cap = 8;
  const std::string once = run_sweep(spec).body();
  const std::string twice = run_sweep(spec).body();
  CHECK(once == twice);
  spec.threads = 3;
  CHECK(run_sweep(spec).body() == once);

  // and the body carries the summary record
  CHECK(once.find("\"type\":\"summary\"") != std::string::npos);
  CHECK(once.find("\"seed\":99") != std::string::npos);
}

TEST_CASE("two-pair theorem properties hold on small exhaustive spaces") {
  SweepSpec spec;
  spec.generator = SweepSpec::Exhaustive{5};
  spec.seed = 17;

  spec.property = "main-theorem";
  spec.tuple_cap = 200;
  SweepReport report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.checked > 0);  // instances above the bound do occur

  spec.property = "st-small";
  report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.checked > 0);

  spec.property = "pivot-only-nonempty";
  report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.checked > 0);

  spec.property = "main-assembly";
  spec.tuple_cap = 50;
  report = run_sweep(spec);
  CHECK(report.passed());
  CHECK(report.checked > 0);
}

TEST_CASE("orbit-table properties run and pass on small graphs") {
  SweepSpec spec;
  spec.generator = SweepSpec::Exhaustive{4};
  spec.property = "perm";
  spec.tuple_cap = 1 << 10;
  CHECK(run_sweep(spec).passed());
  spec.property = "gv-well-defined";
  CHECK(run_sweep(spec).passed());
}

TEST_CASE("instance sampling hits exact targets") {
  Rng rng(77);
  for (auto [k, ell] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    const int f = static_cast<int>(doubly_good_bound(k, ell));
    const auto inst = sample_instance(rng, k, ell, f);
    REQUIRE(inst.has_value());
    CHECK(inst->k == k);
    CHECK(inst->ell == ell);
    CHECK(inst->free.size() == f);
  }
}

TEST_CASE("tightness search confirms the trivial zero-zero bound and is reproducible") {
  TightnessSpec spec;
  spec.k = 0;
  spec.ell = 0;
  spec.budget = 10;
  spec.seed = 5;
  const TightnessReport report = tightness_search(spec);
  CHECK(report.bound == 1);
  CHECK(report.instances_tested == 0);  // no room below the bound
  CHECK(report.failures == 0);
  CHECK(report.max_failing_f == -1);
  CHECK(report.body() == tightness_search(spec).body());

  TightnessSpec one;
  one.k = 1;
  one.ell = 0;
  one.budget = 20;
  one.seed = 5;
  const TightnessReport r1 = tightness_search(one);
  CHECK(r1.bound == 4);
  CHECK(r1.instances_tested > 0);
  CHECK(r1.body() == tightness_search(one).body());
  CHECK(r1.body().find("\"type\":\"summary\"") != std::string::npos);
}

TEST_SUITE_END();
