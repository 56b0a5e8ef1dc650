#include <doctest.h>

#include <sstream>

#include "vmlink/cli.hpp"
#include "vmlink/graph6.hpp"

using namespace vmlink;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string c5_g6() {
  return to_graph6(Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("kappa command") {
  const CliRun run = cli({"kappa", "-g", c5_g6(), "-s", "0", "-t", "2"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("\"value\":1") != std::string::npos);
  CHECK(run.out.find("\"mask\":\"0x1\"") != std::string::npos);

  const CliRun brute = cli({"kappa", "-g", c5_g6(), "-s", "0", "-t", "2", "--brute"});
  CHECK(brute.out == run.out);
}

TEST_CASE("usage errors exit with 1 and name the problem") {
  const CliRun overlap = cli({"kappa", "-g", c5_g6(), "-s", "0,1", "-t", "1"});
  CHECK(overlap.exit_code == 1);
  CHECK(overlap.err.find("overlap") != std::string::npos);

  const CliRun bad_set = cli({"kappa", "-g", c5_g6(), "-s", "0,x", "-t", "2"});
  CHECK(bad_set.exit_code == 1);
  CHECK(bad_set.err.find("malformed vertex set") != std::string::npos);

  const CliRun bad_graph = cli({"kappa", "-g", "not graph6!", "-s", "0", "-t", "2"});
  CHECK(bad_graph.exit_code == 1);

  const CliRun unknown_property =
      cli({"sweep", "--property", "bogus", "--exhaustive", "3"});
  CHECK(unknown_property.exit_code == 1);
  CHECK(unknown_property.err.find("unknown property") != std::string::npos);

  const CliRun unknown_flag = cli({"kappa", "--frobnicate"});
  CHECK(unknown_flag.exit_code == 1);
}

TEST_CASE("cutrank and flexible commands") {
  const CliRun rank = cli({"cutrank", "-g", c5_g6(), "-x", "0,1"});
  CHECK(rank.exit_code == 0);
  CHECK(rank.out.find("\"value\":2") != std::string::npos);

  const CliRun flex = cli({"flexible", "-g", to_graph6(Graph::from_edges(3, {{0, 1}, {1, 2}})),
                           "-s", "0", "-t", "2", "-v", "1"});
  CHECK(flex.exit_code == 0);
  CHECK(flex.out.find("\"flexible\":false") != std::string::npos);
}

TEST_CASE("options command in both modes") {
  const std::string p3 = to_graph6(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  const CliRun single = cli({"options", "-g", p3, "-q", "0", "-r", "2", "-v", "1"});
  CHECK(single.exit_code == 0);
  CHECK(single.out.find("\"joint\":false") != std::string::npos);
  CHECK(single.out.find("lc-delete") != std::string::npos);
  CHECK(single.out.find("pivot-delete") != std::string::npos);

  const CliRun joint = cli({"options", "-g", p3, "-q", "0", "-r", "2", "-s", "0", "-t", "2",
                            "-v", "1"});
  CHECK(joint.exit_code == 0);
  CHECK(joint.out.find("\"joint\":true") != std::string::npos);
}

TEST_CASE("find-vertex on a zero-zero instance") {
  // one free vertex, both connectivities zero
  const std::string g = to_graph6(Graph::from_edges(3, {{0, 1}}));
  const CliRun run = cli({"find-vertex", "-g", g, "-q", "0", "-r", "2"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("\"vertex\":1") != std::string::npos);
  CHECK(run.out.find("\"options\":") != std::string::npos);
}

TEST_CASE("chain and reduce commands") {
  const std::string p3 = to_graph6(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  const CliRun chain = cli({"chain", "-g", p3, "-s", "0", "-t", "2", "-f", "1"});
  CHECK(chain.exit_code == 0);
  CHECK(chain.out.find("\"order\":[1]") != std::string::npos);

  const std::string iso = to_graph6(Graph::from_edges(4, {{0, 2}}));
  const CliRun reduce = cli({"reduce", "-g", iso, "-q", "0", "-r", "2", "--drop", "1,3"});
  CHECK(reduce.exit_code == 0);
  CHECK(reduce.out.find("\"graph6_compact\"") != std::string::npos);
  CHECK(reduce.out.find("\"labels\":[0,2]") != std::string::npos);
}

TEST_CASE("sweep command output is reproducible and machine-parseable") {
  const std::vector<std::string> args = {"sweep", "--property", "subeq", "--exhaustive", "5",
                                         "--cap", "64", "--seed", "3"};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"violations\":0") != std::string::npos);
  CHECK(a.out.find("\"graphs\":1024") != std::string::npos);
}

TEST_CASE("properties listing") {
  const CliRun run = cli({"properties"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("subeq") != std::string::npos);
  CHECK(run.out.find("main-theorem") != std::string::npos);
}

TEST_CASE("tightness command") {
  const CliRun run = cli({"tightness", "--k", "0", "--l", "1", "--budget", "5", "--seed", "2"});
  CHECK(run.exit_code == 0);
  CHECK(run.out.find("\"bound\":3") != std::string::npos);
  CHECK(run.out.find("\"type\":\"summary\"") != std::string::npos);
}

TEST_SUITE_END();
