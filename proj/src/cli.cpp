#include "vmlink/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vmlink/graph6.hpp"
#include "vmlink/harness.hpp"
#include "vmlink/linking.hpp"
#include "vmlink/rankconn.hpp"

namespace vmlink {

namespace {

using nlohmann::json;

Graph load_graph(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open graph file " + arg.substr(1));
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty graph file " + arg.substr(1));
    return from_graph6(line);
  }
  return from_graph6(arg);
}

VertexSet parse_set(const std::string& text, const char* flag) {
  if (text.empty() || text == "-") return VertexSet{};
  VertexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      v = -1;
    }
    if (v < 0 || v > 63 || used != item.size())
      throw std::invalid_argument(std::string(flag) + ": malformed vertex set '" + text + "'");
    out = out.with(v);
  }
  return out;
}

json set_json(VertexSet set) { return json{{"ids", set.ids()}, {"mask", set.to_hex()}}; }

json options_json(OptionSet options) {
  json names = json::array();
  for (ReductionKind k : options.kinds()) names.push_back(reduction_name(k));
  return names;
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (int u : g.vertices())
    for (int v : g.neighbors(u))
      if (u < v) edges.push_back(json::array({u, v}));
  json out{{"vertices", g.vertices().ids()}, {"edges", edges}};
  if (g.vertices() == VertexSet::range(g.vertex_count())) {
    out["graph6"] = to_graph6(g);
  } else {
    // Compact labeling for interoperability; labels map back to original ids.
    const auto ids = g.vertices().ids();
    Graph compact(static_cast<int>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        if (g.has_edge(ids[i], ids[j])) compact.add_edge(static_cast<int>(i), static_cast<int>(j));
    out["graph6_compact"] = to_graph6(compact);
    out["labels"] = ids;
  }
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

struct SweepArgs {
  std::string property;
  int exhaustive_n = -1;
  std::string random_arg;
  std::string from_file;
  std::uint64_t seed = 0;
  std::uint64_t cap = 256;
  int threads = 1;
  std::string out_path;
};

SweepSpec to_spec(const SweepArgs& args) {
  SweepSpec spec;
  spec.property = args.property;
  spec.seed = args.seed;
  spec.tuple_cap = args.cap;
  spec.threads = args.threads;
  const int sources = (args.exhaustive_n >= 0) + !args.random_arg.empty() + !args.from_file.empty();
  if (sources != 1)
    throw std::invalid_argument(
        "sweep: exactly one of --exhaustive, --random, --from-file is required");
  if (args.exhaustive_n >= 0) {
    spec.generator = SweepSpec::Exhaustive{args.exhaustive_n};
  } else if (!args.random_arg.empty()) {
    SweepSpec::Random random;
    std::stringstream ss(args.random_arg);
    std::string n_str, p_str, count_str;
    if (!std::getline(ss, n_str, ',') || !std::getline(ss, p_str, ',') ||
        !std::getline(ss, count_str))
      throw std::invalid_argument("--random: expected N,PROB,COUNT, got '" + args.random_arg + "'");
    try {
      random.n = std::stoi(n_str);
      random.edge_prob = std::stod(p_str);
      random.count = std::stoull(count_str);
    } catch (const std::exception&) {
      throw std::invalid_argument("--random: expected N,PROB,COUNT, got '" + args.random_arg + "'");
    }
    spec.generator = random;
  } else {
    spec.generator = SweepSpec::FromFile{args.from_file};
  }
  return spec;
}

void write_out(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cut-rank connectivity and vertex-minor linking toolkit"};
  app.require_subcommand(1);

  std::string g_arg, q_arg, r_arg, s_arg, t_arg, x_arg, f_arg, drop_arg;
  int vertex = -1;
  bool brute = false;
  bool pivot_only = false;
  SweepArgs sweep_args;
  TightnessSpec tightness_spec;
  std::string tightness_out;

  const auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("-g,--graph", g_arg, "graph6 string or @file")->required();
  };

  auto* cutrank = app.add_subcommand("cutrank", "cut-rank of a vertex set");
  add_graph(cutrank);
  cutrank->add_option("-x,--set", x_arg, "vertex ids, comma separated");

  auto* kappa_cmd = app.add_subcommand("kappa", "connectivity between S and T, with witness");
  add_graph(kappa_cmd);
  kappa_cmd->add_option("-s", s_arg, "S ids");
  kappa_cmd->add_option("-t", t_arg, "T ids");
  kappa_cmd->add_flag("--brute", brute, "plain enumeration instead of the pruned search");

  auto* options_cmd =
      app.add_subcommand("options", "reductions at v preserving connectivity (both pairs if S,T given)");
  add_graph(options_cmd);
  options_cmd->add_option("-q", q_arg, "Q ids");
  options_cmd->add_option("-r", r_arg, "R ids");
  options_cmd->add_option("-s", s_arg, "S ids (switches to the joint check)");
  options_cmd->add_option("-t", t_arg, "T ids (switches to the joint check)");
  options_cmd->add_option("-v,--vertex", vertex, "free vertex")->required();
  options_cmd->add_flag("--pivot-only", pivot_only, "restrict to delete and pivot-delete");

  auto* flexible_cmd = app.add_subcommand("flexible", "is v (S,T)-flexible");
  add_graph(flexible_cmd);
  flexible_cmd->add_option("-s", s_arg, "S ids");
  flexible_cmd->add_option("-t", t_arg, "T ids");
  flexible_cmd->add_option("-v,--vertex", vertex, "free vertex")->required();

  auto* chain_cmd = app.add_subcommand("chain", "nested separating chain through F");
  add_graph(chain_cmd);
  chain_cmd->add_option("-s", s_arg, "S ids");
  chain_cmd->add_option("-t", t_arg, "T ids");
  chain_cmd->add_option("-f", f_arg, "F ids (must all be non-flexible)")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "drop vertices keeping both connectivities");
  add_graph(reduce_cmd);
  reduce_cmd->add_option("-q", q_arg, "Q ids");
  reduce_cmd->add_option("-r", r_arg, "R ids");
  reduce_cmd->add_option("-s", s_arg, "S ids");
  reduce_cmd->add_option("-t", t_arg, "T ids");
  reduce_cmd->add_option("--drop", drop_arg, "free ids to remove")->required();

  auto* find_cmd = app.add_subcommand("find-vertex", "first doubly-good free vertex");
  add_graph(find_cmd);
  find_cmd->add_option("-q", q_arg, "Q ids");
  find_cmd->add_option("-r", r_arg, "R ids");
  find_cmd->add_option("-s", s_arg, "S ids");
  find_cmd->add_option("-t", t_arg, "T ids");

  auto* sweep_cmd = app.add_subcommand("sweep", "verify a lemma/theorem over many instances");
  sweep_cmd->add_option("--property", sweep_args.property, "property id (see --list)")
      ->required();
  sweep_cmd->add_option("--exhaustive", sweep_args.exhaustive_n, "all labeled graphs on N vertices");
  sweep_cmd->add_option("--random", sweep_args.random_arg, "N,PROB,COUNT random graphs");
  sweep_cmd->add_option("--from-file", sweep_args.from_file, "graph6 lines");
  sweep_cmd->add_option("--seed", sweep_args.seed, "sweep seed");
  sweep_cmd->add_option("--cap", sweep_args.cap, "per-graph tuple cap");
  sweep_cmd->add_option("--threads", sweep_args.threads, "worker threads (0 = hardware)");
  sweep_cmd->add_option("--out", sweep_args.out_path, "also write the report body to this path");

  auto* props_cmd = app.add_subcommand("properties", "list sweepable property ids");

  auto* tight_cmd = app.add_subcommand("tightness", "search below the two-pair bound for failures");
  tight_cmd->add_option("--k", tightness_spec.k, "target kappa(Q,R)")->required();
  tight_cmd->add_option("--l", tightness_spec.ell, "target kappa(S,T)")->required();
  tight_cmd->add_option("--budget", tightness_spec.budget, "instances per |F| value");
  tight_cmd->add_option("--seed", tightness_spec.seed, "seed");
  tight_cmd->add_option("--out", tightness_out, "also write the report body to this path");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> raw;
    raw.push_back("vmlink");
    for (const auto& a : argv) raw.push_back(a.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(cutrank)) {
      const Graph g = load_graph(g_arg);
      const VertexSet x = parse_set(x_arg, "-x");
      emit(out, json{{"command", "cutrank"}, {"x", set_json(x)}, {"value", cut_rank(g, x)}});
    } else if (app.got_subcommand(kappa_cmd)) {
      const Graph g = load_graph(g_arg);
      const VertexSet s = parse_set(s_arg, "-s");
      const VertexSet t = parse_set(t_arg, "-t");
      const KappaResult res = brute ? kappa_bruteforce(g, s, t) : kappa(g, s, t);
      emit(out, json{{"command", "kappa"},
                     {"s", set_json(s)},
                     {"t", set_json(t)},
                     {"value", res.value},
                     {"witness", set_json(res.witness)}});
    } else if (app.got_subcommand(options_cmd)) {
      const Graph g = load_graph(g_arg);
      const VertexSet q = parse_set(q_arg, "-q");
      const VertexSet r = parse_set(r_arg, "-r");
      const bool joint = !s_arg.empty() || !t_arg.empty() || pivot_only;
      OptionSet options;
      if (joint) {
        const LinkingInstance inst = LinkingInstance::make(
            g, q, r, parse_set(s_arg, "-s"), parse_set(t_arg, "-t"));
        options = pivot_only ? pivot_only_options(inst, vertex) : joint_good_options(inst, vertex);
      } else {
        options = oum_linking_options(g, q, r, vertex);
      }
      emit(out, json{{"command", "options"},
                     {"vertex", vertex},
                     {"joint", joint},
                     {"options", options_json(options)}});
    } else if (app.got_subcommand(flexible_cmd)) {
      const Graph g = load_graph(g_arg);
      emit(out, json{{"command", "flexible"},
                     {"vertex", vertex},
                     {"flexible",
                      is_flexible(g, parse_set(s_arg, "-s"), parse_set(t_arg, "-t"), vertex)}});
    } else if (app.got_subcommand(chain_cmd)) {
      const Graph g = load_graph(g_arg);
      const SeparatingChain chain =
          separating_chain(g, parse_set(s_arg, "-s"), parse_set(t_arg, "-t"),
                           parse_set(f_arg, "-f"));
      json sets = json::array();
      for (const VertexSet& a : chain.sets) sets.push_back(set_json(a));
      emit(out, json{{"command", "chain"}, {"order", chain.order}, {"sets", sets}});
    } else if (app.got_subcommand(reduce_cmd)) {
      const Graph g = load_graph(g_arg);
      const LinkingInstance inst =
          LinkingInstance::make(g, parse_set(q_arg, "-q"), parse_set(r_arg, "-r"),
                                parse_set(s_arg, "-s"), parse_set(t_arg, "-t"));
      const Graph h = reduce_preserving(inst, parse_set(drop_arg, "--drop"));
      emit(out, json{{"command", "reduce"},
                     {"k", inst.k},
                     {"l", inst.ell},
                     {"result", graph_json(h)}});
    } else if (app.got_subcommand(find_cmd)) {
      const Graph g = load_graph(g_arg);
      const LinkingInstance inst =
          LinkingInstance::make(g, parse_set(q_arg, "-q"), parse_set(r_arg, "-r"),
                                parse_set(s_arg, "-s"), parse_set(t_arg, "-t"));
      const auto found = find_doubly_good_vertex(inst);
      json res{{"command", "find-vertex"}, {"k", inst.k},  {"l", inst.ell},
               {"free", set_json(inst.free)}};
      if (found.has_value()) {
        res["vertex"] = found->v;
        res["options"] = options_json(found->options);
      } else {
        res["vertex"] = nullptr;
        res["note"] = "no doubly-good vertex; |F| is below the guarantee bound";
      }
      emit(out, res);
    } else if (app.got_subcommand(sweep_cmd)) {
      const SweepReport report = run_sweep(to_spec(sweep_args));
      const std::string body = report.body();
      out << body;
      write_out(sweep_args.out_path, body);
      err << "sweep finished in " << report.wall_seconds << "s\n";
      if (!report.passed()) {
        err << "theorem violation: " << report.violations.size() << " record(s)"
            << (sweep_args.out_path.empty() ? "" : " written to " + sweep_args.out_path) << "\n";
        return 2;
      }
    } else if (app.got_subcommand(props_cmd)) {
      for (const auto& name : known_properties()) out << name << '\n';
    } else if (app.got_subcommand(tight_cmd)) {
      const TightnessReport report = tightness_search(tightness_spec);
      const std::string body = report.body();
      out << body;
      write_out(tightness_out, body);
    }
    return 0;
  } catch (const theorem_violation& tv) {
    const std::string line = tv.report().to_json_line();
    out << line << '\n';
    std::ofstream persist("violation_report.jsonl", std::ios::app);
    persist << line << '\n';
    err << "theorem violation in " << tv.report().operation
        << ": report on stdout and appended to violation_report.jsonl\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace vmlink
