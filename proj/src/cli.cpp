#include "meshfwd/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "meshfwd/experiment.hpp"

namespace meshfwd {

namespace {

std::string fmt6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

// sweep.csv -> sweep_summary.csv; extensionless paths get a plain suffix.
std::string summary_path(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_summary";
  }
  return path.substr(0, dot) + "_summary" + path.substr(dot);
}

void print_hop_lines(const RouteResult& result, std::ostream& out) {
  for (const HopRecord& hop : result.hops) {
    out << "{\"from\":" << hop.from << ",\"to\":" << hop.to
        << ",\"decided_at\":" << fmt6(hop.decided_at)
        << ",\"predicted_bw\":" << fmt6(hop.predicted_bw)
        << ",\"actual_bw\":" << fmt6(hop.actual_bw)
        << ",\"hop_delay\":" << fmt6(hop.hop_delay) << "}\n";
  }
}

void print_decisions(const DecisionTrace& trace, std::ostream& out) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Decision& decision = trace[i];
    out << "decision " << i << " at=" << decision.at
        << " clock=" << fmt6(decision.clock)
        << " direct_delivery=" << (decision.direct_delivery ? 1 : 0) << '\n';
    for (const CandidateScore& cs : decision.candidates) {
      out << "  candidate node=" << cs.node << " in_region=" << (cs.in_region ? 1 : 0)
          << " visited=" << (cs.visited ? 1 : 0)
          << " last_observed=" << fmt6(cs.last_observed)
          << " predicted=" << fmt6(cs.predicted) << " alpha0=" << fmt6(cs.coeffs.alpha0);
      if (cs.coeffs.alpha1) {
        out << " alpha1=" << fmt6(*cs.coeffs.alpha1);
      }
      if (cs.coeffs.alpha2) {
        out << " alpha2=" << fmt6(*cs.coeffs.alpha2);
      }
      out << '\n';
    }
    if (decision.chosen) {
      out << "  chosen node=" << *decision.chosen << '\n';
    } else {
      out << "  chosen none\n";
    }
  }
}

struct GenTopoArgs {
  std::size_t nodes = 100;
  std::vector<double> area = {100.0, 100.0};
  double radius = 15.0;
  std::uint64_t seed = 1;
  std::string out_path;
};

struct RouteArgs {
  std::string topo_path;
  std::size_t nodes = 0;
  std::uint64_t seed = 1;
  NodeId src = 0;
  NodeId dst = 0;
  std::string router = "ml-forwarding";
  double payload = 200.0;
  double warmup = 2500.0;
  bool trace = false;
  bool explain = false;
  bool recompute_region = false;
};

struct SweepArgs {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
};

int do_gen_topo(const GenTopoArgs& args, std::ostream& out) {
  const Topology topo =
      generate_topology(args.nodes, args.area[0], args.area[1], args.radius, args.seed);
  if (args.out_path.empty()) {
    save_topology(topo, out);
  } else {
    save_topology_file(topo, args.out_path);
  }
  return 0;
}

int do_route(const RouteArgs& args, bool have_topo, bool have_nodes,
             std::ostream& out, std::ostream& err) {
  if (have_topo == have_nodes) {
    err << "error: route needs exactly one of --topo or --nodes\n";
    return 2;
  }
  if (args.src == args.dst) {
    err << "error: --src and --dst must differ\n";
    return 2;
  }
  Topology topo = have_topo ? load_topology_file(args.topo_path)
                            : generate_topology(args.nodes, 100.0, 100.0, 15.0,
                                                seed_combine(args.seed, 1));
  const RouterKind kind = router_kind_from_string(args.router);
  NetworkState state =
      init_links(std::move(topo), LinkProcessConfig{}, seed_combine(args.seed, 2));
  state.advance_to(args.warmup);

  DecisionTrace trace;
  RouteOptions options;
  options.recompute_region = args.recompute_region;
  const RouteResult result = route(state, args.src, args.dst, kind, args.payload,
                                   options, args.explain ? &trace : nullptr);

  if (args.trace) {
    print_hop_lines(result, out);
  }
  if (args.explain) {
    print_decisions(trace, out);
  }
  out << "outcome=" << to_string(result.outcome) << " hops=" << result.hops.size();
  if (result.outcome == RouteOutcome::Delivered) {
    const double delay = result.total_delay();
    out << " delay_ms=" << fmt6(delay) << " speed_mb_per_ms=" << fmt6(args.payload / delay);
  }
  out << '\n';
  return result.outcome == RouteOutcome::Delivered ? 0 : 1;
}

int do_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = args.config_path.empty()
                                      ? ExperimentConfig{}
                                      : load_experiment_config_file(args.config_path);
  TableFormat format;
  if (args.format == "csv") {
    format = TableFormat::Csv;
  } else if (args.format == "json-lines") {
    format = TableFormat::JsonLines;
  } else {
    err << "error: unknown format " << args.format << " (expected csv or json-lines)\n";
    return 2;
  }

  const ExperimentTable table = run_sweep(config);
  if (args.out_path.empty()) {
    write_rows(table, format, out);
    out << '\n';
    write_summary(table, format, out);
    return 0;
  }
  std::ofstream rows_out(args.out_path);
  if (!rows_out) {
    err << "error: cannot open " << args.out_path << '\n';
    return 2;
  }
  write_rows(table, format, rows_out);
  const std::string spath = summary_path(args.out_path);
  std::ofstream summary_out(spath);
  if (!summary_out) {
    err << "error: cannot open " << spath << '\n';
    return 2;
  }
  write_summary(table, format, summary_out);
  err << "wrote " << table.rows.size() << " rows to " << args.out_path
      << ", summary to " << spath << '\n';
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wireless mesh forwarding simulator"};
  app.require_subcommand(1);

  GenTopoArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-topo", "generate a random topology");
  gen->add_option("--nodes", gen_args.nodes, "node count")->required();
  gen->add_option("--area", gen_args.area, "area width and height in meters")
      ->expected(2);
  gen->add_option("--radius", gen_args.radius, "radio radius in meters");
  gen->add_option("--seed", gen_args.seed, "placement seed");
  gen->add_option("--out", gen_args.out_path, "output file (default: stdout)");

  RouteArgs route_args;
  CLI::App* rt = app.add_subcommand("route", "route a payload between two nodes");
  CLI::Option* topo_opt = rt->add_option("--topo", route_args.topo_path, "topology file");
  CLI::Option* nodes_opt =
      rt->add_option("--nodes", route_args.nodes, "generate this many nodes instead");
  topo_opt->excludes(nodes_opt);
  rt->add_option("--seed", route_args.seed, "seed for generation and link dynamics");
  rt->add_option("--src", route_args.src, "source node id")->required();
  rt->add_option("--dst", route_args.dst, "destination node id")->required();
  rt->add_option("--router", route_args.router,
                 "ml-forwarding | last-observed-greedy | min-hop");
  rt->add_option("--payload", route_args.payload, "payload in MB");
  rt->add_option("--warmup", route_args.warmup, "ms to advance before routing");
  rt->add_flag("--trace", route_args.trace, "print one record per hop");
  rt->add_flag("--explain", route_args.explain, "print per-decision candidate scores");
  rt->add_flag("--recompute-region", route_args.recompute_region,
               "rebuild the forwarding cone at every relay");

  SweepArgs sweep_args;
  CLI::App* sw = app.add_subcommand("sweep", "run the experiment sweep");
  sw->add_option("--config", sweep_args.config_path, "experiment config file");
  sw->add_option("--out", sweep_args.out_path, "rows output file (default: stdout)");
  sw->add_option("--format", sweep_args.format, "csv | json-lines");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return do_gen_topo(gen_args, out);
    }
    if (rt->parsed()) {
      return do_route(route_args, topo_opt->count() > 0, nodes_opt->count() > 0, out, err);
    }
    return do_sweep(sweep_args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace meshfwd
