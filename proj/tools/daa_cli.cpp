#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "daa/daa.hpp"

namespace {

enum Exit : int { ok = 0, failed = 1, invalid = 2, refused = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw daa::ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

daa::InstanceFile load(const std::string& path) {
  try {
    return daa::parse_instance(slurp(path));
  } catch (const daa::ParseError& e) {
    throw daa::ParseError(path + ": " + e.what());
  }
}

int emit_run(const std::string& path, const daa::RunOptions& options, const std::string& format) {
  auto file = load(path);
  auto report = daa::handler_for(file.problem()).run(file, options);
  if (format == "structured") {
    std::cout << daa::to_json(report).dump(2) << "\n";
  } else {
    std::cout << daa::format_text(report);
  }
  return report.failed() ? failed : ok;
}

daa::GeometryKind parse_geometry(const std::string& s) {
  if (s == "interval") return daa::GeometryKind::interval;
  if (s == "disk") return daa::GeometryKind::disk;
  if (s == "degree") return daa::GeometryKind::bounded_degree;
  throw daa::ValidationError("unknown geometry '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deferred-acceptance auctions: run, verify and generate instances"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  daa::RunOptions run_options;
  std::uint64_t states = run_options.budget.max_states;
  double timeout = run_options.budget.timeout_seconds;

  auto* run = app.add_subcommand("run", "run the auction on an instance file");
  run->add_option("file", file, "instance file")->required();
  run->add_flag("--payments", run_options.payments, "compute threshold payments");
  run->add_flag("--oracle", run_options.oracle, "compare against the exact optimum");
  run->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  run->add_option("--max-states", states, "oracle state budget");
  run->add_option("--timeout", timeout, "oracle time budget in seconds");

  auto* report = app.add_subcommand("report", "full run with payments and oracle");
  report->add_option("file", file, "instance file")->required();
  report->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  report->add_option("--max-states", states, "oracle state budget");
  report->add_option("--timeout", timeout, "oracle time budget in seconds");

  std::string mode;
  std::size_t coalition = 2;
  bool enumerate_others = false;
  std::uint64_t max_runs = daa::VerifierOptions{}.max_runs;
  auto* verify = app.add_subcommand("verify", "search for profitable deviations");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("--mode", mode, "sp or wgsp")->required()->check(CLI::IsMember({"sp", "wgsp"}));
  verify->add_option("--coalition", coalition, "largest coalition size for wgsp")->check(CLI::PositiveNumber);
  verify->add_flag("--all-contexts", enumerate_others, "also enumerate every bid profile of the other bidders");
  verify->add_option("--max-runs", max_runs, "auction re-execution budget");
  verify->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  std::string problem;
  std::uint64_t seed = 0;
  daa::GenParams params;
  std::string geometry = "interval";
  std::string gamma = "1", capacity = "2", routing = "unicast";
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("problem", problem, "spectrum, network or setcover")
      ->required()
      ->check(CLI::IsMember({"spectrum", "network", "setcover"}));
  gen->add_option("--seed", seed, "random seed")->required();
  gen->add_option("--bidders", params.bidders, "number of bidders");
  gen->add_option("--levels", params.bid_levels, "bid levels per bidder");
  gen->add_option("--channels", params.channels, "spectrum: channels k");
  gen->add_option("--geometry", geometry, "spectrum: interval, disk or degree")
      ->check(CLI::IsMember({"interval", "disk", "degree"}));
  gen->add_option("--gamma", gamma, "spectrum: max/min length ratio");
  gen->add_option("--degree", params.degree, "spectrum: degree bound d");
  gen->add_option("--vertices", params.vertices, "network: vertices");
  gen->add_option("--extra-edges", params.extra_edges, "network: edges beyond a spanning tree");
  gen->add_option("--capacity", capacity, "network: minimum capacity C");
  gen->add_option("--mode", routing, "network: unicast or multicast")->check(CLI::IsMember({"unicast", "multicast"}));
  gen->add_option("--terminals", params.multicast_terminals, "network: terminals per multicast firm");
  gen->add_option("--elements", params.elements, "setcover: universe size");
  gen->add_option("--max-set-size", params.max_set_size, "setcover: largest set");
  gen->add_option("-o,--output", out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    run_options.budget.max_states = states;
    run_options.budget.timeout_seconds = timeout;

    if (*run) return emit_run(file, run_options, format);
    if (*report) {
      run_options.payments = true;
      run_options.oracle = true;
      return emit_run(file, run_options, format);
    }
    if (*verify) {
      auto inst = load(file);
      const auto& handler = daa::handler_for(inst.problem());
      auto mech = handler.mechanism(inst);
      daa::VerifierOptions vopts{max_runs, enumerate_others};
      const std::size_t k = mode == "sp" ? 1 : coalition;
      auto dev = mode == "sp"
                     ? daa::verify_strategyproof(mech, handler.orientation, inst.values, inst.bid_spaces, vopts)
                     : daa::verify_wgsp(mech, handler.orientation, inst.values, inst.bid_spaces, k, vopts);
      if (format == "structured") {
        std::cout << daa::to_json(dev, k).dump(2) << "\n";
      } else {
        std::cout << daa::format_text(dev, k);
      }
      return dev.empty() ? ok : failed;
    }
    if (*gen) {
      params.geometry = parse_geometry(geometry);
      params.gamma = daa::parse_rational(gamma);
      params.capacity = daa::parse_rational(capacity);
      params.mode = routing == "unicast" ? daa::RoutingMode::unicast : daa::RoutingMode::multicast;
      auto text = daa::serialize_instance(daa::generate_instance(problem, seed, params));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw daa::ValidationError("cannot write " + out_path);
        out << text;
      }
      return ok;
    }
  } catch (const daa::BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return refused;
  } catch (const daa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  } catch (const daa::InternalFault& e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return failed;
  }
  return ok;
}
