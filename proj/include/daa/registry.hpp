#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "daa/auction.hpp"
#include "daa/incentives.hpp"
#include "daa/io.hpp"
#include "daa/network.hpp"
#include "daa/oracles.hpp"
#include "daa/payments.hpp"
#include "daa/report.hpp"
#include "daa/setcover.hpp"
#include "daa/spectrum.hpp"
#include "daa/submodular.hpp"

namespace daa {

struct RunOptions {
  bool payments = false;
  bool oracle = false;
  OracleBudget budget{};
};

struct ProblemHandler {
  Orientation orientation;
  std::function<Mechanism(const InstanceFile&)> mechanism;
  std::function<RunReport(const InstanceFile&, const RunOptions&)> run;
};

namespace detail {

template <Scorer S>
RunReport run_common(const S& scorer, const InstanceFile& file, const RunOptions& options,
                     AuctionOutcome<typename S::value_type>& outcome) {
  RunReport r;
  r.problem = file.problem();
  r.orientation = file.orientation();
  r.bids = file.effective_bids();
  file.bid_spaces.validate_profile(r.bids);
  outcome = options.payments ? run_with_payments(scorer, file.bid_spaces, r.bids, r.orientation)
                             : run_da_auction(scorer, r.bids, r.orientation);
  r.allocation = outcome.allocation;
  if (options.payments) r.payments = outcome.payments;
  for (const auto& rej : outcome.trace) r.trace.push_back({rej.bidder, to_string(rej.score)});
  r.retained = outcome.retained();
  r.retained_value = outcome.retained_welfare;
  return r;
}

inline double ratio_or_one(const Rational& num, const Rational& den) {
  return den == 0 ? 1.0 : to_double(num) / to_double(den);
}

inline RunReport run_spectrum(const InstanceFile& file, const RunOptions& options) {
  auto inst = std::make_shared<const SpectrumInstance>(std::get<SpectrumInstance>(file.payload));
  SpectrumScorer scorer(inst);
  AuctionOutcome<Rational> outcome;
  RunReport r = run_common(scorer, file, options, outcome);

  const Rational alpha = claw_bound(inst->geometry());
  r.theoretical_ratio = 1.0 - std::exp(-1.0 / to_double(alpha));
  r.parameters.emplace_back("alpha", to_string(alpha));
  if (!std::holds_alternative<ExplicitGeometry>(inst->geometry())) {
    r.parameters.emplace_back("gamma", to_string(length_ratio(inst->geometry())));
  }
  r.parameters.emplace_back("channels", std::to_string(inst->channels()));

  SpectrumScorer replay(inst);
  run_da_auction_in_place(replay, r.bids, r.orientation);
  std::string coloring;
  for (std::size_t c = 0; c < replay.state().classes().size(); ++c) {
    coloring += (c ? " " : "") + std::string("I") + std::to_string(c + 1) + "=" +
                id_list(replay.state().classes()[c]);
  }
  r.certificates.emplace_back("coloring", coloring);
  if (!replay.state().is_valid(inst->graph())) r.failures.push_back("retained set is not properly colored");

  if (options.oracle) {
    auto opt = opt_k_colorable(inst->graph(), inst->channels(), r.bids, options.budget);
    r.optimum = opt.value;
    r.achieved_ratio = ratio_or_one(r.retained_value, opt.value);
    if (!meets_greedy_bound(r.retained_value, opt.value, to_double(alpha))) {
      r.failures.push_back("retained welfare below (1 - e^{-1/alpha}) * OPT");
    }
  }
  return r;
}

inline RunReport run_network(const InstanceFile& file, const RunOptions& options) {
  auto inst = std::make_shared<const NetworkInstance>(std::get<NetworkInstance>(file.payload));
  NetworkScorer scorer(inst);
  AuctionOutcome<double> outcome;
  RunReport r = run_common(scorer, file, options, outcome);

  r.theoretical_ratio = routing_ratio_bound(*inst);
  r.parameters.emplace_back("C", to_string(inst->graph().min_capacity()));
  r.parameters.emplace_back("m", std::to_string(inst->graph().edge_count()));
  r.parameters.emplace_back("gamma", format_double(connector_gamma(inst->mode())));
  r.parameters.emplace_back("mode", to_string(inst->mode()));
  if (inst->mode() == RoutingMode::multicast) {
    r.notes.push_back(
        "multicast bound uses gamma = 2 for the metric-closure Steiner heuristic "
        "(a 1.55-approximate Steiner subroutine would give gamma = 1.55)");
  }

  NetworkScorer replay(inst);
  run_da_auction_in_place(replay, r.bids, r.orientation);
  r.dual_mass_trace.push_back(DualState(inst->graph()).mass());
  for (const auto& routed : replay.routed()) r.dual_mass_trace.push_back(routed.mass_after);
  r.parameters.emplace_back("halt_threshold", format_double(replay.dual().threshold()));

  auto load = check_capacity_feasibility(*inst, replay.routed());
  r.certificates.emplace_back("capacity", load.feasible() ? "feasible" : "VIOLATED");
  if (!load.feasible()) {
    r.failures.push_back("capacity exceeded on edges " + id_list(load.violations));
  }
  auto cert = dual_certificate(*inst, replay.dual().y(), r.bids);
  r.certificates.emplace_back("dual_upper_bound", format_double(cert.bound));
  for (std::size_t i = 0; i < inst->size(); ++i) {
    if (!min_weight_connector(*inst, DualState(inst->graph()).y(), i)) {
      r.notes.push_back("firm " + std::to_string(i) + " has disconnected terminals and cannot be retained");
    }
  }

  if (options.oracle) {
    auto opt = opt_routing(*inst, r.bids, options.budget);
    r.optimum = opt.welfare;
    r.achieved_ratio = ratio_or_one(r.retained_value, opt.welfare);
    if (*r.achieved_ratio < r.theoretical_ratio) {
      r.failures.push_back("retained welfare below the routing bound");
    }
    if (cert.bound < to_double(opt.welfare) * (1.0 - 1e-12)) {
      r.failures.push_back("dual certificate below the optimum");
    }
  }
  return r;
}

inline RunReport run_setcover(const InstanceFile& file, const RunOptions& options) {
  auto inst = std::make_shared<const SetCoverInstance>(std::get<SetCoverInstance>(file.payload));
  SetCoverScorer scorer(inst);
  AuctionOutcome<Rational> outcome;
  RunReport r = run_common(scorer, file, options, outcome);

  const std::size_t f = inst->frequency();
  r.theoretical_ratio = 1.0 / static_cast<double>(f);
  r.parameters.emplace_back("f", std::to_string(f));

  SetCoverScorer replay(inst);
  run_da_auction_in_place(replay, r.bids, r.orientation);
  const Rational lower = dual_cover_certificate(*inst, r.bids, replay.state().y());
  r.certificates.emplace_back("dual_lower_bound", to_string(lower));
  if (!inst->is_cover(r.retained)) r.failures.push_back("retained sets do not cover the universe");
  if (r.retained_value > static_cast<std::int64_t>(f) * lower) {
    r.failures.push_back("cover cost exceeds f times the dual bound");
  }

  if (options.oracle) {
    auto opt = opt_setcover(*inst, r.bids, options.budget);
    r.optimum = opt.value;
    r.achieved_ratio = ratio_or_one(opt.value, r.retained_value);
    if (lower > opt.value || opt.value > r.retained_value) {
      r.failures.push_back("dual bound / optimum / cover cost out of order");
    }
  }
  return r;
}

}  // namespace detail

/// Problem name -> orientation, mechanism factory and report runner.
inline const std::map<std::string, ProblemHandler>& mechanism_registry() {
  static const std::map<std::string, ProblemHandler> registry = {
      {"spectrum",
       {Orientation::procurement,
        [](const InstanceFile& f) {
          auto inst = std::make_shared<const SpectrumInstance>(std::get<SpectrumInstance>(f.payload));
          return make_da_mechanism(SpectrumScorer(inst), f.bid_spaces, Orientation::procurement);
        },
        detail::run_spectrum}},
      {"network",
       {Orientation::procurement,
        [](const InstanceFile& f) {
          auto inst = std::make_shared<const NetworkInstance>(std::get<NetworkInstance>(f.payload));
          return make_da_mechanism(NetworkScorer(inst), f.bid_spaces, Orientation::procurement);
        },
        detail::run_network}},
      {"setcover",
       {Orientation::selling,
        [](const InstanceFile& f) {
          auto inst = std::make_shared<const SetCoverInstance>(std::get<SetCoverInstance>(f.payload));
          return make_da_mechanism(SetCoverScorer(inst), f.bid_spaces, Orientation::selling);
        },
        detail::run_setcover}},
  };
  return registry;
}

inline const ProblemHandler& handler_for(const std::string& problem) {
  const auto& reg = mechanism_registry();
  auto it = reg.find(problem);
  if (it == reg.end()) throw ValidationError("no mechanism registered for '" + problem + "'");
  return it->second;
}

}  // namespace daa
