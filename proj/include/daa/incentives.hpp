#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "daa/auction.hpp"
#include "daa/payments.hpp"

namespace daa {

struct MechanismResult {
  std::vector<bool> allocated;
  std::vector<Rational> payments;
};

// Bids in, allocation and payments out. Must be a pure function of the bids.
using Mechanism = std::function<MechanismResult(std::span<const Rational>)>;

template <Scorer S>
Mechanism make_da_mechanism(S scorer, BidSpace space, Orientation orientation,
                            PaymentSearch search = PaymentSearch::binary) {
  return [scorer = std::move(scorer), space = std::move(space), orientation,
          search](std::span<const Rational> bids) {
    auto outcome = run_with_payments(scorer, space, bids, orientation, search);
    MechanismResult r;
    r.allocated.assign(bids.size(), false);
    for (BidderId i : outcome.allocation) r.allocated[i] = true;
    r.payments = std::move(outcome.payments);
    return r;
  };
}

inline Rational utility(Orientation orientation, bool allocated, const Rational& payment,
                        const Rational& value) {
  if (!allocated) return Rational(0);
  return orientation == Orientation::procurement ? payment - value : value - payment;
}

struct VerifierOptions {
  std::uint64_t max_runs = 10'000'000;
  // Off: bidders outside the deviating group bid truthfully.
  // On: every profile of outsider bids is tried.
  bool enumerate_others = false;
};

struct Deviation {
  std::vector<BidderId> coalition;
  std::vector<Rational> context;  // full bid profile the deviation was tested against
  std::vector<Rational> joint_bid;
  std::vector<Rational> truthful_utility;
  std::vector<Rational> deviant_utility;
};

struct DeviationReport {
  std::vector<Deviation> violations;
  std::uint64_t runs = 0;

  bool empty() const { return violations.empty(); }
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max()
                                                            : a + b;
}

inline void for_each_coalition(std::size_t n, std::size_t max_size,
                               const std::function<void(const std::vector<BidderId>&)>& visit) {
  std::vector<BidderId> current;
  std::function<void(BidderId)> rec = [&](BidderId start) {
    if (!current.empty()) visit(current);
    if (current.size() == max_size) return;
    for (BidderId i = start; i < n; ++i) {
      current.push_back(i);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

// Mixed-radix odometer over the levels of `members`, writing into `profile`.
inline void for_each_joint_bid(const BidSpace& space, const std::vector<BidderId>& members,
                               std::vector<Rational>& profile,
                               const std::function<void()>& visit) {
  std::vector<std::size_t> idx(members.size(), 0);
  for (std::size_t k = 0; k < members.size(); ++k) profile[members[k]] = space.levels(members[k])[0];
  while (true) {
    visit();
    std::size_t k = 0;
    for (; k < members.size(); ++k) {
      auto levels = space.levels(members[k]);
      if (++idx[k] < levels.size()) {
        profile[members[k]] = levels[idx[k]];
        break;
      }
      idx[k] = 0;
      profile[members[k]] = levels[0];
    }
    if (k == members.size()) return;
  }
}

inline DeviationReport search_group_deviations(const Mechanism& mechanism, Orientation orientation,
                                               std::span<const Rational> values,
                                               const BidSpace& space, std::size_t max_group,
                                               const VerifierOptions& options) {
  const std::size_t n = space.size();
  if (values.size() != n) throw ValidationError("value vector has wrong length");
  const auto truthful = space.truthful_profile(values, orientation);

  std::uint64_t planned = 0;
  for_each_coalition(n, max_group, [&](const std::vector<BidderId>& group) {
    std::uint64_t inside = 1, outside = 1;
    std::vector<bool> member(n, false);
    for (BidderId i : group) member[i] = true;
    for (BidderId i = 0; i < n; ++i) {
      auto size = static_cast<std::uint64_t>(space.levels(i).size());
      if (member[i]) inside = saturating_mul(inside, size);
      else if (options.enumerate_others) outside = saturating_mul(outside, size);
    }
    planned = saturating_add(planned, saturating_mul(outside, inside + 1));
  });
  if (planned > options.max_runs) {
    throw BudgetExceeded("incentive check needs " + std::to_string(planned) +
                         " auction runs; cap is " + std::to_string(options.max_runs));
  }

  DeviationReport report;
  for_each_coalition(n, max_group, [&](const std::vector<BidderId>& group) {
    std::vector<bool> member(n, false);
    for (BidderId i : group) member[i] = true;
    std::vector<BidderId> outsiders;
    for (BidderId i = 0; i < n; ++i) {
      if (!member[i]) outsiders.push_back(i);
    }

    std::vector<Rational> profile = truthful;
    auto check_context = [&] {
      for (BidderId i : group) profile[i] = truthful[i];
      const std::vector<Rational> context = profile;
      const auto base = mechanism(context);
      ++report.runs;
      std::vector<Rational> base_utility;
      for (BidderId i : group) {
        base_utility.push_back(utility(orientation, base.allocated[i], base.payments[i], values[i]));
      }
      for_each_joint_bid(space, group, profile, [&] {
        const auto result = mechanism(profile);
        ++report.runs;
        std::vector<Rational> gained;
        bool all_gain = true;
        for (std::size_t k = 0; k < group.size(); ++k) {
          BidderId i = group[k];
          gained.push_back(utility(orientation, result.allocated[i], result.payments[i], values[i]));
          if (!(gained.back() > base_utility[k])) all_gain = false;
        }
        if (!all_gain) return;
        Deviation d;
        d.coalition = group;
        d.context = context;
        for (BidderId i : group) d.joint_bid.push_back(profile[i]);
        d.truthful_utility = base_utility;
        d.deviant_utility = std::move(gained);
        report.violations.push_back(std::move(d));
      });
    };

    if (options.enumerate_others && !outsiders.empty()) {
      for_each_joint_bid(space, outsiders, profile, check_context);
    } else {
      check_context();
    }
  });
  return report;
}

}  // namespace detail

/// Exhaustive unilateral deviation search: reports every (bidder, bid) that
/// strictly beats bidding the truthful level.
inline DeviationReport verify_strategyproof(const Mechanism& mechanism, Orientation orientation,
                                            std::span<const Rational> values,
                                            const BidSpace& space,
                                            const VerifierOptions& options = {}) {
  return detail::search_group_deviations(mechanism, orientation, values, space, 1, options);
}

/// Exhaustive joint deviation search over every coalition of up to
/// `max_coalition` bidders. A violation is a joint bid under which every
/// member is strictly better off than under truthful reporting.
inline DeviationReport verify_wgsp(const Mechanism& mechanism, Orientation orientation,
                                   std::span<const Rational> values, const BidSpace& space,
                                   std::size_t max_coalition = 2,
                                   const VerifierOptions& options = {}) {
  if (max_coalition == 0) throw ValidationError("coalition size must be at least 1");
  return detail::search_group_deviations(mechanism, orientation, values, space, max_coalition,
                                         options);
}

}  // namespace daa
