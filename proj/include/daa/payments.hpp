#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "daa/auction.hpp"

namespace daa {

enum class PaymentSearch {
  binary,     // relies on the winning set being an interval of B_i
  full_scan,  // literal max/min over every level
};

/// For each level of B_i (ascending), whether `bidder` is allocated when it
/// bids that level and everyone else keeps their bid.
template <Scorer S>
std::vector<bool> winning_levels(const S& scorer, const BidSpace& space,
                                 std::span<const Rational> bids, BidderId bidder,
                                 Orientation orientation) {
  std::vector<Rational> probe(bids.begin(), bids.end());
  std::vector<bool> wins;
  for (const auto& level : space.levels(bidder)) {
    probe[bidder] = level;
    wins.push_back(run_da_auction(scorer, probe, orientation).allocated(bidder));
  }
  return wins;
}

/// Threshold payment: max winning bid (procurement) or min winning bid
/// (selling) with the other bids fixed.
template <Scorer S>
Rational compute_payment(const S& scorer, const BidSpace& space, std::span<const Rational> bids,
                         BidderId winner, Orientation orientation,
                         PaymentSearch search = PaymentSearch::binary) {
  space.validate_profile(bids);
  if (winner >= bids.size()) throw std::domain_error("no such bidder");
  const auto levels = space.levels(winner);
  std::vector<Rational> probe(bids.begin(), bids.end());
  auto wins_at = [&](std::size_t j) {
    probe[winner] = levels[j];
    return run_da_auction(scorer, probe, orientation).allocated(winner);
  };

  const std::size_t current = *space.index_of(winner, bids[winner]);
  if (!wins_at(current)) {
    throw std::domain_error("bidder " + std::to_string(winner) + " is not allocated");
  }

  if (search == PaymentSearch::full_scan) {
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (!wins_at(j)) continue;
      if (orientation == Orientation::selling) return levels[j];
      found = j;
    }
    if (!found) throw InternalFault("winner has no winning level");
    return levels[*found];
  }

  if (orientation == Orientation::procurement) {
    // Largest winning index in [current, size): winners form a prefix.
    std::size_t lo = current, hi = levels.size() - 1;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo + 1) / 2;
      if (wins_at(mid)) lo = mid; else hi = mid - 1;
    }
    return levels[lo];
  }
  // Smallest winning index in [0, current]: winners form a suffix.
  std::size_t lo = 0, hi = current;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (wins_at(mid)) hi = mid; else lo = mid + 1;
  }
  return levels[lo];
}

/// Runs the auction and fills in threshold payments for every winner.
template <Scorer S>
AuctionOutcome<typename S::value_type> run_with_payments(const S& scorer, const BidSpace& space,
                                                         std::span<const Rational> bids,
                                                         Orientation orientation,
                                                         PaymentSearch search = PaymentSearch::binary) {
  space.validate_profile(bids);
  auto outcome = run_da_auction(scorer, bids, orientation);
  for (BidderId i : outcome.allocation) {
    outcome.payments[i] = compute_payment(scorer, space, bids, i, orientation, search);
  }
  return outcome;
}

/// Procurement: the winning levels are downward-closed. Selling: upward-closed.
template <Scorer S>
bool verify_allocation_monotone(const S& scorer, const BidSpace& space,
                                std::span<const Rational> bids, BidderId bidder,
                                Orientation orientation) {
  auto wins = winning_levels(scorer, space, bids, bidder, orientation);
  if (orientation == Orientation::selling) std::reverse(wins.begin(), wins.end());
  // Must look like 1...10...0.
  bool seen_loss = false;
  for (bool w : wins) {
    if (!w) seen_loss = true;
    else if (seen_loss) return false;
  }
  return true;
}

}  // namespace daa
