#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "daa/errors.hpp"
#include "daa/rational.hpp"

namespace daa {

using BidderId = std::size_t;

// Procurement rejects the highest score and stops once every score is 0.
// Selling rejects the lowest score and stops once every score is infinite.
enum class Orientation { procurement, selling };

inline const char* to_string(Orientation o) {
  return o == Orientation::procurement ? "procurement" : "selling";
}

/// Finite per-bidder bid levels together with the value caps v̄_i.
class BidSpace {
 public:
  BidSpace() = default;

  BidSpace(std::vector<std::vector<Rational>> levels, std::vector<Rational> value_caps)
      : levels_(std::move(levels)), caps_(std::move(value_caps)) {
    if (levels_.size() != caps_.size()) {
      throw ValidationError("bid space: " + std::to_string(levels_.size()) +
                            " level lists but " + std::to_string(caps_.size()) +
                            " value caps");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const auto& row = levels_[i];
      const std::string who = "bid space of bidder " + std::to_string(i);
      if (row.empty()) throw ValidationError(who + " is empty");
      if (row.front() < 0) throw ValidationError(who + " has a negative level");
      for (std::size_t j = 1; j < row.size(); ++j) {
        if (!(row[j - 1] < row[j])) throw ValidationError(who + " is not strictly increasing");
      }
      if (caps_[i] < 0) throw ValidationError(who + " has a negative value cap");
      if (!(row.back() > caps_[i])) {
        throw ValidationError(who + ": max level " + to_string(row.back()) +
                              " must exceed value cap " + to_string(caps_[i]));
      }
    }
  }

  // Every bidder gets the same levels; the cap is the largest level below the max.
  static BidSpace uniform(std::size_t bidders, std::vector<Rational> levels) {
    Rational cap = levels.size() >= 2 ? levels[levels.size() - 2] : Rational(0);
    return BidSpace(std::vector<std::vector<Rational>>(bidders, levels),
                    std::vector<Rational>(bidders, cap));
  }

  std::size_t size() const { return levels_.size(); }
  std::span<const Rational> levels(BidderId i) const { return levels_.at(i); }
  const Rational& value_cap(BidderId i) const { return caps_.at(i); }
  const std::vector<std::vector<Rational>>& all_levels() const { return levels_; }
  const std::vector<Rational>& value_caps() const { return caps_; }

  std::optional<std::size_t> index_of(BidderId i, const Rational& bid) const {
    const auto& row = levels_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), bid);
    if (it == row.end() || *it != bid) return std::nullopt;
    return static_cast<std::size_t>(it - row.begin());
  }

  /// Procurement: v⁺ = min{b ∈ B_i : b > v}. Selling: max{b ∈ B_i : b <= v}.
  Rational truthful_bid(BidderId i, const Rational& value, Orientation o) const {
    if (value < 0 || value > caps_.at(i)) {
      throw ValidationError("value " + to_string(value) + " of bidder " + std::to_string(i) +
                            " is outside [0, " + to_string(caps_[i]) + "]");
    }
    const auto& row = levels_[i];
    if (o == Orientation::procurement) {
      auto it = std::upper_bound(row.begin(), row.end(), value);
      return *it;  // exists because max level > cap >= value
    }
    auto it = std::upper_bound(row.begin(), row.end(), value);
    if (it == row.begin()) {
      throw ValidationError("bidder " + std::to_string(i) + " has no level at or below value " +
                            to_string(value));
    }
    return *std::prev(it);
  }

  std::vector<Rational> truthful_profile(std::span<const Rational> values, Orientation o) const {
    if (values.size() != size()) throw ValidationError("value vector has wrong length");
    std::vector<Rational> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.push_back(truthful_bid(i, values[i], o));
    return out;
  }

  void validate_profile(std::span<const Rational> bids) const {
    if (bids.size() != size()) {
      throw ValidationError("bid profile has " + std::to_string(bids.size()) + " bids for " +
                            std::to_string(size()) + " bidders");
    }
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (!index_of(i, bids[i])) {
        throw ValidationError("bid " + to_string(bids[i]) + " of bidder " + std::to_string(i) +
                              " is not in its bid space");
      }
    }
  }

  friend bool operator==(const BidSpace&, const BidSpace&) = default;

 private:
  std::vector<std::vector<Rational>> levels_;
  std::vector<Rational> caps_;
};

/// Nonnegative score extended with +∞.
template <class T>
class ExtendedScore {
 public:
  ExtendedScore() = default;
  ExtendedScore(T value) : value_(std::move(value)) {}

  static ExtendedScore infinity() {
    ExtendedScore s;
    s.infinite_ = true;
    return s;
  }

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && value_ == T(0); }
  const T& value() const { return value_; }

  friend bool operator==(const ExtendedScore& a, const ExtendedScore& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedScore& a, const ExtendedScore& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtendedScore& a, const ExtendedScore& b) { return b < a; }
  friend bool operator<=(const ExtendedScore& a, const ExtendedScore& b) { return !(b < a); }
  friend bool operator>=(const ExtendedScore& a, const ExtendedScore& b) { return !(a < b); }

 private:
  T value_{};
  bool infinite_ = false;
};

template <class T>
std::string to_string(const ExtendedScore<T>& s) {
  if (s.is_infinite()) return "inf";
  if constexpr (std::same_as<T, Rational>) {
    return to_string(s.value());
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", static_cast<double>(s.value()));
    return buf;
  }
}

// A scoring rule s^A_i together with its helper state. The state is advanced
// only through reject(), which is the single place other bidders' bids can
// enter, so score(i, b) depends on i, b and the rejected history alone.
// Copying a scorer snapshots its helper state.
template <class S>
concept Scorer = std::copyable<S> && requires(const S& cs, S& s, BidderId i, const Rational& bid) {
  typename S::value_type;
  { cs.bidder_count() } -> std::convertible_to<std::size_t>;
  { cs.score(i, bid) } -> std::same_as<ExtendedScore<typename S::value_type>>;
  s.reject(i, bid);
};

template <class T>
struct Rejection {
  BidderId bidder;
  ExtendedScore<T> score;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

template <class T>
struct AuctionOutcome {
  std::vector<BidderId> allocation;  // ascending
  std::vector<Rational> payments;    // one per bidder, 0 for non-winners
  std::vector<Rejection<T>> trace;   // rejection order
  Rational retained_welfare{0};      // sum of bids over the rejected set

  bool allocated(BidderId i) const {
    return std::binary_search(allocation.begin(), allocation.end(), i);
  }

  std::vector<BidderId> retained() const {
    std::vector<BidderId> out;
    out.reserve(trace.size());
    for (const auto& r : trace) out.push_back(r.bidder);
    return out;
  }
};

struct EngineOptions {
  // When set, every score query is bracketed by queries at the neighboring
  // bid levels and a decrease raises MonotonicityViolation.
  const BidSpace* monotonicity_probe = nullptr;
};

namespace detail {

template <Scorer S>
void probe_monotone(const S& scorer, const BidSpace& space, BidderId i, const Rational& bid,
                    const ExtendedScore<typename S::value_type>& at_bid) {
  auto idx = space.index_of(i, bid);
  if (!idx) return;
  auto row = space.levels(i);
  if (*idx > 0 && scorer.score(i, row[*idx - 1]) > at_bid) {
    throw MonotonicityViolation("score of bidder " + std::to_string(i) + " drops from bid " +
                                to_string(row[*idx - 1]) + " to " + to_string(bid));
  }
  if (*idx + 1 < row.size() && scorer.score(i, row[*idx + 1]) < at_bid) {
    throw MonotonicityViolation("score of bidder " + std::to_string(i) + " drops from bid " +
                                to_string(bid) + " to " + to_string(row[*idx + 1]));
  }
}

}  // namespace detail

/// Runs the DA auction against `scorer`, advancing its helper state. The
/// scorer must be freshly initialized for the full bidder set.
template <Scorer S>
AuctionOutcome<typename S::value_type> run_da_auction_in_place(S& scorer,
                                                               std::span<const Rational> bids,
                                                               Orientation orientation,
                                                               const EngineOptions& options = {}) {
  using Score = ExtendedScore<typename S::value_type>;
  const std::size_t n = scorer.bidder_count();
  if (bids.size() != n) {
    throw ValidationError("bid profile has " + std::to_string(bids.size()) +
                          " bids; scorer expects " + std::to_string(n));
  }

  AuctionOutcome<typename S::value_type> out;
  out.payments.assign(n, Rational(0));
  std::vector<bool> active(n, true);
  std::size_t remaining = n;

  while (remaining > 0) {
    std::optional<BidderId> pick;
    Score best;
    for (BidderId i = 0; i < n; ++i) {
      if (!active[i]) continue;
      Score s = scorer.score(i, bids[i]);
      if (options.monotonicity_probe) {
        detail::probe_monotone(scorer, *options.monotonicity_probe, i, bids[i], s);
      }
      if (orientation == Orientation::procurement) {
        if (s.is_infinite()) {
          throw InternalFault("procurement scorer returned an infinite score");
        }
        if (s.is_zero()) continue;
        if (!pick || s > best) pick = i, best = s;
      } else {
        if (s.is_infinite()) continue;
        if (!pick || s < best) pick = i, best = s;
      }
    }
    if (!pick) break;
    out.trace.push_back({*pick, best});
    out.retained_welfare += bids[*pick];
    scorer.reject(*pick, bids[*pick]);
    active[*pick] = false;
    --remaining;
  }

  for (BidderId i = 0; i < n; ++i) {
    if (active[i]) out.allocation.push_back(i);
  }
  return out;
}

template <Scorer S>
AuctionOutcome<typename S::value_type> run_da_auction(S scorer, std::span<const Rational> bids,
                                                      Orientation orientation,
                                                      const EngineOptions& options = {}) {
  return run_da_auction_in_place(scorer, bids, orientation, options);
}

}  // namespace daa
