#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daa/auction.hpp"
#include "daa/errors.hpp"
#include "daa/rational.hpp"

namespace daa {

class SetCoverInstance {
 public:
  SetCoverInstance(std::size_t universe, std::vector<std::vector<std::size_t>> sets)
      : universe_(universe), sets_(std::move(sets)), containing_(universe) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      auto& s = sets_[i];
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw ValidationError("set " + std::to_string(i) + " lists an element twice");
      }
      for (std::size_t e : s) {
        if (e >= universe_) throw ValidationError("set " + std::to_string(i) + " has element out of range");
        containing_[e].push_back(i);
      }
    }
    for (std::size_t e = 0; e < universe_; ++e) {
      if (containing_[e].empty()) throw ValidationError("element " + std::to_string(e) + " is in no set");
    }
  }

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return sets_.size(); }
  const std::vector<std::size_t>& set(std::size_t i) const { return sets_.at(i); }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }
  const std::vector<std::size_t>& containing(std::size_t e) const { return containing_.at(e); }

  /// f = max over elements of the number of sets containing it.
  std::size_t frequency() const {
    std::size_t f = 0;
    for (const auto& c : containing_) f = std::max(f, c.size());
    return f;
  }

  bool is_cover(std::span<const std::size_t> chosen) const {
    std::vector<bool> hit(universe_, false);
    for (std::size_t i : chosen) {
      for (std::size_t e : sets_.at(i)) hit[e] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  friend bool operator==(const SetCoverInstance& a, const SetCoverInstance& b) {
    return a.universe_ == b.universe_ && a.sets_ == b.sets_;
  }

 private:
  std::size_t universe_;
  std::vector<std::vector<std::size_t>> sets_;
  std::vector<std::vector<std::size_t>> containing_;
};

/// Element duals y(e), the cover built so far and which elements it covers.
class CoverDualState {
 public:
  CoverDualState() = default;
  explicit CoverDualState(const SetCoverInstance& instance)
      : y_(instance.universe(), Rational(0)), covered_(instance.universe(), false) {}

  /// Lowest-indexed element of S_i not yet covered (the first of T_i).
  std::optional<std::size_t> first_uncovered(const SetCoverInstance& instance, std::size_t i) const {
    for (std::size_t e : instance.set(i)) {
      if (!covered_[e]) return e;
    }
    return std::nullopt;
  }

  Rational load(const SetCoverInstance& instance, std::size_t i) const {
    Rational sum(0);
    for (std::size_t e : instance.set(i)) sum += y_[e];
    return sum;
  }

  /// Raise y(element) by `amount` and put set i into the cover.
  void select(const SetCoverInstance& instance, std::size_t i, std::size_t element, const Rational& amount) {
    if (amount < 0) throw InternalFault("negative dual raise");
    y_.at(element) += amount;
    for (std::size_t e : instance.set(i)) covered_[e] = true;
    cover_.push_back(i);
    raised_.push_back(element);
  }

  std::span<const Rational> y() const { return y_; }
  bool covered(std::size_t e) const { return covered_.at(e); }
  const std::vector<std::size_t>& cover() const { return cover_; }
  // element whose dual was raised for each selection, in selection order
  const std::vector<std::size_t>& raised() const { return raised_; }

  bool all_covered() const {
    return std::all_of(covered_.begin(), covered_.end(), [](bool b) { return b; });
  }

 private:
  std::vector<Rational> y_;
  std::vector<bool> covered_;
  std::vector<std::size_t> cover_;
  std::vector<std::size_t> raised_;
};

inline void check_costs(const SetCoverInstance& instance, std::span<const Rational> costs) {
  if (costs.size() != instance.size()) throw ValidationError("cost vector has wrong length");
  for (const auto& c : costs) {
    if (c < 0) throw ValidationError("negative set cost");
  }
}

/// Σ_{e∈S_i} y(e) <= c(i) for every set.
inline bool dual_feasible(const SetCoverInstance& instance, std::span<const Rational> costs,
                          std::span<const Rational> y) {
  for (std::size_t i = 0; i < instance.size(); ++i) {
    Rational sum(0);
    for (std::size_t e : instance.set(i)) sum += y[e];
    if (sum > costs[i]) return false;
  }
  return true;
}

// Which uncovered element the primal-dual loop raises next.
enum class ElementRule {
  // The element a DA rejection is associated with: among sets that still
  // cover something new, take the one with least slack (lowest index on
  // ties) and raise its lowest-indexed uncovered element. Reproduces the
  // inverted DA auction step for step.
  min_slack,
  // Literally the lowest-indexed uncovered element.
  lowest_index,
};

struct CoverResult {
  std::vector<std::size_t> cover;   // selection order
  std::vector<std::size_t> raised;  // element raised for each selection
  std::vector<Rational> raise_amount;
  std::vector<Rational> y;
  Rational cost{0};
};

/// Primal-dual set cover: while some element is uncovered, raise its dual
/// until a set containing it goes tight, and take that set.
inline CoverResult primal_dual_cover(const SetCoverInstance& instance, std::span<const Rational> costs,
                                     ElementRule rule = ElementRule::min_slack) {
  check_costs(instance, costs);
  CoverDualState state(instance);
  CoverResult out;
  std::vector<bool> taken(instance.size(), false);

  while (!state.all_covered()) {
    std::size_t element = 0;
    std::optional<std::size_t> set;
    Rational slack;
    if (rule == ElementRule::min_slack) {
      for (std::size_t i = 0; i < instance.size(); ++i) {
        if (taken[i] || !state.first_uncovered(instance, i)) continue;
        Rational s = costs[i] - state.load(instance, i);
        if (!set || s < slack) set = i, slack = s;
      }
      element = *state.first_uncovered(instance, *set);
    } else {
      while (state.covered(element)) ++element;
      for (std::size_t i : instance.containing(element)) {
        Rational s = costs[i] - state.load(instance, i);
        if (!set || s < slack) set = i, slack = s;
      }
    }
    if (slack < 0) throw InternalFault("dual feasibility lost");
    state.select(instance, *set, element, slack);
    taken[*set] = true;
    out.raise_amount.push_back(slack);
    out.cost += costs[*set];
  }
  out.cover = state.cover();
  out.raised = state.raised();
  out.y.assign(state.y().begin(), state.y().end());
  return out;
}

/// Inverted-auction score: bid minus the dual load of the set while the set
/// would still cover something new, +∞ once it would not.
class SetCoverScorer {
 public:
  using value_type = Rational;

  explicit SetCoverScorer(std::shared_ptr<const SetCoverInstance> instance)
      : instance_(std::move(instance)), state_(*instance_) {}

  std::size_t bidder_count() const { return instance_->size(); }

  ExtendedScore<Rational> score(BidderId i, const Rational& bid) const {
    if (!state_.first_uncovered(*instance_, i)) return ExtendedScore<Rational>::infinity();
    Rational s = bid - state_.load(*instance_, i);
    if (s < 0) throw InternalFault("negative cover score for bidder " + std::to_string(i));
    return s;
  }

  void reject(BidderId i, const Rational& bid) {
    auto e = state_.first_uncovered(*instance_, i);
    if (!e) throw InternalFault("rejected bidder " + std::to_string(i) + " covers nothing new");
    state_.select(*instance_, i, *e, bid - state_.load(*instance_, i));
  }

  const CoverDualState& state() const { return state_; }

 private:
  std::shared_ptr<const SetCoverInstance> instance_;
  CoverDualState state_;
};

/// Weak-duality lower bound Σ_e y(e) on the optimum cover cost.
inline Rational dual_cover_certificate(const SetCoverInstance& instance, std::span<const Rational> costs,
                                       std::span<const Rational> y) {
  check_costs(instance, costs);
  if (y.size() != instance.universe()) throw ValidationError("dual vector has wrong length");
  for (const auto& v : y) {
    if (v < 0) throw InternalFault("negative element dual");
  }
  if (!dual_feasible(instance, costs, y)) throw InternalFault("element duals are not dual feasible");
  Rational sum(0);
  for (const auto& v : y) sum += v;
  return sum;
}

}  // namespace daa
