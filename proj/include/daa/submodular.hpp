#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "daa/errors.hpp"
#include "daa/rational.hpp"

namespace daa {

using Subset = std::vector<std::size_t>;

/// f : 2^M -> T over ground set {0..size-1}, with f(∅) = 0.
template <class T>
class SetFunctionOracle {
 public:
  using Evaluator = std::function<T(std::span<const std::size_t>)>;

  SetFunctionOracle(std::size_t ground_size, Evaluator f)
      : ground_size_(ground_size), f_(std::move(f)) {
    if (f_(std::span<const std::size_t>{}) != T(0)) throw ValidationError("f(empty set) must be 0");
  }

  std::size_t ground_size() const { return ground_size_; }
  T operator()(std::span<const std::size_t> s) const { return f_(s); }

  T marginal(std::span<const std::size_t> s, std::size_t i) const {
    Subset with(s.begin(), s.end());
    with.push_back(i);
    return f_(with) - f_(s);
  }

 private:
  std::size_t ground_size_;
  Evaluator f_;
};

/// f(S) = total weight of the union of the item sets indexed by S.
class CoverageFunction {
 public:
  CoverageFunction(std::vector<std::vector<std::size_t>> family, std::vector<Rational> item_weights)
      : family_(std::move(family)), weights_(std::move(item_weights)) {
    for (const auto& w : weights_) {
      if (w < 0) throw ValidationError("coverage item weight must be nonnegative");
    }
    for (const auto& set : family_) {
      for (std::size_t item : set) {
        if (item >= weights_.size()) throw ValidationError("coverage item out of range");
      }
    }
  }

  Rational operator()(std::span<const std::size_t> chosen) const {
    std::vector<bool> seen(weights_.size(), false);
    Rational total(0);
    for (std::size_t s : chosen) {
      for (std::size_t item : family_.at(s)) {
        if (!seen[item]) seen[item] = true, total += weights_[item];
      }
    }
    return total;
  }

  std::size_t ground_size() const { return family_.size(); }
  SetFunctionOracle<Rational> oracle() const {
    return SetFunctionOracle<Rational>(ground_size(), *this);
  }

 private:
  std::vector<std::vector<std::size_t>> family_;
  std::vector<Rational> weights_;
};

// Given the marginals of the candidates, returns the position of the chosen one.
template <class T>
using ElementPicker = std::function<std::size_t(std::span<const T>)>;

template <class T>
ElementPicker<T> exact_picker() {
  return [](std::span<const T> marginals) {
    return static_cast<std::size_t>(std::max_element(marginals.begin(), marginals.end()) -
                                    marginals.begin());
  };
}

/// Adversarial α-approximate picker: the smallest marginal that is still
/// at least max/α (lowest position on ties).
template <class T>
ElementPicker<T> weakest_admissible_picker(T alpha) {
  return [alpha](std::span<const T> marginals) {
    const T best = *std::max_element(marginals.begin(), marginals.end());
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < marginals.size(); ++j) {
      if (marginals[j] * alpha < best) continue;
      if (!pick || marginals[j] < marginals[*pick]) pick = j;
    }
    return *pick;
  };
}

template <class T>
struct GreedyTrace {
  Subset selected;      // in pick order
  std::vector<T> values;  // f(S_0), f(S_1), ..., f(S_j)
};

/// Greedy cardinality-constrained maximization with a pluggable picker.
/// When `alpha` is given, every pick is checked against the α guarantee.
template <class T>
GreedyTrace<T> greedy_cardinality_max(const SetFunctionOracle<T>& f, std::size_t k,
                                      const ElementPicker<T>& pick,
                                      std::optional<T> alpha = std::nullopt) {
  GreedyTrace<T> trace;
  trace.values.push_back(T(0));
  std::vector<bool> used(f.ground_size(), false);
  for (std::size_t round = 0; round < k && trace.selected.size() < f.ground_size(); ++round) {
    std::vector<std::size_t> candidates;
    std::vector<T> marginals;
    const T current = trace.values.back();
    for (std::size_t i = 0; i < f.ground_size(); ++i) {
      if (used[i]) continue;
      Subset with = trace.selected;
      with.push_back(i);
      candidates.push_back(i);
      marginals.push_back(f(with) - current);
    }
    std::size_t pos = pick(std::span<const T>(marginals));
    if (pos >= candidates.size()) throw InternalFault("picker returned an invalid position");
    if (alpha) {
      const T best = *std::max_element(marginals.begin(), marginals.end());
      if (marginals[pos] * *alpha < best) {
        throw InternalFault("picker violated its approximation guarantee");
      }
    }
    used[candidates[pos]] = true;
    trace.selected.push_back(candidates[pos]);
    trace.values.push_back(current + marginals[pos]);
  }
  return trace;
}

template <class T>
struct SubsetOptimum {
  Subset subset;
  T value{};
};

/// Exact max over all subsets of size at most k. Refuses when the number of
/// subsets exceeds `max_subsets`.
template <class T>
SubsetOptimum<T> brute_force_max(const SetFunctionOracle<T>& f, std::size_t k,
                                 std::uint64_t max_subsets = 50'000'000) {
  const std::size_t m = f.ground_size();
  k = std::min(k, m);
  // Σ_{j≤k} C(m, j), saturating.
  std::uint64_t total = 0, term = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    total += term;
    if (total > max_subsets) {
      throw BudgetExceeded("brute-force max over " + std::to_string(m) + " elements with k=" +
                           std::to_string(k) + " exceeds " + std::to_string(max_subsets) +
                           " subsets");
    }
    term = term * (m - j) / (j + 1);
  }

  SubsetOptimum<T> best{{}, T(0)};
  Subset current;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!current.empty()) {
      T value = f(current);
      if (value > best.value) best = {current, value};
    }
    if (current.size() == k) return;
    for (std::size_t i = from; i < m; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

/// The (1 - e^{-1/α}) guarantee. The constant is irrational, so the
/// comparison allows a relative slack of 1e-12.
inline bool meets_greedy_bound(const Rational& achieved, const Rational& optimum, double alpha) {
  const double factor = 1.0 - std::exp(-1.0 / alpha);
  const double need = factor * to_double(optimum);
  return to_double(achieved) >= need - 1e-12 * std::abs(need);
}

template <class T>
bool check_approximate_greedy_bound(const SetFunctionOracle<T>& f, std::size_t k, double alpha, const T& achieved) {
  return meets_greedy_bound(achieved, brute_force_max(f, k).value, alpha);
}

struct GreedyStepReport {
  bool per_step_gain = true;    // f(S_{j+1}) - f(S_j) >= (f(O) - f(S_j)) / (αk)
  bool geometric_decay = true;  // f(O) - f(S_j) <= (1 - 1/(αk))^j f(O)
  std::optional<std::size_t> first_failure;
};

/// Checks both per-iteration inequalities of the α-approximate greedy
/// analysis along a recorded trace, in exact arithmetic.
inline GreedyStepReport check_greedy_steps(const GreedyTrace<Rational>& trace, const Rational& optimum,
                                       const Rational& alpha, std::size_t k) {
  GreedyStepReport report;
  if (k == 0) return report;
  const Rational step = Rational(1) / (alpha * static_cast<std::int64_t>(k));
  Rational decay(1);
  for (std::size_t j = 0; j < trace.values.size(); ++j) {
    const Rational gap = optimum - trace.values[j];
    if (gap > decay * optimum) {
      report.geometric_decay = false;
      if (!report.first_failure) report.first_failure = j;
    }
    if (j + 1 < trace.values.size() && j < k) {
      if (trace.values[j + 1] - trace.values[j] < step * gap) {
        report.per_step_gain = false;
        if (!report.first_failure) report.first_failure = j;
      }
    }
    decay *= Rational(1) - step;
  }
  return report;
}

/// Randomized spot check of f(∅)=0, monotonicity and diminishing returns on
/// nested pairs A ⊂ B. Returns false on the first counterexample.
template <class T>
bool spot_check_submodular(const SetFunctionOracle<T>& f, std::size_t trials, std::uint64_t seed) {
  if (f(std::span<const std::size_t>{}) != T(0)) return false;
  const std::size_t m = f.ground_size();
  if (m == 0) return true;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Subset a, b;
    for (std::size_t i = 0; i < m; ++i) {
      auto r = rng() % 3;
      if (r == 0) a.push_back(i), b.push_back(i);
      else if (r == 1) b.push_back(i);
    }
    std::size_t extra = rng() % m;
    if (f(a) > f(b)) return false;
    if (std::find(b.begin(), b.end(), extra) != b.end()) continue;
    if (f.marginal(a, extra) < f.marginal(b, extra)) return false;
  }
  return true;
}

}  // namespace daa
