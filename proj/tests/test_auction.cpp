#include <gtest/gtest.h>

#include <memory>

#include "support.hpp"

using namespace daa;
using support::ints;

namespace {

// Score = bid, no state. Rejects every positive bidder, largest first.
struct PlainScorer {
  using value_type = Rational;
  std::size_t n;
  std::size_t bidder_count() const { return n; }
  ExtendedScore<Rational> score(BidderId, const Rational& bid) const { return bid; }
  void reject(BidderId, const Rational&) {}
};

// Score decreases with the bid.
struct InvertedScorer {
  using value_type = Rational;
  std::size_t bidder_count() const { return 1; }
  ExtendedScore<Rational> score(BidderId, const Rational& bid) const { return Rational(10) - bid; }
  void reject(BidderId, const Rational&) {}
};

struct InfiniteScorer {
  using value_type = Rational;
  std::size_t bidder_count() const { return 1; }
  ExtendedScore<Rational> score(BidderId, const Rational&) const { return ExtendedScore<Rational>::infinity(); }
  void reject(BidderId, const Rational&) {}
};

std::shared_ptr<const SpectrumInstance> path_instance(std::size_t k) {
  IntervalGeometry g;
  for (int i = 0; i < 3; ++i) g.intervals.push_back({Rational(i), Rational(1)});
  return std::make_shared<const SpectrumInstance>(g, k);
}

}  // namespace

TEST(BidSpace, RejectsMalformedLevels) {
  EXPECT_THROW(BidSpace({{}}, ints({0})), ValidationError);
  EXPECT_THROW(BidSpace({ints({0, 2, 1})}, ints({0})), ValidationError);
  EXPECT_THROW(BidSpace({ints({1, 1, 2})}, ints({0})), ValidationError);
  EXPECT_THROW(BidSpace({ints({-1, 2})}, ints({0})), ValidationError);
  EXPECT_THROW(BidSpace({ints({0, 2})}, ints({2})), ValidationError);
  EXPECT_THROW(BidSpace({ints({0, 2})}, ints({0, 1})), ValidationError);
  EXPECT_NO_THROW(BidSpace({ints({0, 2})}, ints({1})));
}

TEST(BidSpace, ProcurementTruthfulBidIsNextLevelUp) {
  BidSpace b({ints({0, 1, 2, 3})}, ints({2}));
  EXPECT_EQ(b.truthful_bid(0, Rational(0), Orientation::procurement), Rational(1));
  EXPECT_EQ(b.truthful_bid(0, Rational(3, 2), Orientation::procurement), Rational(2));
  EXPECT_EQ(b.truthful_bid(0, Rational(2), Orientation::procurement), Rational(3));
  EXPECT_THROW(b.truthful_bid(0, Rational(5, 2), Orientation::procurement), ValidationError);
  EXPECT_THROW(b.truthful_bid(0, Rational(-1), Orientation::procurement), ValidationError);
}

TEST(BidSpace, SellingTruthfulBidIsLevelAtOrBelow) {
  BidSpace b({ints({1, 2, 3})}, ints({2}));
  EXPECT_EQ(b.truthful_bid(0, Rational(2), Orientation::selling), Rational(2));
  EXPECT_EQ(b.truthful_bid(0, Rational(3, 2), Orientation::selling), Rational(1));
  EXPECT_THROW(b.truthful_bid(0, Rational(1, 2), Orientation::selling), ValidationError);
}

TEST(BidSpace, ValidateProfile) {
  auto b = BidSpace::uniform(2, ints({0, 1, 2}));
  EXPECT_EQ(b.value_cap(1), Rational(1));
  EXPECT_NO_THROW(b.validate_profile(ints({0, 2})));
  EXPECT_THROW(b.validate_profile(ints({0, 3})), ValidationError);
  EXPECT_THROW(b.validate_profile(ints({0})), ValidationError);
  EXPECT_EQ(b.index_of(0, Rational(2)), 2u);
  EXPECT_FALSE(b.index_of(0, Rational(1, 2)));
}

TEST(ExtendedScore, InfinityIsLargest) {
  using S = ExtendedScore<Rational>;
  EXPECT_LT(S(Rational(100)), S::infinity());
  EXPECT_FALSE(S::infinity() < S::infinity());
  EXPECT_EQ(S::infinity(), S::infinity());
  EXPECT_NE(S(Rational(0)), S::infinity());
  EXPECT_TRUE(S(Rational(0)).is_zero());
  EXPECT_FALSE(S::infinity().is_zero());
  EXPECT_EQ(to_string(S::infinity()), "inf");
  EXPECT_EQ(to_string(S(Rational(3, 4))), "3/4");
  EXPECT_EQ(to_string(ExtendedScore<double>(10.0)), "10");
}

TEST(Engine, ProcurementRejectsByDecreasingScoreWithIndexTies) {
  auto out = run_da_auction(PlainScorer{4}, ints({2, 5, 5, 0}), Orientation::procurement);
  ASSERT_EQ(out.trace.size(), 3u);
  EXPECT_EQ(out.retained(), (std::vector<BidderId>{1, 2, 0}));
  EXPECT_EQ(out.allocation, (std::vector<BidderId>{3}));
  EXPECT_EQ(out.retained_welfare, Rational(12));
}

TEST(Engine, SellingRejectsByIncreasingScore) {
  auto out = run_da_auction(PlainScorer{3}, ints({2, 1, 1}), Orientation::selling);
  EXPECT_EQ(out.retained(), (std::vector<BidderId>{1, 2, 0}));
  EXPECT_TRUE(out.allocation.empty());
}

TEST(Engine, PathSpectrumTrace) {
  auto out = run_da_auction(SpectrumScorer(path_instance(1)), ints({3, 5, 2}), Orientation::procurement);
  ASSERT_EQ(out.trace.size(), 1u);
  EXPECT_EQ(out.trace[0].bidder, 1u);
  EXPECT_EQ(out.trace[0].score, ExtendedScore<Rational>(Rational(5)));
  EXPECT_EQ(out.allocation, (std::vector<BidderId>{0, 2}));
  EXPECT_EQ(out.retained_welfare, Rational(5));
}

TEST(Engine, EmptyBidderSet) {
  auto out = run_da_auction(PlainScorer{0}, std::vector<Rational>{}, Orientation::procurement);
  EXPECT_TRUE(out.allocation.empty());
  EXPECT_TRUE(out.trace.empty());
}

TEST(Engine, Deterministic) {
  auto inst = path_instance(2);
  auto a = run_da_auction(SpectrumScorer(inst), ints({3, 5, 2}), Orientation::procurement);
  auto b = run_da_auction(SpectrumScorer(inst), ints({3, 5, 2}), Orientation::procurement);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.allocation, b.allocation);
}

TEST(Engine, ScorerPassedByValueIsUntouched) {
  SpectrumScorer s(path_instance(1));
  run_da_auction(s, ints({3, 5, 2}), Orientation::procurement);
  EXPECT_TRUE(s.state().colored().empty());
  run_da_auction_in_place(s, ints({3, 5, 2}), Orientation::procurement);
  EXPECT_EQ(s.state().colored(), (std::vector<std::size_t>{1}));
}

TEST(Engine, WrongProfileLength) {
  EXPECT_THROW(run_da_auction(PlainScorer{2}, ints({1}), Orientation::procurement), ValidationError);
}

TEST(Engine, InfiniteProcurementScoreIsAFault) {
  EXPECT_THROW(run_da_auction(InfiniteScorer{}, ints({1}), Orientation::procurement), InternalFault);
  auto out = run_da_auction(InfiniteScorer{}, ints({1}), Orientation::selling);
  EXPECT_EQ(out.allocation, (std::vector<BidderId>{0}));
}

TEST(Engine, MonotonicityProbe) {
  auto space = BidSpace::uniform(1, ints({0, 1, 2}));
  EngineOptions opts{&space};
  InvertedScorer bad;
  EXPECT_THROW(run_da_auction_in_place(bad, ints({1}), Orientation::procurement, opts), MonotonicityViolation);
  PlainScorer good{1};
  EXPECT_NO_THROW(run_da_auction_in_place(good, ints({1}), Orientation::procurement, opts));
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("."), std::invalid_argument);
  EXPECT_EQ(to_string(Rational(3, 4)), "3/4");
  EXPECT_EQ(to_string(Rational(-2)), "-2");
  EXPECT_TRUE(Rational(0) == 0);
  EXPECT_TRUE(0 == Rational(0));
  EXPECT_TRUE(Rational(1, 2) != 0);
}
