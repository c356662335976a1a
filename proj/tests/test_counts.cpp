#include <gtest/gtest.h>

#include "tropcount/counts.hpp"
#include "tropcount/verify.hpp"

using namespace tropcount;

namespace {

CountKey tri(std::int64_t d, std::int64_t g, Sequence alpha, Sequence beta) {
  return make_key(Polygon::triangle(d), g, std::move(alpha), std::move(beta));
}

CountKey rect(std::int64_t w, std::int64_t h, std::int64_t g, Sequence alpha, Sequence beta) {
  return make_key(Polygon::rectangle(w, h), g, std::move(alpha), std::move(beta));
}

CountKey plain(std::int64_t d, std::int64_t g) {
  return tri(d, g, Sequence{}, Sequence{static_cast<Sequence::value_type>(d)});
}

}  // namespace

TEST(Counts, KeyValidation) {
  EXPECT_THROW(tri(2, 0, Sequence({1, 1}), Sequence({1})), PreconditionError);
  EXPECT_NO_THROW(tri(3, 0, Sequence({0, 1}), Sequence({1})));
  EXPECT_EQ(tri(3, 0, Sequence({0, 1}), Sequence({1})).start(), (LatticePoint{0, 1}));
}

TEST(Counts, StepCount) {
  EXPECT_EQ(step_count(tri(3, 0, Sequence({0, 1}), Sequence({1}))), 6);
  EXPECT_EQ(step_count(tri(1, 0, Sequence{}, Sequence({1}))), 2);
  EXPECT_EQ(step_count(rect(1, 1, 0, Sequence{}, Sequence({1}))), 3);
}

TEST(Counts, MaxGenus) {
  EXPECT_EQ(max_genus(Polygon::triangle(3)), 1);
  EXPECT_EQ(max_genus(Polygon::triangle(4)), 3);
  EXPECT_EQ(max_genus(Polygon::rectangle(2, 3)), 2);
}

TEST(Counts, PathCountExamples) {
  Counter c;
  EXPECT_EQ(c.n_path(tri(3, 0, Sequence({0, 1}), Sequence({1}))), 10);
  EXPECT_EQ(c.n_path(tri(1, 0, Sequence{}, Sequence({1}))), 1);
  EXPECT_EQ(c.n_path(tri(2, 0, Sequence{}, Sequence({2}))), 1);
  EXPECT_EQ(c.n_path(tri(3, 0, Sequence({0, 1}), Sequence({1})), MultiplicityEngine::ClosedForm), 10);
  // Too few steps: nothing to count.
  EXPECT_EQ(c.n_path(tri(1, -5, Sequence{}, Sequence({1}))), 0);
}

TEST(Counts, PlaneCurveTable) {
  Counter c;
  EXPECT_EQ(c.n_path(plain(2, -1)), 3);
  EXPECT_EQ(c.n_path(plain(3, -2)), 15);
  EXPECT_EQ(c.n_path(plain(3, -1)), 21);
  EXPECT_EQ(c.n_path(plain(3, 0)), 12);
  EXPECT_EQ(c.n_path(plain(3, 1)), 1);
  EXPECT_EQ(c.n_path(plain(4, 0)), 675);
  EXPECT_EQ(c.n_path(plain(4, 1)), 225);
  EXPECT_EQ(c.n_path(plain(4, 2)), 27);
  EXPECT_EQ(c.n_path(plain(4, 3)), 1);
}

TEST(Counts, RecursionExamples) {
  Counter c;
  EXPECT_EQ(c.ch_count(tri(3, 0, Sequence({0, 1}), Sequence({1}))), 10);
  EXPECT_EQ(c.ch_count(tri(1, 0, Sequence({1}), Sequence{})), 1);
  EXPECT_EQ(c.ch_count(plain(4, 0)), 675);
  EXPECT_EQ(c.ch_count_rect(rect(1, 1, 0, Sequence{}, Sequence({1}))), 1);
  EXPECT_EQ(c.ch_count(rect(2, 2, 0, Sequence{}, Sequence({2}))), c.n_path(rect(2, 2, 0, Sequence{}, Sequence({2}))));
  EXPECT_THROW(c.ch_count_rect(plain(2, 0)), PreconditionError);
}

TEST(Counts, RectangleRecursionFirstSumEmpty) {
  Counter c;
  auto key = rect(2, 2, 0, Sequence({0, 1}), Sequence{});
  EXPECT_EQ(c.ch_count_rect(key), c.n_path(key));
}

TEST(Counts, RectangleRecursionMatchesPaths) {
  Counter c;
  for (int w = 1; w <= 3; ++w)
    for (int h = 1; h <= 3; ++h) {
      auto poly = Polygon::rectangle(w, h);
      for (auto const& [alpha, beta] : admissible_pairs(h)) {
        auto window = genus_window(poly, alpha, beta);
        for (auto g = window.lo - 1; g <= window.hi + 1; ++g) {
          CountKey key{poly, g, alpha, beta};
          EXPECT_EQ(c.ch_count_rect(key), c.n_path(key)) << key_string("N", key);
        }
      }
    }
}

TEST(Counts, IrreducibleExamples) {
  Counter c;
  EXPECT_EQ(c.irr_count(plain(3, 0)), 12);
  EXPECT_EQ(c.irr_count(plain(3, 1)), c.n_path(plain(3, 1)));
  EXPECT_EQ(c.irr_count(plain(3, 1)), 1);
  EXPECT_EQ(c.irr_count(plain(1, 0)), 1);
  EXPECT_EQ(c.irr_count(plain(4, 0)), 620);
  EXPECT_EQ(c.irr_count(plain(2, -1)), 0);
  EXPECT_THROW(c.irr_count(rect(1, 1, 0, Sequence{}, Sequence({1}))), PreconditionError);
}

TEST(Counts, ConnectedFromIrreducible) {
  Counter c;
  EXPECT_EQ(c.connected_from_irreducible(1, 0), c.irr_count(plain(1, 0)));
  EXPECT_EQ(c.connected_from_irreducible(2, 0), 1);
  for (std::int64_t g = -1; g <= 1; ++g) EXPECT_EQ(c.connected_from_irreducible(3, g), c.n_path(plain(3, g))) << g;
  for (std::int64_t g = -4; g <= 4; ++g) EXPECT_EQ(c.connected_from_irreducible(4, g), c.n_path(plain(4, g))) << g;
  EXPECT_THROW(c.connected_from_irreducible(0, 0), PreconditionError);
}

TEST(Counts, IrreducibleBoundedByTotal) {
  Counter c;
  for (int d = 1; d <= 4; ++d)
    for (auto const& [alpha, beta] : admissible_pairs(d)) {
      auto poly = Polygon::triangle(d);
      auto window = genus_window(poly, alpha, beta);
      for (auto g = window.lo; g <= window.hi; ++g) {
        CountKey key{poly, g, alpha, beta};
        auto irr = c.irr_count(key);
        EXPECT_GE(irr, 0);
        EXPECT_LE(irr, c.n_path(key)) << key_string("N", key);
      }
    }
}

TEST(Counts, RecursionVanishesAboveMaxGenus) {
  Counter c;
  for (int d = 1; d <= 5; ++d)
    for (auto const& [alpha, beta] : admissible_pairs(d))
      for (auto g = max_genus(Polygon::triangle(d)) + 1; g <= max_genus(Polygon::triangle(d)) + 3; ++g)
        EXPECT_EQ(c.ch_count(tri(d, g, alpha, beta)), 0);
}

TEST(Counts, MemoizedAndDirectAgree) {
  Counter memo;
  Counter direct({.memoize = false});
  for (int d = 1; d <= 4; ++d)
    for (auto const& [alpha, beta] : admissible_pairs(d)) {
      auto window = genus_window(Polygon::triangle(d), alpha, beta);
      for (auto g = window.lo; g <= window.hi; ++g) {
        auto key = tri(d, g, alpha, beta);
        EXPECT_EQ(memo.ch_count(key), direct.ch_count(key));
      }
    }
  EXPECT_EQ(direct.cache().size(), 0u);
  EXPECT_GT(memo.cache().size(), 0u);
}

TEST(Counts, ParallelSummationIsResultIdentical) {
  Counter serial;
  Counter parallel({.jobs = 4});
  for (std::int64_t g = -3; g <= 3; ++g) EXPECT_EQ(serial.n_path(plain(4, g)), parallel.n_path(plain(4, g)));
  EXPECT_EQ(parallel.n_path(tri(4, 0, Sequence({1}), Sequence({1, 1}))),
            serial.n_path(tri(4, 0, Sequence({1}), Sequence({1, 1}))));
}

TEST(Counts, ThreadSafeRecursion) {
  Counter shared;
  std::vector<BigInt> results(6);
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < results.size(); ++i)
    workers.emplace_back([&, i] { results[i] = shared.ch_count(plain(4, static_cast<std::int64_t>(i) - 3)); });
  for (auto& t : workers) t.join();
  Counter fresh;
  for (std::size_t i = 0; i < results.size(); ++i)
    EXPECT_EQ(results[i], fresh.n_path(plain(4, static_cast<std::int64_t>(i) - 3)));
}

TEST(Counts, EngineNames) {
  for (auto e : {Engine::Paths, Engine::Closed, Engine::CH, Engine::Irreducible})
    EXPECT_EQ(parse_engine(engine_name(e)), e);
  EXPECT_THROW(parse_engine("nope"), ParseError);
  EXPECT_EQ(key_string("ch", tri(3, 0, Sequence({0, 1}), Sequence({1}))), "ch|T3|0|0,1|1");
}

TEST(Counts, GenusWindow) {
  auto w = genus_window(Polygon::triangle(3), Sequence{}, Sequence({3}));
  EXPECT_EQ(w.hi, 1);
  Counter c;
  EXPECT_EQ(c.n_path(plain(3, w.hi + 1)), 0);
  EXPECT_EQ(c.n_path(plain(3, w.lo - 1)), 0);
}

TEST(Verify, SmallRunsPass) {
  auto one = verify_engines(1, PolygonClass::Triangle);
  EXPECT_TRUE(one.ok());
  auto three = verify_engines(3, PolygonClass::Triangle);
  EXPECT_TRUE(three.ok());
  EXPECT_GE(three.keys, 50u);
  EXPECT_GT(three.connected, 0u);
  auto rects = verify_engines(2, PolygonClass::Rectangle);
  EXPECT_TRUE(rects.ok());
  EXPECT_GT(rects.paths, 0u);
}

TEST(Verify, InjectedFaultIsDetected) {
  auto report = verify_engines(3, PolygonClass::Triangle, {.drop_weight_factor = true});
  EXPECT_FALSE(report.ok());
  bool ch_failure = false;
  for (auto const& f : report.failures) ch_failure |= f.check == "paths=ch";
  EXPECT_TRUE(ch_failure);
  auto json = report.to_json();
  EXPECT_FALSE(json["ok"].get<bool>());
  EXPECT_FALSE(json["failures"].empty());
}
