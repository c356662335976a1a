// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "tropcount/tropcount.hpp"

using namespace tropcount;

namespace {

using Points = std::vector<LatticePoint>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few mismatches for the report line.
class Checker {
 public:
  void expect(bool ok, std::string const& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  Outcome outcome(std::string const& summary) const {
    std::ostringstream os;
    os << summary << " (" << checks_ << " checks";
    if (failures_) os << ", " << failures_ << " failed: " << notes_.str();
    os << ")";
    return {failures_ == 0, os.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::ostringstream notes_;
};

template <typename F>
void for_each_key(Polygon const& poly, F&& visit) {
  for (auto const& [alpha, beta] : admissible_pairs(poly.height())) {
    auto window = genus_window(poly, alpha, beta);
    for (auto g = window.lo - 1; g <= window.hi + 1; ++g) visit(CountKey{poly, g, alpha, beta});
  }
}

std::string name(CountKey const& key) { return key_string("N", key); }

Outcome criterion1() {
  Checker c;
  auto key = make_key(Polygon::triangle(3), 0, Sequence({0, 1}), Sequence({1}));
  std::multiset<Rational> mus;
  for_each_path(key.polygon, key.start(), key.polygon.q(), static_cast<std::size_t>(step_count(key)), true,
                [&](Points const& pts) {
                  auto m = mu_alpha_beta(LatticePath(key.polygon, pts), key.alpha, key.beta);
                  if (m != 0) mus.insert(m);
                });
  c.expect(mus == std::multiset<Rational>{4, 2, 1, 1, 2}, "multiplicities differ from {4,2,1,1,2}");
  Counter counter;
  auto paths = counter.n_path(key);
  auto ch = counter.ch_count(key);
  c.expect(paths == 10, "n_path = " + paths.str());
  c.expect(ch == 10, "ch_count = " + ch.str());
  return c.outcome("N^{(0,1),(1)}(3,0): paths " + paths.str() + ", ch " + ch.str());
}

Outcome criterion2() {
  Checker c;
  LatticePath path(Polygon::triangle(5),
                   {{0, 1}, {1, 3}, {1, 2}, {1, 0}, {2, 2}, {2, 1}, {3, 1}, {4, 1}, {4, 0}, {5, 0}});
  Sequence beta{1};
  auto prof = column_profile(path);
  c.expect(prof.heights[0] == 1 && prof.heights[1] == 3 && prof.heights[2] == 2 && prof.heights[3] == 1,
           "column heights do not start 1,3,2,1");
  auto rec = mu_beta_minus(path, beta);
  auto closed = mu_beta_minus_closed(path, beta);
  c.expect(rec == 2, "recursive = " + rec.str());
  c.expect(closed == 2, "closed = " + closed.str());
  return c.outcome("mu_{(1),-} recursive " + rec.str() + ", closed " + closed.str());
}

Outcome criterion3(Counter& counter) {
  Checker c;
  std::size_t keys = 0;
  for (int d = 1; d <= 4; ++d)
    for_each_key(Polygon::triangle(d), [&](CountKey const& key) {
      ++keys;
      c.expect(counter.n_path(key) == counter.ch_count(key), name(key));
    });
  return c.outcome("n_path = ch_count on " + std::to_string(keys) + " triangle keys, d <= 4");
}

Outcome criterion4() {
  Checker c;
  std::size_t paths = 0;
  auto check_polygon = [&](Polygon const& poly) {
    for (auto const& [alpha, beta] : admissible_pairs(poly.height())) {
      PathScorer rec(poly, alpha, beta, MultiplicityEngine::Recursive);
      PathScorer closed(poly, alpha, beta, MultiplicityEngine::ClosedForm);
      LatticePoint start{0, static_cast<std::int64_t>(weighted_sum(beta))};
      for (std::size_t n = 1; n < poly.lattice_points().size(); ++n)
        for_each_path(poly, start, poly.q(), n, true, [&](Points const& pts) {
          ++paths;
          auto r = rec.full(pts);
          auto k = closed.full(pts);
          c.expect(r.minus == k.minus && r.plus == k.plus, poly.describe() + " " + points_json(pts).dump());
        });
    }
  };
  for (int d = 1; d <= 4; ++d) check_polygon(Polygon::triangle(d));
  for (int w = 1; w <= 2; ++w)
    for (int h = 1; h <= 2; ++h) check_polygon(Polygon::rectangle(w, h));
  return c.outcome("recursive = closed-form mu_{beta,-} and mu_{alpha,+} on " + std::to_string(paths) + " paths");
}

Outcome criterion5() {
  Checker c;
  std::size_t skips = 0;
  for (int d = 1; d <= 3; ++d) {
    auto poly = Polygon::triangle(d);
    for (auto const& [alpha, beta] : admissible_pairs(d)) {
      LatticePoint start{0, static_cast<std::int64_t>(weighted_sum(beta))};
      for (std::size_t n = 1; n < poly.lattice_points().size(); ++n)
        for_each_path(poly, start, poly.q(), n, false, [&](Points const& pts) {
          if (!has_column_skip(std::span<const LatticePoint>(pts))) return;
          ++skips;
          c.expect(mu_alpha_beta(LatticePath(poly, pts), alpha, beta) == 0, points_json(pts).dump());
        });
    }
  }
  return c.outcome("mu_{alpha,beta} = 0 on " + std::to_string(skips) + " skip paths, d <= 3");
}

Outcome criterion6() {
  Checker c;
  for (int d = 1; d <= 3; ++d) {
    auto poly = Polygon::triangle(d);
    for (auto const& [alpha, beta] : admissible_pairs(d)) {
      LatticePoint start{0, static_cast<std::int64_t>(weighted_sum(beta))};
      for (std::size_t n = 1; n < poly.lattice_points().size(); ++n)
        for_each_path(poly, start, poly.q(), n, false, [&](Points const& pts) {
          LatticePath path(poly, pts);
          auto order = descending_steps(alpha);
          auto const reference = mu_alpha_plus_ordered(path, alpha, order);
          std::sort(order.begin(), order.end());
          do {
            c.expect(mu_alpha_plus_ordered(path, alpha, order) == reference, points_json(pts).dump());
          } while (std::next_permutation(order.begin(), order.end()));
        });
    }
  }
  return c.outcome("mu_{alpha,+} invariant under every prepend order, d <= 3");
}

Outcome criterion7(Counter& counter) {
  Checker c;
  for (int d = 1; d <= 3; ++d) {
    auto poly = Polygon::triangle(d);
    Sequence const all{static_cast<Sequence::value_type>(d)};
    auto window = genus_window(poly, Sequence{}, all);
    for (auto g = window.lo - 1; g <= window.hi + 1; ++g) {
      CountKey key{poly, g, Sequence{}, all};
      c.expect(counter.connected_from_irreducible(d, g) == counter.n_path(key), name(key));
    }
  }
  auto plain = [](std::int64_t d, std::int64_t g) {
    return CountKey{Polygon::triangle(d), g, Sequence{}, Sequence{static_cast<Sequence::value_type>(d)}};
  };
  auto irr30 = counter.irr_count(plain(3, 0));
  auto n31 = counter.n_path(plain(3, 1));
  auto irr31 = counter.irr_count(plain(3, 1));
  c.expect(irr30 == 12, "N^irr(3,0) = " + irr30.str());
  c.expect(n31 == 1 && irr31 == 1, "N(3,1) = " + n31.str() + ", N^irr(3,1) = " + irr31.str());
  return c.outcome("connected_from_irreducible = n_path for d <= 3; N^irr(3,0) = " + irr30.str() +
                   ", N(3,1) = " + n31.str());
}

Outcome criterion8(Counter& counter) {
  Checker c;
  std::size_t keys = 0;
  for (int w = 1; w <= 2; ++w)
    for (int h = 1; h <= 2; ++h)
      for_each_key(Polygon::rectangle(w, h), [&](CountKey const& key) {
        ++keys;
        c.expect(counter.ch_count_rect(key) == counter.n_path(key), name(key));
      });
  return c.outcome("ch_count_rect = n_path on " + std::to_string(keys) + " rectangle keys, sides <= 2");
}

Outcome criterion9() {
  Checker c;
  std::size_t keys = 0;
  auto check = [&](CountKey const& key) {
    ++keys;
    auto steps = step_count(key);
    if (steps < 1) return;
    Rational total = 0;
    PathScorer score(key.polygon, key.alpha, key.beta, MultiplicityEngine::Recursive);
    for_each_path(key.polygon, key.start(), key.polygon.q(), static_cast<std::size_t>(steps), true,
                  [&](Points const& pts) { total += score(pts).product; });
    c.expect(boost::multiprecision::denominator(total) == 1, name(key) + " = " + to_decimal(total));
  };
  for (int d = 1; d <= 4; ++d) for_each_key(Polygon::triangle(d), check);
  for (int w = 1; w <= 2; ++w)
    for (int h = 1; h <= 2; ++h) for_each_key(Polygon::rectangle(w, h), check);
  return c.outcome("denominator 1 after summation on " + std::to_string(keys) + " keys");
}

}  // namespace

int main() {
  Counter counter;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 example count", criterion1},
      {"2 worked multiplicity", criterion2},
      {"3 path count = recursion", [&] { return criterion3(counter); }},
      {"4 closed-form multiplicities", criterion4},
      {"5 skip vanishing", criterion5},
      {"6 prepend order independence", criterion6},
      {"7 irreducible consistency", [&] { return criterion7(counter); }},
      {"8 rectangle recursion", [&] { return criterion8(counter); }},
      {"9 integrality", criterion9},
  };
  int failed = 0;
  for (auto const& [label, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (std::exception const& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << label << ": " << out.detail << " [" << timing
              << "]\n";
    if (!out.pass) ++failed;
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria\n";
  return failed ? 1 : 0;
}
