#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "lattice.hpp"
#include "memo.hpp"
#include "multiplicity.hpp"
#include "numeric.hpp"
#include "sequence.hpp"

namespace tropcount {

/**
 * Parameters of a relative invariant N^{alpha,beta}(polygon, g).
 *
 * The polygon is Triangle(d) or Rectangle(d', d); in both cases alpha and
 * beta describe contact with the left edge of length d, so
 * I alpha + I beta = d.
 */
struct CountKey {
  Polygon polygon;
  std::int64_t genus;
  Sequence alpha;
  Sequence beta;

  std::int64_t degree() const { return polygon.height(); }
  LatticePoint start() const { return {0, static_cast<std::int64_t>(weighted_sum(beta))}; }

  friend bool operator==(CountKey const&, CountKey const&) = default;
};

inline CountKey make_key(Polygon polygon, std::int64_t genus, Sequence alpha, Sequence beta) {
  if (static_cast<std::int64_t>(weighted_sum(alpha) + weighted_sum(beta)) != polygon.height())
    throw PreconditionError("I*alpha + I*beta must equal d");
  return CountKey{polygon, genus, std::move(alpha), std::move(beta)};
}

/// Number of marked points: 2d + g + |beta| - 1, or 2d' + d + g + |beta| - 1 for a rectangle.
inline std::int64_t step_count(CountKey const& key) {
  auto const& poly = key.polygon;
  std::int64_t const fixed = poly.shape() == Shape::Triangle ? 2 * poly.height()
                                                             : 2 * poly.width() + poly.height();
  return fixed + key.genus + static_cast<std::int64_t>(norm_abs(key.beta)) - 1;
}

/// Largest genus with a non-empty count: interior points of the polygon.
inline std::int64_t max_genus(Polygon const& poly) {
  if (poly.shape() == Shape::Triangle) return (poly.height() - 1) * (poly.height() - 2) / 2;
  return (poly.width() - 1) * (poly.height() - 1);
}

struct GenusWindow {
  std::int64_t lo;
  std::int64_t hi;
};

/**
 * Genera whose step count lies between 1 and the number of lattice points
 * lambda-after the start, i.e. every genus for which some path exists.
 */
inline GenusWindow genus_window(Polygon const& poly, Sequence const& alpha, Sequence const& beta) {
  CountKey probe{poly, 0, alpha, beta};
  std::int64_t const at_zero = step_count(probe);
  LatticePoint const start = probe.start();
  std::int64_t after = 0;
  for (auto pt : poly.lattice_points())
    if (lambda_less(start, pt)) ++after;
  return {1 - at_zero, after - at_zero};
}

/// Every (alpha, beta) with I alpha + I beta = d, in a fixed order.
inline std::vector<std::pair<Sequence, Sequence>> admissible_pairs(std::int64_t d) {
  std::vector<std::pair<Sequence, Sequence>> out;
  for (std::int64_t ia = 0; ia <= d; ++ia)
    for (auto const& a : enumerate_partition_seqs(static_cast<std::uint64_t>(ia)))
      for (auto const& b : enumerate_partition_seqs(static_cast<std::uint64_t>(d - ia)))
        out.emplace_back(a, b);
  return out;
}

enum class Engine { Paths, Closed, CH, Irreducible };

inline std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Paths: return "paths";
    case Engine::Closed: return "closed";
    case Engine::CH: return "ch";
    case Engine::Irreducible: return "irr";
  }
  return "?";
}

inline Engine parse_engine(std::string const& name) {
  if (name == "paths") return Engine::Paths;
  if (name == "closed") return Engine::Closed;
  if (name == "ch") return Engine::CH;
  if (name == "irr") return Engine::Irreducible;
  throw ParseError("unknown engine '" + name + "' (expected paths, closed, ch or irr)");
}

/// Canonical memo key text, e.g. "ch|T3|0|0,1|1".
inline std::string key_string(std::string_view engine, CountKey const& key) {
  std::string out(engine);
  out += '|';
  if (key.polygon.shape() == Shape::Triangle)
    out += "T" + std::to_string(key.polygon.height());
  else
    out += "R" + std::to_string(key.polygon.width()) + "x" + std::to_string(key.polygon.height());
  out += '|' + std::to_string(key.genus) + '|' + format_sequence(key.alpha) + '|' +
         format_sequence(key.beta);
  return out;
}

struct CounterOptions {
  /// Worker threads for summing over the path stream.
  unsigned jobs = 1;
  bool memoize = true;
  /// Mutation switch for self-tests: drop the I^{beta'-beta} weight from the recursions.
  bool drop_weight_factor = false;
};

/**
 * Evaluation engines for the relative invariants, sharing one memo table.
 *
 * Path enumeration is the ground truth. The recursions delegate every key
 * of degree (triangle) or width (rectangle) at most 1 to it.
 */
class Counter {
 public:
  explicit Counter(CounterOptions options = {}) : options_(options) {}

  CounterOptions const& options() const { return options_; }
  MemoCache& cache() { return cache_; }

  /// Sum of mu_{alpha,beta} over all paths with step_count(key) steps.
  BigInt n_path(CountKey const& key, MultiplicityEngine mult = MultiplicityEngine::Recursive) {
    auto tag = mult == MultiplicityEngine::Recursive ? "paths" : "closed";
    return memoized(key_string(tag, key), [&] { return sum_paths(key, mult); });
  }

  /// Caporaso-Harris recursion; rectangles use the width-reducing variant.
  BigInt ch_count(CountKey const& key) {
    if (key.polygon.shape() == Shape::Rectangle) return ch_count_rect(key);
    return memoized(key_string("ch", key), [&] { return ch_triangle(key); });
  }

  BigInt ch_count_rect(CountKey const& key) {
    if (key.polygon.shape() != Shape::Rectangle)
      throw PreconditionError("ch_count_rect needs a rectangle key");
    return memoized(key_string("ch", key), [&] { return ch_rectangle(key); });
  }

  /// Recursion for irreducible curves (triangle only).
  BigInt irr_count(CountKey const& key) {
    if (key.polygon.shape() != Shape::Triangle)
      throw PreconditionError("the irreducible recursion is only defined for triangles");
    return memoized(key_string("irr", key), [&] { return irreducible(key); });
  }

  /**
   * N(d, g) rebuilt from irreducible counts: sum over multisets of
   * components (d_i, g_i) with sum d_i = d and sum g_i - (k - 1) = g of
   * multinomial(3d + g - 1; 3d_i + g_i - 1) * prod N^irr(d_i, g_i) / sigma.
   */
  BigInt connected_from_irreducible(std::int64_t d, std::int64_t g);

  BigInt count(CountKey const& key, Engine engine) {
    switch (engine) {
      case Engine::Paths: return n_path(key, MultiplicityEngine::Recursive);
      case Engine::Closed: return n_path(key, MultiplicityEngine::ClosedForm);
      case Engine::CH: return ch_count(key);
      case Engine::Irreducible: return irr_count(key);
    }
    return 0;
  }

 private:
  template <typename F>
  BigInt memoized(std::string const& k, F&& compute) {
    if (!options_.memoize) return compute();
    if (auto hit = cache_.find(k)) return *hit;
    return cache_.insert(k, compute());
  }

  BigInt sum_paths(CountKey const& key, MultiplicityEngine mult);
  BigInt ch_triangle(CountKey const& key);
  BigInt ch_rectangle(CountKey const& key);
  BigInt irreducible(CountKey const& key);

  BigInt weight(Sequence const& gained) const {
    return options_.drop_weight_factor ? BigInt(1) : weighted_power(gained);
  }

  CounterOptions options_;
  MemoCache cache_;
};

inline BigInt Counter::sum_paths(CountKey const& key, MultiplicityEngine mult) {
  auto const steps = step_count(key);
  if (steps < 1) return 0;
  auto const& poly = key.polygon;
  std::vector<std::vector<LatticePoint>> paths;
  for_each_path(poly, key.start(), poly.q(), static_cast<std::size_t>(steps), true,
                [&](std::vector<LatticePoint> const& pts) { paths.push_back(pts); });
  if (paths.empty()) return 0;

  unsigned const jobs = std::max(1u, std::min<unsigned>(options_.jobs, static_cast<unsigned>(paths.size())));
  std::vector<Rational> partial(jobs);
  auto work = [&](unsigned j) {
    PathScorer score(poly, key.alpha, key.beta, mult);
    Rational acc = 0;
    for (std::size_t i = j; i < paths.size(); i += jobs) acc += score(paths[i]).product;
    partial[j] = acc;
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  Rational total = 0;
  for (auto const& p : partial) total += p;
  if (!is_integral(total))
    throw NonIntegralTotal("non-integral path total " + to_decimal(total) + " for " +
                           key_string("paths", key));
  return boost::multiprecision::numerator(total);
}

inline BigInt Counter::ch_triangle(CountKey const& key) {
  std::int64_t const d = key.degree();
  if (d <= 1) return n_path(key);
  BigInt total = 0;
  for (std::size_t k = 1; k <= key.beta.length(); ++k) {
    if (key.beta.entry(k) == 0) continue;
    CountKey moved{key.polygon, key.genus, seq_add(key.alpha, unit_seq(k)), seq_sub(key.beta, unit_seq(k))};
    total += BigInt(k) * ch_count(moved);
  }
  Polygon const smaller = Polygon::triangle(d - 1);
  auto const ia = static_cast<std::int64_t>(weighted_sum(key.alpha));
  for (auto const& kept : enumerate_subsequences(key.alpha)) {
    std::int64_t const gained_weight = ia - static_cast<std::int64_t>(weighted_sum(kept)) - 1;
    if (gained_weight < 0) continue;
    BigInt const pick_alpha = seq_binom(key.alpha, kept);
    for (auto const& gained : enumerate_partition_seqs(static_cast<std::uint64_t>(gained_weight))) {
      std::int64_t const genus_drop = static_cast<std::int64_t>(norm_abs(gained)) - 1;
      if (genus_drop > d - 2) continue;
      Sequence const wider = seq_add(key.beta, gained);
      BigInt const sub = ch_count(CountKey{smaller, key.genus - genus_drop, kept, wider});
      if (sub == 0) continue;
      total += weight(gained) * pick_alpha * seq_binom(wider, key.beta) * sub;
    }
  }
  return total;
}

inline BigInt Counter::ch_rectangle(CountKey const& key) {
  std::int64_t const width = key.polygon.width();
  std::int64_t const d = key.polygon.height();
  if (width <= 1) return n_path(key);
  BigInt total = 0;
  for (std::size_t k = 1; k <= key.beta.length(); ++k) {
    if (key.beta.entry(k) == 0) continue;
    CountKey moved{key.polygon, key.genus, seq_add(key.alpha, unit_seq(k)), seq_sub(key.beta, unit_seq(k))};
    total += BigInt(k) * ch_count_rect(moved);
  }
  Polygon const narrower = Polygon::rectangle(width - 1, d);
  auto const ia = static_cast<std::int64_t>(weighted_sum(key.alpha));
  for (auto const& kept : enumerate_subsequences(key.alpha)) {
    std::int64_t const gained_weight = ia - static_cast<std::int64_t>(weighted_sum(kept));
    BigInt const pick_alpha = seq_binom(key.alpha, kept);
    for (auto const& gained : enumerate_partition_seqs(static_cast<std::uint64_t>(gained_weight))) {
      std::int64_t const genus_drop = static_cast<std::int64_t>(norm_abs(gained)) - 1;
      if (genus_drop > d - 1) continue;
      Sequence const wider = seq_add(key.beta, gained);
      BigInt const sub = ch_count_rect(CountKey{narrower, key.genus - genus_drop, kept, wider});
      if (sub == 0) continue;
      total += weight(gained) * pick_alpha * seq_binom(wider, key.beta) * sub;
    }
  }
  return total;
}

namespace detail {

/// One irreducible piece (d_j, g_j, alpha^j, beta^j, beta^j') of the split curve.
struct Component {
  std::int64_t degree;
  std::int64_t genus;
  Sequence alpha;
  Sequence beta;
  /// Ends of beta attached to the left part.
  Sequence joined;

  friend bool operator==(Component const&, Component const&) = default;
  friend auto operator<=>(Component const&, Component const&) = default;
};

/// Degree and genus of one irreducible component of a disconnected curve.
struct ComponentClass {
  std::int64_t degree;
  std::int64_t genus;

  friend bool operator==(ComponentClass const&, ComponentClass const&) = default;
  friend auto operator<=>(ComponentClass const&, ComponentClass const&) = default;
};

/// Product of factorials of the multiplicities in a sorted list.
template <typename T>
BigInt symmetry_factor(std::vector<T> const& sorted) {
  BigInt sigma = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      sigma *= factorial(run);
      run = 1;
    }
  }
  return sigma;
}

}  // namespace detail

inline BigInt Counter::irreducible(CountKey const& key) {
  std::int64_t const d = key.degree();
  if (d <= 1) return n_path(key);
  Rational total = 0;
  for (std::size_t k = 1; k <= key.beta.length(); ++k) {
    if (key.beta.entry(k) == 0) continue;
    CountKey moved{key.polygon, key.genus, seq_add(key.alpha, unit_seq(k)), seq_sub(key.beta, unit_seq(k))};
    total += Rational(BigInt(k) * irr_count(moved));
  }

  // Candidate components, sorted so multisets are non-decreasing index runs.
  std::vector<detail::Component> types;
  auto const alpha_subs = enumerate_subsequences(key.alpha);
  for (std::int64_t dj = 1; dj <= d - 1; ++dj)
    for (auto const& aj : alpha_subs) {
      auto const iaj = static_cast<std::int64_t>(weighted_sum(aj));
      if (iaj > dj) continue;
      for (auto const& bj : enumerate_partition_seqs(static_cast<std::uint64_t>(dj - iaj)))
        for (auto const& joined : enumerate_subsequences(bj)) {
          if (joined.is_zero()) continue;
          for (std::int64_t gj = 0; gj <= max_genus(Polygon::triangle(dj)); ++gj)
            types.push_back({dj, gj, aj, bj, joined});
        }
    }
  std::sort(types.begin(), types.end());

  std::int64_t const points = 2 * d + key.genus + static_cast<std::int64_t>(norm_abs(key.beta)) - 2;
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self, std::size_t from, std::int64_t degree_left, Sequence const& alpha_used,
                     Sequence const& free_ends) -> void {
    if (degree_left == 0) {
      if (free_ends != key.beta) return;
      std::int64_t genus = -static_cast<std::int64_t>(chosen.size());
      for (auto i : chosen) genus += types[i].genus + static_cast<std::int64_t>(norm_abs(types[i].joined));
      if (genus != key.genus || points < 0) return;
      std::vector<std::int64_t> pts;
      std::vector<Sequence> alphas;
      std::vector<detail::Component> parts;
      BigInt product = 1;
      for (auto i : chosen) {
        auto const& c = types[i];
        pts.push_back(2 * c.degree + c.genus + static_cast<std::int64_t>(norm_abs(c.beta)) - 1);
        alphas.push_back(c.alpha);
        parts.push_back(c);
        product *= seq_binom(c.beta, seq_sub(c.beta, c.joined)) * weight(c.joined);
        if (product == 0) return;
        product *= irr_count(CountKey{Polygon::triangle(c.degree), c.genus, c.alpha, c.beta});
        if (product == 0) return;
      }
      product *= multinomial(static_cast<std::uint64_t>(points), pts) * seq_multinom(key.alpha, alphas);
      total += Rational(product, detail::symmetry_factor(parts));
      return;
    }
    for (std::size_t i = from; i < types.size(); ++i) {
      auto const& c = types[i];
      if (c.degree > degree_left) break;
      Sequence const used = seq_add(alpha_used, c.alpha);
      if (!seq_leq(used, key.alpha)) continue;
      Sequence const ends = seq_add(free_ends, seq_sub(c.beta, c.joined));
      if (!seq_leq(ends, key.beta)) continue;
      chosen.push_back(i);
      self(self, i, degree_left - c.degree, used, ends);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, d - 1, Sequence{}, Sequence{});

  if (!is_integral(total))
    throw NonIntegralTotal("non-integral irreducible total for " + key_string("irr", key));
  return boost::multiprecision::numerator(total);
}

inline BigInt Counter::connected_from_irreducible(std::int64_t d, std::int64_t g) {
  if (d < 1) throw PreconditionError("connected_from_irreducible needs d >= 1");
  std::int64_t const points = 3 * d + g - 1;
  if (points < 0) return 0;
  using Part = detail::ComponentClass;
  std::vector<Part> types;
  for (std::int64_t dj = 1; dj <= d; ++dj)
    for (std::int64_t gj = 0; gj <= max_genus(Polygon::triangle(dj)); ++gj) types.push_back({dj, gj});

  Rational total = 0;
  std::vector<Part> chosen;
  auto recurse = [&](auto&& self, std::size_t from, std::int64_t degree_left) -> void {
    if (degree_left == 0) {
      std::int64_t genus = 1 - static_cast<std::int64_t>(chosen.size());
      std::vector<std::int64_t> pts;
      for (auto const& c : chosen) {
        genus += c.genus;
        pts.push_back(3 * c.degree + c.genus - 1);
      }
      if (genus != g) return;
      BigInt product = multinomial(static_cast<std::uint64_t>(points), pts);
      for (auto const& c : chosen) {
        product *= irr_count(CountKey{Polygon::triangle(c.degree), c.genus, Sequence{},
                                      Sequence{static_cast<Sequence::value_type>(c.degree)}});
        if (product == 0) return;
      }
      total += Rational(product, detail::symmetry_factor(chosen));
      return;
    }
    for (std::size_t i = from; i < types.size(); ++i) {
      if (types[i].degree > degree_left) break;
      chosen.push_back(types[i]);
      self(self, i, degree_left - types[i].degree);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, d);
  if (!is_integral(total)) throw NonIntegralTotal("non-integral connected total");
  return boost::multiprecision::numerator(total);
}

/// Process-wide counter used by the free functions below.
inline Counter& default_counter() {
  static Counter counter;
  return counter;
}

inline BigInt n_path(CountKey const& key) { return default_counter().n_path(key); }
inline BigInt n_path_closed(CountKey const& key) {
  return default_counter().n_path(key, MultiplicityEngine::ClosedForm);
}
inline BigInt ch_count(CountKey const& key) { return default_counter().ch_count(key); }
inline BigInt ch_count_rect(CountKey const& key) { return default_counter().ch_count_rect(key); }
inline BigInt irr_count(CountKey const& key) { return default_counter().irr_count(key); }
inline BigInt connected_from_irreducible(std::int64_t d, std::int64_t g) {
  return default_counter().connected_from_irreducible(d, g);
}

}  // namespace tropcount
