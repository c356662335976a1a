#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "numeric.hpp"
#include "sequence.hpp"

namespace tropcount {

enum class TurnKind { Left, Right, None };

/// Turn made at b when walking a -> b -> c, from the sign of (b - a) x (c - b).
inline TurnKind turn_at(LatticePoint a, LatticePoint b, LatticePoint c) {
  auto z = cross(b - a, c - b);
  if (z > 0) return TurnKind::Left;
  if (z < 0) return TurnKind::Right;
  return TurnKind::None;
}

namespace detail {

struct PointListHash {
  std::size_t operator()(std::vector<LatticePoint> const& pts) const noexcept {
    std::size_t h = pts.size();
    for (auto p : pts) h ^= std::hash<LatticePoint>{}(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

inline bool same_points(std::span<const LatticePoint> a, std::span<const LatticePoint> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

inline void require_endpoints(std::span<const LatticePoint> pts, LatticePoint start,
                              LatticePoint end, char const* what) {
  if (pts.empty() || pts.front() != start || pts.back() != end)
    throw PreconditionError(std::string(what) + ": path has the wrong endpoints");
}

}  // namespace detail

/**
 * Corner-cutting recursion for path multiplicities.
 *
 * A path accepted by the terminal predicate has multiplicity 1. Otherwise
 * the first interior vertex k turning in the configured direction is
 * resolved as
 *
 *     mu(path) = 2 Area(path[k-1], path[k], path[k+1]) * mu(path with k removed)
 *              + mu(path with k reflected to path[k-1] + path[k+1] - path[k]),
 *
 * where the reflected path counts 0 if it leaves the polygon. A path with
 * no such turn that is not terminal has multiplicity 0. Results are
 * memoized per instance, so one instance should serve all paths sharing a
 * polygon and terminal.
 */
class RecursiveMultiplicity {
 public:
  using Terminal = std::function<bool(std::span<const LatticePoint>)>;

  RecursiveMultiplicity(Polygon poly, TurnKind turn, Terminal terminal)
      : poly_(poly), turn_(turn), terminal_(std::move(terminal)) {}

  /// Left turns, terminal delta_plus.
  static RecursiveMultiplicity positive(Polygon const& poly) {
    auto target = delta_plus(poly).point_list();
    return RecursiveMultiplicity(poly, TurnKind::Left, [target](std::span<const LatticePoint> pts) {
      return detail::same_points(pts, target);
    });
  }

  /// Right turns, terminal delta_minus.
  static RecursiveMultiplicity negative(Polygon const& poly) {
    auto target = delta_minus(poly).point_list();
    return RecursiveMultiplicity(poly, TurnKind::Right, [target](std::span<const LatticePoint> pts) {
      return detail::same_points(pts, target);
    });
  }

  /// Right turns, terminal every delta_beta path.
  static RecursiveMultiplicity negative_beta(Polygon const& poly, Sequence beta) {
    return RecursiveMultiplicity(poly, TurnKind::Right,
                                 [poly, beta = std::move(beta)](std::span<const LatticePoint> pts) {
                                   return is_delta_beta(pts, poly, beta);
                                 });
  }

  Polygon const& polygon() const { return poly_; }

  BigInt evaluate(std::span<const LatticePoint> pts) {
    std::vector<LatticePoint> key(pts.begin(), pts.end());
    return eval(key);
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  BigInt const& eval(std::vector<LatticePoint> const& pts) {
    if (auto it = memo_.find(pts); it != memo_.end()) return it->second;
    BigInt value = compute(pts);
    return memo_.emplace(pts, std::move(value)).first->second;
  }

  BigInt compute(std::vector<LatticePoint> const& pts) {
    if (terminal_(pts)) return 1;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      if (turn_at(pts[k - 1], pts[k], pts[k + 1]) != turn_) continue;
      std::int64_t const double_area = std::abs(cross(pts[k] - pts[k - 1], pts[k + 1] - pts[k]));
      std::vector<LatticePoint> cut;
      cut.reserve(pts.size() - 1);
      cut.insert(cut.end(), pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k));
      cut.insert(cut.end(), pts.begin() + static_cast<std::ptrdiff_t>(k) + 1, pts.end());
      BigInt result = double_area * BigInt(eval(cut));
      LatticePoint const flipped = pts[k - 1] + pts[k + 1] - pts[k];
      if (poly_.contains(flipped)) {
        std::vector<LatticePoint> completed = pts;
        completed[k] = flipped;
        result += eval(completed);
      }
      return result;
    }
    return 0;
  }

  Polygon poly_;
  TurnKind turn_;
  Terminal terminal_;
  std::unordered_map<std::vector<LatticePoint>, BigInt, detail::PointListHash> memo_;
};

/// Positive multiplicity of a path from p to q.
inline BigInt mu_plus(LatticePath const& path) {
  auto const& poly = path.polygon();
  detail::require_endpoints(path.points(), poly.p(), poly.q(), "mu_plus");
  return RecursiveMultiplicity::positive(poly).evaluate(path.points());
}

/// Negative multiplicity of a path from p to q.
inline BigInt mu_minus(LatticePath const& path) {
  auto const& poly = path.polygon();
  detail::require_endpoints(path.points(), poly.p(), poly.q(), "mu_minus");
  return RecursiveMultiplicity::negative(poly).evaluate(path.points());
}

/// Generalized negative multiplicity of a path from (0, I beta) to q.
inline BigInt mu_beta_minus(LatticePath const& path, Sequence const& beta) {
  auto const& poly = path.polygon();
  auto ib = static_cast<std::int64_t>(weighted_sum(beta));
  if (ib > poly.height()) throw PreconditionError("mu_beta_minus: I*beta exceeds the left edge");
  detail::require_endpoints(path.points(), {0, ib}, poly.q(), "mu_beta_minus");
  return RecursiveMultiplicity::negative_beta(poly, beta).evaluate(path.points());
}

/// Step lengths of alpha in descending order, the canonical prepend order.
inline std::vector<std::uint32_t> descending_steps(Sequence const& alpha) {
  std::vector<std::uint32_t> out;
  for (std::size_t k = alpha.length(); k >= 1; --k)
    out.insert(out.end(), alpha.entry(k), static_cast<std::uint32_t>(k));
  return out;
}

/**
 * The path gamma_alpha: vertical steps of the given lengths from p down the
 * left edge, followed by the path itself. The lengths must sum to
 * height - y(start).
 */
inline std::vector<LatticePoint> extend_along_left_edge(LatticePath const& path,
                                                        std::span<const std::uint32_t> lengths) {
  auto const& poly = path.polygon();
  std::vector<LatticePoint> out{poly.p()};
  for (auto len : lengths) out.push_back({0, out.back().y - static_cast<std::int64_t>(len)});
  if (out.back() != path.front())
    throw PreconditionError("prepended steps do not end at the path start");
  out.insert(out.end(), path.points().begin() + 1, path.points().end());
  return out;
}

/// Positive multiplicity with the alpha steps prepended in the given order.
inline Rational mu_alpha_plus_ordered(LatticePath const& path, Sequence const& alpha,
                                      std::span<const std::uint32_t> order) {
  auto sorted = std::vector<std::uint32_t>(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>{});
  if (sorted != descending_steps(alpha))
    throw PreconditionError("prepend order is not a permutation of the alpha steps");
  auto const& poly = path.polygon();
  detail::require_endpoints(path.points(), path.front(), poly.q(), "mu_alpha_plus");
  auto extended = extend_along_left_edge(path, order);
  BigInt top = RecursiveMultiplicity::positive(poly).evaluate(extended);
  return Rational(top, weighted_power(alpha));
}

/// Generalized positive multiplicity of a path from (0, d - I alpha) to q.
inline Rational mu_alpha_plus(LatticePath const& path, Sequence const& alpha) {
  auto steps = descending_steps(alpha);
  return mu_alpha_plus_ordered(path, alpha, steps);
}

inline Rational mu_alpha_beta(LatticePath const& path, Sequence const& alpha, Sequence const& beta) {
  return mu_alpha_plus(path, alpha) * Rational(mu_beta_minus(path, beta));
}

namespace detail {

struct ColumnState {
  Sequence edges;
  BigInt weight;
};

/** I^{upper - lower} * C(upper, lower), or 0 if lower is not dominated by upper. */
inline BigInt column_factor(Sequence const& upper, Sequence const& lower) {
  if (!seq_geq(upper, lower)) return 0;
  return weighted_power(seq_sub(upper, lower)) * seq_binom(upper, lower);
}

/// Candidates for the per-column edge sequences.
inline std::vector<Sequence> column_candidates(std::int64_t total) {
  if (total < 0) return {};
  return enumerate_partition_seqs(static_cast<std::uint64_t>(total));
}

}  // namespace detail

/**
 * Column-wise closed form of mu_{beta,-}: sum over edge sequences
 * beta^0..beta^W with alpha^0 + beta^0 = beta and I alpha^i + I beta^i = h(i)
 * of prod_i I^{alpha^{i+1} + beta^{i+1} - beta^i} C(alpha^{i+1} + beta^{i+1}, beta^i).
 *
 * The sum factors column by column and is evaluated as a transfer product.
 * Paths with a column skip have multiplicity 0.
 */
inline BigInt mu_beta_minus_closed(LatticePath const& path, Sequence const& beta) {
  auto const& poly = path.polygon();
  auto ib = static_cast<std::int64_t>(weighted_sum(beta));
  detail::require_endpoints(path.points(), {0, ib}, poly.q(), "mu_beta_minus_closed");
  if (has_column_skip(path)) return 0;
  auto prof = column_profile(path);
  if (!seq_geq(beta, prof.vertical[0])) return 0;

  std::vector<detail::ColumnState> states{{seq_sub(beta, prof.vertical[0]), 1}};
  for (std::size_t i = 1; i < prof.heights.size(); ++i) {
    auto const& steps = prof.vertical[i];
    std::vector<detail::ColumnState> next;
    for (auto& cand : detail::column_candidates(prof.heights[i] - static_cast<std::int64_t>(weighted_sum(steps)))) {
      Sequence const upper = seq_add(steps, cand);
      BigInt w = 0;
      for (auto const& st : states) w += st.weight * detail::column_factor(upper, st.edges);
      if (w != 0) next.push_back({cand, std::move(w)});
    }
    states = std::move(next);
    if (states.empty()) return 0;
  }
  BigInt total = 0;
  for (auto const& st : states) total += st.weight;
  return total;
}

/**
 * Column-wise closed form of mu_{alpha,+}: (1 / I^alpha) times the sum over
 * edge sequences beta^0 = alpha, beta^1, ..., beta^W above the path with
 * top(i) - I beta^i = h(i) of
 * prod_i I^{alpha^i + beta^i - beta^{i+1}} C(alpha^i + beta^i, beta^{i+1}).
 *
 * For a rectangle the upper boundary is the constant top edge, and the
 * final column is the right edge, which the terminal path walks in unit
 * steps: both beta^W and the path's own vertical steps there must be unit
 * steps, or the multiplicity vanishes. For a triangle the final column is
 * the single point q and these conditions hold trivially.
 */
inline Rational mu_alpha_plus_closed(LatticePath const& path, Sequence const& alpha) {
  auto const& poly = path.polygon();
  auto ia = static_cast<std::int64_t>(weighted_sum(alpha));
  detail::require_endpoints(path.points(), {0, poly.height() - ia}, poly.q(), "mu_alpha_plus_closed");
  if (has_column_skip(path)) return 0;
  auto prof = column_profile(path);
  std::size_t const last = prof.heights.size() - 1;

  std::vector<detail::ColumnState> states{{alpha, 1}};
  for (std::size_t i = 1; i <= last; ++i) {
    auto const gap = poly.top(static_cast<std::int64_t>(i)) - prof.heights[i];
    std::vector<Sequence> cands;
    if (i == last) {
      auto const& own = prof.vertical[last];
      if (gap >= 0 && own.length() <= 1) cands.push_back(Sequence{static_cast<Sequence::value_type>(gap)});
    } else {
      cands = detail::column_candidates(gap);
    }
    auto const& prev_steps = prof.vertical[i - 1];
    std::vector<detail::ColumnState> next;
    for (auto& cand : cands) {
      BigInt w = 0;
      for (auto const& st : states)
        w += st.weight * detail::column_factor(seq_add(prev_steps, st.edges), cand);
      if (w != 0) next.push_back({cand, std::move(w)});
    }
    states = std::move(next);
    if (states.empty()) return 0;
  }
  BigInt total = 0;
  for (auto const& st : states) total += st.weight;
  return Rational(total, weighted_power(alpha));
}

enum class MultiplicityEngine { Recursive, ClosedForm };

/// mu_{alpha,+}, mu_{beta,-} and their product for one path.
struct PathMultiplicities {
  Rational plus;
  BigInt minus;
  Rational product;
};

/**
 * Evaluates generalized multiplicities of many paths sharing a polygon,
 * alpha and beta, reusing the recursion memo across calls.
 */
class PathScorer {
 public:
  PathScorer(Polygon poly, Sequence alpha, Sequence beta, MultiplicityEngine engine)
      : poly_(poly),
        alpha_(std::move(alpha)),
        beta_(std::move(beta)),
        engine_(engine),
        alpha_steps_(descending_steps(alpha_)),
        alpha_power_(weighted_power(alpha_)),
        positive_(RecursiveMultiplicity::positive(poly_)),
        negative_(RecursiveMultiplicity::negative_beta(poly_, beta_)) {}

  PathMultiplicities operator()(std::span<const LatticePoint> pts) {
    PathMultiplicities out;
    if (has_column_skip(pts)) {
      out.plus = 0;
      out.minus = 0;
      out.product = 0;
      return out;
    }
    LatticePath path(poly_, std::vector<LatticePoint>(pts.begin(), pts.end()));
    if (engine_ == MultiplicityEngine::ClosedForm) {
      out.minus = mu_beta_minus_closed(path, beta_);
      out.plus = out.minus == 0 ? Rational(0) : mu_alpha_plus_closed(path, alpha_);
    } else {
      out.minus = negative_.evaluate(pts);
      if (out.minus == 0) {
        out.plus = 0;
      } else {
        auto extended = extend_along_left_edge(path, alpha_steps_);
        out.plus = Rational(positive_.evaluate(extended), alpha_power_);
      }
    }
    out.product = out.plus * Rational(out.minus);
    return out;
  }

  /// Both factors regardless of whether one of them vanishes.
  PathMultiplicities full(std::span<const LatticePoint> pts) {
    LatticePath path(poly_, std::vector<LatticePoint>(pts.begin(), pts.end()));
    PathMultiplicities out;
    if (engine_ == MultiplicityEngine::ClosedForm) {
      out.minus = mu_beta_minus_closed(path, beta_);
      out.plus = mu_alpha_plus_closed(path, alpha_);
    } else {
      out.minus = negative_.evaluate(pts);
      out.plus = Rational(positive_.evaluate(extend_along_left_edge(path, alpha_steps_)), alpha_power_);
    }
    out.product = out.plus * Rational(out.minus);
    return out;
  }

 private:
  Polygon poly_;
  Sequence alpha_;
  Sequence beta_;
  MultiplicityEngine engine_;
  std::vector<std::uint32_t> alpha_steps_;
  BigInt alpha_power_;
  RecursiveMultiplicity positive_;
  RecursiveMultiplicity negative_;
};

}  // namespace tropcount
