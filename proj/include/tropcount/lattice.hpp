#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "sequence.hpp"

namespace tropcount {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(LatticePoint const&, LatticePoint const&) = default;
  friend auto operator<=>(LatticePoint const&, LatticePoint const&) = default;

  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
};

inline std::ostream& operator<<(std::ostream& os, LatticePoint p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

/// z-component of u x v.
inline std::int64_t cross(LatticePoint u, LatticePoint v) { return u.x * v.y - u.y * v.x; }

/**
 * Strict order induced by lambda(x, y) = x - eps*y for an infinitesimal
 * irrational eps: larger x wins, ties broken by smaller y.
 */
inline bool lambda_less(LatticePoint a, LatticePoint b) {
  return a.x < b.x || (a.x == b.x && a.y > b.y);
}

enum class Shape { Triangle, Rectangle };

/**
 * Triangle(d) = {x, y >= 0, x + y <= d}; Rectangle(d', d) = [0, d'] x [0, d].
 *
 * In both cases height() is d, the length of the left edge, and width() is
 * the number of columns minus one. The lambda-extremal points are
 * p = (0, height) and q = (width, 0).
 */
class Polygon {
 public:
  static Polygon triangle(std::int64_t d) {
    if (d < 1) throw PreconditionError("triangle degree must be >= 1");
    return Polygon(Shape::Triangle, d, d);
  }
  static Polygon rectangle(std::int64_t width, std::int64_t height) {
    if (width < 1 || height < 1) throw PreconditionError("rectangle sides must be >= 1");
    return Polygon(Shape::Rectangle, width, height);
  }

  Shape shape() const { return shape_; }
  std::int64_t width() const { return width_; }
  std::int64_t height() const { return height_; }

  LatticePoint p() const { return {0, height_}; }
  LatticePoint q() const { return {width_, 0}; }

  /// Largest y of the polygon on column x (for 0 <= x <= width).
  std::int64_t top(std::int64_t x) const {
    return shape_ == Shape::Triangle ? height_ - x : height_;
  }

  bool contains(LatticePoint pt) const {
    return pt.x >= 0 && pt.y >= 0 && pt.x <= width_ && pt.y <= top(pt.x);
  }

  /// All lattice points in increasing lambda order.
  std::vector<LatticePoint> lattice_points() const {
    std::vector<LatticePoint> out;
    for (std::int64_t x = 0; x <= width_; ++x)
      for (std::int64_t y = top(x); y >= 0; --y) out.push_back({x, y});
    return out;
  }

  std::string describe() const {
    if (shape_ == Shape::Triangle) return "triangle(" + std::to_string(height_) + ")";
    return "rectangle(" + std::to_string(width_) + "," + std::to_string(height_) + ")";
  }

  friend bool operator==(Polygon const&, Polygon const&) = default;
  friend auto operator<=>(Polygon const&, Polygon const&) = default;

 private:
  Polygon(Shape s, std::int64_t w, std::int64_t h) : shape_(s), width_(w), height_(h) {}

  Shape shape_;
  std::int64_t width_;
  std::int64_t height_;
};

/// A lambda-increasing lattice path inside a polygon.
class LatticePath {
 public:
  /// Validates containment and strict lambda-monotonicity.
  LatticePath(Polygon polygon, std::vector<LatticePoint> points)
      : polygon_(polygon), points_(std::move(points)) {
    if (points_.empty()) throw PreconditionError("a lattice path needs at least one point");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!polygon_.contains(points_[i]))
        throw PreconditionError("path point outside " + polygon_.describe());
      if (i > 0 && !lambda_less(points_[i - 1], points_[i]))
        throw PreconditionError("path is not lambda-increasing");
    }
  }

  Polygon const& polygon() const { return polygon_; }
  std::span<const LatticePoint> points() const { return points_; }
  std::vector<LatticePoint> const& point_list() const { return points_; }
  std::size_t steps() const { return points_.size() - 1; }
  LatticePoint front() const { return points_.front(); }
  LatticePoint back() const { return points_.back(); }

  friend bool operator==(LatticePath const&, LatticePath const&) = default;

 private:
  Polygon polygon_;
  std::vector<LatticePoint> points_;
};

/// Clockwise boundary from p to q through every boundary lattice point.
inline LatticePath delta_plus(Polygon const& poly) {
  std::vector<LatticePoint> pts;
  if (poly.shape() == Shape::Triangle) {
    for (std::int64_t x = 0; x <= poly.width(); ++x) pts.push_back({x, poly.height() - x});
  } else {
    for (std::int64_t x = 0; x <= poly.width(); ++x) pts.push_back({x, poly.height()});
    for (std::int64_t y = poly.height() - 1; y >= 0; --y) pts.push_back({poly.width(), y});
  }
  return LatticePath(poly, std::move(pts));
}

/// Counterclockwise boundary from p to q: down the left edge, then along y = 0.
inline LatticePath delta_minus(Polygon const& poly) {
  std::vector<LatticePoint> pts;
  for (std::int64_t y = poly.height(); y >= 0; --y) pts.push_back({0, y});
  for (std::int64_t x = 1; x <= poly.width(); ++x) pts.push_back({x, 0});
  return LatticePath(poly, std::move(pts));
}

/**
 * True iff the path descends {x = 0} from (0, I beta) with vertical steps
 * whose lengths form the multiset beta (any order), then runs along
 * {y = 0} in unit steps to q. A path starting elsewhere is never a
 * delta_beta.
 */
inline bool is_delta_beta(std::span<const LatticePoint> pts, Polygon const& poly,
                          Sequence const& beta) {
  auto ib = static_cast<std::int64_t>(weighted_sum(beta));
  if (pts.empty() || pts.front() != LatticePoint{0, ib} || pts.back() != poly.q()) return false;
  std::vector<Sequence::value_type> lengths;
  std::size_t i = 1;
  for (; i < pts.size() && pts[i].x == 0; ++i) {
    auto len = static_cast<std::size_t>(pts[i - 1].y - pts[i].y);
    if (lengths.size() < len) lengths.resize(len, 0);
    ++lengths[len - 1];
  }
  if (pts[i - 1] != LatticePoint{0, 0}) return false;
  if (Sequence(std::move(lengths)) != beta) return false;
  for (; i < pts.size(); ++i)
    if (pts[i] != LatticePoint{pts[i - 1].x + 1, 0}) return false;
  return true;
}

inline bool is_delta_beta(LatticePath const& path, Sequence const& beta) {
  return is_delta_beta(path.points(), path.polygon(), beta);
}

/// True iff some step moves two or more columns to the right.
inline bool has_column_skip(std::span<const LatticePoint> pts) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].x - pts[i - 1].x >= 2) return true;
  return false;
}

inline bool has_column_skip(LatticePath const& path) { return has_column_skip(path.points()); }

/**
 * Depth-first enumeration of every lambda-increasing path with exactly
 * `steps` steps from `start` to `end`; `visit` receives each point list.
 *
 * Points are taken in lambda order, so a path is a choice of steps - 1
 * intermediate points; output order is lexicographic in the chosen indices.
 * With prune_column_skips, paths containing a step across >= 2 columns are
 * not produced.
 */
template <typename Visitor>
void for_each_path(Polygon const& poly, LatticePoint start, LatticePoint end, std::size_t steps,
                   bool prune_column_skips, Visitor&& visit) {
  if (!poly.contains(start) || !poly.contains(end))
    throw PreconditionError("path endpoints must lie in " + poly.describe());
  if (!lambda_less(start, end) || steps == 0) return;
  std::vector<LatticePoint> between;
  for (auto pt : poly.lattice_points())
    if (lambda_less(start, pt) && lambda_less(pt, end)) between.push_back(pt);
  std::size_t const inner = steps - 1;
  if (inner > between.size()) return;

  std::vector<LatticePoint> current{start};
  current.reserve(steps + 1);
  auto recurse = [&](auto&& self, std::size_t next, std::size_t remaining) -> void {
    LatticePoint const last = current.back();
    if (prune_column_skips && end.x - last.x > static_cast<std::int64_t>(remaining) + 1) return;
    if (remaining == 0) {
      if (prune_column_skips && end.x - last.x >= 2) return;
      current.push_back(end);
      visit(std::as_const(current));
      current.pop_back();
      return;
    }
    for (std::size_t i = next; i + remaining <= between.size(); ++i) {
      if (prune_column_skips && between[i].x - last.x >= 2) break;
      current.push_back(between[i]);
      self(self, i + 1, remaining - 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0, inner);
}

inline std::vector<LatticePath> enumerate_paths(Polygon const& poly, LatticePoint start,
                                                LatticePoint end, std::size_t steps,
                                                bool prune_column_skips) {
  std::vector<LatticePath> out;
  for_each_path(poly, start, end, steps, prune_column_skips,
                [&](std::vector<LatticePoint> const& pts) { out.emplace_back(poly, pts); });
  return out;
}

/// Per-column data of a path without column skips.
struct ColumnProfile {
  /// heights[i]: highest y of the path on {x = i}.
  std::vector<std::int64_t> heights;
  /// vertical[i]: lengths of the vertical steps on {x = i}, as a sequence.
  std::vector<Sequence> vertical;
};

/**
 * Column profile over columns front().x .. back().x. Throws ColumnSkip if a
 * step spans two or more columns.
 */
inline ColumnProfile column_profile(std::span<const LatticePoint> pts) {
  if (pts.empty()) throw PreconditionError("empty path");
  if (has_column_skip(pts)) throw ColumnSkip("path has a step spanning two or more columns");
  std::int64_t const x0 = pts.front().x;
  auto const columns = static_cast<std::size_t>(pts.back().x - x0 + 1);
  ColumnProfile prof;
  prof.heights.assign(columns, 0);
  prof.vertical.assign(columns, Sequence{});
  prof.heights[0] = pts.front().y;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    auto col = static_cast<std::size_t>(pts[i].x - x0);
    if (pts[i].x == pts[i - 1].x) {
      auto len = static_cast<std::size_t>(pts[i - 1].y - pts[i].y);
      prof.vertical[col].set(len, prof.vertical[col].entry(len) + 1);
    } else {
      prof.heights[col] = pts[i].y;
    }
  }
  return prof;
}

inline ColumnProfile column_profile(LatticePath const& path) { return column_profile(path.points()); }

}  // namespace tropcount

template <>
struct std::hash<tropcount::LatticePoint> {
  std::size_t operator()(tropcount::LatticePoint p) const noexcept {
    return std::hash<std::int64_t>{}(p.x * 1000003 + p.y);
  }
};
