#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "counts.hpp"
#include "io.hpp"
#include "multiplicity.hpp"

namespace tropcount {

enum class PolygonClass { Triangle, Rectangle };

struct VerifyFailure {
  std::string check;
  std::string subject;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  PolygonClass polygon_class = PolygonClass::Triangle;
  std::int64_t d_max = 0;
  std::size_t keys = 0;
  std::size_t paths = 0;
  std::size_t connected = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }

  Json to_json() const {
    Json j{{"polygon_class", polygon_class == PolygonClass::Triangle ? "triangle" : "rectangle"},
           {"d_max", d_max},
           {"keys", keys},
           {"paths", paths},
           {"connected", connected},
           {"ok", ok()}};
    Json fails = Json::array();
    for (auto const& f : failures)
      fails.push_back({{"check", f.check}, {"subject", f.subject}, {"expected", f.expected}, {"actual", f.actual}});
    j["failures"] = std::move(fails);
    return j;
  }

  void print(std::ostream& os) const {
    os << (polygon_class == PolygonClass::Triangle ? "triangle" : "rectangle") << " d_max=" << d_max
       << ": " << keys << " keys, " << paths << " paths, " << connected << " connected checks, "
       << failures.size() << " failures\n";
    for (auto const& f : failures)
      os << "  FAIL " << f.check << " " << f.subject << ": expected " << f.expected << ", got " << f.actual << '\n';
    os << (ok() ? "PASS" : "FAIL") << '\n';
  }
};

namespace detail {

inline void verify_polygon(Polygon const& poly, Counter& counter, VerifyReport& report) {
  for (auto const& [alpha, beta] : admissible_pairs(poly.height())) {
    PathScorer recursive(poly, alpha, beta, MultiplicityEngine::Recursive);
    PathScorer closed(poly, alpha, beta, MultiplicityEngine::ClosedForm);
    auto window = genus_window(poly, alpha, beta);
    for (std::int64_t g = window.lo - 1; g <= window.hi + 1; ++g) {
      CountKey key{poly, g, alpha, beta};
      std::string const subject = key_string("N", key);
      ++report.keys;
      try {
        BigInt const by_paths = counter.n_path(key);
        BigInt const by_closed = counter.n_path(key, MultiplicityEngine::ClosedForm);
        BigInt const by_ch = counter.ch_count(key);
        if (by_paths != by_ch) report.failures.push_back({"paths=ch", subject, by_paths.str(), by_ch.str()});
        if (by_paths != by_closed)
          report.failures.push_back({"paths=closed", subject, by_paths.str(), by_closed.str()});
      } catch (Error const& e) {
        report.failures.push_back({"integrality", subject, "integer", e.what()});
      }

      auto const steps = step_count(key);
      if (steps < 1) continue;
      for_each_path(poly, key.start(), poly.q(), static_cast<std::size_t>(steps), true,
                    [&](std::vector<LatticePoint> const& pts) {
                      ++report.paths;
                      auto r = recursive.full(pts);
                      auto c = closed.full(pts);
                      if (r.minus != c.minus)
                        report.failures.push_back({"mu_beta_minus", subject + " " + points_json(pts).dump(),
                                                   r.minus.str(), c.minus.str()});
                      if (r.plus != c.plus)
                        report.failures.push_back({"mu_alpha_plus", subject + " " + points_json(pts).dump(),
                                                   to_decimal(r.plus), to_decimal(c.plus)});
                    });
    }
  }
}

}  // namespace detail

/**
 * Exhaustive cross-engine check over every admissible key up to d_max:
 * path enumeration against the recursion and the closed-form engine,
 * recursive against closed-form multiplicities on every path, and, for
 * triangles, N(d, g) against its reconstruction from irreducible counts.
 * For rectangles both sides range over 1..d_max.
 */
inline VerifyReport verify_engines(std::int64_t d_max, PolygonClass cls, CounterOptions options = {}) {
  VerifyReport report;
  report.polygon_class = cls;
  report.d_max = d_max;
  Counter counter(options);
  if (cls == PolygonClass::Triangle) {
    for (std::int64_t d = 1; d <= d_max; ++d) {
      auto poly = Polygon::triangle(d);
      detail::verify_polygon(poly, counter, report);
      Sequence const all{static_cast<Sequence::value_type>(d)};
      auto window = genus_window(poly, Sequence{}, all);
      for (std::int64_t g = window.lo - 1; g <= window.hi + 1; ++g) {
        ++report.connected;
        CountKey key{poly, g, Sequence{}, all};
        BigInt const direct = counter.n_path(key);
        BigInt const rebuilt = counter.connected_from_irreducible(d, g);
        if (direct != rebuilt)
          report.failures.push_back({"connected", key_string("N", key), direct.str(), rebuilt.str()});
      }
    }
  } else {
    for (std::int64_t w = 1; w <= d_max; ++w)
      for (std::int64_t h = 1; h <= d_max; ++h) detail::verify_polygon(Polygon::rectangle(w, h), counter, report);
  }
  return report;
}

}  // namespace tropcount
