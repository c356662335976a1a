#pragma once

#include <string>

#include <json.hpp>

#include "counts.hpp"
#include "lattice.hpp"
#include "multiplicity.hpp"
#include "sequence.hpp"

namespace tropcount {

using Json = nlohmann::ordered_json;

inline Json polygon_json(Polygon const& poly) {
  if (poly.shape() == Shape::Triangle) return Json{{"shape", "triangle"}, {"d", poly.height()}};
  return Json{{"shape", "rectangle"}, {"dprime", poly.width()}, {"d", poly.height()}};
}

inline Polygon polygon_from_json(Json const& j) {
  auto shape = j.at("shape").get<std::string>();
  if (shape == "triangle") return Polygon::triangle(j.at("d").get<std::int64_t>());
  if (shape == "rectangle")
    return Polygon::rectangle(j.at("dprime").get<std::int64_t>(), j.at("d").get<std::int64_t>());
  throw ParseError("unknown polygon shape '" + shape + "'");
}

inline Json points_json(std::span<const LatticePoint> pts) {
  Json arr = Json::array();
  for (auto p : pts) arr.push_back(Json::array({p.x, p.y}));
  return arr;
}

/// {"polygon": {...}, "points": [[x, y], ...]}
inline Json path_json(LatticePath const& path) {
  return Json{{"polygon", polygon_json(path.polygon())}, {"points", points_json(path.points())}};
}

inline LatticePath path_from_json(Json const& j) {
  std::vector<LatticePoint> pts;
  for (auto const& p : j.at("points")) pts.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
  return LatticePath(polygon_from_json(j.at("polygon")), std::move(pts));
}

/// One computed invariant; the value travels as a decimal string.
inline Json result_json(CountKey const& key, Engine engine, BigInt const& value) {
  Json j{{"polygon", polygon_json(key.polygon)}};
  if (key.polygon.shape() == Shape::Rectangle) j["dprime"] = key.polygon.width();
  j["d"] = key.polygon.height();
  j["g"] = key.genus;
  j["alpha"] = format_sequence(key.alpha);
  j["beta"] = format_sequence(key.beta);
  j["engine"] = engine_name(engine);
  j["value"] = to_decimal(value);
  return j;
}

/// One summand of a path count: the path with its multiplicity factors.
inline Json path_record_json(LatticePath const& path, PathMultiplicities const& m, bool skip) {
  Json j = path_json(path);
  j["mu_alpha_plus"] = to_decimal(m.plus);
  j["mu_beta_minus"] = to_decimal(m.minus);
  j["mu"] = to_decimal(m.product);
  j["skip"] = skip;
  return j;
}

}  // namespace tropcount
