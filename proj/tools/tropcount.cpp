// Command-line front end: compute single invariants, N(d, g) tables, path
// listings with multiplicities, and the cross-engine verification suite.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tropcount/tropcount.hpp"

namespace {

using namespace tropcount;

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeyArgs {
  std::int64_t d = 0;
  std::int64_t dprime = 0;
  std::int64_t g = 0;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
};

void add_key_options(CLI::App& cmd, KeyArgs& args) {
  cmd.add_option("--d", args.d, "Degree (left edge length)")->required();
  cmd.add_option("--dprime", args.dprime, "Rectangle width; omit for the triangle");
  cmd.add_option("--g", args.g, "Genus (negative values allowed)");
  cmd.add_option("--alpha", args.alpha, "Fixed contacts, comma syntax (default 0)");
  cmd.add_option("--beta", args.beta, "Moving contacts, comma syntax (default: d when alpha is absent)");
}

CountKey build_key(KeyArgs const& args) {
  if (args.d < 1) throw UsageError("--d must be >= 1");
  if (args.dprime < 0) throw UsageError("--dprime must be >= 1");
  Polygon poly = args.dprime > 0 ? Polygon::rectangle(args.dprime, args.d) : Polygon::triangle(args.d);
  Sequence alpha, beta;
  try {
    if (args.alpha) alpha = parse_sequence(*args.alpha);
    if (args.beta)
      beta = parse_sequence(*args.beta);
    else if (!args.alpha)
      beta = Sequence{static_cast<Sequence::value_type>(args.d)};
  } catch (ParseError const& e) {
    throw UsageError(e.what());
  }
  if (static_cast<std::int64_t>(weighted_sum(alpha) + weighted_sum(beta)) != args.d)
    throw UsageError("I*alpha + I*beta must equal d (got " + std::to_string(weighted_sum(alpha)) + " + " +
                     std::to_string(weighted_sum(beta)) + " != " + std::to_string(args.d) + ")");
  return CountKey{poly, args.g, std::move(alpha), std::move(beta)};
}

Engine checked_engine(std::string const& name, Polygon const& poly) {
  Engine e;
  try {
    e = parse_engine(name);
  } catch (ParseError const& err) {
    throw UsageError(err.what());
  }
  if (e == Engine::Irreducible && poly.shape() != Shape::Triangle)
    throw UsageError("the irr engine only supports triangles");
  return e;
}

/// Loads and saves the memo table under COUNT_CACHE_DIR when it is set.
class PersistentCache {
 public:
  explicit PersistentCache(Counter& counter) : counter_(counter) {
    if (char const* dir = std::getenv("COUNT_CACHE_DIR"); dir && *dir) {
      file_ = std::filesystem::path(dir) / "tropcount-cache.txt";
      std::filesystem::create_directories(dir);
      counter_.cache().load(*file_);
    }
  }
  void save() const {
    if (file_) counter_.cache().save(*file_);
  }

 private:
  Counter& counter_;
  std::optional<std::filesystem::path> file_;
};

int cmd_compute(KeyArgs const& args, std::string const& engine_name_arg, std::string const& format,
                unsigned jobs) {
  CountKey key = build_key(args);
  Engine engine = checked_engine(engine_name_arg, key.polygon);
  Counter counter({.jobs = jobs});
  PersistentCache persist(counter);
  BigInt value = counter.count(key, engine);
  if (format == "json") {
    std::cout << result_json(key, engine, value).dump() << '\n';
  } else if (format == "csv") {
    std::cout << "polygon,d,g,alpha,beta,engine,value\n"
              << key.polygon.describe() << ',' << key.polygon.height() << ',' << key.genus << ",\""
              << format_sequence(key.alpha) << "\",\"" << format_sequence(key.beta) << "\","
              << engine_name(engine) << ',' << value << '\n';
  } else {
    std::cout << value << '\n';
  }
  persist.save();
  return 0;
}

int cmd_table(std::int64_t dmax, std::int64_t gmin, std::int64_t gmax, std::string const& engine_arg,
              std::string const& format, unsigned jobs) {
  if (dmax < 1) throw UsageError("--d must be >= 1");
  Engine engine = checked_engine(engine_arg, Polygon::triangle(1));
  Counter counter({.jobs = jobs});
  PersistentCache persist(counter);
  std::vector<std::vector<BigInt>> rows;
  for (std::int64_t d = 1; d <= dmax; ++d) {
    auto& row = rows.emplace_back();
    for (std::int64_t g = gmin; g <= gmax; ++g)
      row.push_back(counter.count(CountKey{Polygon::triangle(d), g, Sequence{},
                                           Sequence{static_cast<Sequence::value_type>(d)}},
                                  engine));
  }
  if (format == "json") {
    Json genera = Json::array();
    for (std::int64_t g = gmin; g <= gmax; ++g) genera.push_back(g);
    Json out{{"engine", engine_name(engine)}, {"genera", genera}, {"rows", Json::array()}};
    if (gmin <= gmax)
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Json values = Json::array();
        for (auto const& v : rows[i]) values.push_back(v.str());
        out["rows"].push_back({{"d", static_cast<std::int64_t>(i) + 1}, {"values", values}});
      }
    std::cout << out.dump() << '\n';
  } else if (gmin <= gmax) {
    bool const csv = format == "csv";
    std::size_t width = 1;
    for (auto const& row : rows)
      for (auto const& v : row) width = std::max(width, v.str().size());
    width = std::max<std::size_t>(width, 4);
    auto cell = [&](std::string const& s) {
      if (csv) return "," + s;
      std::ostringstream os;
      os << ' ' << std::setw(static_cast<int>(width)) << s;
      return os.str();
    };
    std::cout << (csv ? "d" : " d");
    for (std::int64_t g = gmin; g <= gmax; ++g) std::cout << cell(csv ? std::to_string(g) : "g=" + std::to_string(g));
    std::cout << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::cout << (csv ? "" : " ") << i + 1;
      for (auto const& v : rows[i]) std::cout << cell(v.str());
      std::cout << '\n';
    }
  }
  persist.save();
  return 0;
}

int cmd_paths(KeyArgs const& args, std::string const& engine_arg, bool include_skips) {
  CountKey key = build_key(args);
  Engine engine = checked_engine(engine_arg, key.polygon);
  if (engine != Engine::Paths && engine != Engine::Closed)
    throw UsageError("paths listing needs the paths or closed engine");
  auto mult = engine == Engine::Paths ? MultiplicityEngine::Recursive : MultiplicityEngine::ClosedForm;
  PathScorer score(key.polygon, key.alpha, key.beta, mult);
  Rational total = 0;
  std::size_t listed = 0;
  std::size_t contributing = 0;
  auto const steps = step_count(key);
  if (steps >= 1) {
    for_each_path(key.polygon, key.start(), key.polygon.q(), static_cast<std::size_t>(steps), !include_skips,
                  [&](std::vector<LatticePoint> const& pts) {
                    bool const skip = has_column_skip(std::span<const LatticePoint>(pts));
                    auto m = score.full(pts);
                    if (m.product == 0 && !skip) return;
                    ++listed;
                    if (m.product != 0) ++contributing;
                    total += m.product;
                    std::cout << path_record_json(LatticePath(key.polygon, pts), m, skip).dump() << '\n';
                  });
  }
  if (!is_integral(total)) throw NonIntegralTotal("non-integral path total " + to_decimal(total));
  Json summary = result_json(key, engine, boost::multiprecision::numerator(total));
  summary["summary"] = true;
  summary["paths"] = contributing;
  summary["listed"] = listed;
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_verify(std::int64_t dmax, std::int64_t cap, std::string const& shape, std::string const& format) {
  if (dmax < 1) throw UsageError("--d must be >= 1");
  if (dmax > cap)
    throw UsageError("--d " + std::to_string(dmax) + " exceeds the safety cap " + std::to_string(cap) +
                     "; raise --cap to run it anyway");
  PolygonClass cls;
  if (shape == "triangle")
    cls = PolygonClass::Triangle;
  else if (shape == "rectangle")
    cls = PolygonClass::Rectangle;
  else
    throw UsageError("--shape must be triangle or rectangle");
  auto report = verify_engines(dmax, cls);
  // Text mode prints the human-readable summary followed by the JSON report line.
  if (format != "json") report.print(std::cout);
  std::cout << report.to_json().dump() << '\n';
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative Gromov-Witten numbers of plane curves via lattice paths"};
  app.require_subcommand(1);

  KeyArgs key_args;
  std::string engine = "paths";
  std::string format = "text";
  unsigned jobs = 1;
  bool include_skips = false;
  std::int64_t cap = 4;
  std::int64_t gmin = 0;
  std::int64_t gmax = 0;
  std::string shape = "triangle";

  auto* compute = app.add_subcommand("compute", "Compute one invariant N^{alpha,beta}(d,g)");
  add_key_options(*compute, key_args);
  compute->add_option("--engine", engine, "paths | closed | ch | irr");
  compute->add_option("--format", format, "text | json | csv");
  compute->add_option("--jobs", jobs, "Worker threads for path summation");

  auto* table = app.add_subcommand("table", "Table of N(d,g) for d = 1..D");
  table->add_option("--d", key_args.d, "Largest degree")->required();
  table->add_option("--gmin", gmin, "Smallest genus");
  table->add_option("--gmax", gmax, "Largest genus");
  table->add_option("--engine", engine, "paths | closed | ch | irr");
  table->add_option("--format", format, "text | json | csv");
  table->add_option("--jobs", jobs, "Worker threads for path summation");

  auto* paths = app.add_subcommand("paths", "List contributing paths as JSON lines");
  add_key_options(*paths, key_args);
  paths->add_option("--engine", engine, "paths | closed");
  paths->add_flag("--include-skips", include_skips, "Also list paths with a column skip");

  auto* verify = app.add_subcommand("verify", "Exhaustive cross-engine verification");
  verify->add_option("--d", key_args.d, "Largest degree / side length")->required();
  verify->add_option("--cap", cap, "Safety cap on --d");
  verify->add_option("--shape", shape, "triangle | rectangle");
  verify->add_option("--format", format, "text | json");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsageError;
  }

  if (format != "text" && format != "json" && format != "csv") {
    std::cerr << "error: --format must be text, json or csv\n";
    return kUsageError;
  }

  try {
    if (compute->parsed()) return cmd_compute(key_args, engine, format, jobs);
    if (table->parsed()) return cmd_table(key_args.d, gmin, gmax, engine, format, jobs);
    if (paths->parsed()) return cmd_paths(key_args, engine, include_skips);
    if (verify->parsed()) return cmd_verify(key_args.d, cap, shape, format);
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (tropcount::Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
