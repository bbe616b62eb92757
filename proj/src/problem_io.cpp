#include "drsplit/problem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace drsplit {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) fail(where + ": unknown field \"" + item.key() + "\"");
  }
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

Vector require_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + ": expected a nonempty array of numbers");
  std::vector<double> entries;
  entries.reserve(j.size());
  for (const json& e : j) entries.push_back(require_number(e, where));
  return Vector(std::move(entries));
}

// Box bound entry: a number, or the strings "-inf"/"inf".
std::vector<double> require_bounds(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where + ": expected a nonempty array");
  std::vector<double> entries;
  entries.reserve(j.size());
  for (const json& e : j) {
    if (e.is_string()) {
      const std::string s = e.get<std::string>();
      if (s == "inf") {
        entries.push_back(kInf);
      } else if (s == "-inf") {
        entries.push_back(-kInf);
      } else {
        fail(where + ": only \"inf\" and \"-inf\" are accepted as strings");
      }
    } else {
      entries.push_back(require_number(e, where));
    }
  }
  return entries;
}

ConvexSet parse_set(const json& j, std::size_t index) {
  const std::string where = "sets[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where + ": expected an object");
  if (!j.contains("type") || !j.at("type").is_string()) {
    fail(where + ": missing string field \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "affine") {
      reject_unknown(j, {"type", "anchor", "directions"}, where);
      if (!j.contains("anchor")) fail(where + ": missing \"anchor\"");
      Vector anchor = require_vector(j.at("anchor"), where + ".anchor");
      std::vector<Vector> directions;
      if (j.contains("directions")) {
        const json& dirs = j.at("directions");
        if (!dirs.is_array()) fail(where + ".directions: expected an array");
        for (const json& dj : dirs) directions.push_back(require_vector(dj, where + ".directions"));
      }
      return ConvexSet::affine(std::move(anchor), std::move(directions));
    }
    if (type == "affine-eq") {
      reject_unknown(j, {"type", "matrix", "rhs"}, where);
      if (!j.contains("matrix") || !j.at("matrix").is_array() || j.at("matrix").empty()) {
        fail(where + ": missing matrix rows");
      }
      std::vector<Vector> rows;
      for (const json& rj : j.at("matrix")) rows.push_back(require_vector(rj, where + ".matrix"));
      Matrix m{static_cast<int>(rows.size()), rows.front().dim(), {}};
      for (const Vector& r : rows) {
        if (r.dim() != m.cols) fail(where + ".matrix: ragged rows");
        m.a.insert(m.a.end(), r.entries().begin(), r.entries().end());
      }
      if (!j.contains("rhs")) fail(where + ": missing \"rhs\"");
      Vector rhs = require_vector(j.at("rhs"), where + ".rhs");
      if (rhs.dim() != m.rows) fail(where + ".rhs: length must match the matrix rows");
      return ConvexSet::affine_from_equations(m, rhs);
    }
    if (type == "halfspace") {
      reject_unknown(j, {"type", "normal", "offset"}, where);
      if (!j.contains("normal") || !j.contains("offset")) {
        fail(where + ": needs \"normal\" and \"offset\"");
      }
      return ConvexSet::halfspace(require_vector(j.at("normal"), where + ".normal"),
                                  require_number(j.at("offset"), where + ".offset"));
    }
    if (type == "box") {
      reject_unknown(j, {"type", "lower", "upper"}, where);
      if (!j.contains("lower") || !j.contains("upper")) {
        fail(where + ": needs \"lower\" and \"upper\"");
      }
      return ConvexSet::box(require_bounds(j.at("lower"), where + ".lower"),
                            require_bounds(j.at("upper"), where + ".upper"));
    }
    if (type == "ball") {
      reject_unknown(j, {"type", "center", "radius"}, where);
      if (!j.contains("center") || !j.contains("radius")) {
        fail(where + ": needs \"center\" and \"radius\"");
      }
      return ConvexSet::ball(require_vector(j.at("center"), where + ".center"),
                             require_number(j.at("radius"), where + ".radius"));
    }
    if (type == "singleton") {
      reject_unknown(j, {"type", "point"}, where);
      if (!j.contains("point")) fail(where + ": needs \"point\"");
      return ConvexSet::singleton(require_vector(j.at("point"), where + ".point"));
    }
    if (type == "epi-abs-plus") {
      reject_unknown(j, {"type", "shift"}, where);
      if (!j.contains("shift")) fail(where + ": needs \"shift\"");
      return ConvexSet::epi_abs_plus(require_number(j.at("shift"), where + ".shift"));
    }
  } catch (const UsageError& e) {
    fail(where + ": " + e.what());
  } catch (const DegenerateBasisError& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": unknown set type \"" + type + "\"");
}

json set_to_json(const ConvexSet& s) {
  struct Visitor {
    json operator()(const AffineSubspace& a) const {
      json dirs = json::array();
      for (const Vector& v : a.directions.vectors) dirs.push_back(v.entries());
      return json{{"type", "affine"}, {"anchor", a.anchor.entries()}, {"directions", dirs}};
    }
    json operator()(const Halfspace& h) const {
      return json{{"type", "halfspace"}, {"normal", h.normal.entries()}, {"offset", h.offset}};
    }
    json operator()(const Box& b) const {
      auto bounds = [](const std::vector<double>& side) {
        json out = json::array();
        for (double v : side) {
          if (v == kInf) {
            out.push_back("inf");
          } else if (v == -kInf) {
            out.push_back("-inf");
          } else {
            out.push_back(v);
          }
        }
        return out;
      };
      return json{{"type", "box"}, {"lower", bounds(b.lower)}, {"upper", bounds(b.upper)}};
    }
    json operator()(const Ball& b) const {
      return json{{"type", "ball"}, {"center", b.center.entries()}, {"radius", b.radius}};
    }
    json operator()(const Singleton& p) const {
      return json{{"type", "singleton"}, {"point", p.point.entries()}};
    }
    json operator()(const EpiAbsPlus& e) const {
      // The apex form survives only when it still encodes a pure shift.
      if (e.apex[0] != 0.0 || e.apex[1] < 0.0) {
        throw UnsupportedError("serialize: translated epigraph has no file form");
      }
      return json{{"type", "epi-abs-plus"}, {"shift", e.apex[1]}};
    }
  };
  return std::visit(Visitor{}, s.payload());
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("JSON parse error at " + locate(text, e.byte) + ": " + e.what());
  }
  if (!root.is_object()) fail("problem file: expected a JSON object");
  reject_unknown(root, {"schema", "mode", "sets", "start", "stop"}, "problem file");

  int schema = 1;
  if (root.contains("schema")) {
    if (!root.at("schema").is_number_integer()) fail("schema: expected an integer");
    schema = root.at("schema").get<int>();
    if (schema != 1) fail("schema: only version 1 is supported");
  }

  if (!root.contains("mode") || !root.at("mode").is_string()) {
    fail("problem file: missing string field \"mode\"");
  }
  const std::string mode = root.at("mode").get<std::string>();
  if (mode != "two-set" && mode != "spingarn") {
    fail("mode: expected \"two-set\" or \"spingarn\"");
  }

  if (!root.contains("sets") || !root.at("sets").is_array() || root.at("sets").empty()) {
    fail("sets: expected a nonempty array");
  }
  std::vector<ConvexSet> sets;
  for (std::size_t i = 0; i < root.at("sets").size(); ++i) {
    sets.push_back(parse_set(root.at("sets")[i], i));
  }
  const int d = sets.front().dim();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].dim() != d) {
      fail("sets[" + std::to_string(i) + "]: dimension " + std::to_string(sets[i].dim()) +
           " does not match sets[0] dimension " + std::to_string(d));
    }
  }
  if (mode == "two-set" && sets.size() != 2) {
    fail("two-set mode requires exactly 2 sets, got " + std::to_string(sets.size()));
  }

  const int m = static_cast<int>(sets.size());
  Vector start = Vector::zeros(d);
  if (root.contains("start")) {
    start = require_vector(root.at("start"), "start");
    const bool ok = mode == "two-set" ? start.dim() == d
                                      : start.dim() == d || start.dim() == m * d;
    if (!ok) {
      fail("start: dimension " + std::to_string(start.dim()) +
           " does not match the sets (dimension " + std::to_string(d) + ")");
    }
  }

  StopConfig stop;
  if (root.contains("stop")) {
    const json& sj = root.at("stop");
    if (!sj.is_object()) fail("stop: expected an object");
    reject_unknown(sj, {"max_iter", "tol", "window"}, "stop");
    if (sj.contains("max_iter")) {
      if (!sj.at("max_iter").is_number_integer()) fail("stop.max_iter: expected an integer");
      stop.max_iter = sj.at("max_iter").get<long>();
      if (stop.max_iter < 1) fail("stop.max_iter: must be >= 1");
    }
    if (sj.contains("tol")) {
      stop.tol = require_number(sj.at("tol"), "stop.tol");
      if (!(stop.tol > 0.0)) fail("stop.tol: must be positive");
    }
    if (sj.contains("window")) {
      if (!sj.at("window").is_number_integer()) fail("stop.window: expected an integer");
      stop.window = sj.at("window").get<int>();
      if (stop.window < 1) fail("stop.window: must be >= 1");
    }
  }

  return ProblemFile{schema, mode, std::move(sets), std::move(start), stop};
}

std::string serialize_problem(const ProblemFile& f) {
  json sets = json::array();
  for (const ConvexSet& s : f.sets) sets.push_back(set_to_json(s));
  const json root{{"schema", f.schema},
                  {"mode", f.mode},
                  {"sets", sets},
                  {"start", f.start.entries()},
                  {"stop", json{{"max_iter", f.stop.max_iter},
                                {"tol", f.stop.tol},
                                {"window", f.stop.window}}}};
  return root.dump(2) + "\n";
}

DrProblem to_dr_problem(const ProblemFile& f) {
  if (f.mode != "two-set") throw ValidationError("problem file is not in two-set mode");
  return DrProblem{f.sets[0], f.sets[1], f.start};
}

std::pair<ProductProblem, ProductPoint> to_product(const ProblemFile& f) {
  if (f.mode != "spingarn") throw ValidationError("problem file is not in spingarn mode");
  ProductProblem p{f.sets};
  const int d = problem_dim(p);
  const int m = static_cast<int>(p.sets.size());
  ProductPoint x0 = f.start.dim() == d ? replicate(f.start, m) : unflatten(f.start, m);
  return {std::move(p), std::move(x0)};
}

}  // namespace drsplit
