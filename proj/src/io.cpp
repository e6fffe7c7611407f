#include "fanih/io.hpp"

#include <fstream>
#include <sstream>

#include "fanih/error.hpp"

namespace fanih {

namespace {

Rational rational_from_json(const Json& x) {
  if (x.is_string()) return parse_rational(x.get<std::string>());
  if (x.is_number_integer()) return Rational(x.get<long>());
  throw Error(ErrorKind::Parse, "expected a rational string or an integer, got " + x.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int read_dim(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long>() < 1 || d.get<long>() > 64)
    throw Error(ErrorKind::Parse, "\"dim\" must be a positive integer");
  return d.get<int>();
}

std::vector<Vec> read_points(const Json& j, const char* key, int dim) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be an array");
  std::vector<Vec> out;
  for (const auto& row : a) {
    Vec v = vec_from_json(row);
    if (v.size() != static_cast<std::size_t>(dim))
      throw Error(ErrorKind::Parse, std::string("entry of \"") + key + "\" has the wrong length");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of rationals");
  Vec out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

FanPtr parse_fan(const Json& j) {
  const int dim = read_dim(j);
  auto rays = read_points(j, "rays", dim);
  const Json& cs = field(j, "cones");
  if (!cs.is_array()) throw Error(ErrorKind::Parse, "\"cones\" must be an array");
  std::vector<std::vector<RayId>> cones;
  for (const auto& c : cs) {
    if (!c.is_array()) throw Error(ErrorKind::Parse, "cone must be an array of ray indices");
    std::vector<RayId> ids;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<long>() < 0 || x.get<std::size_t>() >= rays.size())
        throw Error(ErrorKind::Parse, "ray index out of range in cone " + c.dump());
      ids.push_back(x.get<RayId>());
    }
    cones.push_back(std::move(ids));
  }
  return std::make_shared<Fan>(build_fan(dim, rays, cones));
}

FanPtr parse_fan_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return parse_fan(j);
}

FanPtr read_fan_file(const std::string& path) { return parse_fan_text(read_text_file(path)); }

Json dump_fan(const Fan& fan) {
  Json out;
  out["dim"] = fan.ambient_dim();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) rays.push_back(to_json(r));
  out["rays"] = rays;
  Json cones = Json::array();
  for (auto m : fan.maximal_cones()) cones.push_back(fan.cone(m).rays);
  out["cones"] = cones;
  return out;
}

Polytope parse_polytope(const Json& j) {
  Polytope p;
  p.dim = read_dim(j);
  p.vertices = read_points(j, "vertices", p.dim);
  if (p.vertices.empty()) throw Error(ErrorKind::Parse, "polytope without vertices");
  return p;
}

Polytope read_polytope_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return parse_polytope(j);
}

Json dump_polytope(const Polytope& p) {
  Json out;
  out["dim"] = p.dim;
  Json vs = Json::array();
  for (const auto& v : p.vertices) vs.push_back(to_json(v));
  out["vertices"] = vs;
  return out;
}

Json dump_sheaf(const PureSheaf& f) {
  const Fan& fan = *f.fan();
  Json cones = Json::array();
  for (const auto& c : fan.cones())
    cones.push_back({{"id", c.id}, {"rays", c.rays}, {"dim", c.dim}, {"generators", f.stalk(c.id).gens}});
  Json facets = Json::array();
  for (const auto& c : fan.cones())
    for (auto t : c.facets) {
      const auto& m = f.facet_map(c.id, t);
      Json rows = Json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(r, k).to_string());
        rows.push_back(row);
      }
      facets.push_back({{"cone", c.id}, {"facet", t}, {"map", rows}});
    }
  return {{"max_degree", f.max_degree()}, {"cones", cones}, {"facets", facets}};
}

Json to_json(const PairingReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) blocks.push_back(to_json(b));
  return {{"betti", r.betti},
          {"betti_compact", r.betti_compact},
          {"pairing_reduced", blocks},
          {"nondegenerate", r.nondegenerate},
          {"symmetric", r.symmetric}};
}

Json to_json(const HlReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"from_degree", s.from_degree},
                     {"to_degree", s.to_degree},
                     {"rows", s.rows},
                     {"cols", s.cols},
                     {"rank", s.rank},
                     {"ok", s.ok}});
  return {{"steps", steps}, {"ok", r.ok}};
}

Json to_json(const VanishingReport& r) { return {{"failures", r.failures}, {"ok", r.ok}}; }

Json to_json(const DecompositionReport& r) {
  Json k = Json::object();
  for (std::size_t c = 0; c < r.kernel_degrees.size(); ++c)
    if (!r.kernel_degrees[c].empty()) k[std::to_string(c)] = r.kernel_degrees[c];
  return {{"kernel_degrees", k}, {"balanced", r.balanced}};
}

}  // namespace fanih
