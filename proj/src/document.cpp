#include "smallorb/document.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace smallorb {

using nlohmann::json;

Rat parse_rational(const std::string& text) {
  auto bad = [&]() {
    return std::invalid_argument("malformed rational '" + text + "' (expected p or p/q)");
  };
  std::string s = text;
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string rational_to_string(const Rat& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

Rat rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a rational string");
}

}  // namespace

PolytopeDocument parse_polytope(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document", "top level must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    fail("schema_version", "required integer field missing");
  if (j["schema_version"].get<int>() != kSchemaVersion)
    fail("schema_version", "unsupported version " + j["schema_version"].dump());

  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.name = j.value("name", std::string("unnamed"));

  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail("dim", "required integer field missing");
  p.n = j["dim"].get<int>();
  if (p.n < 1) fail("dim", "must be positive");

  if (!j.contains("facets") || !j["facets"].is_array())
    fail("facets", "required array field missing");
  int max_vertex = -1;
  for (size_t a = 0; a < j["facets"].size(); ++a) {
    const json& row = j["facets"][a];
    std::string where = "facets[" + std::to_string(a) + "]";
    if (!row.is_array() || row.empty()) fail(where, "must be a nonempty array");
    std::vector<int> facet;
    for (size_t b = 0; b < row.size(); ++b) {
      if (!row[b].is_number_integer() || row[b].get<long long>() < 0)
        fail(where + "[" + std::to_string(b) + "]", "vertex indices are nonnegative integers");
      facet.push_back(row[b].get<int>());
      max_vertex = std::max(max_vertex, facet.back());
    }
    p.facets.push_back(std::move(facet));
  }

  if (j.contains("vertices")) {
    if (!j["vertices"].is_array()) fail("vertices", "must be an array of coordinate rows");
    std::vector<std::vector<Rat>> coords;
    for (size_t a = 0; a < j["vertices"].size(); ++a) {
      const json& row = j["vertices"][a];
      std::string where = "vertices[" + std::to_string(a) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != p.n)
        fail(where, "must be an array of length dim");
      std::vector<Rat> v;
      for (size_t b = 0; b < row.size(); ++b)
        v.push_back(rational_from_json(row[b], where + "[" + std::to_string(b) + "]"));
      coords.push_back(std::move(v));
    }
    p.vertex_count = static_cast<int>(coords.size());
    p.coords = std::move(coords);
  } else {
    p.vertex_count = max_vertex + 1;
  }
  if (max_vertex >= p.vertex_count)
    fail("facets", "vertex index " + std::to_string(max_vertex) +
                       " exceeds the vertex count " + std::to_string(p.vertex_count));

  ValidationReport rep = validate_simple(p);
  if (!rep.ok) {
    std::string msg = "polytope validation failed:";
    for (const auto& v : rep.violations) msg += "\n  - " + v;
    throw std::invalid_argument(msg);
  }

  if (j.contains("schar")) {
    const json& s = j["schar"];
    if (!s.is_array() || s.size() != p.facets.size())
      fail("schar", "must list one bit array per facet");
    SCharFunction f;
    f.dim = p.n - 1;
    for (size_t a = 0; a < s.size(); ++a) {
      std::string where = "schar[" + std::to_string(a) + "]";
      if (!s[a].is_array() || static_cast<int>(s[a].size()) != p.n - 1)
        fail(where, "must be a bit array of length dim-1");
      GF2Vector v(p.n - 1);
      for (size_t b = 0; b < s[a].size(); ++b) {
        if (!s[a][b].is_number_integer() || (s[a][b] != 0 && s[a][b] != 1))
          fail(where + "[" + std::to_string(b) + "]", "bits are 0 or 1");
        v.set(static_cast<int>(b), s[a][b] == 1);
      }
      f.values.push_back(v);
    }
    doc.schar = std::move(f);
  }

  if (j.contains("isotropy")) {
    const json& s = j["isotropy"];
    if (!s.is_array() || s.size() != p.facets.size())
      fail("isotropy", "must list one integer vector per facet");
    IsotropyFunction f;
    for (size_t a = 0; a < s.size(); ++a) {
      std::string where = "isotropy[" + std::to_string(a) + "]";
      if (!s[a].is_array() || static_cast<int>(s[a].size()) != p.n - 1)
        fail(where, "must be an integer vector of length dim-1");
      std::vector<Int> v;
      for (size_t b = 0; b < s[a].size(); ++b) {
        if (!s[a][b].is_number_integer())
          fail(where + "[" + std::to_string(b) + "]", "entries are integers");
        v.push_back(Int(s[a][b].get<long long>()));
      }
      f.values.push_back(std::move(v));
    }
    doc.isotropy = std::move(f);
  }

  if (j.contains("objective")) {
    const json& o = j["objective"];
    if (!o.is_object()) fail("objective", "must be an object");
    Objective obj;
    if (o.contains("functional")) {
      if (!o["functional"].is_array() || static_cast<int>(o["functional"].size()) != p.n)
        fail("objective.functional", "must be a rational array of length dim");
      obj.functional = std::vector<Rat>();
      for (size_t b = 0; b < o["functional"].size(); ++b)
        obj.functional->push_back(rational_from_json(
            o["functional"][b], "objective.functional[" + std::to_string(b) + "]"));
    } else if (o.contains("order")) {
      if (!o["order"].is_array() || static_cast<int>(o["order"].size()) != p.vertex_count)
        fail("objective.order", "must list every vertex once");
      obj.vertex_order = std::vector<int>();
      for (size_t b = 0; b < o["order"].size(); ++b) {
        if (!o["order"][b].is_number_integer())
          fail("objective.order[" + std::to_string(b) + "]", "entries are vertex indices");
        obj.vertex_order->push_back(o["order"][b].get<int>());
      }
    } else {
      fail("objective", "must contain either 'functional' or 'order'");
    }
    doc.objective = std::move(obj);
  }
  return doc;
}

std::string serialize_polytope(const PolytopeDocument& doc) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = doc.polytope.name;
  j["dim"] = doc.polytope.n;
  if (doc.polytope.coords) {
    json rows = json::array();
    for (const auto& row : *doc.polytope.coords) {
      json r = json::array();
      for (const auto& q : row) r.push_back(rational_to_string(q));
      rows.push_back(std::move(r));
    }
    j["vertices"] = std::move(rows);
  }
  j["facets"] = doc.polytope.facets;
  if (doc.schar) {
    json rows = json::array();
    for (const auto& v : doc.schar->values) {
      json r = json::array();
      for (int b = 0; b < v.size(); ++b) r.push_back(v.get(b) ? 1 : 0);
      rows.push_back(std::move(r));
    }
    j["schar"] = std::move(rows);
  }
  if (doc.isotropy) {
    json rows = json::array();
    for (const auto& v : doc.isotropy->values) {
      json r = json::array();
      for (const auto& x : v) r.push_back(static_cast<long long>(x));
      rows.push_back(std::move(r));
    }
    j["isotropy"] = std::move(rows);
  }
  if (doc.objective) {
    json o = json::object();
    if (doc.objective->functional) {
      json r = json::array();
      for (const auto& q : *doc.objective->functional) r.push_back(rational_to_string(q));
      o["functional"] = std::move(r);
    } else if (doc.objective->vertex_order) {
      o["order"] = *doc.objective->vertex_order;
    }
    j["objective"] = std::move(o);
  }
  return j.dump(2) + "\n";
}

namespace {

PolytopeDocument make_cube(int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("cube: dimension must be in 2..10");
  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.n = n;
  p.name = "cube" + std::to_string(n);
  p.vertex_count = 1 << n;
  std::vector<std::vector<Rat>> coords;
  for (int v = 0; v < p.vertex_count; ++v) {
    std::vector<Rat> row;
    for (int i = 0; i < n; ++i) row.push_back(Rat((v >> i) & 1));
    coords.push_back(std::move(row));
  }
  p.coords = std::move(coords);
  for (int i = 0; i < n; ++i)
    for (int side = 0; side <= 1; ++side) {
      std::vector<int> facet;
      for (int v = 0; v < p.vertex_count; ++v)
        if (((v >> i) & 1) == side) facet.push_back(v);
      p.facets.push_back(std::move(facet));
    }
  return doc;
}

std::vector<std::vector<Rat>> polygon_coords(int m) {
  // Points on a parabola are in convex position with a rational hull.
  std::vector<std::vector<Rat>> coords;
  for (int k = 0; k < m; ++k) coords.push_back({Rat(k), Rat(k) * Rat(k)});
  return coords;
}

PolytopeDocument make_polygon(int m) {
  if (m < 3) throw std::invalid_argument("polygon: need at least 3 edges");
  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.n = 2;
  p.name = "polygon" + std::to_string(m);
  p.vertex_count = m;
  p.coords = polygon_coords(m);
  for (int k = 0; k < m; ++k) p.facets.push_back({k, (k + 1) % m});
  for (auto& f : p.facets) std::sort(f.begin(), f.end());
  return doc;
}

PolytopeDocument make_simplex(int n) {
  if (n < 2 || n > 12) throw std::invalid_argument("simplex: dimension must be in 2..12");
  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.n = n;
  p.name = "simplex" + std::to_string(n);
  p.vertex_count = n + 1;
  std::vector<std::vector<Rat>> coords;
  for (int v = 0; v <= n; ++v) {
    std::vector<Rat> row(n, Rat(0));
    if (v > 0) row[v - 1] = 1;
    coords.push_back(std::move(row));
  }
  p.coords = std::move(coords);
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> facet;
    for (int v = 0; v <= n; ++v)
      if (v != skip) facet.push_back(v);
    p.facets.push_back(std::move(facet));
  }
  return doc;
}

PolytopeDocument make_prism(int m) {
  if (m < 3) throw std::invalid_argument("prism: need at least 3 polygon edges");
  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.n = 3;
  p.name = "prism" + std::to_string(m);
  p.vertex_count = 2 * m;
  auto poly = polygon_coords(m);
  std::vector<std::vector<Rat>> coords;
  for (int z = 0; z <= 1; ++z)
    for (int k = 0; k < m; ++k) coords.push_back({poly[k][0], poly[k][1], Rat(z)});
  p.coords = std::move(coords);
  std::vector<int> bottom, top;
  for (int k = 0; k < m; ++k) bottom.push_back(k);
  for (int k = 0; k < m; ++k) top.push_back(m + k);
  p.facets.push_back(bottom);
  p.facets.push_back(top);
  for (int k = 0; k < m; ++k) {
    std::vector<int> side = {k, (k + 1) % m, m + k, m + (k + 1) % m};
    std::sort(side.begin(), side.end());
    p.facets.push_back(side);
  }
  return doc;
}

PolytopeDocument make_product(int m1, int m2) {
  if (m1 < 3 || m2 < 3) throw std::invalid_argument("product: polygons need at least 3 edges");
  PolytopeDocument doc;
  SimplePolytope& p = doc.polytope;
  p.n = 4;
  p.name = "product" + std::to_string(m1) + "x" + std::to_string(m2);
  p.vertex_count = m1 * m2;
  auto c1 = polygon_coords(m1);
  auto c2 = polygon_coords(m2);
  std::vector<std::vector<Rat>> coords;
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i)
      coords.push_back({c1[i][0], c1[i][1], c2[j][0], c2[j][1]});
  p.coords = std::move(coords);
  auto vid = [m1](int i, int j) { return i + m1 * j; };
  for (int a = 0; a < m1; ++a) {
    std::vector<int> facet;
    for (int j = 0; j < m2; ++j) {
      facet.push_back(vid(a, j));
      facet.push_back(vid((a + 1) % m1, j));
    }
    std::sort(facet.begin(), facet.end());
    p.facets.push_back(std::move(facet));
  }
  for (int b = 0; b < m2; ++b) {
    std::vector<int> facet;
    for (int i = 0; i < m1; ++i) {
      facet.push_back(vid(i, b));
      facet.push_back(vid(i, (b + 1) % m2));
    }
    std::sort(facet.begin(), facet.end());
    p.facets.push_back(std::move(facet));
  }
  return doc;
}

}  // namespace

PolytopeDocument generate(const std::string& family, const std::vector<long long>& params) {
  auto want = [&](size_t count) {
    if (params.size() != count)
      throw std::invalid_argument("family '" + family + "' expects " +
                                  std::to_string(count) + " parameter(s)");
  };
  if (family == "cube") {
    want(1);
    return make_cube(static_cast<int>(params[0]));
  }
  if (family == "polygon") {
    want(1);
    return make_polygon(static_cast<int>(params[0]));
  }
  if (family == "simplex") {
    want(1);
    return make_simplex(static_cast<int>(params[0]));
  }
  if (family == "prism") {
    want(1);
    return make_prism(static_cast<int>(params[0]));
  }
  if (family == "product") {
    want(2);
    return make_product(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  throw std::invalid_argument("unknown family '" + family +
                              "' (expected cube, polygon, simplex, prism, product)");
}

}  // namespace smallorb
