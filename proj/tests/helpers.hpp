/* Shared builders for the test suites. */

#ifndef SMALLORB_TESTS_HELPERS_HPP
#define SMALLORB_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "smallorb/document.hpp"

#ifndef SMALLORB_DATA_DIR
#define SMALLORB_DATA_DIR "data"
#endif

namespace smallorb::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("test data file missing: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PolytopeDocument load_data(const std::string& name) {
  return parse_polytope(read_file(std::string(SMALLORB_DATA_DIR) + "/" + name));
}

struct Built {
  PolytopeDocument doc;
  FaceLattice lattice;
};

inline Built build(PolytopeDocument doc) {
  FaceLattice lat = build_face_lattice(doc.polytope);
  return {std::move(doc), std::move(lat)};
}

inline Built make(const std::string& family, std::vector<long long> params) {
  return build(generate(family, params));
}

inline Built data(const std::string& name) { return build(load_data(name)); }

}  // namespace smallorb::testing

#endif  // SMALLORB_TESTS_HELPERS_HPP
