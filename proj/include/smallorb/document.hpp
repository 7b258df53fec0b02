/*
 * Versioned JSON document format for polytopes and their optional
 * attachments (characteristic function, isotropy function, objective),
 * plus the built-in generator families.  Rational numbers are carried as
 * "p/q" strings so exactness survives serialization.
 */

#ifndef SMALLORB_DOCUMENT_HPP
#define SMALLORB_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "smallorb/characteristic.hpp"
#include "smallorb/cwstruct.hpp"
#include "smallorb/polytope.hpp"

namespace smallorb {

inline constexpr int kSchemaVersion = 1;

struct PolytopeDocument {
  SimplePolytope polytope;
  std::optional<SCharFunction> schar;
  std::optional<IsotropyFunction> isotropy;
  std::optional<Objective> objective;
};

/// Parses and validates a document.  Throws std::invalid_argument with a
/// located message ("facets[3][2]: ...") on malformed input or a polytope
/// failing the simplicity validation.
PolytopeDocument parse_polytope(const std::string& text);

std::string serialize_polytope(const PolytopeDocument& doc);

/// Families: cube n | polygon m | simplex n | prism m | product m1 m2.
/// Throws std::invalid_argument on unknown family or bad parameters.
PolytopeDocument generate(const std::string& family, const std::vector<long long>& params);

/// Exact rational from "p", "p/q", or a JSON integer.
Rat parse_rational(const std::string& text);
std::string rational_to_string(const Rat& q);

}  // namespace smallorb

#endif  // SMALLORB_DOCUMENT_HPP
