#pragma once

// JSON forms of the library's inputs and reports. Files use 1-based
// indices, permutation images and vertices; everything in memory is
// 0-based. Rationals are written as "num/den" strings; readers also accept
// "num" and plain JSON integers. Malformed documents raise ValidationError.

#include <json.hpp>

#include <vector>

#include "orbitmoment/hypergraph.hpp"
#include "orbitmoment/interval.hpp"
#include "orbitmoment/orbit_assign.hpp"
#include "orbitmoment/spherepoly.hpp"
#include "orbitmoment/theory_verify.hpp"

namespace orbitmoment::io {

using Json = nlohmann::json;

/// Parses text, mapping parse errors to ValidationError.
Json parse_json(const std::string& text);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& x);

// {"n": int, "d": int, "terms": [{"exps": [int...], "coef": "num/den"}...]}
sphere::SparsePoly poly_from_json(const Json& j);
Json poly_to_json(const sphere::SparsePoly& p);

// {"polys": [poly...]} or a bare array of polys.
std::vector<sphere::SparsePoly> system_from_json(const Json& j);

// {"n": int, "d": int, "entries": [{"index": [int...], "value": "num/den"}...]}
// sparse; omitted entries are zero, repeated indices are rejected.
assign::DenseTensor tensor_from_json(const Json& j);
Json tensor_to_json(const assign::DenseTensor& t);

// {"images": [int...]}
assign::Permutation permutation_from_json(const Json& j);
Json permutation_to_json(const assign::Permutation& g);

// {"n": int, "d": int, "edges": [[int...]...], "weights": ["num/den"...]}
hyper::Hypergraph hypergraph_from_json(const Json& j);
Json hypergraph_to_json(const hyper::Hypergraph& h);

Json interval_to_json(const Interval& iv);

// [{"inequality", "lhs", "rhs", "holds", "tight"}...]
Json checks_to_json(const std::vector<theory::InequalityCheck>& checks);
Json sandwich_report_to_json(const theory::SandwichReport& r);
Json cor16_report_to_json(const theory::Cor16Report& r);

}  // namespace orbitmoment::io
