#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "qsppoly/correction.hpp"
#include "qsppoly/equiripple.hpp"
#include "qsppoly/membership.hpp"
#include "qsppoly/poly.hpp"

namespace qsppoly::json_io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

Json to_json(const Poly& p);
Json to_json(const CenteredOddPoly& p);
Json to_json(const MembershipReport& r);
Json to_json(const PipelineTrace& t);
Json to_json(const PipelineReport& r);
Json to_json(const EquiRippleResult& r);
Json to_json(const GapReport& g);

using AnyPoly = std::variant<Poly, CenteredOddPoly>;

/// Either basis; InvalidArgument on anything malformed (including a schema
/// other than v1 when the field is present).
AnyPoly poly_from_json(const Json& j);
/// Centered-odd input is expanded to monomials.
Poly monomial_from_json(const Json& j);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace qsppoly::json_io
