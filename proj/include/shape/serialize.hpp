#ifndef SHAPE_SERIALIZE_HPP
#define SHAPE_SERIALIZE_HPP

// JSON / CSV encodings. Integers are written as decimal strings so that
// values such as 5^8 survive consumers limited to 53-bit numbers.

#include "shape/cyclotomic.hpp"
#include "shape/exactlat.hpp"
#include "shape/shapelab.hpp"

#include <json.hpp>

#include <string>

namespace shape {

using Json = nlohmann::json;

Json matrix_to_json(const IntMatrix &m);
IntMatrix matrix_from_json(const Json &j);
GramMatrix gram_from_json(const Json &j);

Json to_json(const FieldSpec &s);
FieldSpec field_spec_from_json(const Json &j);

Json to_json(const QuadForm &q);
QuadForm quad_form_from_json(const Json &j);

Json to_json(const CycElem &x);
CycElem cyc_elem_from_json(const Json &j);

Json to_json(const ShapeReport &r);
ShapeReport report_from_json(const Json &j);

std::string csv_header();
std::string csv_row(const ShapeReport &r);

/// Multi-line human-readable summary.
std::string pretty(const ShapeReport &r);

} // namespace shape

#endif
