#pragma once

#include <string>

#include <json.hpp>

#include "kmhecke/completed.hpp"
#include "kmhecke/parahoric.hpp"

namespace kmh {

using Json = nlohmann::ordered_json;

// All readers throw DomainError("ParseError", ...) on malformed input.
Json read_json_text(const std::string& text);

Vec vec_from_json(const Json& j);
Mat mat_from_json(const Json& j);
Word word_from_json(const Json& j);
std::vector<size_t> indices_from_json(const Json& j);

Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j, size_t nvars);

// {"gcm":..,"rank_y":..,"coroots":..,"roots":..}; missing realization means the default one.
Json datum_to_json(const RootDatum& d);
RootDatum datum_from_json(const Json& j);

Json weyl_to_json(const WeylElement& w);
Json components_to_json(const ComponentReport& r);
Json classes_to_json(const ParamClasses& c);

Json bl_to_json(const HeckeAlgebra& h, const BLElement& a);
BLElement bl_from_json(const HeckeAlgebra& h, const Json& j);

Json region_to_json(const Region& r);
Region region_from_json(const Json& j);
Json cert_to_json(const WeylGroup& W, const AFCertificate& c);
AFCertificate cert_from_json(const WeylGroup& W, const Json& j);
Json truncated_to_json(const HeckeAlgebra& h, const TruncatedElement& t);
TruncatedElement truncated_from_json(const CompletedAlgebra& c, const Json& j);
EFunction efun_from_json(const HeckeAlgebra& h, const Json& j);

Json label_to_json(const CosetLabel& l);

}  // namespace kmh
