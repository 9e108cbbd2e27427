#pragma once

#include <string>

#include "json.hpp"

#include "d2lab/constructions.hpp"

namespace d2lab {

using Json = nlohmann::json;

// Scalars serialize as canonical rational strings: "-3/7", integers as "5".
Json scalar_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json norm_value_json(const NormValue& v);
NormValue norm_value_from_json(const Json& j);

// {"coords": [...], "limit": "p/q" | null}
Json vector_json(const SeqVector& v);
SeqVector vector_from_json(const Json& j);

// {"coeffs": [...], "limit_coeff": "p/q"}
Json functional_json(const Functional& f);
Functional functional_from_json(const Json& j);

// {"dim": n, "has_limit": bool, "norm": {...}}
Json model_json(const SpaceModel& m);
SpaceModel model_from_json(const Json& j);

// {"model": {...}, "vertices": [...], "canonical": bool}; vertices are
// emitted in lexicographic order so output is diffable.
Json polytope_json(const VPolytope& P);
VPolytope polytope_from_json(const Json& j);

Json ledger_json(const StageLedger& ledger);
StageLedger ledger_from_json(const Json& j);

Json renorm_params_json(const RenormParams& p);
RenormParams renorm_params_from_json(const Json& j);

// FNV-1a 64-bit content hash of a canonical dump, as 16 hex digits.
std::string content_hash(const Json& j);

// Fixed-precision decimal rendering for columns flagged approximate.
std::string approx_decimal(const Scalar& s);

}  // namespace d2lab
