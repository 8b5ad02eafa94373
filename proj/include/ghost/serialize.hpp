#pragma once

// JSON encoding of certificates. Ring elements are their canonical integer
// representatives (JSON integers when they fit in 64 bits, decimal strings
// otherwise); matrices carry their shape so that empty blocks survive.

#include "ghost/certificate.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace ghost {

class SerializeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

Json to_json(const Ring& R, const Matrix& M);
Json to_json(const Ring& R, const Complex& X);
Json to_json(const Ring& R, const ChainMap& f);
Json to_json(const TowerCertificate& c);
Json to_json(const GhostCertificate& g);
Json to_json(const TrWitness& w);
Json to_json(const DimBoundCert& d);

Matrix matrix_from_json(const Ring& R, const Json& j);
Complex complex_from_json(const Ring& R, const Json& j);
ChainMap map_from_json(const Ring& R, const Json& j);
TowerCertificate tower_from_json(const Json& j);
GhostCertificate ghost_from_json(const Json& j);
TrWitness tr_from_json(const Json& j);
DimBoundCert dim_bound_from_json(const Json& j);

// The "kind" field of a top-level certificate document.
std::string certificate_kind(const Json& j);

}  // namespace ghost
