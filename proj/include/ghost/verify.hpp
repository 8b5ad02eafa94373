#pragma once

// Independent certificate checker. It depends only on the linear algebra
// layer and the plain data types; every cone, composite and homotopy identity
// is rebuilt here from the stored matrices.

#include "ghost/certificate.hpp"

#include <string>

namespace ghost {

struct VerifyResult {
    bool ok = true;
    std::string locus;  // "layer 2: ...", "retract: ...", empty when ok
    explicit operator bool() const { return ok; }
};

VerifyResult verify_tower(const TowerCertificate& cert);
VerifyResult verify_triangle(const TriangleCert& t);
VerifyResult verify_tr(const TrWitness& w);
VerifyResult verify_add(const AddWitness& w);
VerifyResult verify_ghost(const GhostCertificate& g);

}  // namespace ghost
