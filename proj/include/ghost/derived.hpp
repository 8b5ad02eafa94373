#pragma once

#include "ghost/certificate.hpp"
#include "ghost/complex.hpp"

#include <optional>
#include <vector>

namespace ghost {

class DerivedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Over the rings supported here proj A = add Λ, so f is a ghost iff H^*(f) = 0.
std::optional<GhostCertificate> is_ghost(const ChainMap& f);
bool check_ghost(const GhostCertificate& g);

bool check_tr(const TrWitness& w);
// Chain-level witness when r . id_X is null-homotopic; otherwise a witness
// on a free model of X built down to lo(X) - 1.
std::optional<TrWitness> tr_member(const Complex& X, const Elem& r);
std::optional<TrWitness> tr_member_chain(const Complex& X, const Elem& r);

struct Koszul {
    Complex K;
    TrWitness witness;
};
// K(r, X) = cone(r . id_X) with h(y, x) = (0, y).
Koszul koszul(const Elem& r, const Complex& X);

std::string triangle_failure(const TriangleCert& t);
bool check_triangle(const TriangleCert& t);
// C = cone(f), identity comparison.
TriangleCert cone_triangle(const ChainMap& f);
// E with a subcomplex S spanned by the first sub[n] generators in each
// degree and block-diagonal relations; returns S -> E -> E/S.
TriangleCert subcomplex_triangle(const Complex& E, const std::map<int, std::size_t>& sub);

// cone(f) -u-> cone(g f) -> cone(g), with cone(u) compared to cone(g).
struct Octahedron {
    ChainMap u, v, w;
    TriangleCert tri;  // tri.f = u, tri.C = cone(g)
};
Octahedron octahedron(const ChainMap& f, const ChainMap& g);

struct AdamsResult {
    Complex P;
    ChainMap p;   // P -> X
    Complex Y;    // = cone(p)
    ChainMap q;   // X -> Y
    std::vector<Complex> stages;       // X_0 = X, ..., X_n = Y
    std::vector<ChainMap> ghosts;      // X_j -> X_{j+1}
    std::vector<GhostCertificate> ghost_certs;
    std::vector<ChainMap> covers;      // F_j -> X_j
    TowerCertificate pn_cert;          // P in P_n
    std::vector<std::map<int, std::size_t>> layer_sizes;  // ranks of F_j in Q = ΣP
};
AdamsResult adams_triangle(const Complex& X, int n);

// Y in T_{rs} from X -> Y -> Z with X in T_r and Z in T_s (chain-level witnesses).
TrWitness ann_compose(const TriangleCert& tri, const TrWitness& wx, const TrWitness& wz);

struct ShuffleResult {
    ChainMap h;
    TriangleCert tri2;
    TrWitness w2;  // on cone(h), for r^2
};
// tri: T -> X -> C with w on T; returns C -h-> X -> cone(h). The map h is
// determined up to adding C -> ΣT -e-> X; `correction` supplies such an e.
ShuffleResult shuffle_left(const TriangleCert& tri, const TrWitness& w,
                           const std::optional<ChainMap>& correction = std::nullopt);
// tri: C -> X -> T with w on T; returns X -h-> C -> cone(h).
ShuffleResult shuffle_right(const TriangleCert& tri, const TrWitness& w);

}  // namespace ghost
