#pragma once

// Certificate data. Like types.hpp this header carries no logic; the checker
// in verify.hpp re-derives every claim from the raw matrices.

#include "ghost/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ghost {

// An exact triangle A -f-> B -> C -> ΣA, given by a homotopy equivalence
// between C and cone(f):
//   alpha : cone(f) -> C,  beta : C -> cone(f),
//   id_cone - alpha.beta = d s + s d   (s = htpy_cone, on cone(f)),
//   id_C    - beta.alpha = d s + s d   (s = htpy_c, on C).
// Composition is written left to right: alpha.beta means alpha, then beta.
struct TriangleCert {
    ChainMap f;
    Complex C;
    ChainMap alpha;
    ChainMap beta;
    DegreeMaps htpy_cone;
    DegreeMaps htpy_c;
};

// r . id_X = 0 in the derived category.
//  - chain level (no model): r . id_X = d h + h d on X;
//  - model level: r . pi = d h + h d for maps model -> X.
struct TrWitness {
    Complex X;
    Elem r;
    std::optional<FreeModel> model;
    DegreeMaps homotopy;
};

// P is a retract of the free complex S = ⊕ Σ^{-k} Λ^{a} (summand (k, a) puts
// a free module of rank a in degree k, zero differential):
// i . p - id_P = d h + h d on P.
struct AddWitness {
    Complex P;
    std::vector<std::pair<int, std::size_t>> summands;
    ChainMap i;  // P -> S
    ChainMap p;  // S -> P
    DegreeMaps homotopy;
};

struct Label {
    enum class Kind { T, Add };
    Kind kind = Kind::Add;
    Elem r;  // for T

    static Label t(const Elem& r) { return {Kind::T, r}; }
    static Label add() { return {Kind::Add, Elem(0)}; }
    bool operator==(const Label& o) const { return kind == o.kind && (kind == Kind::Add || r == o.r); }
};

// E_{j-1} -> E_j -> (cofiber) with the cofiber certified by its label.
struct TowerLayer {
    TriangleCert tri;
    Label label;
    std::optional<TrWitness> tr;
    std::optional<AddWitness> add;
};

// X is a retract of E_k in the derived category: with pi : F -> X a free
// model, i : F -> E_k and p : E_k -> X satisfy i.p - pi = d h + h d.
struct Retract {
    FreeModel model;
    ChainMap i;
    ChainMap p;
    DegreeMaps homotopy;
};

struct TowerCertificate {
    Complex target;
    std::vector<Label> expression;
    std::vector<TowerLayer> layers;
    Retract retract;
    std::string provenance;
};

// H^n(f) = 0 for every n: each cocycle generator z of the source, from
// the kernel computation in that degree, satisfies
// z . f^n = w . [d^{n-1}_Y ; R^n_Y] with w the stored row.
struct GhostCertificate {
    ChainMap map;
    std::map<int, Matrix> cycles;     // lifted cocycle generators per degree
    std::map<int, Matrix> witnesses;  // one row per cycle
};

struct DimBoundCert {
    std::string generator;
    int level = 1;
    bool assumption = false;
    std::string provenance;
};

}  // namespace ghost
