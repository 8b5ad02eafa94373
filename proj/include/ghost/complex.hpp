#pragma once

#include "ghost/module.hpp"
#include "ghost/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ghost {

class ComplexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Complex zero_complex(const Ring& R);
// M placed in degree `deg`.
Complex module_complex(const FpModule& M, int deg = 0);
Complex free_complex(const Ring& R, int deg, std::size_t rank);

// Empty string when X is a complex; otherwise a description of the failure.
std::string complex_failure(const Complex& X);
bool is_complex(const Complex& X);

// (Σ^k X)^n = X^{n+k}, differential times (-1)^k.
Complex shift(const Complex& X, int k);
ChainMap shift(const ChainMap& f, int k);
DegreeMaps shift_homotopy(const Ring& R, const DegreeMaps& h, int k);

Complex direct_sum(const Complex& X, const Complex& Y);

ChainMap identity_map(const Complex& X);
ChainMap zero_map(const Complex& X, const Complex& Y);
ChainMap scalar_map(const Complex& X, const Elem& r);
// f, then g.
ChainMap compose(const ChainMap& f, const ChainMap& g);
ChainMap add(const ChainMap& f, const ChainMap& g);
ChainMap sub(const ChainMap& f, const ChainMap& g);
ChainMap scale(const Elem& r, const ChainMap& f);
ChainMap with_source(const ChainMap& f, const Complex& X);

std::string chain_map_failure(const ChainMap& f);
bool is_chain_map(const ChainMap& f);
// Equal as maps of complexes of modules (componentwise, modulo target relations).
bool maps_equal(const ChainMap& f, const ChainMap& g);

// h^n : X^n -> Y^{n-1} with  f - g = d h + h d.
std::string homotopy_failure(const ChainMap& f, const ChainMap& g, const DegreeMaps& h);
bool is_homotopy(const ChainMap& f, const ChainMap& g, const DegreeMaps& h);
bool is_null_homotopy(const ChainMap& f, const DegreeMaps& h);
// d h + h d as a chain map X -> Y.
ChainMap homotopy_boundary(const Complex& X, const Complex& Y, const DegreeMaps& h);
// Composites of a homotopy with chain maps: a . h . b for a: W -> X, b: Y -> Z.
DegreeMaps htpy_pre(const ChainMap& a, const DegreeMaps& h, const Complex& Y);
DegreeMaps htpy_post(const DegreeMaps& h, const Complex& X, const ChainMap& b);
DegreeMaps htpy_add(const Ring& R, const DegreeMaps& a, const DegreeMaps& b);
DegreeMaps htpy_scale(const Ring& R, const Elem& r, const DegreeMaps& h);

struct Cone {
    Complex cone;
    ChainMap inj;   // Y -> cone(f)
    ChainMap proj;  // cone(f) -> ΣX
};
// cone(f)^n = Y^n ⊕ X^{n+1}, d(y, x) = (y d_Y + x f, -x d_X).
Cone cone(const ChainMap& f);

struct Cohomology {
    FpModule H, Z, B;
    Matrix cycles;      // lifted cocycle generators (rows in X^n)
    Matrix boundaries;  // [d^{n-1}; R^n]
};
Cohomology cohomology_data(const Complex& X, int n);
FpModule cohomology(const Complex& X, int n);
// H^n(f) presented on the cocycle generators of both sides.
ModuleMap induced_map(const ChainMap& f, int n);
bool is_exact_at(const Complex& X, int n);

// f = d h + h d on the nose (modulo relations), or none.
std::optional<DegreeMaps> null_homotopy(const ChainMap& f);
std::optional<DegreeMaps> solve_homotopy(const ChainMap& f, const ChainMap& g);

// Generators of the module of chain maps X -> Y.
std::vector<ChainMap> chain_map_space(const Complex& X, const Complex& Y);

bool is_termwise_free(const Complex& X);
FreeModel free_model(const Complex& X, int floor);
FreeModel deepen(const FreeModel& m, int floor);

struct DerivedHom {
    FpModule group;
    std::vector<ChainMap> reps;  // model -> Σ^n Y
    FreeModel model;
};
// Hom_D(X, Σ^n Y); the model of X is built down to lo(Y) - n - 1.
DerivedHom hom_derived(const Complex& X, const Complex& Y, int n);
// f, g : F -> Y out of a common free model.
std::optional<DegreeMaps> eq_in_derived(const ChainMap& f, const ChainMap& g);

}  // namespace ghost
