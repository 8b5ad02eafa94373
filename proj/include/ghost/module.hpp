#pragma once

#include "ghost/linalg.hpp"
#include "ghost/types.hpp"

#include <string>
#include <vector>

namespace ghost {

class ModuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cokernel of A (rows are relations); relations are replaced by their
// canonical row-span basis.
FpModule module_from_presentation(const Ring& R, const Matrix& A, std::size_t gens);
FpModule free_module(const Ring& R, std::size_t rank);
FpModule cyclic_module(const Ring& R, const Elem& d);
FpModule direct_sum(const FpModule& A, const FpModule& B);

bool is_zero(const FpModule& M);

// Rows of F (maps into N) vanish in N.
bool maps_to_zero(const FpModule& N, const Matrix& F);
// Each relation of M is sent into the relation span of N.
bool is_well_defined(const ModuleMap& f);
// First offending source relation, or -1.
long ill_defined_relation(const ModuleMap& f);
bool maps_equal(const FpModule& N, const Matrix& F, const Matrix& G);

struct HomResult {
    FpModule module;              // presented on `basis`
    std::vector<ModuleMap> basis;  // generators of Hom(M, N)
};
HomResult hom_module(const FpModule& M, const FpModule& N);

bool is_surjective(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_iso(const ModuleMap& f);

// Generator of ann(M).
Elem annihilator(const FpModule& M);

// F free on the generators of M, mapping onto M.
ModuleMap free_cover(const FpModule& M);

// span(C) / (span(C) ∩ span(B)), presented on the rows of C.
FpModule subquotient(const Ring& R, const Matrix& C, const Matrix& B);

std::vector<Elem> invariant_factors(const FpModule& M);
// e.g. "Z/2 + Z/4", "0".
std::string describe(const FpModule& M);
bool isomorphic(const FpModule& A, const FpModule& B);

// Number of elements, for finite modules over finite rings.
std::optional<unsigned long> module_size(const FpModule& M);

}  // namespace ghost
