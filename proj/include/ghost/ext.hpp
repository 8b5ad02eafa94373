#pragma once

#include "ghost/complex.hpp"

#include <string>
#include <vector>

namespace ghost {

// F^{-L} -> ... -> F^0 -> M. `complex` holds the free terms in degrees -L..0,
// `augmentation` is the surjection F^0 -> M (rows are images of generators).
struct Resolution {
    FpModule M;
    int length = 0;
    Complex complex;
    Matrix augmentation;
};

Resolution resolution(const FpModule& M, int L);
// Cohomology of the augmented complex in degrees -L+1..0 and at M.
bool is_exact_resolution(const Resolution& res);

struct ExtResult {
    FpModule M, N;
    int n = 0;
    FpModule group;
    Elem annihilator;
};

// The cochain complex Hom(F, N) with Hom^k = N^{rank F^{-k}}.
Complex hom_complex(const Resolution& res, const FpModule& N);
ExtResult ext(const FpModule& M, const FpModule& N, int n);

Elem ext_annihilator(const std::vector<FpModule>& family, int n);

struct CaRow {
    int n;
    Elem annihilator;
    std::vector<ExtResult> pairs;
};
struct CaTable {
    std::vector<CaRow> rows;
    int first_nondegenerate = 0;  // smallest n with a non-unit non-zero annihilator, or 0
};
CaTable ca_search(const std::vector<FpModule>& family, int nmax);
// One line per (n, M, N, invariant factors, annihilator); header first.
std::string ca_table_tsv(const CaTable& t, const std::vector<std::string>& names);

}  // namespace ghost
