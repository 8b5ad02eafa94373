#pragma once

#include "ghost/derived.hpp"

#include <string>
#include <vector>

namespace ghost {

class TheoremError : public std::runtime_error {
public:
    enum class Code { NotAnnihilated, ZeroDivisor, NotInTr, Mismatch, Unverified };
    TheoremError(Code c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    Code code() const { return code_; }
    static const char* code_name(Code c);

private:
    Code code_;
};

struct GTowers {
    TowerCertificate d;        // [T_r, ADD x n]
    TowerCertificate d_prime;  // [ADD x n, T_r]
    AdamsResult adams;         // on Σ^{-1} X
    FreeModel model;           // of Σ^{-1} X, carrying the witness below
    DegreeMaps rq_homotopy;    // r . pi . q = d h + h d on the model
};

// Throws TheoremError::NotAnnihilated when r . q != 0 for the n-step Adams
// ghost q out of Σ^{-1} X.
GTowers decompose_from_G(const Complex& X, const Elem& r, int n);

struct GhostAnnihilation {
    ChainMap g;       // composite of the ghosts, X -> Z
    FreeModel model;  // of X
    DegreeMaps homotopy;  // r . pi . g = d h + h d
    Elem r;
};
// cert: X in P_n ◊ T_r (label word [ADD x n, T_r]); ghosts: n composable
// certified ghosts out of X.
GhostAnnihilation ghost_annihilation_from_tower(const TowerCertificate& cert,
                                                const std::vector<GhostCertificate>& ghosts);

struct ETower {
    TowerCertificate cert;  // [T_{r^3}, ADD x 2n]
    Elem family_annihilator;  // when a family was supplied
    std::vector<std::string> checked_pieces;
};
// Checks r Ext^n = 0 on the family (if nonempty), checks every cycle and
// boundary module of X against the n-step annihilation, and assembles the
// r^3 tower whose T-piece witness is composed from an r- and an r^2-witness.
ETower decompose_from_E(const Complex& X, const Elem& r, int n, const std::vector<FpModule>& family);

struct ModrSplit {
    Complex tensor;     // X ⊗ K(r, Λ)
    Complex split;      // X ⊕ ΣX (or the model analogue)
    ChainMap phi;       // tensor -> split
    ChainMap phi_inv;   // split -> tensor
    TrWitness witness;  // chain-level r-witness used to build phi
    bool via_model = false;
    std::optional<FreeModel> model;
};
ModrSplit modr_split(const Complex& X, const Elem& r);
bool check_modr_split(const ModrSplit& s);

DimBoundCert dim_bound_compose(const DimBoundCert& sub, int n);

}  // namespace ghost
