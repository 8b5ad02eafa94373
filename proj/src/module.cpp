#include "ghost/module.hpp"

#include "ghost/linsys.hpp"

namespace ghost {

FpModule module_from_presentation(const Ring& R, const Matrix& A, std::size_t gens) {
    if (A.rows() > 0 && A.cols() != gens) throw ModuleError("presentation has wrong number of columns");
    if (A.rows() == 0) return FpModule(R, gens);
    return FpModule(R, gens, howell(R, A, false).H);
}

FpModule free_module(const Ring& R, std::size_t rank) { return FpModule(R, rank); }

FpModule cyclic_module(const Ring& R, const Elem& d) {
    Elem c = R.reduce(d);
    if (sgn(c) == 0) return FpModule(R, 1);
    return FpModule(R, 1, Matrix(1, 1, {c}));
}

FpModule direct_sum(const FpModule& A, const FpModule& B) {
    return FpModule(A.ring, A.gens + B.gens, block_diag(A.rels, B.rels));
}

bool is_zero(const FpModule& M) {
    if (M.gens == 0) return true;
    Span s(M.ring, M.rels);
    return s.contains_rows(Matrix::identity(M.ring, M.gens));
}

bool maps_to_zero(const FpModule& N, const Matrix& F) {
    if (F.rows() == 0) return true;
    if (F.is_zero()) return true;
    if (N.rels.rows() == 0) return false;
    return Span(N.ring, N.rels).contains_rows(F);
}

long ill_defined_relation(const ModuleMap& f) {
    if (f.source.rels.rows() == 0) return -1;
    Matrix img = mul(f.source.ring, f.source.rels, f.matrix);
    Span s(f.target.ring, f.target.rels.rows() ? f.target.rels : Matrix(0, f.target.gens));
    for (std::size_t i = 0; i < img.rows(); ++i)
        if (!s.contains(img.row(i))) return static_cast<long>(i);
    return -1;
}

bool is_well_defined(const ModuleMap& f) { return ill_defined_relation(f) < 0; }

bool maps_equal(const FpModule& N, const Matrix& F, const Matrix& G) {
    return maps_to_zero(N, sub(N.ring, F, G));
}

HomResult hom_module(const FpModule& M, const FpModule& N) {
    if (!(M.ring == N.ring)) throw ModuleError("hom_module: ring mismatch");
    const Ring& R = M.ring;
    HomResult out;
    if (M.gens == 0 || N.gens == 0) {
        out.module = FpModule(R, 0);
        return out;
    }
    // Unknown F (gM x gN) with R_M F = S R_N.
    LinearSystem sys(R);
    int F = sys.add_block(M.gens, N.gens);
    if (M.rels.rows() > 0) {
        int eq = sys.add_equation(M.rels.rows(), N.gens);
        sys.add_term(eq, M.rels, F, std::nullopt);
        Matrix negrels = neg(R, N.rels);
        sys.add_slack(eq, negrels);
    }
    const std::size_t fsize = M.gens * N.gens;
    Matrix Z(0, fsize);
    for (const auto& sol : sys.nullspace()) Z.append_row(std::vector<Elem>(sol.begin(), sol.begin() + static_cast<long>(fsize)));
    // Maps landing in the relations: E_i (x) rel_k.
    Matrix B(0, fsize);
    for (std::size_t i = 0; i < M.gens; ++i)
        for (std::size_t k = 0; k < N.rels.rows(); ++k) {
            std::vector<Elem> v(fsize);
            for (std::size_t j = 0; j < N.gens; ++j) v[i * N.gens + j] = N.rels(k, j);
            B.append_row(v);
        }
    // Prune generators that are already zero or repeated.
    Matrix Zc = Z.rows() ? howell(R, Z, false).H : Z;
    Span bspan(R, B.rows() ? B : Matrix(0, fsize));
    Matrix G(0, fsize);
    for (std::size_t i = 0; i < Zc.rows(); ++i)
        if (!bspan.contains(Zc.row(i))) G.append_row(Zc.row(i));
    if (G.rows() == 0) G = Matrix(0, fsize);
    out.module = subquotient(R, G, B.rows() ? B : Matrix(0, fsize));
    for (std::size_t i = 0; i < G.rows(); ++i) {
        Matrix m(M.gens, N.gens, G.row(i));
        out.basis.push_back({M, N, m});
    }
    return out;
}

bool is_surjective(const ModuleMap& f) {
    const Ring& R = f.target.ring;
    if (f.target.gens == 0) return true;
    Matrix span = vstack(f.matrix.rows() ? f.matrix : Matrix(0, f.target.gens),
                         f.target.rels.rows() ? f.target.rels : Matrix(0, f.target.gens));
    return Span(R, span).contains_rows(Matrix::identity(R, f.target.gens));
}

bool is_injective(const ModuleMap& f) {
    const Ring& R = f.source.ring;
    if (f.source.gens == 0) return true;
    Matrix stacked = vstack(f.matrix, f.target.rels.rows() ? f.target.rels : Matrix(0, f.target.gens));
    Matrix K = kernel(R, stacked);
    if (K.rows() == 0) return true;
    Matrix lifted = K.cols_range(0, f.source.gens);
    return maps_to_zero(f.source, lifted);
}

bool is_iso(const ModuleMap& f) { return is_surjective(f) && is_injective(f); }

Elem annihilator(const FpModule& M) {
    const Ring& R = M.ring;
    Elem a = R.one();
    for (const auto& d : invariant_factors(M)) a = R.ideal_intersection(a, d);
    return R.associate(a);
}

ModuleMap free_cover(const FpModule& M) {
    return {FpModule(M.ring, M.gens), M, Matrix::identity(M.ring, M.gens)};
}

FpModule subquotient(const Ring& R, const Matrix& C, const Matrix& B) {
    const std::size_t k = C.rows();
    if (k == 0) return FpModule(R, 0);
    Matrix stacked = B.rows() ? vstack(C, B) : C;
    Matrix K = kernel(R, stacked);
    Matrix rel = K.rows() ? K.cols_range(0, k) : Matrix(0, k);
    return module_from_presentation(R, rel, k);
}

std::vector<Elem> invariant_factors(const FpModule& M) {
    return smith_invariants(M.ring, M.rels, M.gens);
}

std::string describe(const FpModule& M) {
    auto f = invariant_factors(M);
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += " + ";
        s += M.ring.cyclic_name(f[i]);
    }
    return s;
}

bool isomorphic(const FpModule& A, const FpModule& B) {
    return A.ring == B.ring && invariant_factors(A) == invariant_factors(B);
}

std::optional<unsigned long> module_size(const FpModule& M) {
    unsigned long n = 1;
    for (const auto& d : invariant_factors(M)) {
        auto q = M.ring.quotient_size(d);
        if (!q) return std::nullopt;
        n *= *q;
    }
    return n;
}

}  // namespace ghost
