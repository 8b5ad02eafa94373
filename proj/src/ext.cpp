#include "ghost/ext.hpp"

#include "ghost/linalg.hpp"

#include <sstream>

namespace ghost {

namespace {

Matrix nonzero_rows(const Matrix& A) {
    Matrix out(0, A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        auto row = A.row(i);
        bool z = true;
        for (const auto& e : row) z = z && sgn(e) == 0;
        if (!z) out.append_row(row);
    }
    return out;
}

}  // namespace

Resolution resolution(const FpModule& M, int L) {
    if (L < 0) throw ComplexError("resolution: negative length");
    const Ring& R = M.ring;
    Resolution res{M, L, Complex(R), Matrix::identity(R, M.gens)};
    res.complex.set_term(0, free_module(R, M.gens));
    // Each new term is free on Howell generators of the previous kernel.
    Matrix rels = M.rels.rows() ? Span(R, M.rels).basis() : Matrix(0, M.gens);
    Matrix prev = nonzero_rows(rels);
    for (int k = 1; k <= L && prev.rows() > 0; ++k) {
        res.complex.set_term(-k, free_module(R, prev.rows()));
        res.complex.set_diff(-k, prev);
        Matrix ker = kernel(R, prev);
        prev = nonzero_rows(ker.rows() ? Span(R, ker).basis() : ker);
    }
    return res;
}

bool is_exact_resolution(const Resolution& res) {
    const Complex& F = res.complex;
    for (int k = -res.length + 1; k < 0; ++k)
        if (!is_exact_at(F, k)) return false;
    // H^0 = coker(d^{-1}) must be M via the augmentation: same relation span.
    Matrix d = F.diff(-1);
    Matrix rel = res.M.rels.rows() ? res.M.rels : Matrix(0, res.M.gens);
    if (d.rows() == 0) return rel.rows() == 0 || rel.is_zero();
    if (rel.rows() == 0) return d.is_zero();
    const Ring& R = res.M.ring;
    return Span(R, d).contains_rows(rel) && Span(R, rel).contains_rows(d);
}

Complex hom_complex(const Resolution& res, const FpModule& N) {
    const Ring& R = N.ring;
    const Complex& F = res.complex;
    const std::size_t g = N.gens;
    Complex H(R);
    for (int k = 0; k <= res.length; ++k) {
        const std::size_t a = F.gens(-k);
        const std::size_t nr = N.rels.rows();
        Matrix rels(a * nr, a * g);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t j = 0; j < g; ++j) rels(i * nr + r, i * g + j) = N.rels(r, j);
        H.set_term(k, FpModule(R, a * g, rels));
    }
    // (d phi)(i', j) = sum_i d(i', i) phi(i, j)
    for (int k = 0; k < res.length; ++k) {
        const std::size_t a = F.gens(-k), a1 = F.gens(-k - 1);
        if (a == 0 || a1 == 0) continue;
        Matrix d = F.diff(-k - 1);
        Matrix D(a * g, a1 * g);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t i1 = 0; i1 < a1; ++i1)
                if (sgn(d(i1, i)) != 0)
                    for (std::size_t j = 0; j < g; ++j) D(i * g + j, i1 * g + j) = d(i1, i);
        H.set_diff(k, D);
    }
    return H;
}

ExtResult ext(const FpModule& M, const FpModule& N, int n) {
    if (n < 0) throw ComplexError("ext: negative degree");
    if (!(M.ring == N.ring)) throw ComplexError("ext: ring mismatch");
    Resolution res = resolution(M, n + 1);
    FpModule G = cohomology(hom_complex(res, N), n);
    return {M, N, n, G, annihilator(G)};
}

Elem ext_annihilator(const std::vector<FpModule>& family, int n) {
    if (family.empty()) throw ComplexError("ext_annihilator: empty family");
    const Ring& R = family.front().ring;
    Elem a = R.one();
    for (const auto& M : family)
        for (const auto& N : family) a = R.ideal_intersection(a, ext(M, N, n).annihilator);
    return a;
}

CaTable ca_search(const std::vector<FpModule>& family, int nmax) {
    if (family.empty()) throw ComplexError("ca_search: empty family");
    const Ring& R = family.front().ring;
    CaTable t;
    for (int n = 1; n <= nmax; ++n) {
        CaRow row{n, R.one(), {}};
        for (const auto& M : family)
            for (const auto& N : family) {
                row.pairs.push_back(ext(M, N, n));
                row.annihilator = R.ideal_intersection(row.annihilator, row.pairs.back().annihilator);
            }
        if (t.first_nondegenerate == 0 && !R.is_unit(row.annihilator) && !R.is_zero(row.annihilator))
            t.first_nondegenerate = n;
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string ca_table_tsv(const CaTable& t, const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "n\tM\tN\tinvariant_factors\tannihilator\n";
    for (const auto& row : t.rows) {
        const std::size_t k = names.size();
        for (std::size_t idx = 0; idx < row.pairs.size(); ++idx) {
            const ExtResult& e = row.pairs[idx];
            const Ring& R = e.M.ring;
            std::string inv;
            for (const auto& d : invariant_factors(e.group)) inv += (inv.empty() ? "" : ",") + R.format(d);
            os << row.n << '\t' << (k ? names[idx / k] : "?") << '\t' << (k ? names[idx % k] : "?") << '\t'
               << (inv.empty() ? "-" : inv) << '\t' << R.format(e.annihilator) << '\n';
        }
        Ring R = row.pairs.empty() ? Ring() : row.pairs.front().M.ring;
        os << row.n << "\t*\t*\t-\t" << R.format(row.annihilator) << '\n';
    }
    if (t.first_nondegenerate) os << "# first non-unit non-zero annihilator at n=" << t.first_nondegenerate << '\n';
    return os.str();
}

}  // namespace ghost
