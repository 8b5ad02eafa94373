#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"

#include "ghost/ext.hpp"
#include "ghost/linalg.hpp"

#include <set>
#include <sstream>

using namespace ghost;
using gt_test::Gen;

namespace {

using Vec = std::vector<Elem>;

FpModule cyc(const Ring& R, long d) { return cyclic_module(R, R.from_int(d)); }

std::vector<Vec> all_vectors(const Ring& R, std::size_t g) {
    std::vector<Vec> out;
    const unsigned long q = *R.size();
    std::vector<unsigned long> idx(g, 0);
    while (true) {
        Vec v(g);
        for (std::size_t i = 0; i < g; ++i) v[i] = R.element(idx[i]);
        out.push_back(v);
        std::size_t k = 0;
        while (k < g && ++idx[k] == q) idx[k++] = 0;
        if (k == g) break;
    }
    return out;
}

// Hom(F^{-k}, N) as tuples of elements of N, one per generator of F^{-k};
// a cochain phi goes to d^{-k-1} . phi. Returns |Ext^n| by enumeration.
unsigned long ext_order_oracle(const Resolution& res, const FpModule& N, int n) {
    const Ring& R = N.ring;
    Span nrel(R, N.rels);
    auto rank = [&](int k) { return res.complex.gens(-k); };
    auto reduce_all = [&](const Matrix& Phi) {
        Vec flat;
        for (std::size_t i = 0; i < Phi.rows(); ++i) {
            auto r = nrel.reduce(Phi.row(i));
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return flat;
    };
    auto cochains = [&](int k) {
        std::vector<Matrix> out;
        const std::size_t a = rank(k);
        for (const auto& v : all_vectors(R, a * N.gens)) out.emplace_back(a, N.gens, v);
        return out;
    };
    std::set<Vec> cycles, bounds;
    for (const auto& Phi : cochains(n)) {
        Matrix D = res.complex.diff(-n - 1);
        Matrix img = rank(n + 1) ? mul(R, D, Phi) : Matrix(0, N.gens);
        const Vec z = reduce_all(img);
        if (std::all_of(z.begin(), z.end(), [](const Elem& e) { return e == 0; })) cycles.insert(reduce_all(Phi));
    }
    if (n > 0 && rank(n - 1))
        for (const auto& Psi : cochains(n - 1)) bounds.insert(reduce_all(mul(R, res.complex.diff(-n), Psi)));
    else
        bounds.insert(reduce_all(Matrix(rank(n), N.gens)));
    return cycles.size() / bounds.size();
}

FpModule random_module(Gen& gen, const Ring& R, long maxg = 2) {
    const std::size_t g = gen.uniform(1, maxg);
    return FpModule(R, g, gen.matrix(R, gen.uniform(0, 2), g));
}

}  // namespace

TEST_CASE("resolutions are exact") {
    Gen gen(401);
    for (long m : {4, 8, 9, 0}) {
        Ring R = m ? Ring::integers_mod(m) : Ring::integers();
        for (int i = 0; i < 20; ++i) {
            FpModule M = m ? random_module(gen, R) : gen.cyclic_sum(R, 2);
            Resolution res = resolution(M, 4);
            CHECK(is_termwise_free(res.complex));
            CHECK(is_exact_resolution(res));
        }
    }
}

TEST_CASE("Ext over Z/4 is 2-periodic") {
    Ring R = Ring::integers_mod(4);
    for (int n = 0; n <= 4; ++n) {
        ExtResult e = ext(cyc(R, 2), cyc(R, 2), n);
        CHECK(describe(e.group) == "Z/2");
        CHECK(e.annihilator == 2);
    }
    CHECK(is_zero(ext(cyc(R, 4), cyc(R, 2), 1).group));
    CHECK(is_zero(ext(cyc(R, 2), cyc(R, 4), 1).group));
    CHECK(describe(ext(cyc(R, 2), cyc(R, 4), 0).group) == "Z/2");
}

TEST_CASE("Ext over Z is Tor-free in degree 1") {
    Ring Z = Ring::integers();
    CHECK(describe(ext(cyc(Z, 4), cyc(Z, 6), 1).group) == "Z/2");
    CHECK(is_zero(ext(cyc(Z, 4), cyc(Z, 6), 2).group));
    CHECK(is_zero(ext(free_module(Z, 1), cyc(Z, 6), 1).group));
    CHECK(describe(ext(cyc(Z, 3), free_module(Z, 1), 1).group) == "Z/3");
}

TEST_CASE("Ext agrees with enumerated hom-complex cohomology") {
    Gen gen(411);
    for (long m : {4, 6, 8}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 12; ++i) {
            // one generator each keeps the enumeration small
            FpModule M = random_module(gen, R, 1), N = random_module(gen, R, 1);
            Resolution res = resolution(M, 3);
            for (int n = 0; n <= 2; ++n) CHECK(module_size(ext(M, N, n).group) == ext_order_oracle(res, N, n));
        }
    }
}

TEST_CASE("Ext agrees with derived Hom") {
    Gen gen(421);
    for (long m : {4, 9, 16}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 10; ++i) {
            FpModule M = random_module(gen, R), N = random_module(gen, R);
            for (int n = 0; n <= 2; ++n)
                CHECK(isomorphic(ext(M, N, n).group, hom_derived(module_complex(M), module_complex(N), n).group));
        }
    }
}

TEST_CASE("Ext does not depend on the presentation") {
    Ring R = Ring::integers_mod(4);
    // Z/2 as coker [[1, 1], [0, 2]] and as coker [2]
    FpModule A(R, 2, Matrix::from_ints(R, {{1, 1}, {0, 2}})), B = cyc(R, 2);
    REQUIRE(isomorphic(A, B));
    for (int n = 0; n <= 3; ++n) {
        CHECK(isomorphic(ext(A, B, n).group, ext(B, B, n).group));
        CHECK(isomorphic(ext(B, A, n).group, ext(B, B, n).group));
    }
    Gen gen(431);
    Ring S = Ring::integers_mod(8);
    for (int i = 0; i < 10; ++i) {
        FpModule M = random_module(gen, S), N = random_module(gen, S);
        // same module, presented with a redundant generator and relation
        Matrix rel = M.rels.rows() ? M.rels : Matrix(0, M.gens);
        Matrix wide(rel.rows() + 1, M.gens + 1);
        for (std::size_t r = 0; r < rel.rows(); ++r)
            for (std::size_t c = 0; c < M.gens; ++c) wide(r, c) = rel(r, c);
        wide(rel.rows(), M.gens) = S.one();
        FpModule M2(S, M.gens + 1, wide);
        REQUIRE(isomorphic(M, M2));
        for (int n = 0; n <= 2; ++n)
            CHECK(invariant_factors(ext(M, N, n).group) == invariant_factors(ext(M2, N, n).group));
    }
}

TEST_CASE("annihilators are exact: they kill Ext and no proper divisor does") {
    Gen gen(441);
    for (long m : {4, 8, 12}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 10; ++i) {
            FpModule M = random_module(gen, R), N = random_module(gen, R);
            ExtResult e = ext(M, N, 1);
            Span rel(R, e.group.rels);
            for (long d = 0; d < m; ++d) {
                bool kills = true;
                for (const auto& v : all_vectors(R, e.group.gens)) {
                    Vec dv = v;
                    for (auto& x : dv) x = R.mul(Elem(d), x);
                    kills = kills && rel.contains(dv);
                }
                CHECK(kills == R.divides(e.annihilator, Elem(d)));
            }
        }
    }
    Ring R = Ring::integers_mod(16);
    std::vector<FpModule> fam = {cyc(R, 2), cyc(R, 4), cyc(R, 8), cyc(R, 16)};
    CHECK(ext_annihilator(fam, 1) == 4);
    CHECK(ext_annihilator(fam, 2) == 4);
}

TEST_CASE("ca_search table") {
    Ring R = Ring::integers_mod(4);
    std::vector<FpModule> fam = {cyc(R, 2), cyc(R, 4)};
    CaTable t = ca_search(fam, 3);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.first_nondegenerate == 1);
    std::string tsv = ca_table_tsv(t, {"A", "B"});
    std::istringstream in(tsv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n\tM\tN\tinvariant_factors\tannihilator");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 3 * 4 + 3);  // four pairs and a summary per n
    CHECK(tsv.find("1\tA\tA\t2\t2") != std::string::npos);

    // a family of frees is degenerate: Ext vanishes and the annihilator is 1
    CaTable f = ca_search({free_module(R, 1)}, 2);
    CHECK(f.first_nondegenerate == 0);
    CHECK(f.rows[0].annihilator == 1);
}
