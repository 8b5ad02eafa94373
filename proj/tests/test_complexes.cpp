#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"

#include "ghost/linalg.hpp"

#include <set>

using namespace ghost;
using gt_test::Gen;

namespace {

using Vec = std::vector<Elem>;

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

// |H^n(X)| by enumerating cocycles and coboundaries of X^n modulo its relations.
unsigned long cohomology_order(const Complex& X, int n) {
    const Ring& R = X.ring();
    const std::size_t g = X.gens(n);
    if (!g) return 1;
    Span here(R, X.rels(n));
    Span next(R, X.gens(n + 1) ? X.rels(n + 1) : Matrix(0, 0));
    std::set<Vec> cycles, bounds;
    for (const auto& v : all_vectors(R, g)) {
        if (!X.gens(n + 1) || next.contains(row_times(R, v, X.diff(n)))) cycles.insert(here.reduce(v));
    }
    if (X.gens(n - 1))
        for (const auto& u : all_vectors(R, X.gens(n - 1))) bounds.insert(here.reduce(row_times(R, u, X.diff(n - 1))));
    else
        bounds.insert(Vec(g, Elem(0)));
    return cycles.size() / bounds.size();
}

}  // namespace

TEST_CASE("random complexes square to zero and survive shifts") {
    Gen gen(201);
    for (long m : {4, 9, 0}) {
        Ring R = m ? Ring::integers_mod(m) : Ring::integers();
        for (int i = 0; i < 30; ++i) {
            Complex X = gen.complex(R, -1, 1, 2);
            REQUIRE(is_complex(X));
            CHECK(complex_failure(X).empty());
            CHECK(shift(shift(X, 2), -2) == X);
            CHECK(is_complex(shift(X, 1)));
            CHECK(shift(X, 1).gens(-2) == X.gens(-1));
        }
    }
}

TEST_CASE("a non-complex names its degree") {
    Ring R = Ring::integers_mod(4);
    Complex X(R);
    X.set_term(0, FpModule(R, 1));
    X.set_term(1, FpModule(R, 1));
    X.set_term(2, FpModule(R, 1));
    X.set_diff(0, Matrix::from_ints(R, {{1}}));
    X.set_diff(1, Matrix::from_ints(R, {{1}}));
    CHECK_FALSE(is_complex(X));
    CHECK(complex_failure(X).find("0") != std::string::npos);
}

TEST_CASE("cohomology matches enumeration") {
    Gen gen(211);
    for (long m : {4, 6, 8}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 25; ++i) {
            Complex X = gen.complex(R, -1, 1, 2);
            for (int n = -1; n <= 1; ++n) CHECK(module_size(cohomology(X, n)) == cohomology_order(X, n));
        }
    }
}

TEST_CASE("chain map space, composition and homotopy") {
    Gen gen(221);
    for (long m : {4, 9}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 20; ++i) {
            Complex X = gen.complex(R, -1, 0, 2), Y = gen.complex(R, -1, 1, 2), Z = gen.complex(R, -1, 0, 2);
            for (const auto& b : chain_map_space(X, Y)) CHECK(is_chain_map(b));
            ChainMap f = gen.chain_map(X, Y), g = gen.chain_map(Y, Z);
            CHECK(is_chain_map(compose(f, g)));
            CHECK(maps_equal(compose(identity_map(X), f), f));
            // a boundary d h + h d is null-homotopic through h itself
            DegreeMaps h;
            for (const auto& [n, M] : X.terms())
                if (Y.gens(n - 1)) h[n] = gen.hom_element(M, Y.term(n - 1));
            ChainMap b = homotopy_boundary(X, Y, h);
            CHECK(is_chain_map(b));
            CHECK(is_null_homotopy(b, h));
            auto found = null_homotopy(b);
            REQUIRE(found.has_value());
            CHECK(is_null_homotopy(b, *found));
        }
    }
}

TEST_CASE("cone of the identity is contractible and cones square to zero") {
    Gen gen(231);
    for (long m : {4, 0}) {
        Ring R = m ? Ring::integers_mod(m) : Ring::integers();
        for (int i = 0; i < 20; ++i) {
            Complex X = gen.complex(R, -1, 1, 2);
            Cone c = cone(identity_map(X));
            REQUIRE(is_complex(c.cone));
            CHECK(null_homotopy(identity_map(c.cone)).has_value());
            Complex Y = gen.complex(R, -1, 1, 2);
            Cone d = cone(gen.chain_map(X, Y));
            CHECK(is_complex(d.cone));
            CHECK(is_chain_map(d.inj));
            CHECK(is_chain_map(d.proj));
            CHECK(maps_equal(compose(d.inj, d.proj), zero_map(Y, shift(X, 1))));
        }
    }
}

TEST_CASE("free models are quasi-isomorphisms above the floor") {
    Gen gen(241);
    for (long m : {4, 8, 9}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 20; ++i) {
            Complex X = gen.complex(R, -1, 1, 2);
            FreeModel fm = free_model(X, -4);
            CHECK(is_termwise_free(fm.model()));
            CHECK(is_chain_map(fm.pi));
            for (int n = fm.floor + 1; n <= 2; ++n) CHECK(is_iso(induced_map(fm.pi, n)));
            FreeModel deeper = deepen(fm, -6);
            for (int n = -5; n <= 2; ++n) CHECK(is_iso(induced_map(deeper.pi, n)));
        }
    }
}

TEST_CASE("derived Hom of modules counts extensions") {
    Ring R = Ring::integers_mod(4);
    Complex Z2 = module_complex(cyclic_module(R, Elem(2)));
    for (int n = 0; n <= 3; ++n) CHECK(describe(hom_derived(Z2, Z2, n).group) == "Z/2");
    Complex L = free_complex(R, 0, 1);
    CHECK(is_zero(hom_derived(L, Z2, 1).group));
    CHECK(describe(hom_derived(L, Z2, 0).group) == "Z/2");
}
