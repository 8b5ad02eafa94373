#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"

#include "ghost/derived.hpp"
#include "ghost/verify.hpp"

using namespace ghost;
using gt_test::Gen;

namespace {

FpModule cyc(const Ring& R, long d) { return cyclic_module(R, R.from_int(d)); }

bool zero_on_cohomology(const ChainMap& f) {
    for (int n = std::min(f.source.lo(), f.target.lo()) - 1; n <= std::max(f.source.hi(), f.target.hi()) + 1; ++n) {
        ModuleMap h = induced_map(f, n);
        if (!maps_to_zero(h.target, h.matrix)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("Koszul objects carry the block homotopy") {
    Gen gen(301);
    for (long m : {4, 9, 0}) {
        Ring R = m ? Ring::integers_mod(m) : Ring::integers();
        for (int i = 0; i < 20; ++i) {
            Complex X = gen.complex(R, -1, 1, 2);
            Elem r = m ? gen.elem(R) : Elem(gen.uniform(-4, 4));
            Koszul k = koszul(r, X);
            CHECK(k.K == cone(scalar_map(X, r)).cone);
            CHECK(check_tr(k.witness));
            CHECK(verify_tr(k.witness).ok);
        }
    }
}

TEST_CASE("T_r membership") {
    Ring R = Ring::integers_mod(8);
    Complex Z2 = module_complex(cyc(R, 2)), Z4 = module_complex(cyc(R, 4));
    CHECK(tr_member(Z2, Elem(2)).has_value());
    CHECK_FALSE(tr_member(Z4, Elem(2)).has_value());
    auto w = tr_member(Z4, Elem(4));
    REQUIRE(w.has_value());
    CHECK(verify_tr(*w).ok);
    // a wrong scalar is rejected by the checker
    TrWitness bad = *w;
    bad.r = Elem(2);
    CHECK_FALSE(verify_tr(bad).ok);
    // free complexes only lie in T_0
    CHECK_FALSE(tr_member(free_complex(R, 0, 1), Elem(4)).has_value());
    CHECK(tr_member(free_complex(R, 0, 1), Elem(0)).has_value());
}

TEST_CASE("cone triangles and octahedra verify") {
    Gen gen(311);
    for (long m : {4, 9, 0}) {
        Ring R = m ? Ring::integers_mod(m) : Ring::integers();
        for (int i = 0; i < 20; ++i) {
            Complex A = gen.complex(R, -1, 0, 2), B = gen.complex(R, -1, 1, 2), C = gen.complex(R, 0, 1, 2);
            ChainMap f = gen.chain_map(A, B), g = gen.chain_map(B, C);
            TriangleCert t = cone_triangle(f);
            CHECK(check_triangle(t));
            CHECK(verify_triangle(t).ok);
            Octahedron o = octahedron(f, g);
            CHECK(is_chain_map(o.u));
            CHECK(is_chain_map(o.v));
            CHECK(is_chain_map(o.w));
            CHECK(verify_triangle(o.tri).ok);
        }
    }
}

TEST_CASE("triangle checker rejects a broken comparison map") {
    Ring R = Ring::integers_mod(4);
    Complex X = module_complex(cyc(R, 4));
    ChainMap f = scalar_map(X, Elem(2));
    TriangleCert t = cone_triangle(f);
    REQUIRE(verify_triangle(t).ok);
    t.alpha = scale(Elem(2), t.alpha);
    CHECK_FALSE(check_triangle(t));
    CHECK_FALSE(verify_triangle(t).ok);
}

TEST_CASE("subcomplex triangles split a filtered complex") {
    Gen gen(321);
    Ring R = Ring::integers_mod(8);
    for (int i = 0; i < 20; ++i) {
        Complex E = gen.free_tower(R, 2, -1, 1, 2);
        REQUIRE(is_complex(E));
        std::map<int, std::size_t> sub;
        // the terms in degrees >= 0 form a subcomplex
        for (const auto& [n, M] : E.terms())
            if (n >= 0) sub[n] = M.gens;
        TriangleCert t = subcomplex_triangle(E, sub);
        CHECK(t.f.target == E);
        CHECK(verify_triangle(t).ok);
    }
}

TEST_CASE("Adams ghosts kill cohomology and P is built from frees") {
    Gen gen(331);
    for (long m : {4, 8, 9}) {
        Ring R = Ring::integers_mod(m);
        for (int i = 0; i < 12; ++i) {
            Complex X = gen.complex(R, -1, 0, 2);
            const int n = 1 + i % 3;
            AdamsResult a = adams_triangle(X, n);
            CHECK(is_termwise_free(a.P));
            CHECK(a.Y == cone(a.p).cone);
            REQUIRE(a.ghosts.size() == static_cast<std::size_t>(n));
            for (std::size_t j = 0; j < a.ghosts.size(); ++j) {
                CHECK(zero_on_cohomology(a.ghosts[j]));
                CHECK(check_ghost(a.ghost_certs[j]));
                CHECK(verify_ghost(a.ghost_certs[j]).ok);
            }
            // P -> X -> Y composes to zero up to homotopy
            CHECK(null_homotopy(compose(a.p, a.q)).has_value());
        }
    }
}

TEST_CASE("is_ghost refuses maps that are nonzero on cohomology") {
    Ring R = Ring::integers_mod(4);
    Complex X = module_complex(cyc(R, 2));
    CHECK_FALSE(is_ghost(identity_map(X)).has_value());
    CHECK(is_ghost(zero_map(X, X)).has_value());
    auto g = is_ghost(adams_triangle(X, 1).q);
    REQUIRE(g.has_value());
    CHECK(verify_ghost(*g).ok);
}

TEST_CASE("ann_compose multiplies the scalars of the two ends") {
    Gen gen(341);
    Ring R = Ring::integers_mod(16);
    for (int i = 0; i < 15; ++i) {
        Complex X = gen.complex(R, -1, 0, 2);
        Elem r = R.from_int(2), s = R.from_int(4);
        Octahedron o = octahedron(scalar_map(X, r), scalar_map(X, s));
        TrWitness w = ann_compose(o.tri, koszul(r, X).witness, koszul(s, X).witness);
        CHECK(w.r == 8);
        CHECK(verify_tr(w).ok);
    }
}

TEST_CASE("shuffles move a T_r factor across at the cost of r^2") {
    Gen gen(351);
    Ring R = Ring::integers_mod(8);
    const Elem two(2);
    for (int i = 0; i < 20; ++i) {
        Koszul k = koszul(two, free_complex(R, static_cast<int>(gen.uniform(-1, 0)), 1));
        Complex X = gen.complex(R, -2, 0, 2);
        TriangleCert left = cone_triangle(gen.chain_map(k.K, X));
        ShuffleResult s = shuffle_left(left, k.witness);
        CHECK(verify_triangle(s.tri2).ok);
        CHECK(s.tri2.f.source == left.C);
        CHECK(s.w2.r == 4);
        CHECK(verify_tr(s.w2).ok);

        // the other side: any triangle whose cofiber has a chain-level 2-witness
        ChainMap t = gen.chain_map(X, k.K);
        TriangleCert right = cone_triangle(t);
        auto wt = tr_member_chain(right.C, two);
        if (!wt) continue;
        ShuffleResult r = shuffle_right(right, *wt);
        CHECK(verify_triangle(r.tri2).ok);
        CHECK(r.w2.r == 4);
        CHECK(verify_tr(r.w2).ok);
    }
}
