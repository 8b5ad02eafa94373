// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "gen.hpp"

#include "ghost/derived.hpp"
#include "ghost/ext.hpp"
#include "ghost/theorems.hpp"
#include "ghost/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace ghost;
using gt_test::Gen;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

#define REQUIRE_OR_FAIL(cond, msg)                         \
    do {                                                   \
        if (!(cond)) {                                     \
            std::ostringstream os_;                        \
            os_ << msg;                                    \
            return Outcome{false, os_.str()};              \
        }                                                  \
    } while (0)

FpModule cyc(const Ring& R, long d) { return cyclic_module(R, R.from_int(d)); }

std::vector<long> factors(const FpModule& M) {
    std::vector<long> out;
    for (const auto& e : invariant_factors(M)) out.push_back(e.get_si());
    return out;
}

long size_of(const FpModule& M) { return static_cast<long>(*module_size(M)); }

// ---- oracles over Z/m: cyclic modules Z/a and Z/b, a, b dividing m -------

std::set<long> image_of(long c, long b) {
    std::set<long> im;
    for (long y = 0; y < b; ++y) im.insert((c * y) % b);
    return im;
}

// Hom(F, Z/b) for the periodic resolution Z/m <-a- Z/m <-(m/a)- Z/m <-a- ...
// of Z/a is Z/b -a-> Z/b -(m/a)-> Z/b -a-> ...; returns the cocycles and
// coboundaries of degree n as explicit element sets.
std::pair<std::vector<long>, std::set<long>> ext_sets(long m, long a, long b, int n) {
    auto mult = [&](int k) { return k % 2 == 0 ? a : m / a; };  // Hom^k -> Hom^{k+1}
    std::vector<long> cyc;
    for (long x = 0; x < b; ++x)
        if ((mult(n) * x) % b == 0) cyc.push_back(x);
    std::set<long> bd = n == 0 ? std::set<long>{0} : image_of(mult(n - 1), b);
    return {cyc, bd};
}

long ext_order(long m, long a, long b, int n) {
    auto [z, bd] = ext_sets(m, a, b, n);
    long bsz = 0;
    for (long x : z) bsz += bd.count(x);
    return static_cast<long>(z.size()) / bsz;
}

// Smallest divisor d of m with d Ext^n(Z/a, Z/b) = 0; m itself stands for 0.
long ext_ann(long m, long a, long b, int n) {
    auto [z, bd] = ext_sets(m, a, b, n);
    for (long d = 1; d <= m; ++d) {
        if (m % d) continue;
        bool ok = true;
        for (long x : z) ok = ok && bd.count((d * x) % b);
        if (ok) return d;
    }
    return m;
}

// ---- criteria -------------------------------------------------------------

Outcome crit1() {
    auto t0 = std::chrono::steady_clock::now();
    Ring R = Ring::integers_mod(4);
    std::vector<FpModule> fam = {cyc(R, 2), cyc(R, 4)};
    const long ords[] = {2, 4};
    for (int n = 0; n <= 4; ++n)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                FpModule g = ext(fam[i], fam[j], n).group;
                long want = ords[i] == 4 ? (n == 0 ? ords[j] : 1) : ext_order(4, ords[i], ords[j], n);
                REQUIRE_OR_FAIL(size_of(g) == want, "|Ext^" << n << "(Z/" << ords[i] << ",Z/" << ords[j]
                                                            << ")| = " << size_of(g) << ", oracle " << want);
            }
    for (int n = 0; n <= 4; ++n)
        REQUIRE_OR_FAIL(factors(ext(fam[0], fam[0], n).group) == std::vector<long>{2}, "Ext^" << n << "(Z/2,Z/2) not Z/2");
    CaTable t = ca_search(fam, 4);
    for (const auto& row : t.rows) REQUIRE_OR_FAIL(row.annihilator == 2, "annihilator at n=" << row.n << " is " << row.annihilator);
    REQUIRE_OR_FAIL(t.first_nondegenerate == 1, "first nondegenerate n = " << t.first_nondegenerate);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    REQUIRE_OR_FAIL(secs < 5.0, "took " << secs << " s");
    std::ostringstream os;
    os << "Ext tables n=0..4 match the periodic-resolution oracle, annihilator 2 for n=1..4, " << secs << " s";
    return {true, os.str()};
}

Outcome crit2() {
    Ring R = Ring::integers_mod(16);
    const long ords[] = {2, 4, 8, 16};
    std::vector<FpModule> fam;
    for (long a : ords) fam.push_back(cyc(R, a));
    long oracle = 1;
    for (long a : ords)
        for (long b : ords) {
            long d = ext_ann(16, a, b, 1);
            oracle = std::max(oracle, d);  // divisors of 16 are totally ordered by divisibility
            ExtResult e = ext(cyc(R, a), cyc(R, b), 1);
            REQUIRE_OR_FAIL(size_of(e.group) == ext_order(16, a, b, 1), "order of Ext^1(Z/" << a << ",Z/" << b << ")");
            REQUIRE_OR_FAIL(e.annihilator == R.from_int(d), "ann Ext^1(Z/" << a << ",Z/" << b << ") = " << e.annihilator
                                                                         << ", oracle " << d);
        }
    Elem got = ext_annihilator(fam, 1);
    REQUIRE_OR_FAIL(got == R.from_int(oracle) && oracle == 4, "ext_annihilator = " << got << ", oracle " << oracle);
    return {true, "ext_annihilator = 4 over all 16 pairs, matches enumeration"};
}

Outcome crit3() {
    Gen gen(0x3001);
    const long mods[] = {4, 8, 9};
    int nontrivial = 0;
    for (int inst = 0; inst < 100; ++inst) {
        Ring R = Ring::integers_mod(mods[inst % 3]);
        const int n = 1 + (inst / 3) % 3;
        Complex X = gen.complex(R, -1, static_cast<int>(gen.uniform(-1, 0)), 2);
        AdamsResult a = adams_triangle(X, n);
        REQUIRE_OR_FAIL(a.ghosts.size() == static_cast<std::size_t>(n), "instance " << inst << ": ghost count");
        ChainMap g = identity_map(X);
        for (std::size_t j = 0; j < a.ghosts.size(); ++j) {
            REQUIRE_OR_FAIL(verify_ghost(a.ghost_certs[j]).ok, "instance " << inst << ": ghost " << j << " uncertified");
            g = compose(g, a.ghosts[j]);
        }
        Complex P = inst % 4 == 0 ? a.P : gen.free_tower(R, n, -2, 0, 2);
        const int k = static_cast<int>(gen.uniform(-1, 1));
        Complex SP = shift(P, k);
        std::vector<ChainMap> fs;
        if (inst % 4 == 0 && k == 0) fs.push_back(a.p);
        for (int t = 0; t < 3; ++t) fs.push_back(gen.chain_map(SP, X));
        for (const auto& f : fs) {
            ChainMap fg = compose(f, g);
            if (!fg.comps.empty()) ++nontrivial;
            auto h = null_homotopy(fg);
            REQUIRE_OR_FAIL(h && is_null_homotopy(fg, *h), "instance " << inst << " (n=" << n << ", k=" << k
                                                                       << "): no null-homotopy");
        }
    }
    std::ostringstream os;
    os << "100 instances, " << nontrivial << " pairings nonzero at chain level, all null-homotopic";
    return {true, os.str()};
}

Outcome crit4() {
    Gen gen(0x4001);
    for (int inst = 0; inst < 50; ++inst) {
        Ring R = Ring::integers_mod(inst % 2 ? 9 : 4);
        Complex X = gen.complex(R, -1, 1, 2);
        Elem r = gen.elem(R);
        Koszul k = koszul(r, X);
        // (y, x) -> (0, y) on K^n = X^n ⊕ X^{n+1}
        DegreeMaps h;
        for (const auto& [n, M] : k.K.terms()) {
            const std::size_t gy = X.gens(n), gprev = X.gens(n - 1);
            if (!gy || !k.K.gens(n - 1)) continue;
            Matrix m(M.gens, k.K.gens(n - 1));
            for (std::size_t i = 0; i < gy; ++i) m(i, gprev + i) = R.one();
            h[n] = m;
        }
        REQUIRE_OR_FAIL(verify_tr(TrWitness{k.K, r, std::nullopt, h}).ok, "instance " << inst << ": block homotopy rejected");
        REQUIRE_OR_FAIL(verify_tr(k.witness).ok, "instance " << inst << ": koszul witness rejected");
    }
    return {true, "50 Koszul objects, block homotopy verifies r.id = dh + hd exactly"};
}

Outcome crit5() {
    Gen gen(0x5001);
    const Ring rings[] = {Ring::integers_mod(4), Ring::integers_mod(9), Ring::integers()};
    int nonzero = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const Ring& R = rings[inst % 3];
        Complex A = gen.complex(R, -1, 0, 2), B = gen.complex(R, -1, 1, 2), C = gen.complex(R, -1, 0, 2);
        ChainMap f = gen.chain_map(A, B), g = gen.chain_map(B, C);
        nonzero += !f.comps.empty() && !g.comps.empty();
        Octahedron o = octahedron(f, g);
        REQUIRE_OR_FAIL(o.tri.f.source == cone(f).cone && o.tri.f.target == cone(compose(f, g)).cone &&
                            o.tri.C == cone(g).cone,
                        "instance " << inst << ": wrong objects");
        auto v = verify_triangle(o.tri);
        REQUIRE_OR_FAIL(v.ok, "instance " << inst << ": " << v.locus);
    }
    std::ostringstream os;
    os << "200 octahedra verify (" << nonzero << " with both maps nonzero)";
    return {true, os.str()};
}

const TowerLayer* t_layer(const TowerCertificate& c) {
    for (const auto& l : c.layers)
        if (l.label.kind == Label::Kind::T) return &l;
    return nullptr;
}

Outcome crit6() {
    struct Case {
        long m, r;
        std::vector<long> summands;
    };
    const std::vector<Case> cases = {{16, 4, {2}}, {16, 4, {4}}, {16, 4, {8}}, {16, 4, {16}}, {4, 2, {2}}, {4, 2, {2, 4}}};
    for (const auto& c : cases) {
        Ring R = Ring::integers_mod(c.m);
        FpModule M = cyc(R, c.summands[0]);
        for (std::size_t i = 1; i < c.summands.size(); ++i) M = direct_sum(M, cyc(R, c.summands[i]));
        GTowers t = decompose_from_G(module_complex(M), R.from_int(c.r), 1);
        for (const TowerCertificate* cert : {&t.d, &t.d_prime}) {
            auto v = verify_tower(*cert);
            REQUIRE_OR_FAIL(v.ok, describe(M) << " over Z/" << c.m << ": " << v.locus);
            const TowerLayer* tl = t_layer(*cert);
            REQUIRE_OR_FAIL(tl && tl->tr, describe(M) << ": no T layer");
            REQUIRE_OR_FAIL(tl->label.r == c.r && tl->tr->r == c.r && !R.is_zero(tl->tr->r), describe(M) << ": T label");
            REQUIRE_OR_FAIL(verify_tr(*tl->tr).ok, describe(M) << ": T witness");
        }
        REQUIRE_OR_FAIL(t.d.expression.front().kind == Label::Kind::T && t.d_prime.expression.back().kind == Label::Kind::T,
                        "label words");
    }
    return {true, "Z/2, Z/4, Z/8, Z/16 over Z/16 (r=4) and Z/2, Z/2+Z/4 over Z/4 (r=2): D and D' towers verify, T_r witnesses nonzero"};
}

Outcome crit7() {
    Gen gen(0x7001);
    for (int inst = 0; inst < 25; ++inst) {
        const bool big = inst % 2;
        Ring R = Ring::integers_mod(big ? 16 : 4);
        Elem r = R.from_int(big ? 4 : 2);
        std::vector<FpModule> fam;
        for (long a = 2; a <= (big ? 16 : 4); a *= 2) fam.push_back(cyc(R, a));
        const int lo = static_cast<int>(gen.uniform(-1, 0));
        Complex X = gen.complex(R, lo, lo + 1, 2);
        ETower e = decompose_from_E(X, r, 1, fam);
        auto v = verify_tower(e.cert);
        REQUIRE_OR_FAIL(v.ok, "instance " << inst << ": " << v.locus);
        const Elem r3 = R.pow(r, 3);
        const std::vector<Label> word = {Label::t(r3), Label::add(), Label::add()};
        REQUIRE_OR_FAIL(e.cert.expression == word, "instance " << inst << ": label word");
        const TowerLayer* tl = t_layer(e.cert);
        REQUIRE_OR_FAIL(tl && tl->tr && tl->tr->r == r3 && verify_tr(*tl->tr).ok, "instance " << inst << ": T witness");
        REQUIRE_OR_FAIL(R.divides(r, e.family_annihilator), "instance " << inst << ": family annihilator");
    }
    // The r^3 witness is ann_compose of an r- and an r^2-witness along an
    // octahedron; rebuild one such composite by hand on a sample and check it.
    Ring R = Ring::integers_mod(16);
    Elem r = R.from_int(4);
    Complex X = module_complex(cyc(R, 8));
    Octahedron o = octahedron(scalar_map(X, r), scalar_map(X, R.mul(r, r)));
    TrWitness w = ann_compose(o.tri, koszul(r, X).witness, koszul(R.mul(r, r), X).witness);
    REQUIRE_OR_FAIL(w.r == R.pow(r, 3) && verify_tr(w).ok, "hand-built r^3 composite");
    return {true, "25 complexes: towers verify with word [T_{r^3}, ADD, ADD]; r^3 = 0 over Z/4 and Z/16"};
}

Outcome crit8() {
    Gen gen(0x8001);
    Ring R = Ring::integers_mod(8);
    const Elem two = R.from_int(2), four = R.from_int(4);
    auto instance = [&](bool want_search) -> std::optional<bool> {
        // T = K(2, F) with F free
        Complex F = gen.coin(0.7) ? free_complex(R, static_cast<int>(gen.uniform(-1, 0)), gen.uniform(1, 2))
                                  : gen.complex(R, -1, 0, 2, true);
        Koszul k = koszul(two, F);
        const int xlo = static_cast<int>(gen.uniform(-3, 0));
        Complex X = gen.complex(R, xlo, xlo + static_cast<int>(gen.uniform(0, 2)), 2);
        ChainMap t = gen.chain_map(k.K, X);
        TriangleCert tri = cone_triangle(t);
        // h is only determined up to C -> ΣT -> X; half the runs pick a random e
        std::optional<ChainMap> e;
        if (gen.coin()) e = gen.chain_map(cone(t).proj.target, X);
        ShuffleResult s = shuffle_left(tri, k.witness, e);
        if (!verify_triangle(s.tri2).ok || s.tri2.f.source != tri.C) return std::nullopt;
        if (!(s.w2.X == s.tri2.C && s.w2.r == four && verify_tr(s.w2).ok)) return std::nullopt;
        if (!want_search) return false;
        return !tr_member(s.tri2.C, two).has_value();
    };
    int found = 0;
    for (int inst = 0; inst < 50; ++inst) {
        auto res = instance(true);
        REQUIRE_OR_FAIL(res.has_value(), "instance " << inst << ": shuffle output rejected");
        found += *res;
    }
    int extra = 0;
    while (!found && extra < 2000) {
        auto res = instance(true);
        ++extra;
        REQUIRE_OR_FAIL(res.has_value(), "search instance " << extra << ": shuffle output rejected");
        found += *res;
    }
    REQUIRE_OR_FAIL(found > 0, "no cone(h) outside T_2 found");
    std::ostringstream os;
    os << "50 shuffles verify with 4-witnesses; " << found << " cone(h) outside T_2 (" << extra << " extra searched)";
    return {true, os.str()};
}

Outcome crit9() {
    Ring R = Ring::integers_mod(8);
    const Elem two = R.from_int(2);
    FpModule Z2 = cyc(R, 2), Z4 = cyc(R, 4);
    ChainMap f{module_complex(Z2), module_complex(Z4), {}};
    f.set(0, Matrix::from_ints(R, {{2}}));
    REQUIRE_OR_FAIL(is_chain_map(f), "inclusion is not a chain map");
    TriangleCert tri = cone_triangle(f);
    // the cofiber is the quotient Z/2, concentrated in degree 0
    REQUIRE_OR_FAIL(factors(cohomology(tri.C, 0)) == std::vector<long>{2} && is_exact_at(tri.C, -1), "cofiber is not Z/2");
    TrWitness wx{module_complex(Z2), two, std::nullopt, {}};
    auto wz = tr_member(tri.C, two);
    REQUIRE_OR_FAIL(verify_tr(wx).ok && wz && verify_tr(*wz).ok, "2-witnesses on the ends");
    TrWitness w = ann_compose(tri, wx, *wz);
    REQUIRE_OR_FAIL(w.X == module_complex(Z4) && w.r == R.from_int(4) && verify_tr(w).ok, "composite witness");
    REQUIRE_OR_FAIL(!tr_member(module_complex(Z4), two), "Z/4 has a 2-witness");
    return {true, "4.id on Z/4 witnessed from the triangle; no 2-witness exists"};
}

Outcome crit10() {
    Ring Z = Ring::integers();
    const Elem two(2);
    FpModule Z2 = cyc(Z, 2);
    Complex X1 = module_complex(Z2);
    Complex X2 = direct_sum(X1, shift(X1, 1));
    // Tor_i(H, Z/2) for H = Z/2: Z/2 for i = 0, 1; placed in degree -i.
    const std::vector<std::pair<Complex, std::map<int, std::vector<long>>>> cases = {
        {X1, {{-1, {2}}, {0, {2}}}},
        {X2, {{-2, {2}}, {-1, {2, 2}}, {0, {2}}}},
    };
    for (const auto& [X, want] : cases) {
        ModrSplit s = modr_split(X, two);
        REQUIRE_OR_FAIL(check_modr_split(s), "equivalence fails on " << X.terms().size() << "-term complex");
        for (int n = -3; n <= 1; ++n) {
            auto it = want.find(n);
            std::vector<long> exp = it == want.end() ? std::vector<long>{} : it->second;
            REQUIRE_OR_FAIL(factors(cohomology(s.tensor, n)) == exp, "H^" << n << " of the tensor");
            REQUIRE_OR_FAIL(factors(cohomology(s.split, n)) == exp, "H^" << n << " of X + Sigma X");
        }
    }
    Ring R4 = Ring::integers_mod(4);
    try {
        modr_split(module_complex(cyc(R4, 2)), R4.from_int(2));
        return {false, "no ZERO_DIVISOR over Z/4"};
    } catch (const TheoremError& e) {
        REQUIRE_OR_FAIL(e.code() == TheoremError::Code::ZeroDivisor, "wrong error " << e.what());
    }
    return {true, "both complexes split with Tor-matching cohomology; ZERO_DIVISOR over Z/4"};
}

Outcome crit11() {
    Gen gen(0xB001);
    for (int inst = 0; inst < 20; ++inst) {
        const int d = static_cast<int>(gen.uniform(0, 50)), n = static_cast<int>(gen.uniform(0, 50));
        DimBoundCert sub{"F", d + 1, false, ""};
        DimBoundCert out = dim_bound_compose(sub, n);
        REQUIRE_OR_FAIL(out.level == d + n + 1 && out.generator == "F ⊕ Λ" && out.assumption,
                        "(" << d << ", " << n << ") -> level " << out.level << ", generator " << out.generator);
    }
    return {true, "20 random (d, n) give level d+n+1 with generator F ⊕ Λ"};
}

// ---- criterion 12: tampering ----------------------------------------------

Elem bump(const Ring& R, const Elem& x) { return R.add(x, R.one()); }

bool retract_valid(const Retract& rt) {
    return is_chain_map(rt.i) && is_chain_map(rt.p) && is_homotopy(compose(rt.i, rt.p), rt.model.pi, rt.homotopy);
}

bool layer_valid(const TowerLayer& l) {
    if (!check_triangle(l.tri)) return false;
    if (l.tr) return check_tr(*l.tr);
    if (l.add) return is_homotopy(compose(l.add->i, l.add->p), identity_map(l.add->P), l.add->homotopy);
    return false;
}

struct Tamper {
    TowerCertificate cert;
    std::string expect;  // locus prefix
};

// Each returns nullopt when the chosen position does not exist or the edit
// leaves the data valid by the construction-side checks.
std::optional<Tamper> tamper_differential(const TowerCertificate& c, Gen& gen) {
    const std::size_t j = static_cast<std::size_t>(gen.uniform(0, static_cast<long>(c.layers.size()) - 1));
    TowerCertificate t = c;
    Complex& E = t.layers[j].tri.f.target;
    std::vector<int> slots;
    for (const auto& [n, M] : E.terms())
        if (E.gens(n + 1)) slots.push_back(n);
    if (slots.empty()) return std::nullopt;
    const int n = slots[gen.uniform(0, static_cast<long>(slots.size()) - 1)];
    Matrix d = E.diff(n);
    std::size_t a = gen.uniform(0, static_cast<long>(d.rows()) - 1), b = gen.uniform(0, static_cast<long>(d.cols()) - 1);
    d(a, b) = bump(E.ring(), d(a, b));
    E.set_diff(n, d);
    t.layers[j].tri.f.target = E;
    return Tamper{t, "layer " + std::to_string(j + 1) + ":"};
}

std::optional<Tamper> tamper_homotopy(const TowerCertificate& c, Gen& gen) {
    const std::size_t j = static_cast<std::size_t>(gen.uniform(0, static_cast<long>(c.layers.size()) - 1));
    TowerCertificate t = c;
    TowerLayer& l = t.layers[j];
    std::vector<DegreeMaps*> pools;
    if (l.tr) pools.push_back(&l.tr->homotopy);
    if (l.add) pools.push_back(&l.add->homotopy);
    pools.push_back(&l.tri.htpy_cone);
    pools.push_back(&l.tri.htpy_c);
    DegreeMaps* h = pools[gen.uniform(0, static_cast<long>(pools.size()) - 1)];
    if (h->empty()) return std::nullopt;
    auto it = std::next(h->begin(), gen.uniform(0, static_cast<long>(h->size()) - 1));
    Matrix& m = it->second;
    if (m.empty()) return std::nullopt;
    const Ring& R = l.tri.f.source.ring();
    if (gen.coin()) {
        m = Matrix(m.rows(), m.cols());  // zero it out
    } else {
        std::size_t a = gen.uniform(0, static_cast<long>(m.rows()) - 1), b = gen.uniform(0, static_cast<long>(m.cols()) - 1);
        m(a, b) = bump(R, m(a, b));
    }
    if (layer_valid(l)) return std::nullopt;
    return Tamper{t, "layer " + std::to_string(j + 1) + ":"};
}

std::optional<Tamper> tamper_label(const TowerCertificate& c, Gen& gen) {
    const std::size_t j = static_cast<std::size_t>(gen.uniform(0, static_cast<long>(c.layers.size()) - 1));
    TowerCertificate t = c;
    Label& lab = t.layers[j].label;
    const Ring& R = c.target.ring();
    if (lab.kind == Label::Kind::T && gen.coin())
        lab.r = bump(R, lab.r);
    else if (lab.kind == Label::Kind::T)
        lab = Label::add();
    else
        lab = Label::t(R.from_int(2));
    return Tamper{t, "layer " + std::to_string(j + 1) + ":"};
}

std::optional<Tamper> tamper_retract(const TowerCertificate& c, Gen& gen) {
    TowerCertificate t = c;
    ChainMap& f = gen.coin() ? t.retract.i : t.retract.p;
    std::vector<int> degs;
    for (const auto& [n, M] : f.source.terms())
        if (f.target.gens(n)) degs.push_back(n);
    if (degs.empty()) return std::nullopt;
    const int n = degs[gen.uniform(0, static_cast<long>(degs.size()) - 1)];
    Matrix m = f.comp(n);
    std::size_t a = gen.uniform(0, static_cast<long>(m.rows()) - 1), b = gen.uniform(0, static_cast<long>(m.cols()) - 1);
    m(a, b) = bump(f.source.ring(), m(a, b));
    f.set(n, m);
    if (retract_valid(t.retract)) return std::nullopt;
    return Tamper{t, "retract:"};
}

Outcome crit12() {
    std::vector<TowerCertificate> pool;
    {
        Ring R = Ring::integers_mod(4);
        for (auto M : {cyc(R, 2), direct_sum(cyc(R, 2), cyc(R, 4))}) {
            GTowers t = decompose_from_G(module_complex(M), R.from_int(2), 1);
            pool.push_back(t.d);
            pool.push_back(t.d_prime);
        }
        Complex X(R);
        X.set_term(0, cyc(R, 4));
        X.set_term(1, cyc(R, 4));
        X.set_diff(0, Matrix::from_ints(R, {{2}}));
        pool.push_back(decompose_from_E(X, R.from_int(2), 1, {}).cert);
    }
    {
        Ring R = Ring::integers_mod(16);
        for (long a : {2, 4, 8}) {
            GTowers t = decompose_from_G(module_complex(cyc(R, a)), R.from_int(4), 1);
            pool.push_back(t.d);
            pool.push_back(t.d_prime);
        }
    }
    for (const auto& c : pool) REQUIRE_OR_FAIL(verify_tower(c).ok, "untampered certificate rejected");

    Gen gen(0xC001);
    using Fn = std::optional<Tamper> (*)(const TowerCertificate&, Gen&);
    const std::pair<const char*, Fn> kinds[] = {{"differential", tamper_differential},
                                                {"homotopy", tamper_homotopy},
                                                {"label", tamper_label},
                                                {"retract", tamper_retract}};
    int done = 0, attempts = 0;
    std::map<std::string, int> per_kind;
    while (done < 30 && attempts < 10000) {
        ++attempts;
        const auto& [name, fn] = kinds[done % 4];
        const auto& base = pool[gen.uniform(0, static_cast<long>(pool.size()) - 1)];
        auto t = fn(base, gen);
        if (!t) continue;
        VerifyResult v = verify_tower(t->cert);
        REQUIRE_OR_FAIL(!v.ok, name << " tamper accepted (expected locus " << t->expect << ")");
        REQUIRE_OR_FAIL(v.locus.rfind(t->expect, 0) == 0, name << " tamper: locus '" << v.locus << "', expected " << t->expect);
        ++per_kind[name];
        ++done;
    }
    REQUIRE_OR_FAIL(done == 30, "only " << done << " tampered certificates generated");
    std::ostringstream os;
    os << "30 tampered certificates rejected at the right locus (";
    for (const auto& [k, v] : per_kind) os << k << " " << v << (k == "retract" ? "" : ", ");
    os << ")";
    return {true, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> crits = {
        {1, crit1}, {2, crit2}, {3, crit3}, {4, crit4}, {5, crit5}, {6, crit6},
        {7, crit7}, {8, crit8}, {9, crit9}, {10, crit10}, {11, crit11}, {12, crit12}};
    int failed = 0;
    for (const auto& [id, fn] : crits) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.ok;
        std::cout << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << " - " << o.detail << " [" << secs
                  << " s]" << std::endl;
    }
    return failed ? 1 : 0;
}
