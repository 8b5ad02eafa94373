#include "ghost/derived.hpp"

#include "ghost/linsys.hpp"

namespace ghost {

namespace {

std::pair<int, int> range_of(const Complex& X, const Complex& Y) {
    if (X.empty() && Y.empty()) return {0, -1};
    if (X.empty()) return {Y.lo(), Y.hi()};
    if (Y.empty()) return {X.lo(), X.hi()};
    return {std::min(X.lo(), Y.lo()), std::max(X.hi(), Y.hi())};
}

Matrix rels_of(const Complex& X, int n) {
    Matrix r = X.rels(n);
    return r.rows() ? r : Matrix(0, X.gens(n));
}

Matrix htpy_at(const DegreeMaps& h, const Complex& X, const Complex& Y, int n) { return htpy_comp(h, X, Y, n); }

void put(DegreeMaps& h, int n, const Matrix& m) {
    if (!m.is_zero()) h[n] = m;
}

// Cycles of X^n not yet hit by boundaries or by the previously chosen rows.
Matrix cohomology_generators(const Complex& X, int n) {
    const Ring& R = X.ring();
    Cohomology c = cohomology_data(X, n);
    Matrix chosen = c.boundaries;
    const std::size_t base = chosen.rows();
    for (std::size_t i = 0; i < c.cycles.rows(); ++i) {
        auto row = c.cycles.row(i);
        if (chosen.rows() > 0 && Span(R, chosen).contains(row)) continue;
        bool zero = true;
        for (const auto& e : row) zero = zero && sgn(e) == 0;
        if (zero) continue;
        chosen.append_row(row);
    }
    return chosen.rows_range(base, chosen.rows());
}

}  // namespace

std::optional<GhostCertificate> is_ghost(const ChainMap& f) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    GhostCertificate cert{f, {}, {}};
    auto [lo, hi] = range_of(X, Y);
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) == 0) continue;
        Cohomology cx = cohomology_data(X, n);
        if (cx.cycles.rows() == 0) continue;
        Matrix W(cx.cycles.rows(), Y.gens(n - 1) + rels_of(Y, n).rows());
        if (Y.gens(n) > 0) {
            Matrix img = mul(R, cx.cycles, f.comp(n));
            Matrix bnd = vstack(Y.diff(n - 1), rels_of(Y, n));
            if (bnd.rows() == 0) {
                if (!img.is_zero()) return std::nullopt;
            } else {
                Span s(R, bnd, true);
                for (std::size_t i = 0; i < img.rows(); ++i) {
                    auto c = s.express(img.row(i));
                    if (!c) return std::nullopt;
                    W.set_row(i, *c);
                }
            }
        }
        cert.cycles[n] = cx.cycles;
        cert.witnesses[n] = W;
    }
    return cert;
}

bool check_ghost(const GhostCertificate& g) {
    if (!is_chain_map(g.map)) return false;
    auto fresh = is_ghost(g.map);
    if (!fresh) return false;
    const Ring& R = g.map.source.ring();
    const Complex& Y = g.map.target;
    for (const auto& [n, Z] : g.cycles) {
        auto it = g.witnesses.find(n);
        if (it == g.witnesses.end() || it->second.rows() != Z.rows()) return false;
        if (Y.gens(n) == 0) continue;
        Matrix bnd = vstack(Y.diff(n - 1), rels_of(Y, n));
        if (it->second.cols() != bnd.rows()) return false;
        if (mul(R, Z, g.map.comp(n)) != mul(R, it->second, bnd)) return false;
    }
    return true;
}

bool check_tr(const TrWitness& w) {
    const Complex& X = w.X;
    if (!w.model) return is_null_homotopy(scalar_map(X, w.r), w.homotopy);
    const FreeModel& m = *w.model;
    if (m.base() != X) return false;
    if (!is_termwise_free(m.model())) return false;
    if (!is_chain_map(m.pi)) return false;
    if (!X.empty() && m.floor > X.lo() - 1) return false;
    Complex C = cone(m.pi).cone;
    for (int n = m.floor; n <= C.hi(); ++n)
        if (!is_exact_at(C, n)) return false;
    return is_null_homotopy(scale(w.r, m.pi), w.homotopy);
}

std::optional<TrWitness> tr_member_chain(const Complex& X, const Elem& r) {
    auto h = null_homotopy(scalar_map(X, r));
    if (!h) return std::nullopt;
    return TrWitness{X, X.ring().reduce(r), std::nullopt, *h};
}

std::optional<TrWitness> tr_member(const Complex& X, const Elem& r) {
    if (auto w = tr_member_chain(X, r)) return w;
    if (X.empty()) return TrWitness{X, X.ring().reduce(r), std::nullopt, {}};
    FreeModel m = free_model(X, X.lo() - 1);
    auto h = null_homotopy(scale(X.ring().reduce(r), m.pi));
    if (!h) return std::nullopt;
    return TrWitness{X, X.ring().reduce(r), m, *h};
}

Koszul koszul(const Elem& r0, const Complex& X) {
    const Ring& R = X.ring();
    Elem r = R.reduce(r0);
    Complex K = cone(scalar_map(X, r)).cone;
    // K^n = X^n ⊕ X^{n+1}; h(y, x) = (0, y) lands in K^{n-1} = X^{n-1} ⊕ X^n.
    DegreeMaps h;
    for (const auto& [n, M] : K.terms()) {
        std::size_t gy = X.gens(n), gx = X.gens(n + 1), gy1 = X.gens(n - 1);
        if (gy == 0) continue;
        Matrix m(gy + gx, gy1 + gy);
        for (std::size_t i = 0; i < gy; ++i) m(i, gy1 + i) = R.one();
        put(h, n, m);
    }
    TrWitness w{K, r, std::nullopt, h};
    if (!check_tr(w)) throw DerivedError("koszul: explicit homotopy failed to verify");
    return {K, w};
}

std::string triangle_failure(const TriangleCert& t) {
    if (auto e = chain_map_failure(t.f); !e.empty()) return "f: " + e;
    Complex C = cone(t.f).cone;
    if (t.alpha.source != C || t.alpha.target != t.C) return "alpha: wrong endpoints";
    if (t.beta.source != t.C || t.beta.target != C) return "beta: wrong endpoints";
    if (auto e = complex_failure(t.C); !e.empty()) return "C: " + e;
    if (auto e = chain_map_failure(t.alpha); !e.empty()) return "alpha: " + e;
    if (auto e = chain_map_failure(t.beta); !e.empty()) return "beta: " + e;
    if (auto e = homotopy_failure(identity_map(C), compose(t.alpha, t.beta), t.htpy_cone); !e.empty())
        return "cone homotopy: " + e;
    if (auto e = homotopy_failure(identity_map(t.C), compose(t.beta, t.alpha), t.htpy_c); !e.empty())
        return "C homotopy: " + e;
    return "";
}

bool check_triangle(const TriangleCert& t) { return triangle_failure(t).empty(); }

TriangleCert cone_triangle(const ChainMap& f) {
    Complex C = cone(f).cone;
    return {f, C, identity_map(C), identity_map(C), {}, {}};
}

TriangleCert subcomplex_triangle(const Complex& E, const std::map<int, std::size_t>& sub) {
    const Ring& R = E.ring();
    auto a = [&](int n) -> std::size_t {
        auto it = sub.find(n);
        return it == sub.end() ? 0 : it->second;
    };
    Complex S(R), Q(R);
    for (const auto& [n, M] : E.terms()) {
        const std::size_t an = a(n), cn = M.gens - an;
        if (an > M.gens) throw DerivedError("subcomplex_triangle: bad subcomplex size");
        Matrix rs(0, an), rc(0, cn);
        for (std::size_t i = 0; i < M.rels.rows(); ++i) {
            auto row = M.rels.row(i);
            bool in_s = true, in_c = true;
            for (std::size_t j = 0; j < M.gens; ++j)
                if (sgn(row[j]) != 0) (j < an ? in_c : in_s) = false;
            if (in_s && in_c) continue;
            if (!in_s && !in_c) throw DerivedError("subcomplex_triangle: relations are not block diagonal");
            if (in_s)
                rs.append_row(std::vector<Elem>(row.begin(), row.begin() + static_cast<long>(an)));
            else
                rc.append_row(std::vector<Elem>(row.begin() + static_cast<long>(an), row.end()));
        }
        S.set_term(n, FpModule(R, an, rs));
        Q.set_term(n, FpModule(R, cn, rc));
    }
    for (const auto& [n, M] : E.terms()) {
        Matrix d = E.diff(n);
        const std::size_t an = a(n), an1 = a(n + 1);
        if (!d.slice(0, an, an1, d.cols()).is_zero())
            throw DerivedError("subcomplex_triangle: not a subcomplex in degree " + std::to_string(n));
        S.set_diff(n, d.slice(0, an, 0, an1));
        Q.set_diff(n, d.slice(an, d.rows(), an1, d.cols()));
    }
    ChainMap f{S, E, {}};
    for (const auto& [n, M] : S.terms()) f.set(n, hstack(Matrix::identity(R, M.gens), Matrix(M.gens, E.gens(n) - M.gens)));

    Complex C = cone(f).cone;  // C^n = S^n ⊕ Q^n ⊕ S^{n+1}
    ChainMap alpha{C, Q, {}}, beta{Q, C, {}};
    DegreeMaps s;
    for (const auto& [n, M] : C.terms()) {
        const std::size_t an = a(n), cn = Q.gens(n), an1 = a(n + 1);
        Matrix al(an + cn + an1, cn);
        for (std::size_t i = 0; i < cn; ++i) al(an + i, i) = R.one();
        alpha.set(n, al);
        if (cn) {
            Matrix tau = E.diff(n).slice(an, an + cn, 0, an1);
            beta.set(n, hstack(hstack(Matrix(cn, an), Matrix::identity(R, cn)), neg(R, tau)));
        }
        if (an) {
            Matrix sm(an + cn + an1, C.gens(n - 1));
            const std::size_t off = a(n - 1) + Q.gens(n - 1);
            for (std::size_t i = 0; i < an; ++i) sm(i, off + i) = R.one();
            put(s, n, sm);
        }
    }
    return {f, Q, alpha, beta, s, {}};
}

Octahedron octahedron(const ChainMap& f, const ChainMap& g) {
    const Complex &A = f.source, &B = f.target, &Cc = g.target;
    const Ring& R = A.ring();
    ChainMap gf = compose(f, g);
    Complex cf = cone(f).cone, cgf = cone(gf).cone, cg = cone(g).cone;
    Complex scf = shift(cf, 1);
    ChainMap u{cf, cgf, {}}, v{cgf, cg, {}}, w{cg, scf, {}};
    auto [l1, h1] = range_of(A, B);
    auto [l2, h2] = range_of(B, Cc);
    const int lo = std::min(l1, l2) - 2, hi = std::max(h1, h2) + 1;
    for (int n = lo; n <= hi; ++n) {
        const std::size_t a1 = A.gens(n + 1), a2 = A.gens(n + 2), b1 = B.gens(n + 1), c0 = Cc.gens(n);
        // u: (b, a) -> (b g, a)
        u.set(n, block_diag(g.comp(n), Matrix::identity(R, a1)));
        // v: (c, a) -> (c, a f)
        v.set(n, block_diag(Matrix::identity(R, c0), f.comp(n + 1)));
        // w: (c, b) -> (b, 0)
        w.set(n, block2(Matrix(c0, b1), Matrix(c0, a2), Matrix::identity(R, b1), Matrix(b1, a2)));
    }
    Complex cu = cone(u).cone;  // (c, a | b, a')
    ChainMap alpha{cu, cg, {}}, beta{cg, cu, {}};
    DegreeMaps s;
    for (int n = lo; n <= hi; ++n) {
        const std::size_t c0 = Cc.gens(n), a1 = A.gens(n + 1), b1 = B.gens(n + 1), a2 = A.gens(n + 2);
        if (c0 + a1 + b1 + a2 == 0) continue;
        // alpha((c,a),(b,a')) = (c, a f + b)
        Matrix al(c0 + a1 + b1 + a2, c0 + b1);
        for (std::size_t i = 0; i < c0; ++i) al(i, i) = R.one();
        Matrix fa = f.comp(n + 1);
        for (std::size_t i = 0; i < a1; ++i)
            for (std::size_t j = 0; j < b1; ++j) al(c0 + i, c0 + j) = fa(i, j);
        for (std::size_t i = 0; i < b1; ++i) al(c0 + a1 + i, c0 + i) = R.one();
        alpha.set(n, al);
        // beta(c, b) = ((c, 0), (b, 0))
        Matrix be(c0 + b1, c0 + a1 + b1 + a2);
        for (std::size_t i = 0; i < c0; ++i) be(i, i) = R.one();
        for (std::size_t i = 0; i < b1; ++i) be(c0 + i, c0 + a1 + i) = R.one();
        beta.set(n, be);
        // s((c,a),(b,a')) = ((0,0),(0,a)) in degree n-1
        if (a1) {
            Matrix sm(c0 + a1 + b1 + a2, cu.gens(n - 1));
            const std::size_t off = Cc.gens(n - 1) + A.gens(n) + B.gens(n);
            for (std::size_t i = 0; i < a1; ++i) sm(c0 + i, off + i) = R.one();
            put(s, n, sm);
        }
    }
    TriangleCert tri{u, cg, alpha, beta, s, {}};
    return {u, v, w, tri};
}

AdamsResult adams_triangle(const Complex& X, int n) {
    if (n < 1) throw DerivedError("adams_triangle: n must be at least 1");
    const Ring& R = X.ring();
    AdamsResult out;
    out.stages.push_back(X);
    for (int j = 0; j < n; ++j) {
        const Complex& Xj = out.stages.back();
        Complex F(R);
        ChainMap pi{F, Xj, {}};
        for (const auto& [m, M] : Xj.terms()) {
            Matrix g = cohomology_generators(Xj, m);
            if (g.rows() == 0) continue;
            F.set_term(m, FpModule(R, g.rows()));
            pi.source = F;
            pi.set(m, g);
        }
        pi.source = F;
        Cone c = cone(pi);
        auto gc = is_ghost(c.inj);
        if (!gc) throw DerivedError("adams_triangle: cofiber map is not a ghost");
        out.covers.push_back(pi);
        out.ghosts.push_back(c.inj);
        out.ghost_certs.push_back(*gc);
        out.stages.push_back(c.cone);
    }
    const Complex& Y = out.stages.back();
    // Y^m = X^m ⊕ F_0^{m+1} ⊕ ... ⊕ F_{n-1}^{m+1}; P = Σ^{-1} of the F-part.
    Complex P(R);
    ChainMap p{P, X, {}};
    for (const auto& [m, M] : Y.terms()) {
        std::size_t q = M.gens - X.gens(m);
        if (q) P.set_term(m + 1, FpModule(R, q));
    }
    for (const auto& [m, M] : Y.terms()) {
        std::size_t xm = X.gens(m), xm1 = X.gens(m + 1);
        Matrix d = Y.diff(m);
        P.set_diff(m + 1, neg(R, d.slice(xm, d.rows(), xm1, d.cols())));
    }
    p.source = P;
    for (const auto& [m, M] : Y.terms()) {
        std::size_t xm = X.gens(m), xm1 = X.gens(m + 1);
        Matrix d = Y.diff(m);
        if (M.gens > xm) p.set(m + 1, d.slice(xm, d.rows(), 0, xm1));
    }
    Cone cp = cone(p);
    if (cp.cone != Y) throw DerivedError("adams_triangle: Y differs from cone(p)");
    out.P = P;
    out.p = p;
    out.Y = Y;
    out.q = cp.inj;

    // P is filtered by the F_j: E_j = first j blocks in each degree.
    std::vector<std::map<int, std::size_t>> prefix(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j) {
        std::map<int, std::size_t> sizes;
        for (const auto& [m, M] : out.covers[static_cast<std::size_t>(j)].source.terms()) sizes[m] = M.gens;
        out.layer_sizes.push_back(sizes);
        prefix[static_cast<std::size_t>(j) + 1] = prefix[static_cast<std::size_t>(j)];
        for (const auto& [m, k] : sizes) prefix[static_cast<std::size_t>(j) + 1][m] += k;
    }
    TowerCertificate& cert = out.pn_cert;
    cert.target = P;
    for (int j = 1; j <= n; ++j) {
        Complex Ej(R);
        for (const auto& [m, k] : prefix[static_cast<std::size_t>(j)])
            if (k) Ej.set_term(m, FpModule(R, k));
        for (const auto& [m, k] : prefix[static_cast<std::size_t>(j)]) {
            std::size_t k1 = 0;
            auto it = prefix[static_cast<std::size_t>(j)].find(m + 1);
            if (it != prefix[static_cast<std::size_t>(j)].end()) k1 = it->second;
            Ej.set_diff(m, P.diff(m).slice(0, k, 0, k1));
        }
        TowerLayer layer;
        layer.tri = subcomplex_triangle(Ej, prefix[static_cast<std::size_t>(j) - 1]);
        layer.label = Label::add();
        const Complex& Cj = layer.tri.C;
        AddWitness aw;
        aw.P = Cj;
        for (const auto& [m, M] : Cj.terms()) aw.summands.push_back({m, M.gens});
        aw.i = identity_map(Cj);
        aw.p = identity_map(Cj);
        layer.add = aw;
        cert.expression.push_back(Label::add());
        cert.layers.push_back(layer);
    }
    cert.retract = Retract{FreeModel{identity_map(P), P.empty() ? 0 : P.lo() - 1}, identity_map(P), identity_map(P), {}};
    cert.provenance = "adams filtration of the fiber";
    return out;
}

TrWitness ann_compose(const TriangleCert& tri, const TrWitness& wx, const TrWitness& wz) {
    if (wx.model || wz.model) throw DerivedError("ann_compose: chain-level witnesses required");
    if (wx.X != tri.f.source) throw DerivedError("ann_compose: first witness does not match the triangle");
    if (wz.X != tri.C) throw DerivedError("ann_compose: second witness does not match the triangle");
    const ChainMap& a = tri.f;
    const Complex &X = a.source, &Y = a.target;
    const Ring& R = X.ring();
    const Elem &r = wx.r, &s = wz.r;
    Cone ca = cone(a);
    const Complex& C = ca.cone;
    ChainMap g = compose(ca.inj, tri.alpha);
    DegreeMaps H = htpy_pre(g, wz.homotopy, tri.C);
    DegreeMaps G = htpy_add(R, htpy_scale(R, s, htpy_pre(ca.inj, tri.htpy_cone, C)), htpy_post(H, Y, tri.beta));
    DegreeMaps K;
    for (const auto& [n, Y0] : Y.terms()) {
        Matrix Gn = htpy_at(G, Y, C, n);
        const std::size_t gy1 = Y.gens(n - 1), gx = X.gens(n);
        Matrix GY = Gn.cols_range(0, gy1);
        Matrix GX = Gn.cols_range(gy1, gy1 + gx);
        Matrix k = scale(R, r, GY);
        if (gx && X.gens(n - 1)) k = add(R, k, mul(R, mul(R, GX, htpy_at(wx.homotopy, X, X, n)), a.comp(n - 1)));
        put(K, n, k);
    }
    TrWitness w{Y, R.mul(r, s), std::nullopt, K};
    if (!check_tr(w)) throw DerivedError("ann_compose: composed witness failed to verify");
    return w;
}

ShuffleResult shuffle_left(const TriangleCert& tri, const TrWitness& w, const std::optional<ChainMap>& correction) {
    if (w.model) throw DerivedError("shuffle_left: chain-level witness required");
    const ChainMap& t = tri.f;
    const Complex &T = t.source, &X = t.target;
    if (w.X != T) throw DerivedError("shuffle_left: witness does not match the triangle");
    const Ring& R = X.ring();
    const Elem& r = w.r;
    Complex ct = cone(t).cone;  // (x, tau)
    // h0(x, tau) = r x + tau s t
    ChainMap h0{ct, X, {}};
    for (const auto& [n, M] : ct.terms()) {
        const std::size_t gx = X.gens(n), gt = T.gens(n + 1);
        if (gx == 0) continue;
        Matrix top = scale(R, r, Matrix::identity(R, gx));
        Matrix bot = gt ? mul(R, htpy_at(w.homotopy, T, T, n + 1), t.comp(n)) : Matrix(0, gx);
        h0.set(n, vstack(top, bot));
    }
    if (correction) {
        // any e : ΣT -> X may be added through cone(t) -> ΣT without changing X -> C -> X
        Cone c = cone(t);
        if (correction->source != c.proj.target || correction->target != X)
            throw DerivedError("shuffle_left: correction must be a map ΣT -> X");
        h0 = add(h0, compose(c.proj, *correction));
    }
    ChainMap h = compose(tri.beta, h0);
    ShuffleResult out;
    out.h = h;
    out.tri2 = cone_triangle(h);
    const Complex& ch = out.tri2.C;  // (x, c)
    ChainMap a{T, ch, {}};
    for (const auto& [n, M] : T.terms())
        if (ch.gens(n)) a.set(n, hstack(t.comp(n), Matrix(M.gens, ch.gens(n) - X.gens(n))));
    TriangleCert ta = cone_triangle(a);
    if (auto wa = tr_member_chain(ta.C, r)) {
        out.w2 = ann_compose(ta, w, *wa);
        return out;
    }
    // cone(a) is only homotopy-killed by r on a free model; fall back to a
    // model-level witness for r^2 on cone(h).
    auto wm = tr_member(ch, R.mul(r, r));
    if (!wm) throw DerivedError("shuffle_left: no witness for r^2 on cone(h)");
    out.w2 = *wm;
    return out;
}

ShuffleResult shuffle_right(const TriangleCert& tri, const TrWitness& w) {
    if (w.model) throw DerivedError("shuffle_right: chain-level witness required");
    const ChainMap& t = tri.f;
    const Complex &C = t.source, &X = t.target;
    if (w.X != tri.C) throw DerivedError("shuffle_right: witness does not match the triangle");
    const Ring& R = X.ring();
    const Elem& r = w.r;
    Complex ct = cone(t).cone;  // (x, c)
    // N = r h2 + alpha s beta satisfies r = dN + Nd on cone(t).
    DegreeMaps N = htpy_add(R, htpy_scale(R, r, tri.htpy_cone),
                            htpy_post(htpy_pre(tri.alpha, w.homotopy, tri.C), ct, tri.beta));
    ChainMap h{X, C, {}};
    DegreeMaps B;
    for (const auto& [n, M] : ct.terms()) {
        Matrix Nn = htpy_at(N, ct, ct, n);
        const std::size_t gx = X.gens(n), gc1 = C.gens(n + 1), gx1 = X.gens(n - 1), gc = C.gens(n);
        if (gx && gc) h.set(n, Nn.slice(0, gx, gx1, gx1 + gc));
        if (gc1 && gc) put(B, n + 1, Nn.slice(gx, gx + gc1, gx1, gx1 + gc));
    }
    ChainMap th = compose(t, h);
    if (!is_homotopy(th, scalar_map(C, r), B)) throw DerivedError("shuffle_right: t h is not homotopic to r");

    Octahedron oct = octahedron(t, h);
    const Complex& cth = oct.v.source;  // (y, x), y in C^n, x in C^{n+1}
    Koszul kz = koszul(r, C);
    // theta : K(r,C) -> cone(t h), (y, x) -> (y - x B, x); its inverse adds x B.
    ChainMap theta{kz.K, cth, {}}, theta_inv{cth, kz.K, {}};
    for (const auto& [n, M] : cth.terms()) {
        const std::size_t gy = C.gens(n), gx = C.gens(n + 1);
        Matrix Bn = htpy_at(B, C, C, n + 1);
        if (gx == 0) Bn = Matrix(0, gy);
        theta.set(n, block2(Matrix::identity(R, gy), Matrix(gy, gx), neg(R, Bn), Matrix::identity(R, gx)));
        theta_inv.set(n, block2(Matrix::identity(R, gy), Matrix(gy, gx), Bn, Matrix::identity(R, gx)));
    }
    DegreeMaps wth_h = htpy_post(htpy_pre(theta_inv, kz.witness.homotopy, kz.K), cth, theta);
    TrWitness wth{cth, r, std::nullopt, wth_h};
    if (!check_tr(wth)) throw DerivedError("shuffle_right: transported Koszul witness failed");

    TriangleCert tv = cone_triangle(oct.v);
    auto wv = tr_member_chain(tv.C, r);
    if (!wv) throw DerivedError("shuffle_right: no chain-level witness on cone(v)");
    ShuffleResult out;
    out.h = h;
    out.tri2 = cone_triangle(h);
    out.w2 = ann_compose(tv, wth, *wv);
    return out;
}

}  // namespace ghost
