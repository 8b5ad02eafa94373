#include "ghost/verify.hpp"

#include "ghost/linalg.hpp"

#include <algorithm>
#include <stdexcept>

// Deliberately self-contained: nothing from complex/derived is used here, so
// a bug in a construction cannot hide behind the same bug in its check.

namespace ghost {

namespace {

struct Fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Fail(what);
}

std::string deg(int n) { return " in degree " + std::to_string(n); }

Matrix rel(const Complex& X, int n) {
    Matrix r = X.rels(n);
    return r.rows() ? r : Matrix(0, X.gens(n));
}

// rows of M lie in the row span of S
bool in_span(const Ring& R, const Matrix& M, const Matrix& S) {
    if (M.rows() == 0 || M.is_zero()) return true;
    if (S.rows() == 0) return false;
    return Span(R, S).contains_rows(M);
}

std::pair<int, int> range(std::initializer_list<const Complex*> cs) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const Complex* c : cs) {
        if (c->empty()) continue;
        lo = any ? std::min(lo, c->lo()) : c->lo();
        hi = any ? std::max(hi, c->hi()) : c->hi();
        any = true;
    }
    if (!any) return {0, -1};
    return {lo - 2, hi + 2};
}

Matrix comp(const ChainMap& f, int n) {
    Matrix m = f.comp(n);
    require(m.rows() == f.source.gens(n) && m.cols() == f.target.gens(n), "map component has the wrong shape" + deg(n));
    return m;
}

Matrix hcomp(const DegreeMaps& h, const Complex& X, const Complex& Y, int n) {
    Matrix m = htpy_comp(h, X, Y, n);
    require(m.rows() == X.gens(n) && m.cols() == Y.gens(n - 1), "homotopy component has the wrong shape" + deg(n));
    return m;
}

void check_complex(const Complex& X, const std::string& name) {
    const Ring& R = X.ring();
    for (const auto& [n, M] : X.terms()) require(M.rels.cols() == M.gens, name + ": relation width" + deg(n));
    for (const auto& [n, d] : X.diffs())
        require(d.rows() == X.gens(n) && d.cols() == X.gens(n + 1), name + ": differential shape" + deg(n));
    auto [lo, hi] = range({&X});
    for (int n = lo; n <= hi; ++n) {
        if (!X.gens(n) || !X.gens(n + 1)) continue;
        Matrix d = X.diff(n);
        require(in_span(R, mul(R, rel(X, n), d), rel(X, n + 1)), name + ": differential ill-defined" + deg(n));
        if (X.gens(n + 2))
            require(in_span(R, mul(R, d, X.diff(n + 1)), rel(X, n + 2)), name + ": d.d != 0" + deg(n));
    }
}

void check_map(const ChainMap& f, const std::string& name) {
    const Ring& R = f.source.ring();
    const Complex &X = f.source, &Y = f.target;
    require(X.ring() == Y.ring(), name + ": ring mismatch");
    auto [lo, hi] = range({&X, &Y});
    for (int n = lo; n <= hi; ++n) {
        Matrix fn = comp(f, n);
        if (!X.gens(n) || !Y.gens(n)) {
            require(fn.is_zero(), name + ": nonzero component into an empty term" + deg(n));
            continue;
        }
        require(in_span(R, mul(R, rel(X, n), fn), rel(Y, n)), name + ": ill-defined on relations" + deg(n));
    }
    for (int n = lo; n <= hi; ++n) {
        if (!X.gens(n) || !Y.gens(n + 1)) continue;
        Matrix lhs = mul(R, X.diff(n), comp(f, n + 1));
        Matrix rhs = mul(R, comp(f, n), Y.diff(n));
        require(in_span(R, sub(R, lhs, rhs), rel(Y, n + 1)), name + ": does not commute with d" + deg(n));
    }
}

// f - g = h d + d h, modulo the target relations
void check_homotopy(const ChainMap& f, const ChainMap& g, const DegreeMaps& h, const std::string& name) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    require(g.source == X && g.target == Y, name + ": endpoints differ");
    for (const auto& [n, m] : h) require(X.gens(n) > 0 && Y.gens(n - 1) > 0, name + ": component outside the complexes" + deg(n));
    auto [lo, hi] = range({&X, &Y});
    for (int n = lo; n <= hi; ++n) {
        if (!X.gens(n)) continue;
        Matrix hn = hcomp(h, X, Y, n);
        if (Y.gens(n - 1)) require(in_span(R, mul(R, rel(X, n), hn), rel(Y, n - 1)), name + ": homotopy ill-defined" + deg(n));
        if (!Y.gens(n)) continue;
        Matrix diff = sub(R, comp(f, n), comp(g, n));
        Matrix dh(X.gens(n), Y.gens(n));
        if (Y.gens(n - 1)) dh = add(R, dh, mul(R, hn, Y.diff(n - 1)));
        if (X.gens(n + 1)) dh = add(R, dh, mul(R, X.diff(n), hcomp(h, X, Y, n + 1)));
        require(in_span(R, sub(R, diff, dh), rel(Y, n)), name + ": homotopy identity fails" + deg(n));
    }
}

ChainMap identity(const Complex& X) {
    ChainMap f{X, X, {}};
    for (const auto& [n, M] : X.terms()) f.set(n, Matrix::identity(X.ring(), M.gens));
    return f;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    const Ring& R = f.source.ring();
    ChainMap h{f.source, g.target, {}};
    for (const auto& [n, M] : f.source.terms()) {
        if (!g.target.gens(n)) continue;
        h.set(n, mul(R, comp(f, n), comp(g, n)));
    }
    return h;
}

ChainMap scaled(const Elem& r, const ChainMap& f) {
    ChainMap g{f.source, f.target, {}};
    for (const auto& [n, m] : f.comps) g.set(n, scale(f.source.ring(), r, m));
    return g;
}

Complex cone_of(const ChainMap& f) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    Complex C(R);
    auto [lo, hi] = range({&X, &Y});
    for (int n = lo; n <= hi; ++n) {
        const std::size_t gy = Y.gens(n), gx = X.gens(n + 1);
        if (gy + gx) C.set_term(n, FpModule(R, gy + gx, block_diag(rel(Y, n), rel(X, n + 1))));
    }
    for (int n = lo; n <= hi; ++n)
        C.set_diff(n, block2(Y.diff(n), Matrix(Y.gens(n), X.gens(n + 2)), comp(f, n + 1), neg(R, X.diff(n + 1))));
    return C;
}

bool exact_at(const Complex& X, int n) {
    const Ring& R = X.ring();
    const std::size_t g = X.gens(n);
    if (!g) return true;
    // x is a cocycle iff x d^n lies in the relations of X^{n+1}: kernel of [d^n ; R^{n+1}].
    Matrix stacked = vstack(X.diff(n), rel(X, n + 1));
    Matrix K = kernel(R, stacked);
    Matrix cycles = K.rows() ? K.cols_range(0, g) : Matrix(0, g);
    return in_span(R, cycles, vstack(X.diff(n - 1), rel(X, n)));
}

bool termwise_free(const Complex& X) {
    for (const auto& [n, M] : X.terms())
        if (!M.rels.is_zero()) return false;
    return true;
}

void check_model(const FreeModel& m, const Complex& X, const std::string& name) {
    require(m.pi.target == X, name + ": model maps to the wrong complex");
    require(termwise_free(m.pi.source), name + ": model is not termwise free");
    check_complex(m.pi.source, name + " model");
    check_map(m.pi, name + " model map");
    Complex C = cone_of(m.pi);
    for (int n = m.floor; n <= C.hi(); ++n) require(exact_at(C, n), name + ": model is not a quasi-isomorphism" + deg(n));
}

void check_triangle(const TriangleCert& t) {
    check_complex(t.f.source, "A");
    check_complex(t.f.target, "B");
    check_complex(t.C, "cofiber");
    check_map(t.f, "f");
    Complex cf = cone_of(t.f);
    require(t.alpha.source == cf && t.alpha.target == t.C, "alpha: wrong endpoints");
    require(t.beta.source == t.C && t.beta.target == cf, "beta: wrong endpoints");
    check_map(t.alpha, "alpha");
    check_map(t.beta, "beta");
    check_homotopy(identity(cf), compose(t.alpha, t.beta), t.htpy_cone, "cone comparison");
    check_homotopy(identity(t.C), compose(t.beta, t.alpha), t.htpy_c, "cofiber comparison");
}

void check_tr(const TrWitness& w) {
    check_complex(w.X, "T-object");
    const Ring& R = w.X.ring();
    require(R.reduce(w.r) == w.r, "T-witness scalar not canonical");
    if (!w.model) {
        ChainMap r{w.X, w.X, {}};
        for (const auto& [n, M] : w.X.terms()) r.set(n, scale(R, w.r, Matrix::identity(R, M.gens)));
        check_homotopy(r, ChainMap{w.X, w.X, {}}, w.homotopy, "T-witness");
        return;
    }
    const FreeModel& m = *w.model;
    require(w.X.empty() || m.floor <= w.X.lo() - 1, "T-witness model floor too high");
    check_model(m, w.X, "T-witness");
    ChainMap rp = scaled(w.r, m.pi);
    check_homotopy(rp, ChainMap{m.pi.source, w.X, {}}, w.homotopy, "T-witness");
}

void check_add(const AddWitness& w) {
    const Ring& R = w.P.ring();
    check_complex(w.P, "ADD-object");
    std::map<int, std::size_t> sizes;
    for (const auto& [k, a] : w.summands) sizes[k] += a;
    Complex S(R);
    for (const auto& [k, a] : sizes) S.set_term(k, FpModule(R, a));
    require(w.i.source == w.P && w.i.target == S, "ADD-witness: i has wrong endpoints");
    require(w.p.source == S && w.p.target == w.P, "ADD-witness: p has wrong endpoints");
    check_map(w.i, "ADD-witness i");
    check_map(w.p, "ADD-witness p");
    check_homotopy(identity(w.P), compose(w.i, w.p), w.homotopy, "ADD-witness");
}

void check_ghost(const GhostCertificate& g) {
    const ChainMap& f = g.map;
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    check_complex(X, "source");
    check_complex(Y, "target");
    check_map(f, "ghost");
    for (const auto& [n, M] : X.terms()) {
        auto it = g.cycles.find(n);
        Matrix Z = it == g.cycles.end() ? Matrix(0, M.gens) : it->second;
        require(Z.cols() == M.gens, "cycle width" + deg(n));
        require(in_span(R, mul(R, Z, X.diff(n)), rel(X, n + 1)), "listed cycle is not a cocycle" + deg(n));
        Matrix K = kernel(R, vstack(X.diff(n), rel(X, n + 1)));
        Matrix all = K.rows() ? K.cols_range(0, M.gens) : Matrix(0, M.gens);
        require(in_span(R, all, vstack(Z, vstack(X.diff(n - 1), rel(X, n)))), "listed cycles miss a cohomology class" + deg(n));
        if (!Y.gens(n) || Z.rows() == 0) continue;
        auto wt = g.witnesses.find(n);
        require(wt != g.witnesses.end(), "missing witness" + deg(n));
        Matrix bnd = vstack(Y.diff(n - 1), rel(Y, n));
        require(wt->second.rows() == Z.rows() && wt->second.cols() == bnd.rows(), "witness shape" + deg(n));
        require(mul(R, Z, comp(f, n)) == mul(R, wt->second, bnd), "cycle image is not a boundary" + deg(n));
    }
}

template <class F>
VerifyResult run(F&& body, const std::string& prefix = "") {
    try {
        body();
        return {};
    } catch (const Fail& e) {
        return {false, prefix + e.what()};
    } catch (const std::exception& e) {
        return {false, prefix + "malformed data (" + e.what() + ")"};
    }
}

}  // namespace

VerifyResult verify_triangle(const TriangleCert& t) { return run([&] { check_triangle(t); }); }
VerifyResult verify_tr(const TrWitness& w) { return run([&] { check_tr(w); }); }
VerifyResult verify_add(const AddWitness& w) { return run([&] { check_add(w); }); }
VerifyResult verify_ghost(const GhostCertificate& g) { return run([&] { check_ghost(g); }); }

VerifyResult verify_tower(const TowerCertificate& cert) {
    if (cert.expression.size() != cert.layers.size())
        return {false, "expression: " + std::to_string(cert.expression.size()) + " labels for " +
                           std::to_string(cert.layers.size()) + " layers"};
    const Ring& R = cert.target.ring();
    for (std::size_t j = 0; j < cert.layers.size(); ++j) {
        const TowerLayer& L = cert.layers[j];
        VerifyResult v = run(
            [&] {
                require(L.label == cert.expression[j], "label differs from the expression");
                require(L.tri.f.source.ring() == R, "ring mismatch");
                if (j == 0)
                    require(L.tri.f.source.empty(), "first layer must start from 0");
                else
                    require(L.tri.f.source == cert.layers[j - 1].tri.f.target, "source is not the previous stage");
                check_triangle(L.tri);
                if (L.label.kind == Label::Kind::T) {
                    require(L.tr.has_value() && !L.add.has_value(), "T layer needs exactly a T-witness");
                    require(L.tr->r == L.label.r, "T-witness scalar differs from the label");
                    require(L.tr->X == L.tri.C, "T-witness is for a different complex");
                    check_tr(*L.tr);
                } else {
                    require(L.add.has_value() && !L.tr.has_value(), "ADD layer needs exactly an ADD-witness");
                    require(L.add->P == L.tri.C, "ADD-witness is for a different complex");
                    check_add(*L.add);
                }
            },
            "layer " + std::to_string(j + 1) + ": ");
        if (!v.ok) return v;
    }
    const Complex Ek = cert.layers.empty() ? Complex(R) : cert.layers.back().tri.f.target;
    const Retract& rt = cert.retract;
    return run(
        [&] {
            const Complex& X = cert.target;
            check_complex(X, "target");
            check_model(rt.model, X, "retract");
            require(X.empty() || rt.model.floor < X.lo(), "model floor not below the target");
            require(Ek.empty() || rt.model.floor < Ek.lo(), "model floor not below the last stage");
            require(rt.i.source == rt.model.pi.source && rt.i.target == Ek, "i has wrong endpoints");
            require(rt.p.source == Ek && rt.p.target == X, "p has wrong endpoints");
            check_map(rt.i, "i");
            check_map(rt.p, "p");
            check_homotopy(compose(rt.i, rt.p), rt.model.pi, rt.homotopy, "i.p vs model map");
        },
        "retract: ");
}

}  // namespace ghost
