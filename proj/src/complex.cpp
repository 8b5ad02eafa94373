#include "ghost/complex.hpp"

#include "ghost/linsys.hpp"

#include <algorithm>

namespace ghost {

namespace {

std::pair<int, int> joint_range(const Complex& X, const Complex& Y) {
    if (X.empty() && Y.empty()) return {0, -1};
    if (X.empty()) return {Y.lo(), Y.hi()};
    if (Y.empty()) return {X.lo(), X.hi()};
    return {std::min(X.lo(), Y.lo()), std::max(X.hi(), Y.hi())};
}

Matrix rels_or_empty(const Complex& X, int n) {
    Matrix r = X.rels(n);
    if (r.rows() == 0) return Matrix(0, X.gens(n));
    return r;
}

bool rows_in_rels(const Complex& X, int n, const Matrix& M) {
    if (M.rows() == 0 || M.is_zero()) return true;
    Matrix r = rels_or_empty(X, n);
    if (r.rows() == 0) return false;
    return Span(X.ring(), r).contains_rows(M);
}

Elem sign_pow(const Ring& R, int k) { return (k % 2 == 0) ? R.one() : R.neg(R.one()); }

}  // namespace

Complex zero_complex(const Ring& R) { return Complex(R); }

Complex module_complex(const FpModule& M, int deg) {
    Complex X(M.ring);
    X.set_term(deg, M);
    return X;
}

Complex free_complex(const Ring& R, int deg, std::size_t rank) { return module_complex(FpModule(R, rank), deg); }

std::string complex_failure(const Complex& X) {
    const Ring& R = X.ring();
    for (const auto& [n, d] : X.diffs()) {
        if (d.rows() != X.gens(n) || d.cols() != X.gens(n + 1))
            return "degree " + std::to_string(n) + ": differential has the wrong shape";
    }
    if (X.empty()) return "";
    for (int n = X.lo(); n <= X.hi(); ++n) {
        if (X.gens(n) == 0) continue;
        Matrix d = X.diff(n);
        if (X.gens(n + 1) > 0 && !rows_in_rels(X, n + 1, mul(R, rels_or_empty(X, n), d)))
            return "degree " + std::to_string(n) + ": differential is not well defined";
        if (X.gens(n + 2) > 0 && !rows_in_rels(X, n + 2, mul(R, d, X.diff(n + 1))))
            return "degree " + std::to_string(n) + ": d^" + std::to_string(n + 1) + " d^" +
                   std::to_string(n) + " != 0";
    }
    return "";
}

bool is_complex(const Complex& X) { return complex_failure(X).empty(); }

Complex shift(const Complex& X, int k) {
    const Ring& R = X.ring();
    Complex S(R);
    Elem sg = sign_pow(R, k);
    for (const auto& [n, M] : X.terms()) S.set_term(n - k, M);
    for (const auto& [n, d] : X.diffs()) S.set_diff(n - k, scale(R, sg, d));
    return S;
}

ChainMap shift(const ChainMap& f, int k) {
    ChainMap g{shift(f.source, k), shift(f.target, k), {}};
    for (const auto& [n, m] : f.comps) g.set(n - k, m);
    return g;
}

DegreeMaps shift_homotopy(const Ring& R, const DegreeMaps& h, int k) {
    Elem sg = sign_pow(R, k);
    DegreeMaps out;
    for (const auto& [n, m] : h)
        if (!m.is_zero()) out[n - k] = scale(R, sg, m);
    return out;
}

Complex direct_sum(const Complex& X, const Complex& Y) {
    Complex S(X.ring());
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) + Y.gens(n) == 0) continue;
        S.set_term(n, FpModule(X.ring(), X.gens(n) + Y.gens(n), block_diag(rels_or_empty(X, n), rels_or_empty(Y, n))));
    }
    for (int n = lo; n <= hi; ++n) S.set_diff(n, block_diag(X.diff(n), Y.diff(n)));
    return S;
}

ChainMap identity_map(const Complex& X) {
    ChainMap f{X, X, {}};
    for (const auto& [n, M] : X.terms()) f.set(n, Matrix::identity(X.ring(), M.gens));
    return f;
}

ChainMap zero_map(const Complex& X, const Complex& Y) { return ChainMap{X, Y, {}}; }

ChainMap scalar_map(const Complex& X, const Elem& r) {
    ChainMap f{X, X, {}};
    for (const auto& [n, M] : X.terms()) f.set(n, scale(X.ring(), r, Matrix::identity(X.ring(), M.gens)));
    return f;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    const Ring& R = f.source.ring();
    ChainMap h{f.source, g.target, {}};
    for (const auto& [n, m] : f.comps) h.set(n, mul(R, m, g.comp(n)));
    return h;
}

ChainMap add(const ChainMap& f, const ChainMap& g) {
    const Ring& R = f.source.ring();
    ChainMap h{f.source, f.target, {}};
    auto [lo, hi] = joint_range(f.source, f.target);
    for (int n = lo; n <= hi; ++n) h.set(n, add(R, f.comp(n), g.comp(n)));
    return h;
}

ChainMap sub(const ChainMap& f, const ChainMap& g) {
    const Ring& R = f.source.ring();
    ChainMap h{f.source, f.target, {}};
    auto [lo, hi] = joint_range(f.source, f.target);
    for (int n = lo; n <= hi; ++n) h.set(n, sub(R, f.comp(n), g.comp(n)));
    return h;
}

ChainMap scale(const Elem& r, const ChainMap& f) {
    const Ring& R = f.source.ring();
    ChainMap h{f.source, f.target, {}};
    for (const auto& [n, m] : f.comps) h.set(n, scale(R, r, m));
    return h;
}

ChainMap with_source(const ChainMap& f, const Complex& X) { return ChainMap{X, f.target, f.comps}; }

std::string chain_map_failure(const ChainMap& f) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    for (const auto& [n, m] : f.comps)
        if (m.rows() != X.gens(n) || m.cols() != Y.gens(n))
            return "degree " + std::to_string(n) + ": component has the wrong shape";
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) == 0) continue;
        Matrix F = f.comp(n);
        if (Y.gens(n) > 0 && !rows_in_rels(Y, n, mul(R, rels_or_empty(X, n), F)))
            return "degree " + std::to_string(n) + ": component is not well defined";
        if (Y.gens(n + 1) > 0) {
            Matrix lhs = mul(R, X.diff(n), f.comp(n + 1));
            Matrix rhs = mul(R, F, Y.diff(n));
            if (!rows_in_rels(Y, n + 1, sub(R, lhs, rhs)))
                return "degree " + std::to_string(n) + ": does not commute with the differential";
        }
    }
    return "";
}

bool is_chain_map(const ChainMap& f) { return chain_map_failure(f).empty(); }

bool maps_equal(const ChainMap& f, const ChainMap& g) {
    const Ring& R = f.source.ring();
    auto [lo, hi] = joint_range(f.source, f.target);
    for (int n = lo; n <= hi; ++n) {
        if (f.source.gens(n) == 0 || f.target.gens(n) == 0) continue;
        if (!rows_in_rels(f.target, n, sub(R, f.comp(n), g.comp(n)))) return false;
    }
    return true;
}

ChainMap homotopy_boundary(const Complex& X, const Complex& Y, const DegreeMaps& h) {
    const Ring& R = X.ring();
    ChainMap b{X, Y, {}};
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) == 0 || Y.gens(n) == 0) continue;
        Matrix dh = mul(R, htpy_comp(h, X, Y, n), Y.diff(n - 1));
        Matrix hd = mul(R, X.diff(n), htpy_comp(h, X, Y, n + 1));
        b.set(n, add(R, dh, hd));
    }
    return b;
}

std::string homotopy_failure(const ChainMap& f, const ChainMap& g, const DegreeMaps& h) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    for (const auto& [n, m] : h)
        if (m.rows() != X.gens(n) || m.cols() != Y.gens(n - 1))
            return "degree " + std::to_string(n) + ": homotopy component has the wrong shape";
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi + 1; ++n) {
        if (X.gens(n) == 0) continue;
        if (Y.gens(n - 1) > 0 && !rows_in_rels(Y, n - 1, mul(R, rels_or_empty(X, n), htpy_comp(h, X, Y, n))))
            return "degree " + std::to_string(n) + ": homotopy is not well defined";
    }
    ChainMap b = homotopy_boundary(X, Y, h);
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) == 0 || Y.gens(n) == 0) continue;
        Matrix diff = sub(R, sub(R, f.comp(n), g.comp(n)), b.comp(n));
        if (!rows_in_rels(Y, n, diff)) return "degree " + std::to_string(n) + ": f - g != dh + hd";
    }
    return "";
}

bool is_homotopy(const ChainMap& f, const ChainMap& g, const DegreeMaps& h) {
    return homotopy_failure(f, g, h).empty();
}

bool is_null_homotopy(const ChainMap& f, const DegreeMaps& h) {
    return is_homotopy(f, zero_map(f.source, f.target), h);
}

DegreeMaps htpy_pre(const ChainMap& a, const DegreeMaps& h, const Complex& Y) {
    const Ring& R = a.source.ring();
    DegreeMaps out;
    for (const auto& [n, m] : h) {
        Matrix c = mul(R, a.comp(n), m);
        (void)Y;
        if (!c.is_zero()) out[n] = c;
    }
    return out;
}

DegreeMaps htpy_post(const DegreeMaps& h, const Complex& X, const ChainMap& b) {
    const Ring& R = X.ring();
    DegreeMaps out;
    for (const auto& [n, m] : h) {
        Matrix c = mul(R, m, b.comp(n - 1));
        if (!c.is_zero()) out[n] = c;
    }
    return out;
}

DegreeMaps htpy_add(const Ring& R, const DegreeMaps& a, const DegreeMaps& b) {
    DegreeMaps out = a;
    for (const auto& [n, m] : b) {
        auto it = out.find(n);
        if (it == out.end())
            out[n] = m;
        else
            it->second = add(R, it->second, m);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

DegreeMaps htpy_scale(const Ring& R, const Elem& r, const DegreeMaps& h) {
    DegreeMaps out;
    for (const auto& [n, m] : h) {
        Matrix c = scale(R, r, m);
        if (!c.is_zero()) out[n] = c;
    }
    return out;
}

Cone cone(const ChainMap& f) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    Complex C(R);
    auto [lo0, hi0] = joint_range(X, Y);
    const int lo = lo0 - 1, hi = hi0;
    for (int n = lo; n <= hi; ++n) {
        std::size_t gy = Y.gens(n), gx = X.gens(n + 1);
        if (gy + gx == 0) continue;
        C.set_term(n, FpModule(R, gy + gx, block_diag(rels_or_empty(Y, n), rels_or_empty(X, n + 1))));
    }
    for (int n = lo; n <= hi; ++n) {
        // rows (y, x), columns (y', x') of degree n+1
        Matrix d = block2(Y.diff(n), Matrix(Y.gens(n), X.gens(n + 2)), f.comp(n + 1),
                          neg(R, X.diff(n + 1)));
        C.set_diff(n, d);
    }
    Complex SX = shift(X, 1);
    ChainMap inj{Y, C, {}}, proj{C, SX, {}};
    for (int n = lo; n <= hi; ++n) {
        std::size_t gy = Y.gens(n), gx = X.gens(n + 1);
        if (gy) inj.set(n, hstack(Matrix::identity(R, gy), Matrix(gy, gx)));
        if (gx) proj.set(n, vstack(Matrix(gy, gx), Matrix::identity(R, gx)));
    }
    return {C, inj, proj};
}

Cohomology cohomology_data(const Complex& X, int n) {
    const Ring& R = X.ring();
    const std::size_t g = X.gens(n);
    Cohomology out;
    Matrix bnd = vstack(X.diff(n - 1), rels_or_empty(X, n));
    out.boundaries = bnd;
    if (g == 0) {
        out.H = out.Z = out.B = FpModule(R, 0);
        out.cycles = Matrix(0, 0);
        return out;
    }
    Matrix cyc;
    if (X.gens(n + 1) == 0) {
        cyc = Matrix::identity(R, g);
    } else {
        Matrix K = kernel(R, vstack(X.diff(n), rels_or_empty(X, n + 1)));
        cyc = K.rows() ? K.cols_range(0, g) : Matrix(0, g);
    }
    out.cycles = cyc;
    out.H = subquotient(R, cyc, bnd);
    out.Z = subquotient(R, cyc, rels_or_empty(X, n));
    out.B = subquotient(R, X.diff(n - 1), rels_or_empty(X, n));
    return out;
}

FpModule cohomology(const Complex& X, int n) { return cohomology_data(X, n).H; }

ModuleMap induced_map(const ChainMap& f, int n) {
    const Ring& R = f.source.ring();
    Cohomology hx = cohomology_data(f.source, n), hy = cohomology_data(f.target, n);
    Matrix M(hx.cycles.rows(), hy.cycles.rows());
    if (hx.cycles.rows() > 0 && f.target.gens(n) > 0) {
        Matrix img = mul(R, hx.cycles, f.comp(n));
        Matrix basis = vstack(hy.cycles.rows() ? hy.cycles : Matrix(0, f.target.gens(n)), hy.boundaries);
        Span s(R, basis, true);
        for (std::size_t i = 0; i < img.rows(); ++i) {
            auto c = s.express(img.row(i));
            if (!c) throw ComplexError("induced_map: image of a cocycle is not a cocycle");
            for (std::size_t j = 0; j < hy.cycles.rows(); ++j) M(i, j) = (*c)[j];
        }
    }
    return {hx.H, hy.H, M};
}

bool is_exact_at(const Complex& X, int n) {
    if (X.gens(n) == 0) return true;
    Cohomology c = cohomology_data(X, n);
    if (c.cycles.rows() == 0) return true;
    if (c.boundaries.rows() == 0) return c.cycles.is_zero();
    return Span(X.ring(), c.boundaries).contains_rows(c.cycles);
}

std::optional<DegreeMaps> solve_homotopy(const ChainMap& f, const ChainMap& g) {
    const Complex &X = f.source, &Y = f.target;
    const Ring& R = X.ring();
    LinearSystem sys(R);
    std::map<int, int> var;
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi + 1; ++n)
        if (X.gens(n) > 0 && Y.gens(n - 1) > 0) var[n] = sys.add_block(X.gens(n), Y.gens(n - 1));
    for (int n = lo; n <= hi; ++n) {
        if (X.gens(n) == 0 || Y.gens(n) == 0) continue;
        int eq = sys.add_equation(X.gens(n), Y.gens(n));
        if (var.count(n)) sys.add_term(eq, std::nullopt, var[n], Y.diff(n - 1));
        if (var.count(n + 1)) sys.add_term(eq, X.diff(n), var[n + 1], std::nullopt);
        sys.add_slack(eq, rels_or_empty(Y, n));
        sys.set_rhs(eq, sub(R, f.comp(n), g.comp(n)));
    }
    for (const auto& [n, v] : var) {
        Matrix rx = rels_or_empty(X, n);
        if (rx.rows() == 0) continue;
        int eq = sys.add_equation(rx.rows(), Y.gens(n - 1));
        sys.add_term(eq, rx, v, std::nullopt);
        sys.add_slack(eq, rels_or_empty(Y, n - 1));
    }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    DegreeMaps h;
    for (const auto& [n, v] : var) {
        Matrix m = sys.value(*sol, v);
        if (!m.is_zero()) h[n] = m;
    }
    return h;
}

std::optional<DegreeMaps> null_homotopy(const ChainMap& f) {
    return solve_homotopy(f, zero_map(f.source, f.target));
}

std::vector<ChainMap> chain_map_space(const Complex& X, const Complex& Y) {
    const Ring& R = X.ring();
    LinearSystem sys(R);
    std::map<int, int> var;
    auto [lo, hi] = joint_range(X, Y);
    for (int n = lo; n <= hi; ++n)
        if (X.gens(n) > 0 && Y.gens(n) > 0) var[n] = sys.add_block(X.gens(n), Y.gens(n));
    for (int n = lo - 1; n <= hi; ++n) {
        if (X.gens(n) == 0 || Y.gens(n + 1) == 0) continue;
        if (!var.count(n) && !var.count(n + 1)) continue;
        int eq = sys.add_equation(X.gens(n), Y.gens(n + 1));
        if (var.count(n + 1)) sys.add_term(eq, X.diff(n), var[n + 1], std::nullopt);
        if (var.count(n)) sys.add_term(eq, std::nullopt, var[n], neg(R, Y.diff(n)));
        sys.add_slack(eq, rels_or_empty(Y, n + 1));
    }
    for (const auto& [n, v] : var) {
        Matrix rx = rels_or_empty(X, n);
        if (rx.rows() == 0) continue;
        int eq = sys.add_equation(rx.rows(), Y.gens(n));
        sys.add_term(eq, rx, v, std::nullopt);
        sys.add_slack(eq, rels_or_empty(Y, n));
    }
    std::vector<ChainMap> out;
    for (const auto& sol : sys.nullspace()) {
        ChainMap f{X, Y, {}};
        for (const auto& [n, v] : var) f.set(n, sys.value(sol, v));
        if (!maps_equal(f, zero_map(X, Y))) out.push_back(f);
    }
    return out;
}

bool is_termwise_free(const Complex& X) {
    for (const auto& [n, M] : X.terms())
        if (!M.is_free()) return false;
    return true;
}

namespace {

// Adds P^n so that cone(pi) becomes exact in degree n.
void kill_cycles(const Complex& X, Complex& P, ChainMap& pi, int n) {
    const Ring& R = X.ring();
    const std::size_t gx = X.gens(n), gp = P.gens(n + 1);
    if (gx + gp == 0) return;
    const std::size_t cx = X.gens(n + 1), cp = P.gens(n + 2);
    Matrix cyc;
    if (cx + cp == 0) {
        cyc = Matrix::identity(R, gx + gp);
    } else {
        Matrix top = hstack(X.diff(n), Matrix(gx, cp));
        Matrix mid = hstack(pi.comp(n + 1), P.diff(n + 1));
        Matrix rx = rels_or_empty(X, n + 1);
        Matrix bot = hstack(rx, Matrix(rx.rows(), cp));
        Matrix K = kernel(R, vstack(vstack(top, mid), bot));
        cyc = K.rows() ? K.cols_range(0, gx + gp) : Matrix(0, gx + gp);
    }
    Matrix bx = vstack(X.diff(n - 1), rels_or_empty(X, n));
    Matrix chosen = hstack(bx, Matrix(bx.rows(), gp));
    std::size_t base = chosen.rows();
    for (std::size_t i = 0; i < cyc.rows(); ++i) {
        auto row = cyc.row(i);
        bool zero = std::all_of(row.begin(), row.end(), [](const Elem& e) { return sgn(e) == 0; });
        if (zero) continue;
        if (chosen.rows() > 0 && Span(R, chosen).contains(row)) continue;
        chosen.append_row(row);
    }
    const std::size_t k = chosen.rows() - base;
    if (k == 0) return;
    Matrix gensm = chosen.rows_range(base, chosen.rows());
    P.set_term(n, FpModule(R, k));
    P.set_diff(n, neg(R, gensm.cols_range(gx, gx + gp)));
    pi.source = P;
    pi.set(n, gensm.cols_range(0, gx));
}

}  // namespace

FreeModel deepen(const FreeModel& m, int floor) {
    if (floor >= m.floor) return m;
    FreeModel out = m;
    out.floor = floor;
    const Complex& X = m.base();
    if (is_termwise_free(X) && m.model() == X) return out;
    Complex P = m.model();
    ChainMap pi = m.pi;
    for (int n = m.floor - 1; n >= floor; --n) kill_cycles(X, P, pi, n);
    pi.source = P;
    out.pi = pi;
    return out;
}

FreeModel free_model(const Complex& X, int floor) {
    if (is_termwise_free(X)) return FreeModel{identity_map(X), floor};
    Complex P(X.ring());
    FreeModel start{ChainMap{P, X, {}}, X.hi() + 1};
    return deepen(start, floor);
}

namespace {

struct Flattener {
    std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> blocks;
    std::size_t size = 0;

    Flattener(const Complex& X, const Complex& Y) {
        auto [lo, hi] = joint_range(X, Y);
        for (int n = lo; n <= hi; ++n)
            if (X.gens(n) > 0 && Y.gens(n) > 0) {
                blocks.push_back({n, {X.gens(n), Y.gens(n)}});
                size += X.gens(n) * Y.gens(n);
            }
    }
    std::vector<Elem> flatten(const ChainMap& f) const {
        std::vector<Elem> v;
        v.reserve(size);
        for (const auto& [n, sh] : blocks) {
            Matrix m = f.comp(n);
            v.insert(v.end(), m.data().begin(), m.data().end());
        }
        return v;
    }
    ChainMap unflatten(const Complex& X, const Complex& Y, const std::vector<Elem>& v) const {
        ChainMap f{X, Y, {}};
        std::size_t off = 0;
        for (const auto& [n, sh] : blocks) {
            std::vector<Elem> e(v.begin() + static_cast<long>(off), v.begin() + static_cast<long>(off + sh.first * sh.second));
            f.set(n, Matrix(sh.first, sh.second, e));
            off += sh.first * sh.second;
        }
        return f;
    }
};

}  // namespace

DerivedHom hom_derived(const Complex& X, const Complex& Y, int n) {
    const Ring& R = X.ring();
    if (!(R == Y.ring())) throw ComplexError("hom_derived: ring mismatch");
    Complex Yn = shift(Y, n);
    DerivedHom out;
    if (Yn.empty() || X.empty()) {
        out.group = FpModule(R, 0);
        out.model = free_model(X, X.empty() ? 0 : X.lo());
        return out;
    }
    int floor = Yn.lo() - 1;
    out.model = free_model(X, std::min(floor, X.empty() ? floor : X.lo()));
    const Complex& F = out.model.model();
    Flattener fl(F, Yn);
    if (fl.size == 0) {
        out.group = FpModule(R, 0);
        return out;
    }
    Matrix Z(0, fl.size);
    for (const auto& c : chain_map_space(F, Yn)) Z.append_row(fl.flatten(c));
    Matrix B(0, fl.size);
    auto [lo, hi] = joint_range(F, Yn);
    for (int m = lo; m <= hi + 1; ++m) {
        if (F.gens(m) == 0 || Yn.gens(m - 1) == 0) continue;
        for (std::size_t i = 0; i < F.gens(m); ++i)
            for (std::size_t j = 0; j < Yn.gens(m - 1); ++j) {
                Matrix e(F.gens(m), Yn.gens(m - 1));
                e(i, j) = R.one();
                DegreeMaps h{{m, e}};
                B.append_row(fl.flatten(homotopy_boundary(F, Yn, h)));
            }
    }
    for (const auto& [m, sh] : fl.blocks) {
        Matrix r = Yn.rels(m);
        for (std::size_t i = 0; i < sh.first; ++i)
            for (std::size_t k = 0; k < r.rows(); ++k) {
                ChainMap f{F, Yn, {}};
                Matrix e(sh.first, sh.second);
                for (std::size_t j = 0; j < sh.second; ++j) e(i, j) = r(k, j);
                f.set(m, e);
                B.append_row(fl.flatten(f));
            }
    }
    Matrix G(0, fl.size);
    if (Z.rows() > 0) {
        Matrix Zc = howell(R, Z, false).H;
        Span bspan(R, B);
        for (std::size_t i = 0; i < Zc.rows(); ++i)
            if (!bspan.contains(Zc.row(i))) G.append_row(Zc.row(i));
    }
    out.group = subquotient(R, G, B);
    for (std::size_t i = 0; i < G.rows(); ++i) out.reps.push_back(fl.unflatten(F, Yn, G.row(i)));
    return out;
}

std::optional<DegreeMaps> eq_in_derived(const ChainMap& f, const ChainMap& g) { return solve_homotopy(f, g); }

}  // namespace ghost
