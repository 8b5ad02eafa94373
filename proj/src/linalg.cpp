#include "ghost/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ghost {

namespace {

using Row = std::vector<Elem>;

struct WorkRow {
    Row a;  // entries
    Row u;  // transform coefficients (empty if not tracked)
};

bool row_zero(const Row& r) {
    for (const auto& x : r)
        if (sgn(x) != 0) return false;
    return true;
}

// r := s*r
void row_scale(const Ring& R, Row& r, const Elem& s) {
    for (auto& x : r)
        if (sgn(x) != 0) x = R.mul(s, x);
}

// r := r + s*p
void row_axpy(const Ring& R, Row& r, const Elem& s, const Row& p, std::size_t from = 0) {
    if (sgn(s) == 0) return;
    for (std::size_t j = from; j < p.size(); ++j)
        if (sgn(p[j]) != 0) r[j] = R.add(r[j], R.mul(s, p[j]));
}

// (x, y) := (s x + t y, u x + v y)
void row_combine(const Ring& R, Row& x, Row& y, const Gcdex& g, std::size_t from) {
    for (std::size_t j = from; j < x.size(); ++j) {
        if (sgn(x[j]) == 0 && sgn(y[j]) == 0) continue;
        Elem nx = R.add(R.mul(g.s, x[j]), R.mul(g.t, y[j]));
        Elem ny = R.add(R.mul(g.u, x[j]), R.mul(g.v, y[j]));
        x[j] = std::move(nx);
        y[j] = std::move(ny);
    }
}

}  // namespace

HowellResult howell(const Ring& R, const Matrix& A, bool with_transform) {
    const std::size_t m = A.rows(), n = A.cols();
    std::vector<WorkRow> rest;
    rest.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        WorkRow w{A.row(i), {}};
        for (auto& x : w.a) x = R.reduce(x);
        if (with_transform) {
            w.u.assign(m, Elem(0));
            w.u[i] = R.one();
        }
        if (!row_zero(w.a)) rest.push_back(std::move(w));
    }

    std::vector<WorkRow> piv;
    std::vector<std::size_t> pcol;

    for (std::size_t j = 0; j < n && !rest.empty(); ++j) {
        std::optional<WorkRow> p;
        std::vector<WorkRow> next;
        next.reserve(rest.size() + 1);
        for (auto& w : rest) {
            if (sgn(w.a[j]) == 0) {
                next.push_back(std::move(w));
                continue;
            }
            if (!p) {
                p = std::move(w);
                continue;
            }
            Gcdex g = R.gcdex(p->a[j], w.a[j]);
            row_combine(R, p->a, w.a, g, j);
            if (with_transform) row_combine(R, p->u, w.u, g, 0);
            if (!row_zero(w.a)) next.push_back(std::move(w));
        }
        rest = std::move(next);
        if (!p) continue;

        Elem unit = R.normalizing_unit(p->a[j]);
        if (!R.is_one(unit)) {
            row_scale(R, p->a, unit);
            if (with_transform) row_scale(R, p->u, unit);
        }
        // Keep the span closed under annihilators of the pivot.
        Elem an = R.ann(p->a[j]);
        if (sgn(an) != 0) {
            WorkRow w{p->a, p->u};
            row_scale(R, w.a, an);
            if (with_transform) row_scale(R, w.u, an);
            if (!row_zero(w.a)) rest.push_back(std::move(w));
        }
        piv.push_back(std::move(*p));
        pcol.push_back(j);
    }

    // Reduce entries above each pivot.
    for (std::size_t k = 0; k < piv.size(); ++k) {
        const std::size_t j = pcol[k];
        const Elem& d = piv[k].a[j];
        for (std::size_t i = 0; i < k; ++i) {
            Elem& x = piv[i].a[j];
            if (sgn(x) == 0) continue;
            Elem r = R.remainder(x, d);
            if (r == x) continue;
            auto q = R.divide(R.sub(x, r), d);
            if (!q) throw std::logic_error("howell: remainder not a multiple of the pivot");
            Elem nq = R.neg(*q);
            Row prow = piv[k].a;
            row_axpy(R, piv[i].a, nq, prow, j);
            if (with_transform) row_axpy(R, piv[i].u, nq, piv[k].u);
        }
    }

    HowellResult out;
    out.H = Matrix(piv.size(), n);
    if (with_transform) out.U = Matrix(piv.size(), m);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        out.H.set_row(k, piv[k].a);
        if (with_transform) out.U.set_row(k, piv[k].u);
    }
    out.pivots = std::move(pcol);
    return out;
}

Span::Span(const Ring& R, const Matrix& gens, bool with_transform)
    : R_(R), gens_(gens), width_(gens.cols()), with_transform_(with_transform),
      h_(howell(R, gens, with_transform)) {}

std::optional<std::vector<Elem>> Span::strip(std::vector<Elem> v) const {
    if (v.size() != width_) throw std::invalid_argument("span: vector width mismatch");
    for (auto& x : v) x = R_.reduce(x);
    const Matrix& H = h_.H;
    std::vector<Elem> c(H.rows());
    std::size_t k = 0;
    for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(v[j]) == 0) {
            if (k < H.rows() && h_.pivots[k] == j) ++k;
            continue;
        }
        if (k >= H.rows() || h_.pivots[k] != j) return std::nullopt;
        auto q = R_.divide(v[j], H(k, j));
        if (!q) return std::nullopt;
        c[k] = *q;
        Elem nq = R_.neg(*q);
        for (std::size_t jj = j; jj < width_; ++jj)
            if (sgn(H(k, jj)) != 0) v[jj] = R_.add(v[jj], R_.mul(nq, H(k, jj)));
        ++k;
    }
    return c;
}

bool Span::contains(const std::vector<Elem>& v) const { return strip(v).has_value(); }

bool Span::contains_rows(const Matrix& M) const {
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (!contains(M.row(i))) return false;
    return true;
}

std::optional<std::vector<Elem>> Span::express(const std::vector<Elem>& v) const {
    if (!with_transform_) throw std::logic_error("span: express needs a transform");
    auto c = strip(v);
    if (!c) return std::nullopt;
    return row_times(R_, *c, h_.U);
}

std::vector<Elem> Span::reduce(const std::vector<Elem>& v0) const {
    std::vector<Elem> v = v0;
    for (auto& x : v) x = R_.reduce(x);
    const Matrix& H = h_.H;
    for (std::size_t k = 0; k < H.rows(); ++k) {
        std::size_t j = h_.pivots[k];
        if (sgn(v[j]) == 0) continue;
        Elem r = R_.remainder(v[j], H(k, j));
        if (r == v[j]) continue;
        Elem q = R_.neg(*R_.divide(R_.sub(v[j], r), H(k, j)));
        for (std::size_t jj = j; jj < width_; ++jj)
            if (sgn(H(k, jj)) != 0) v[jj] = R_.add(v[jj], R_.mul(q, H(k, jj)));
    }
    return v;
}

std::optional<std::vector<Elem>> solve_left(const Ring& R, const Matrix& M, const std::vector<Elem>& v) {
    if (v.size() != M.cols()) throw std::invalid_argument("solve_left: dimension mismatch");
    if (M.rows() == 0) {
        for (const auto& x : v)
            if (sgn(R.reduce(x)) != 0) return std::nullopt;
        return std::vector<Elem>{};
    }
    Span s(R, M, true);
    return s.express(v);
}

std::optional<std::vector<Elem>> solve(const Ring& R, const Matrix& A, const std::vector<Elem>& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve: dimension mismatch");
    return solve_left(R, A.transposed(), b);
}

Matrix kernel(const Ring& R, const Matrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    if (m == 0) return Matrix(0, 0);
    Matrix aug = hstack(A, Matrix::identity(R, m));
    auto h = howell(R, aug, false);
    Matrix K(0, m);
    for (std::size_t k = 0; k < h.H.rows(); ++k)
        if (h.pivots[k] >= n) K.append_row(h.H.slice(k, k + 1, n, n + m).row(0));
    return K;
}

std::vector<Elem> smith_invariants(const Ring& R, const Matrix& A0, std::size_t ngens) {
    Matrix A = reduce(R, A0);
    if (A.rows() == 0) A = Matrix(0, ngens);
    const std::size_t m = A.rows(), n = ngens;
    std::vector<Elem> diag;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Bring some nonzero entry to (t, t).
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m && pi == m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (sgn(A(i, j)) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == m) break;
        for (std::size_t j = 0; j < n; ++j) std::swap(A(t, j), A(pi, j));
        for (std::size_t i = 0; i < m; ++i) std::swap(A(i, t), A(i, pj));

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(A(i, t)) == 0) continue;
                if (auto q = R.divide(A(i, t), A(t, t))) {
                    // plain elimination, so the pivot ideal only changes when it grows
                    for (std::size_t j = t; j < n; ++j) A(i, j) = R.sub(A(i, j), R.mul(*q, A(t, j)));
                    continue;
                }
                Gcdex g = R.gcdex(A(t, t), A(i, t));
                for (std::size_t j = t; j < n; ++j) {
                    Elem x = A(t, j), y = A(i, j);
                    A(t, j) = R.add(R.mul(g.s, x), R.mul(g.t, y));
                    A(i, j) = R.add(R.mul(g.u, x), R.mul(g.v, y));
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(A(t, j)) == 0) continue;
                if (auto q = R.divide(A(t, j), A(t, t))) {
                    for (std::size_t i = t; i < m; ++i) A(i, j) = R.sub(A(i, j), R.mul(*q, A(i, t)));
                    continue;
                }
                Gcdex g = R.gcdex(A(t, t), A(t, j));
                for (std::size_t i = t; i < m; ++i) {
                    Elem x = A(i, t), y = A(i, j);
                    A(i, t) = R.add(R.mul(g.s, x), R.mul(g.t, y));
                    A(i, j) = R.add(R.mul(g.u, x), R.mul(g.v, y));
                }
            }
            for (std::size_t i = t + 1; i < m; ++i)
                if (sgn(A(i, t)) != 0) dirty = true;
        }
        diag.push_back(R.associate(A(t, t)));
    }
    for (; t < n; ++t) diag.push_back(Elem(0));

    // Enforce the divisibility chain: (a, b) -> (a + b, a ∩ b).
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            Elem s = R.ideal_sum(diag[i], diag[j]);
            Elem c = R.ideal_intersection(diag[i], diag[j]);
            diag[i] = R.associate(s);
            diag[j] = R.associate(c);
        }
    std::vector<Elem> out;
    for (auto& d : diag)
        if (!R.is_unit(d)) out.push_back(d);
    return out;
}

}  // namespace ghost
