#pragma once

// Plain data types for modules, complexes and chain maps. Everything here is
// a value type with trivial accessors so that the certificate checker can
// depend on it without pulling in any construction code.

#include "ghost/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace ghost {

// coker(rels), rels has `gens` columns.
struct FpModule {
    Ring ring;
    std::size_t gens = 0;
    Matrix rels;

    FpModule() = default;
    FpModule(Ring R, std::size_t g) : ring(std::move(R)), gens(g), rels(0, g) {}
    FpModule(Ring R, std::size_t g, Matrix rel) : ring(std::move(R)), gens(g), rels(std::move(rel)) {
        if (rels.rows() == 0) rels = Matrix(0, g);
    }

    bool is_free() const { return rels.rows() == 0 || rels.is_zero(); }
    bool operator==(const FpModule& o) const {
        return ring == o.ring && gens == o.gens && rels == o.rels;
    }
};

struct ModuleMap {
    FpModule source, target;
    Matrix matrix;  // source.gens x target.gens, rows are images of generators
};

// Degree-indexed family of matrices. Missing entries are zero.
using DegreeMaps = std::map<int, Matrix>;

// Bounded cochain complex. Degrees with no generators are not stored.
class Complex {
public:
    Complex() = default;
    explicit Complex(Ring R) : ring_(std::move(R)) {}

    const Ring& ring() const { return ring_; }

    void set_term(int n, const FpModule& M) {
        if (M.gens == 0) {
            terms_.erase(n);
            return;
        }
        terms_[n] = M;
    }
    void set_term(int n, std::size_t gens, const Matrix& rels) { set_term(n, FpModule(ring_, gens, rels)); }
    void set_diff(int n, const Matrix& d) {
        if (d.rows() == 0 || d.cols() == 0 || d.is_zero())
            diffs_.erase(n);
        else
            diffs_[n] = d;
    }

    std::size_t gens(int n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? 0 : it->second.gens;
    }
    FpModule term(int n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? FpModule(ring_, 0) : it->second;
    }
    Matrix rels(int n) const { return term(n).rels; }
    // d^n : X^n -> X^{n+1}
    Matrix diff(int n) const {
        auto it = diffs_.find(n);
        return it == diffs_.end() ? Matrix(gens(n), gens(n + 1)) : it->second;
    }

    bool empty() const { return terms_.empty(); }
    int lo() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int hi() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    const std::map<int, FpModule>& terms() const { return terms_; }
    const std::map<int, Matrix>& diffs() const { return diffs_; }

    bool operator==(const Complex& o) const {
        return ring_ == o.ring_ && terms_ == o.terms_ && diffs_ == o.diffs_;
    }
    bool operator!=(const Complex& o) const { return !(*this == o); }

private:
    Ring ring_;
    std::map<int, FpModule> terms_;
    std::map<int, Matrix> diffs_;
};

struct ChainMap {
    Complex source, target;
    DegreeMaps comps;  // f^n : source^n -> target^n

    Matrix comp(int n) const {
        auto it = comps.find(n);
        if (it == comps.end()) return Matrix(source.gens(n), target.gens(n));
        return it->second;
    }
    void set(int n, const Matrix& m) {
        if (m.is_zero())
            comps.erase(n);
        else
            comps[n] = m;
    }
};

// h^n : X^n -> Y^{n-1}
inline Matrix htpy_comp(const DegreeMaps& h, const Complex& X, const Complex& Y, int n) {
    auto it = h.find(n);
    if (it == h.end()) return Matrix(X.gens(n), Y.gens(n - 1));
    return it->second;
}

// A free complex pi.source with a map to pi.target that is a quasi-isomorphism
// in degrees >= floor + 1 (and whose cone is exact in degrees >= floor).
struct FreeModel {
    ChainMap pi;
    int floor = 0;

    const Complex& model() const { return pi.source; }
    const Complex& base() const { return pi.target; }
};

}  // namespace ghost
