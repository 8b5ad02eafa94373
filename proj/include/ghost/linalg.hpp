#pragma once

#include "ghost/matrix.hpp"

#include <optional>
#include <vector>

namespace ghost {

struct HowellResult {
    Matrix H;                       // canonical basis of the row span, zero rows dropped
    Matrix U;                       // U * A == H (only when requested)
    std::vector<std::size_t> pivots;  // leading column of each row of H
};

// Howell form over residue rings, Hermite form over Z. Two matrices with the
// same number of columns have the same row span iff their H agree.
HowellResult howell(const Ring& R, const Matrix& A, bool with_transform = true);

// Convenience returning (H, U).
inline std::pair<Matrix, Matrix> howell_form(const Ring& R, const Matrix& A) {
    auto h = howell(R, A, true);
    return {h.H, h.U};
}

// y with y * M == v (row convention).
std::optional<std::vector<Elem>> solve_left(const Ring& R, const Matrix& M, const std::vector<Elem>& v);

// x with A * x == b (column convention).
std::optional<std::vector<Elem>> solve(const Ring& R, const Matrix& A, const std::vector<Elem>& b);

// Rows generate {x : x * A == 0}.
Matrix kernel(const Ring& R, const Matrix& A);

// Row span of a generating matrix, with its Howell basis cached.
class Span {
public:
    Span(const Ring& R, const Matrix& gens, bool with_transform = false);

    std::size_t width() const { return width_; }
    const Matrix& basis() const { return h_.H; }
    const Matrix& generators() const { return gens_; }

    bool contains(const std::vector<Elem>& v) const;
    bool contains_rows(const Matrix& M) const;
    // Coefficients c with c * generators() == v.
    std::optional<std::vector<Elem>> express(const std::vector<Elem>& v) const;
    // Canonical representative of v modulo the span.
    std::vector<Elem> reduce(const std::vector<Elem>& v) const;

private:
    // Strips v along the pivots; returns coefficients on the Howell basis or
    // nullopt when v is not in the span.
    std::optional<std::vector<Elem>> strip(std::vector<Elem> v) const;

    Ring R_;
    Matrix gens_;
    std::size_t width_;
    bool with_transform_;
    HowellResult h_;
};

// Invariant factors d_1 | d_2 | ... of coker(A) for A with `ngens` columns,
// canonical generators; units are dropped, 0 stands for a free summand.
std::vector<Elem> smith_invariants(const Ring& R, const Matrix& A, std::size_t ngens);

}  // namespace ghost
