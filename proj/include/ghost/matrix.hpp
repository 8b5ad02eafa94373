#pragma once

#include "ghost/ring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ghost {

// Dense row-major matrix of canonical ring elements. The ring is not stored;
// every arithmetic helper takes it explicitly.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(const Ring& R, std::size_t n);
    static Matrix from_ints(const Ring& R, const std::vector<std::vector<long>>& rows, std::size_t cols = 0);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    Elem& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<Elem>& data() const { return a_; }

    std::vector<Elem> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Elem>& v);
    void append_row(const std::vector<Elem>& v);

    Matrix transposed() const;
    Matrix slice(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
    Matrix rows_range(std::size_t r0, std::size_t r1) const { return slice(r0, r1, 0, c_); }
    Matrix cols_range(std::size_t c0, std::size_t c1) const { return slice(0, r_, c0, c1); }

    bool is_zero() const;

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::string to_string(const Ring& R) const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Elem> a_;
};

Matrix mul(const Ring& R, const Matrix& A, const Matrix& B);
Matrix add(const Ring& R, const Matrix& A, const Matrix& B);
Matrix sub(const Ring& R, const Matrix& A, const Matrix& B);
Matrix neg(const Ring& R, const Matrix& A);
Matrix scale(const Ring& R, const Elem& s, const Matrix& A);
Matrix reduce(const Ring& R, const Matrix& A);

Matrix hstack(const Matrix& A, const Matrix& B);
Matrix vstack(const Matrix& A, const Matrix& B);
Matrix block_diag(const Matrix& A, const Matrix& B);
// [[A, B], [C, D]]; row/column counts must be consistent.
Matrix block2(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D);

std::vector<Elem> row_times(const Ring& R, const std::vector<Elem>& v, const Matrix& A);

}  // namespace ghost
