#include "ghost/matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace ghost {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : r_(rows), c_(cols), a_(std::move(entries)) {
    if (a_.size() != r_ * c_) throw std::invalid_argument("matrix entry count mismatch");
}

Matrix Matrix::identity(const Ring& R, std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = R.one();
    return I;
}

Matrix Matrix::from_ints(const Ring& R, const std::vector<std::vector<long>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    Matrix M(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix literal");
        for (std::size_t j = 0; j < cols; ++j) M(i, j) = R.from_int(rows[i][j]);
    }
    return M;
}

std::vector<Elem> Matrix::row(std::size_t i) const {
    return {a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)};
}

void Matrix::set_row(std::size_t i, const std::vector<Elem>& v) {
    assert(v.size() == c_);
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

void Matrix::append_row(const std::vector<Elem>& v) {
    if (r_ == 0 && c_ == 0) c_ = v.size();
    if (v.size() != c_) throw std::invalid_argument("append_row: width mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

Matrix Matrix::transposed() const {
    Matrix T(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

Matrix Matrix::slice(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    if (r1 > r_ || c1 > c_ || r0 > r1 || c0 > c1) throw std::out_of_range("matrix slice");
    Matrix S(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) S(i - r0, j - c0) = (*this)(i, j);
    return S;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (sgn(x) != 0) return false;
    return true;
}

std::string Matrix::to_string(const Ring& R) const {
    std::string s = "[";
    for (std::size_t i = 0; i < r_; ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < c_; ++j) {
            if (j) s += ",";
            s += R.format((*this)(i, j));
        }
        s += "]";
    }
    return s + "]";
}

Matrix mul(const Ring& R, const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows())
        throw std::invalid_argument("mul: " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                    " by " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const Elem& a = A(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) {
                if (sgn(B(k, j)) == 0) continue;
                C(i, j) = R.add(C(i, j), R.mul(a, B(k, j)));
            }
        }
    return C;
}

Matrix add(const Ring& R, const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("add: shape mismatch");
    Matrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R.add(A(i, j), B(i, j));
    return C;
}

Matrix sub(const Ring& R, const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("sub: shape mismatch");
    Matrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R.sub(A(i, j), B(i, j));
    return C;
}

Matrix neg(const Ring& R, const Matrix& A) {
    Matrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R.neg(A(i, j));
    return C;
}

Matrix scale(const Ring& R, const Elem& s, const Matrix& A) {
    Matrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R.mul(s, A(i, j));
    return C;
}

Matrix reduce(const Ring& R, const Matrix& A) {
    Matrix C(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = R.reduce(A(i, j));
    return C;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix C(A.rows(), A.cols() + B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j) C(i, A.cols() + j) = B(i, j);
    }
    return C;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix C(A.rows() + B.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) C(A.rows() + i, j) = B(i, j);
    return C;
}

Matrix block_diag(const Matrix& A, const Matrix& B) {
    Matrix C(A.rows() + B.rows(), A.cols() + B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) C(A.rows() + i, A.cols() + j) = B(i, j);
    return C;
}

Matrix block2(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D) {
    return vstack(hstack(A, B), hstack(C, D));
}

std::vector<Elem> row_times(const Ring& R, const std::vector<Elem>& v, const Matrix& A) {
    if (v.size() != A.rows()) throw std::invalid_argument("row_times: length mismatch");
    std::vector<Elem> out(A.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) == 0) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) out[j] = R.add(out[j], R.mul(v[k], A(k, j)));
    }
    return out;
}

}  // namespace ghost
