#include "ghost/linsys.hpp"

#include <stdexcept>

namespace ghost {

int LinearSystem::add_block(std::size_t rows, std::size_t cols) {
    vars_.push_back({rows, cols, nvars_});
    nvars_ += rows * cols;
    return static_cast<int>(vars_.size()) - 1;
}

int LinearSystem::add_equation(std::size_t rows, std::size_t cols) {
    eqs_.push_back({rows, cols, neqs_});
    rhs_.emplace_back();
    neqs_ += rows * cols;
    return static_cast<int>(eqs_.size()) - 1;
}

void LinearSystem::add_term(int eq, const std::optional<Matrix>& L, int var, const std::optional<Matrix>& Rm) {
    const Shape& e = eqs_.at(static_cast<std::size_t>(eq));
    const Shape& v = vars_.at(static_cast<std::size_t>(var));
    std::size_t lr = L ? L->rows() : v.rows, lc = L ? L->cols() : v.rows;
    std::size_t rr = Rm ? Rm->rows() : v.cols, rc = Rm ? Rm->cols() : v.cols;
    if (lr != e.rows || lc != v.rows || rr != v.cols || rc != e.cols)
        throw std::invalid_argument("linear system: term shape mismatch");
    terms_.push_back({eq, var, L, Rm});
}

int LinearSystem::add_slack(int eq, const Matrix& rels) {
    const Shape& e = eqs_.at(static_cast<std::size_t>(eq));
    if (rels.cols() != e.cols) throw std::invalid_argument("linear system: slack width mismatch");
    if (rels.rows() == 0) return -1;
    int s = add_block(e.rows, rels.rows());
    add_term(eq, std::nullopt, s, rels);
    return s;
}

void LinearSystem::set_rhs(int eq, const Matrix& C) {
    const Shape& e = eqs_.at(static_cast<std::size_t>(eq));
    if (C.rows() != e.rows || C.cols() != e.cols) throw std::invalid_argument("linear system: rhs shape mismatch");
    rhs_[static_cast<std::size_t>(eq)] = C;
}

Matrix LinearSystem::assemble() const {
    Matrix A(neqs_, nvars_);
    for (const auto& t : terms_) {
        const Shape& e = eqs_[static_cast<std::size_t>(t.eq)];
        const Shape& v = vars_[static_cast<std::size_t>(t.var)];
        // coefficient of V(a,b) in entry (i,j) is L(i,a) * Rm(b,j)
        for (std::size_t i = 0; i < e.rows; ++i)
            for (std::size_t a = 0; a < v.rows; ++a) {
                Elem l = t.L ? (*t.L)(i, a) : (i == a ? R_.one() : R_.zero());
                if (sgn(l) == 0) continue;
                for (std::size_t b = 0; b < v.cols; ++b)
                    for (std::size_t j = 0; j < e.cols; ++j) {
                        Elem rm = t.Rm ? (*t.Rm)(b, j) : (b == j ? R_.one() : R_.zero());
                        if (sgn(rm) == 0) continue;
                        Elem& cell = A(e.offset + i * e.cols + j, v.offset + a * v.cols + b);
                        cell = R_.add(cell, R_.mul(l, rm));
                    }
            }
    }
    return A;
}

std::vector<Elem> LinearSystem::rhs_vector() const {
    std::vector<Elem> b(neqs_);
    for (std::size_t k = 0; k < eqs_.size(); ++k) {
        if (!rhs_[k]) continue;
        const Shape& e = eqs_[k];
        for (std::size_t i = 0; i < e.rows; ++i)
            for (std::size_t j = 0; j < e.cols; ++j) b[e.offset + i * e.cols + j] = R_.reduce((*rhs_[k])(i, j));
    }
    return b;
}

std::optional<LinearSystem::Solution> LinearSystem::solve() const {
    auto b = rhs_vector();
    if (nvars_ == 0) {
        for (const auto& x : b)
            if (sgn(x) != 0) return std::nullopt;
        return Solution{};
    }
    if (neqs_ == 0) return Solution(nvars_);
    return ghost::solve(R_, assemble(), b);
}

std::vector<LinearSystem::Solution> LinearSystem::nullspace() const {
    std::vector<Solution> out;
    if (nvars_ == 0) return out;
    if (neqs_ == 0) {
        for (std::size_t i = 0; i < nvars_; ++i) {
            Solution e(nvars_);
            e[i] = R_.one();
            out.push_back(e);
        }
        return out;
    }
    Matrix K = kernel(R_, assemble().transposed());
    for (std::size_t i = 0; i < K.rows(); ++i) out.push_back(K.row(i));
    return out;
}

Matrix LinearSystem::value(const Solution& x, int var) const {
    const Shape& v = vars_.at(static_cast<std::size_t>(var));
    Matrix M(v.rows, v.cols);
    for (std::size_t a = 0; a < v.rows; ++a)
        for (std::size_t b = 0; b < v.cols; ++b) M(a, b) = x[v.offset + a * v.cols + b];
    return M;
}

}  // namespace ghost
