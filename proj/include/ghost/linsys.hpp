#pragma once

#include "ghost/linalg.hpp"

#include <optional>
#include <vector>

namespace ghost {

// Matrix equations  sum_k L_k * V_k * R_k = C  in unknown matrix blocks V_k,
// flattened into one dense system and handed to solve / kernel.
class LinearSystem {
public:
    explicit LinearSystem(Ring R) : R_(std::move(R)) {}

    int add_block(std::size_t rows, std::size_t cols);
    int add_equation(std::size_t rows, std::size_t cols);

    // L * V * Rm; pass an empty optional for an identity factor.
    void add_term(int eq, const std::optional<Matrix>& L, int var, const std::optional<Matrix>& Rm);
    // Equation only needs to hold modulo the row span of rels: adds S * rels
    // for a fresh block S and returns its id.
    int add_slack(int eq, const Matrix& rels);
    void set_rhs(int eq, const Matrix& C);

    std::size_t num_vars() const { return nvars_; }
    std::size_t num_eqs() const { return neqs_; }

    using Solution = std::vector<Elem>;
    std::optional<Solution> solve() const;
    // Generators of the homogeneous solution set.
    std::vector<Solution> nullspace() const;
    Matrix value(const Solution& x, int var) const;

    const Ring& ring() const { return R_; }

private:
    struct Shape {
        std::size_t rows, cols, offset;
    };
    struct Term {
        int eq, var;
        std::optional<Matrix> L, Rm;
    };
    Matrix assemble() const;
    std::vector<Elem> rhs_vector() const;

    Ring R_;
    std::vector<Shape> vars_, eqs_;
    std::vector<Term> terms_;
    std::vector<std::optional<Matrix>> rhs_;
    std::size_t nvars_ = 0, neqs_ = 0;
};

}  // namespace ghost
