#pragma once

#include <cstdint>
#include <vector>

#include "coble/fp.hpp"

namespace coble {

// Dense row-major matrix over F_q. Elimination uses the first nonzero entry
// in column order as pivot, so echelon forms (and everything derived from
// them: subspaces, flags, kernels) are canonical and bit-reproducible.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<fe> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    fe& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    fe at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    fe* row(int r) { return a.data() + static_cast<std::size_t>(r) * cols; }
    const fe* row(int r) const { return a.data() + static_cast<std::size_t>(r) * cols; }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    static Matrix identity(const Fp& F, int n);
    static Matrix random(const Fp& F, int r, int c, class Rng& rng);

    Matrix transposed() const;
    void append_row(const std::vector<fe>& r);
    std::vector<fe> row_vec(int r) const;
};

Matrix mat_mul(const Fp& F, const Matrix& A, const Matrix& B);
std::vector<fe> mat_vec(const Fp& F, const Matrix& A, const std::vector<fe>& x);
std::vector<fe> vec_mat(const Fp& F, const std::vector<fe>& x, const Matrix& A);

// In-place reduced row echelon form; returns pivot column per pivot row.
// `threads > 1` parallelizes the row updates; the arithmetic per row is
// unchanged, so the result is identical for every worker count.
std::vector<int> rref_in_place(const Fp& F, Matrix& M, int threads = 1);

int rank(const Fp& F, const Matrix& M);

// Reduced-echelon basis of the right kernel {x : Mx = 0}, one row per basis
// vector, dimension = cols - rank.
Matrix kernel_basis(const Fp& F, const Matrix& M, int threads = 1);

struct Solution {
    Matrix particular;  // X with M X = B
    Matrix kernel;      // rows span {x : Mx = 0}
};

// Exact solve; throws Inconsistent when B is outside the column span.
Solution solve_dense(const Fp& F, const Matrix& M, const Matrix& B);

Matrix inverse(const Fp& F, const Matrix& M);  // throws Inconsistent if singular

fe determinant(const Fp& F, Matrix M);

}  // namespace coble
