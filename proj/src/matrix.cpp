#include "coble/matrix.hpp"

#include <algorithm>
#include <functional>
#include <thread>

#include "coble/errors.hpp"
#include "coble/rng.hpp"

namespace coble {

Matrix Matrix::identity(const Fp& F, int n) {
    (void)F;
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

Matrix Matrix::random(const Fp& F, int r, int c, Rng& rng) {
    Matrix M(r, c);
    for (auto& v : M.a) v = rng.residue(F.q());
    return M;
}

Matrix Matrix::transposed() const {
    Matrix T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

void Matrix::append_row(const std::vector<fe>& r) {
    if (cols == 0) cols = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols) throw DimensionMismatch("append_row");
    a.insert(a.end(), r.begin(), r.end());
    ++rows;
}

std::vector<fe> Matrix::row_vec(int r) const {
    return std::vector<fe>(row(r), row(r) + cols);
}

Matrix mat_mul(const Fp& F, const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw DimensionMismatch("mat_mul");
    Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int k = 0; k < A.cols; ++k) {
            fe f = A.at(i, k);
            if (!f) continue;
            const fe* brow = B.row(k);
            fe* crow = C.row(i);
            for (int j = 0; j < B.cols; ++j)
                crow[j] = F.reduce(crow[j] + static_cast<std::uint64_t>(f) * brow[j]);
        }
    }
    return C;
}

std::vector<fe> mat_vec(const Fp& F, const Matrix& A, const std::vector<fe>& x) {
    if (static_cast<int>(x.size()) != A.cols) throw DimensionMismatch("mat_vec");
    std::vector<fe> y(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        std::uint64_t acc = 0;
        const fe* arow = A.row(i);
        for (int j = 0; j < A.cols; ++j) {
            acc += static_cast<std::uint64_t>(arow[j]) * x[j];
            if (acc >= (1ULL << 61)) acc = F.reduce(acc);
        }
        y[i] = F.reduce(acc);
    }
    return y;
}

std::vector<fe> vec_mat(const Fp& F, const std::vector<fe>& x, const Matrix& A) {
    if (static_cast<int>(x.size()) != A.rows) throw DimensionMismatch("vec_mat");
    std::vector<fe> y(A.cols, 0);
    for (int i = 0; i < A.rows; ++i) {
        fe f = x[i];
        if (!f) continue;
        const fe* arow = A.row(i);
        for (int j = 0; j < A.cols; ++j)
            y[j] = F.reduce(y[j] + static_cast<std::uint64_t>(f) * arow[j]);
    }
    return y;
}

namespace {

// Subtract f * src from dst over [from, cols).
inline void row_axpy(const Fp& F, fe* dst, const fe* src, fe f, int from, int cols) {
    if (!f) return;
    fe nf = F.neg(f);
    for (int j = from; j < cols; ++j)
        dst[j] = F.reduce(dst[j] + static_cast<std::uint64_t>(nf) * src[j]);
}

void parallel_rows(int n, int threads, const std::function<void(int, int)>& work) {
    if (threads <= 1 || n < 256) {
        work(0, n);
        return;
    }
    std::vector<std::thread> pool;
    int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<int> rref_in_place(const Fp& F, Matrix& M, int threads) {
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < M.cols && prow < M.rows; ++col) {
        int sel = -1;
        for (int r = prow; r < M.rows; ++r)
            if (M.at(r, col)) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != prow)
            for (int j = col; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(prow, j));
        fe piv = M.at(prow, col);
        if (piv != 1) {
            fe pinv = F.inv(piv);
            fe* pr = M.row(prow);
            for (int j = col; j < M.cols; ++j) pr[j] = F.mul(pr[j], pinv);
        }
        const fe* pr = M.row(prow);
        int pr_idx = prow;
        parallel_rows(M.rows, threads, [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                if (r == pr_idx) continue;
                row_axpy(F, M.row(r), pr, M.at(r, col), col, M.cols);
            }
        });
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

int rank(const Fp& F, const Matrix& M) {
    Matrix T = M;
    return static_cast<int>(rref_in_place(F, T).size());
}

Matrix kernel_basis(const Fp& F, const Matrix& M, int threads) {
    Matrix T = M;
    std::vector<int> pivots = rref_in_place(F, T, threads);
    std::vector<bool> is_pivot(T.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix K(0, T.cols);
    for (int c = 0; c < T.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<fe> v(T.cols, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(T.at(static_cast<int>(i), c));
        K.append_row(v);
    }
    // Free columns increase left to right and each basis vector has a 1
    // there and zeros in the other free slots, so K is already in reduced
    // echelon form up to row order; rows are emitted in that order.
    return K;
}

Solution solve_dense(const Fp& F, const Matrix& M, const Matrix& B) {
    if (M.rows != B.rows) throw DimensionMismatch("solve_dense");
    Matrix aug(M.rows, M.cols + B.cols);
    for (int i = 0; i < M.rows; ++i) {
        for (int j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
        for (int j = 0; j < B.cols; ++j) aug.at(i, M.cols + j) = B.at(i, j);
    }
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < M.cols && prow < aug.rows; ++col) {
        int sel = -1;
        for (int r = prow; r < aug.rows; ++r)
            if (aug.at(r, col)) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != prow)
            for (int j = col; j < aug.cols; ++j) std::swap(aug.at(sel, j), aug.at(prow, j));
        fe pinv = F.inv(aug.at(prow, col));
        for (int j = col; j < aug.cols; ++j) aug.at(prow, j) = F.mul(aug.at(prow, j), pinv);
        for (int r = 0; r < aug.rows; ++r)
            if (r != prow) row_axpy(F, aug.row(r), aug.row(prow), aug.at(r, col), col, aug.cols);
        pivots.push_back(col);
        ++prow;
    }
    // Consistency: a row that is zero on the M block must be zero on B too.
    for (int r = prow; r < aug.rows; ++r)
        for (int j = M.cols; j < aug.cols; ++j)
            if (aug.at(r, j)) throw Inconsistent();

    Solution s;
    s.particular = Matrix(M.cols, B.cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (int j = 0; j < B.cols; ++j)
            s.particular.at(pivots[i], j) = aug.at(static_cast<int>(i), M.cols + j);
    s.kernel = kernel_basis(F, M);
    return s;
}

Matrix inverse(const Fp& F, const Matrix& M) {
    if (M.rows != M.cols) throw DimensionMismatch("inverse");
    Solution s = solve_dense(F, M, Matrix::identity(F, M.rows));
    if (s.kernel.rows != 0) throw Inconsistent();
    return s.particular;
}

fe determinant(const Fp& F, Matrix M) {
    if (M.rows != M.cols) throw DimensionMismatch("determinant");
    fe det = 1;
    for (int col = 0; col < M.cols; ++col) {
        int sel = -1;
        for (int r = col; r < M.rows; ++r)
            if (M.at(r, col)) {
                sel = r;
                break;
            }
        if (sel < 0) return 0;
        if (sel != col) {
            for (int j = col; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, M.at(col, col));
        fe pinv = F.inv(M.at(col, col));
        for (int r = col + 1; r < M.rows; ++r) {
            fe f = F.mul(M.at(r, col), pinv);
            row_axpy(F, M.row(r), M.row(col), f, col, M.cols);
        }
    }
    return det;
}

}  // namespace coble
