#include "coble/subspace.hpp"

#include "coble/errors.hpp"

namespace coble {

Subspace::Subspace(const Fp& F, int ambient, Matrix generators, Side side)
    : n_(ambient), side_(side) {
    if (generators.cols != ambient) throw DimensionMismatch("subspace generators");
    rref_in_place(F, generators);
    Matrix b(0, ambient);
    for (int r = 0; r < generators.rows; ++r) {
        bool zero = true;
        for (int c = 0; c < ambient; ++c)
            if (generators.at(r, c)) {
                zero = false;
                break;
            }
        if (!zero) b.append_row(generators.row_vec(r));
    }
    basis_ = std::move(b);
}

Subspace Subspace::full(const Fp& F, int ambient, Side side) {
    return Subspace(F, ambient, Matrix::identity(F, ambient), side);
}

Subspace Subspace::span_of(const Fp& F, const std::vector<std::vector<fe>>& vecs, Side side) {
    if (vecs.empty()) throw DimensionMismatch("span_of needs at least one vector");
    Matrix M(0, static_cast<int>(vecs[0].size()));
    for (const auto& v : vecs) M.append_row(v);
    return Subspace(F, M.cols, std::move(M), side);
}

bool Subspace::contains(const Fp& F, const std::vector<fe>& v) const {
    // Reduce v against the echelon basis; containment iff the residue is 0.
    std::vector<fe> r = v;
    for (int i = 0; i < basis_.rows; ++i) {
        int lead = -1;
        for (int c = 0; c < n_; ++c)
            if (basis_.at(i, c)) {
                lead = c;
                break;
            }
        if (lead < 0) continue;
        fe f = r[lead];
        if (!f) continue;
        for (int c = lead; c < n_; ++c)
            r[c] = F.sub(r[c], F.mul(f, basis_.at(i, c)));
    }
    for (fe x : r)
        if (x) return false;
    return true;
}

bool Subspace::contains(const Fp& F, const Subspace& other) const {
    for (int i = 0; i < other.basis_.rows; ++i)
        if (!contains(F, other.basis_.row_vec(i))) return false;
    return true;
}

Subspace Subspace::sum(const Fp& F, const Subspace& other) const {
    if (n_ != other.n_) throw DimensionMismatch("subspace sum");
    Matrix M = basis_;
    for (int i = 0; i < other.basis_.rows; ++i) M.append_row(other.basis_.row_vec(i));
    return Subspace(F, n_, std::move(M), side_);
}

Subspace Subspace::annihilator(const Fp& F) const {
    Subspace ann(F, n_, kernel_basis(F, basis_),
                 side_ == Side::vectors ? Side::covectors : Side::vectors);
    return ann;
}

Subspace Subspace::intersect(const Fp& F, const Subspace& other) const {
    if (n_ != other.n_) throw DimensionMismatch("subspace intersect");
    // (U cap W)^perp = U^perp + W^perp under the nondegenerate dot pairing.
    Subspace a = annihilator(F);
    Subspace b = other.annihilator(F);
    Subspace s = a.sum(F, b);
    Subspace r = s.annihilator(F);
    return Subspace(F, n_, r.basis(), side_);
}

std::vector<fe> Subspace::coordinates_of(const Fp& F, const std::vector<fe>& v) const {
    Matrix M = basis_.transposed();  // n x dim
    Matrix B(n_, 1);
    for (int i = 0; i < n_; ++i) B.at(i, 0) = v[i];
    Solution s = solve_dense(F, M, B);
    std::vector<fe> coords(basis_.rows);
    for (int i = 0; i < basis_.rows; ++i) coords[i] = s.particular.at(i, 0);
    return coords;
}

Flag::Flag(const Fp& F, std::vector<Subspace> members) : members_(std::move(members)) {
    for (std::size_t i = 1; i < members_.size(); ++i) {
        bool ok = members_[i].dim() > members_[i - 1].dim() &&
                  members_[i].contains(F, members_[i - 1]);
        if (!ok) throw NotNested();
    }
}

}  // namespace coble
