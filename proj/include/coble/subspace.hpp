#pragma once

#include <vector>

#include "coble/matrix.hpp"

namespace coble {

// Which of the two projective spaces a coordinate tuple lives in. Points of
// the rank stratification are hyperplanes (covectors); the contraction
// lines live on the vector side.
enum class Side { vectors, covectors };

// Linear subspace of F_q^n, stored as a reduced-echelon basis matrix so
// equal subspaces compare equal componentwise.
class Subspace {
  public:
    Subspace() = default;
    Subspace(const Fp& F, int ambient, Matrix generators, Side side = Side::vectors);

    static Subspace full(const Fp& F, int ambient, Side side = Side::vectors);
    static Subspace span_of(const Fp& F, const std::vector<std::vector<fe>>& vecs,
                            Side side = Side::vectors);

    int ambient() const { return n_; }
    int dim() const { return basis_.rows; }
    Side side() const { return side_; }
    const Matrix& basis() const { return basis_; }
    std::vector<fe> basis_vector(int i) const { return basis_.row_vec(i); }

    bool contains(const Fp& F, const std::vector<fe>& v) const;
    bool contains(const Fp& F, const Subspace& other) const;
    bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

    Subspace sum(const Fp& F, const Subspace& other) const;
    Subspace intersect(const Fp& F, const Subspace& other) const;

    // Covectors vanishing on this space (or vectors annihilated by it when
    // the space is on the covector side), via the standard dot pairing.
    Subspace annihilator(const Fp& F) const;

    // Coordinates of v in this basis; throws if v is outside.
    std::vector<fe> coordinates_of(const Fp& F, const std::vector<fe>& v) const;

  private:
    int n_ = 0;
    Matrix basis_;  // rows, reduced echelon
    Side side_ = Side::vectors;
};

// Chain of strictly increasing nested subspaces; containment is checked on
// construction.
class Flag {
  public:
    Flag() = default;
    Flag(const Fp& F, std::vector<Subspace> members);

    const Subspace& operator[](std::size_t i) const { return members_[i]; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Subspace>& members() const { return members_; }

  private:
    std::vector<Subspace> members_;
};

}  // namespace coble
