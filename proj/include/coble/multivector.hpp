#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coble/matrix.hpp"
#include "coble/subspace.hpp"

namespace coble {

// Basis order of Lambda^k coordinates: lexicographic on strictly increasing
// index tuples. This order fixes all file formats and echelon forms.
struct KTable {
    int n = 0, k = 0;
    std::vector<std::uint16_t> masks;          // tuple index -> bitmask
    std::vector<std::array<std::uint8_t, 5>> elems;  // tuple index -> sorted indices
    std::vector<int> index_of_mask;            // bitmask -> tuple index, -1 if wrong popcount

    static const KTable& get(int n, int k);
    int index(std::uint16_t mask) const { return index_of_mask[mask]; }
    int size() const { return static_cast<int>(masks.size()); }
};

// Dense element of Lambda^k(F_q^n), n <= 9, k <= 5.
struct Mv {
    int n = 0, k = 0;
    std::vector<fe> c;

    Mv() = default;
    Mv(int n_, int k_) : n(n_), k(k_), c(KTable::get(n_, k_).size(), 0) {}

    bool is_zero() const {
        for (fe x : c)
            if (x) return false;
        return true;
    }
    bool operator==(const Mv& o) const { return n == o.n && k == o.k && c == o.c; }
};

Mv mv_add(const Fp& F, const Mv& a, const Mv& b);
Mv mv_sub(const Fp& F, const Mv& a, const Mv& b);
Mv mv_scale(const Fp& F, fe s, const Mv& a);
Mv mv_from_vector(int n, const std::vector<fe>& v);  // grade 1

Mv wedge(const Fp& F, const Mv& a, const Mv& b);
Mv wedge3(const Fp& F, const std::vector<fe>& u, const std::vector<fe>& v,
          const std::vector<fe>& w, int n);

// Interior product: iota_phi(v1^...^vk) = sum_j (-1)^(j-1) phi(v_j) * (drop v_j).
Mv contract(const Fp& F, const std::vector<fe>& phi, const Mv& m);

// Full pairing of a trivector against three covectors (3x3 minors).
fe triple_eval(const Fp& F, const Mv& tri, const std::vector<fe>& p, const std::vector<fe>& q,
               const std::vector<fe>& r);

// Contraction of a trivector by two covectors, read as a vector: the k-th
// component is sum_a q_a M[a][k] for M the skew matrix of iota_p omega.
std::vector<fe> double_contract(const Fp& F, const Mv& tri, const std::vector<fe>& p,
                                const std::vector<fe>& q);

// n x n alternating matrix of the two-form iota_p omega.
Matrix skew_matrix(const Fp& F, const Mv& tri, const std::vector<fe>& p);

// Pfaffian of the alternating matrix restricted to a sorted even index set,
// by first-row cofactor expansion. Pf([[0,a],[-a,0]]) = a.
fe pfaffian(const Fp& F, const Matrix& M, const std::vector<int>& idx);

// Span of a^b^c inside Lambda^3 for a,b,c running over the given nested
// subspaces, returned as a canonical echelon subspace of the C(n,3)-space.
Subspace wedge_space(const Fp& F, const Subspace& Sa, const Subspace& Sb, const Subspace& Sc);

bool in_sum_of_spans(const Fp& F, const Mv& m, const std::vector<Subspace>& spaces);

// Rewrite a trivector in the basis whose vectors are the columns of T:
// new coefficient on (a,b,c) is the pairing against the dual basis rows.
Mv change_basis(const Fp& F, const Mv& tri, const Matrix& basis_columns);

// Image of the trivector in Lambda^3(F^n / line), using the complement
// basis rows as the quotient chart.
Mv reduce_mod_line(const Fp& F, const Mv& tri, const std::vector<fe>& line);

}  // namespace coble
