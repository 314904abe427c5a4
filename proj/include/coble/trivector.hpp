#pragma once

#include <vector>

#include "coble/multivector.hpp"
#include "coble/rng.hpp"

namespace coble {

// A trivector is a grade-3 multivector in 8 or 9 variables; coefficients are
// indexed by strictly increasing triples in lex order.
using Trivector = Mv;

inline Trivector make_trivector(int n) { return Mv(n, 3); }

inline void tri_set(Trivector& t, int i, int j, int k, fe v) {
    t.c[KTable::get(t.n, 3).index(static_cast<std::uint16_t>((1u << i) | (1u << j) | (1u << k)))] = v;
}
inline fe tri_get(const Trivector& t, int i, int j, int k) {
    return t.c[KTable::get(t.n, 3).index(static_cast<std::uint16_t>((1u << i) | (1u << j) | (1u << k)))];
}

inline Trivector random_trivector(const Fp& F, int n, Rng& rng) {
    Trivector t(n, 3);
    for (auto& c : t.c) c = rng.residue(F.q());
    return t;
}

// Projective points are stored with the first nonzero coordinate scaled to 1.
inline std::vector<fe> normalize_point(const Fp& F, std::vector<fe> v) {
    for (fe x : v)
        if (x) {
            if (x != 1) {
                fe s = F.inv(x);
                for (auto& y : v) y = F.mul(s, y);
            }
            return v;
        }
    return v;  // zero vector passes through; callers reject it
}

inline bool is_zero_vec(const std::vector<fe>& v) {
    for (fe x : v)
        if (x) return false;
    return true;
}

inline bool lex_less(const std::vector<fe>& a, const std::vector<fe>& b) {
    return a < b;
}

inline std::vector<fe> random_covector(const Fp& F, int n, Rng& rng) {
    std::vector<fe> v(n);
    do {
        for (auto& x : v) x = rng.residue(F.q());
    } while (is_zero_vec(v));
    return normalize_point(F, v);
}

}  // namespace coble
