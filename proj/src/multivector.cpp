#include "coble/multivector.hpp"

#include <bit>
#include <map>
#include <mutex>

#include "coble/errors.hpp"

namespace coble {

namespace {

KTable build_table(int n, int k) {
    KTable t;
    t.n = n;
    t.k = k;
    t.index_of_mask.assign(std::size_t(1) << n, -1);
    // lexicographic enumeration of increasing k-tuples
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    auto emit = [&] {
        std::uint16_t mask = 0;
        std::array<std::uint8_t, 5> el{};
        for (int i = 0; i < k; ++i) {
            mask |= std::uint16_t(1) << idx[i];
            el[i] = static_cast<std::uint8_t>(idx[i]);
        }
        t.index_of_mask[mask] = static_cast<int>(t.masks.size());
        t.masks.push_back(mask);
        t.elems.push_back(el);
    };
    if (k == 0) {
        t.index_of_mask[0] = 0;
        t.masks.push_back(0);
        t.elems.push_back({});
        return t;
    }
    while (true) {
        emit();
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return t;
}

}  // namespace

const KTable& KTable::get(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, KTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_table(n, k)).first;
    return it->second;
}

Mv mv_add(const Fp& F, const Mv& a, const Mv& b) {
    if (a.n != b.n || a.k != b.k) throw DimensionMismatch("mv_add");
    Mv r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
    return r;
}

Mv mv_sub(const Fp& F, const Mv& a, const Mv& b) {
    if (a.n != b.n || a.k != b.k) throw DimensionMismatch("mv_sub");
    Mv r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
    return r;
}

Mv mv_scale(const Fp& F, fe s, const Mv& a) {
    Mv r = a;
    for (auto& x : r.c) x = F.mul(s, x);
    return r;
}

Mv mv_from_vector(int n, const std::vector<fe>& v) {
    Mv r(n, 1);
    for (int i = 0; i < n; ++i) r.c[i] = v[i];
    return r;
}

namespace {

// Parity of inversions between two disjoint masks: pairs (x in a, y in b)
// with x > y.
inline int merge_sign(std::uint16_t a, std::uint16_t b) {
    int inv = 0;
    while (a) {
        std::uint16_t low = a & (~a + 1);
        inv += std::popcount(static_cast<unsigned>(b & (low - 1)));
        a ^= low;
    }
    return (inv & 1) ? -1 : 1;
}

}  // namespace

Mv wedge(const Fp& F, const Mv& a, const Mv& b) {
    if (a.n != b.n) throw DimensionMismatch("wedge");
    const KTable& ta = KTable::get(a.n, a.k);
    const KTable& tb = KTable::get(b.n, b.k);
    Mv r(a.n, a.k + b.k);
    const KTable& tr = KTable::get(r.n, r.k);
    for (int i = 0; i < ta.size(); ++i) {
        if (!a.c[i]) continue;
        std::uint16_t ma = ta.masks[i];
        for (int j = 0; j < tb.size(); ++j) {
            if (!b.c[j]) continue;
            std::uint16_t mb = tb.masks[j];
            if (ma & mb) continue;
            int out = tr.index(ma | mb);
            fe term = F.mul(a.c[i], b.c[j]);
            if (merge_sign(ma, mb) < 0) term = F.neg(term);
            r.c[out] = F.add(r.c[out], term);
        }
    }
    return r;
}

Mv wedge3(const Fp& F, const std::vector<fe>& u, const std::vector<fe>& v,
          const std::vector<fe>& w, int n) {
    Mv r(n, 3);
    const KTable& t = KTable::get(n, 3);
    for (int idx = 0; idx < t.size(); ++idx) {
        int i = t.elems[idx][0], j = t.elems[idx][1], k = t.elems[idx][2];
        // det of the 3x3 minor on columns (i,j,k)
        std::uint64_t pos = 0, neg = 0;
        pos += static_cast<std::uint64_t>(u[i]) * F.mul(v[j], w[k]);
        pos += static_cast<std::uint64_t>(u[j]) * F.mul(v[k], w[i]);
        pos += static_cast<std::uint64_t>(u[k]) * F.mul(v[i], w[j]);
        neg += static_cast<std::uint64_t>(u[k]) * F.mul(v[j], w[i]);
        neg += static_cast<std::uint64_t>(u[j]) * F.mul(v[i], w[k]);
        neg += static_cast<std::uint64_t>(u[i]) * F.mul(v[k], w[j]);
        r.c[idx] = F.sub(F.reduce(pos), F.reduce(neg));
    }
    return r;
}

Mv contract(const Fp& F, const std::vector<fe>& phi, const Mv& m) {
    if (static_cast<int>(phi.size()) != m.n) throw DimensionMismatch("contract");
    const KTable& tin = KTable::get(m.n, m.k);
    Mv r(m.n, m.k - 1);
    const KTable& tout = KTable::get(m.n, m.k - 1);
    for (int i = 0; i < tin.size(); ++i) {
        if (!m.c[i]) continue;
        std::uint16_t mask = tin.masks[i];
        for (int j = 0; j < m.k; ++j) {
            int e = tin.elems[i][j];
            if (!phi[e]) continue;
            fe term = F.mul(phi[e], m.c[i]);
            if (j & 1) term = F.neg(term);
            r.c[tout.index(mask ^ (std::uint16_t(1) << e))] =
                F.add(r.c[tout.index(mask ^ (std::uint16_t(1) << e))], term);
        }
    }
    return r;
}

fe triple_eval(const Fp& F, const Mv& tri, const std::vector<fe>& p, const std::vector<fe>& q,
               const std::vector<fe>& r) {
    if (tri.k != 3) throw DimensionMismatch("triple_eval");
    const KTable& t = KTable::get(tri.n, 3);
    std::uint64_t acc = 0;
    fe out = 0;
    for (int idx = 0; idx < t.size(); ++idx) {
        if (!tri.c[idx]) continue;
        int i = t.elems[idx][0], j = t.elems[idx][1], k = t.elems[idx][2];
        std::uint64_t pos = 0, neg = 0;
        pos += static_cast<std::uint64_t>(p[i]) * F.mul(q[j], r[k]);
        pos += static_cast<std::uint64_t>(p[j]) * F.mul(q[k], r[i]);
        pos += static_cast<std::uint64_t>(p[k]) * F.mul(q[i], r[j]);
        neg += static_cast<std::uint64_t>(p[k]) * F.mul(q[j], r[i]);
        neg += static_cast<std::uint64_t>(p[j]) * F.mul(q[i], r[k]);
        neg += static_cast<std::uint64_t>(p[i]) * F.mul(q[k], r[j]);
        fe det = F.sub(F.reduce(pos), F.reduce(neg));
        acc += static_cast<std::uint64_t>(tri.c[idx]) * det;
        if (acc >= (1ULL << 61)) acc = F.reduce(acc);
    }
    out = F.reduce(acc);
    return out;
}

Matrix skew_matrix(const Fp& F, const Mv& tri, const std::vector<fe>& p) {
    if (tri.k != 3 || static_cast<int>(p.size()) != tri.n) throw DimensionMismatch("skew_matrix");
    const KTable& t = KTable::get(tri.n, 3);
    Matrix M(tri.n, tri.n);
    for (int idx = 0; idx < t.size(); ++idx) {
        fe c = tri.c[idx];
        if (!c) continue;
        int i = t.elems[idx][0], j = t.elems[idx][1], k = t.elems[idx][2];
        // iota_p(e_ijk) = p_i e_jk - p_j e_ik + p_k e_ij
        M.at(j, k) = F.add(M.at(j, k), F.mul(c, p[i]));
        M.at(i, k) = F.sub(M.at(i, k), F.mul(c, p[j]));
        M.at(i, j) = F.add(M.at(i, j), F.mul(c, p[k]));
    }
    for (int a = 0; a < tri.n; ++a)
        for (int b = 0; b < a; ++b) M.at(a, b) = F.neg(M.at(b, a));
    return M;
}

std::vector<fe> double_contract(const Fp& F, const Mv& tri, const std::vector<fe>& p,
                                const std::vector<fe>& q) {
    Matrix M = skew_matrix(F, tri, p);
    return vec_mat(F, q, M);  // v_k = sum_a q_a M[a][k]
}

fe pfaffian(const Fp& F, const Matrix& M, const std::vector<int>& idx) {
    if (idx.size() % 2 != 0 || idx.size() > 8) throw OddSize();
    if (idx.empty()) return 1;
    if (idx.size() == 2) return M.at(idx[0], idx[1]);
    fe acc = 0;
    for (std::size_t j = 1; j < idx.size(); ++j) {
        fe mij = M.at(idx[0], idx[j]);
        if (!mij) continue;
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t l = 1; l < idx.size(); ++l)
            if (l != j) rest.push_back(idx[l]);
        fe term = F.mul(mij, pfaffian(F, M, rest));
        if ((j - 1) & 1) term = F.neg(term);
        acc = F.add(acc, term);
    }
    return acc;
}

Subspace wedge_space(const Fp& F, const Subspace& Sa, const Subspace& Sb, const Subspace& Sc) {
    int n = Sa.ambient();
    if (Sb.ambient() != n || Sc.ambient() != n) throw DimensionMismatch("wedge_space");
    if (!Sb.contains(F, Sa) || !Sc.contains(F, Sb)) throw NotNested();
    const KTable& t = KTable::get(n, 3);
    Matrix gens(0, t.size());
    bool ab_equal = (Sa == Sb);
    bool bc_equal = (Sb == Sc);
    for (int ia = 0; ia < Sa.dim(); ++ia) {
        std::vector<fe> a = Sa.basis_vector(ia);
        int jb0 = ab_equal ? ia + 1 : 0;
        for (int jb = jb0; jb < Sb.dim(); ++jb) {
            std::vector<fe> b = Sb.basis_vector(jb);
            int kc0 = bc_equal ? jb + 1 : 0;
            for (int kc = kc0; kc < Sc.dim(); ++kc) {
                Mv w = wedge3(F, a, b, Sc.basis_vector(kc), n);
                if (!w.is_zero()) gens.append_row(w.c);
            }
        }
    }
    if (gens.rows == 0) gens = Matrix(1, t.size());
    return Subspace(F, t.size(), std::move(gens));
}

bool in_sum_of_spans(const Fp& F, const Mv& m, const std::vector<Subspace>& spaces) {
    const KTable& t = KTable::get(m.n, m.k);
    Matrix stack(0, t.size());
    for (const auto& s : spaces) {
        if (s.ambient() != t.size()) throw DimensionMismatch("in_sum_of_spans ambient");
        for (int i = 0; i < s.dim(); ++i) stack.append_row(s.basis_vector(i));
    }
    int base = rank(F, stack);
    stack.append_row(m.c);
    return rank(F, stack) == base;
}

Mv change_basis(const Fp& F, const Mv& tri, const Matrix& basis_columns) {
    if (tri.k != 3) throw DimensionMismatch("change_basis");
    Matrix dual = inverse(F, basis_columns);  // rows are the dual covectors
    const KTable& t = KTable::get(tri.n, 3);
    Mv out(tri.n, 3);
    for (int idx = 0; idx < t.size(); ++idx) {
        int a = t.elems[idx][0], b = t.elems[idx][1], c = t.elems[idx][2];
        out.c[idx] = triple_eval(F, tri, dual.row_vec(a), dual.row_vec(b), dual.row_vec(c));
    }
    return out;
}

Mv reduce_mod_line(const Fp& F, const Mv& tri, const std::vector<fe>& line) {
    int n = tri.n;
    Subspace L = Subspace::span_of(F, {line});
    if (L.dim() != 1) throw DimensionMismatch("reduce_mod_line");
    // Extend the line to a basis (line first, then standard vectors filling in).
    Matrix basis(0, n);
    basis.append_row(line);
    Subspace acc = L;
    for (int i = 0; i < n && basis.rows < n; ++i) {
        std::vector<fe> e(n, 0);
        e[i] = 1;
        if (acc.contains(F, e)) continue;
        basis.append_row(e);
        acc = acc.sum(F, Subspace::span_of(F, {e}));
    }
    Mv adapted = change_basis(F, tri, basis.transposed());
    // Quotient chart: coefficients of triples avoiding the line slot 0.
    const KTable& tin = KTable::get(n, 3);
    const KTable& tout = KTable::get(n - 1, 3);
    Mv out(n - 1, 3);
    for (int idx = 0; idx < tin.size(); ++idx) {
        if (tin.elems[idx][0] == 0) continue;
        std::uint16_t m = tin.masks[idx] >> 1;
        out.c[tout.index(m)] = adapted.c[idx];
    }
    return out;
}

}  // namespace coble
