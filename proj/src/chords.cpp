#include "coble/chords.hpp"

#include <algorithm>

#include "coble/errors.hpp"
#include "coble/trivector.hpp"

namespace coble {

namespace {

constexpr int kRetries = 8;

struct TwoFormSplit {
    std::vector<fe> u, v, w;  // alpha = v1^u + v^w, coordinates of the host space
};

// Split a rank-four two-form with v1 ^ alpha ^ alpha = 0 as v1^u + v^w.
// The support L of alpha contains v1; a generic u in L moves alpha along
// the pencil spanned by alpha and v1^u, which meets the rank-two quadric in
// one further point.
TwoFormSplit split_rank_four(const Fp& F, const Mv& alpha, const std::vector<fe>& v1c, Rng& rng) {
    int n = alpha.n;
    const KTable& t2 = KTable::get(n, 2);
    Matrix Ma(n, n);
    for (int i = 0; i < t2.size(); ++i) {
        if (!alpha.c[i]) continue;
        Ma.at(t2.elems[i][0], t2.elems[i][1]) = alpha.c[i];
        Ma.at(t2.elems[i][1], t2.elems[i][0]) = F.neg(alpha.c[i]);
    }
    Subspace L(F, n, Ma, Side::vectors);
    if (L.dim() != 4) throw DegenerateChord("two-form rank != 4");
    if (!L.contains(F, v1c)) throw DegenerateChord("contraction line outside the support");

    Mv v1m = mv_from_vector(n, v1c);
    Mv alpha2 = wedge(F, alpha, alpha);
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        std::vector<fe> uc(n, 0);
        for (int i = 0; i < L.dim(); ++i) {
            fe s = rng.residue(F.q());
            const auto b = L.basis_vector(i);
            for (int k = 0; k < n; ++k) uc[k] = F.add(uc[k], F.mul(s, b[k]));
        }
        Matrix dep(0, n);
        dep.append_row(v1c);
        dep.append_row(uc);
        if (rank(F, dep) != 2) continue;  // u must be independent of v1
        Mv vu = wedge(F, v1m, mv_from_vector(n, uc));
        Mv B = wedge(F, vu, alpha);
        int pivot = -1;
        for (std::size_t i = 0; i < B.c.size(); ++i)
            if (B.c[i]) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) continue;  // v1^u^alpha = 0: unlucky u
        // alpha^alpha + 2t v1^u^alpha = 0 in the line Lambda^4 L
        fe two = F.from_int(2);
        fe tval = F.neg(F.mul(alpha2.c[pivot], F.inv(F.mul(two, B.c[pivot]))));
        Mv check = mv_add(F, alpha2, mv_scale(F, F.mul(two, tval), B));
        if (!check.is_zero()) continue;
        Mv gamma = mv_add(F, alpha, mv_scale(F, tval, vu));
        if (gamma.is_zero()) throw DegenerateChord("split collapsed to rank two");
        if (!wedge(F, gamma, gamma).is_zero()) continue;
        // factor the rank-two form through its support
        Matrix Mg(n, n);
        for (int i = 0; i < t2.size(); ++i) {
            if (!gamma.c[i]) continue;
            Mg.at(t2.elems[i][0], t2.elems[i][1]) = gamma.c[i];
            Mg.at(t2.elems[i][1], t2.elems[i][0]) = F.neg(gamma.c[i]);
        }
        Subspace img(F, n, Mg, Side::vectors);
        if (img.dim() != 2) throw DegenerateChord("decomposable factor has bad support");
        std::vector<fe> x = img.basis_vector(0), y = img.basis_vector(1);
        Mv xy = wedge(F, mv_from_vector(n, x), mv_from_vector(n, y));
        int pv = -1;
        for (std::size_t i = 0; i < xy.c.size(); ++i)
            if (xy.c[i]) {
                pv = static_cast<int>(i);
                break;
            }
        fe lambda = F.mul(gamma.c[pv], F.inv(xy.c[pv]));
        if (!(mv_scale(F, lambda, xy) == gamma)) throw DegenerateChord("factorization mismatch");
        TwoFormSplit out;
        out.v = x;
        out.w = y;
        for (auto& c : out.w) c = F.mul(lambda, c);
        out.u = uc;
        for (auto& c : out.u) c = F.mul(F.neg(tval), c);
        // exact reassembly of the split piece
        Mv rebuilt = mv_add(F, wedge(F, v1m, mv_from_vector(n, out.u)),
                            wedge(F, mv_from_vector(n, out.v), mv_from_vector(n, out.w)));
        if (!(rebuilt == alpha)) throw DegenerateChord("split reassembly failed");
        return out;
    }
    throw DegenerateChord("no usable direction in the support");
}

std::vector<fe> to_std_coords(const Fp& F, const Matrix& rows, const std::vector<fe>& coords) {
    return vec_mat(F, coords, rows);
}

}  // namespace

ChordFrame build_chord_frame(const PfaffianGeometry& G, const std::vector<fe>& P,
                             const std::vector<fe>& Q, Rng& rng) {
    const Fp& F = G.field();
    if (P == Q) throw DegenerateChord("coincident points");
    if (!G.on_abelian(P) || !G.on_abelian(Q)) throw DegenerateChord("input off the surface");

    ChordFrame fr;
    fr.P = P;
    fr.Q = Q;
    fr.v1 = double_contract(F, G.omega(), P, Q);
    if (is_zero_vec(fr.v1)) throw ZeroContraction();

    Matrix pq(0, 9);
    pq.append_row(P);
    pq.append_row(Q);
    fr.V7 = Subspace(F, 9, kernel_basis(F, pq), Side::vectors);
    if (fr.V7.dim() != 7) throw DegenerateChord("points are projectively equal");

    Matrix rhs(2, 2);
    rhs.at(0, 0) = 1;
    rhs.at(1, 1) = 1;
    Solution sol = solve_dense(F, pq, rhs);  // columns: vP, vQ
    fr.vP.resize(9);
    fr.vQ.resize(9);
    for (int i = 0; i < 9; ++i) {
        fr.vP[i] = sol.particular.at(i, 0);
        fr.vQ[i] = sol.particular.at(i, 1);
    }

    // adapted basis (vP, vQ, basis of V7)
    Matrix T(0, 9);
    T.append_row(fr.vP);
    T.append_row(fr.vQ);
    for (int i = 0; i < 7; ++i) T.append_row(fr.V7.basis_vector(i));
    Mv om = change_basis(F, G.omega(), T.transposed());

    const KTable& t3 = KTable::get(9, 3);
    std::vector<fe> v1c(7, 0);
    Mv alpha(7, 2), beta(7, 2), sigma(7, 3);
    const KTable& s2 = KTable::get(7, 2);
    const KTable& s3 = KTable::get(7, 3);
    for (int idx = 0; idx < t3.size(); ++idx) {
        fe c = om.c[idx];
        if (!c) continue;
        int a = t3.elems[idx][0], b = t3.elems[idx][1], d = t3.elems[idx][2];
        if (a == 0 && b == 1)
            v1c[d - 2] = c;
        else if (a == 0)
            alpha.c[s2.index(static_cast<std::uint16_t>((1u << (b - 2)) | (1u << (d - 2))))] = c;
        else if (a == 1)
            beta.c[s2.index(static_cast<std::uint16_t>((1u << (b - 2)) | (1u << (d - 2))))] = c;
        else
            sigma.c[s3.index(static_cast<std::uint16_t>((1u << (a - 2)) | (1u << (b - 2)) |
                                                        (1u << (d - 2))))] = c;
    }

    const Matrix& b7 = fr.V7.basis();
    std::vector<fe> v1_std = to_std_coords(F, b7, v1c);
    if (v1_std != fr.v1) throw DegenerateChord("contraction extraction mismatch");

    TwoFormSplit sa = split_rank_four(F, alpha, v1c, rng);
    TwoFormSplit sb = split_rank_four(F, beta, v1c, rng);

    // global reassembly check in the adapted chart
    {
        auto lift7 = [&](const std::vector<fe>& c7) {
            std::vector<fe> c9(9, 0);
            for (int i = 0; i < 7; ++i) c9[i + 2] = c7[i];
            return mv_from_vector(9, c9);
        };
        std::vector<fe> e0(9, 0), e1(9, 0);
        e0[0] = 1;
        e1[1] = 1;
        Mv m0 = mv_from_vector(9, e0), m1 = mv_from_vector(9, e1);
        Mv v1l = lift7(v1c);
        Mv rebuilt = wedge(F, wedge(F, m0, m1), v1l);
        rebuilt = mv_add(F, rebuilt, wedge(F, m0, wedge(F, v1l, lift7(sa.u))));
        rebuilt = mv_add(F, rebuilt, wedge(F, m0, wedge(F, lift7(sa.v), lift7(sa.w))));
        rebuilt = mv_add(F, rebuilt, wedge(F, m1, wedge(F, v1l, lift7(sb.u))));
        rebuilt = mv_add(F, rebuilt, wedge(F, m1, wedge(F, lift7(sb.v), lift7(sb.w))));
        const KTable& t39 = KTable::get(9, 3);
        Mv sigl(9, 3);
        for (int idx = 0; idx < s3.size(); ++idx) {
            if (!sigma.c[idx]) continue;
            std::uint16_t m = static_cast<std::uint16_t>(s3.masks[idx] << 2);
            sigl.c[t39.index(m)] = sigma.c[idx];
        }
        rebuilt = mv_add(F, rebuilt, sigl);
        if (!(rebuilt == om)) throw DegenerateChord("reassembly mismatch");
    }

    fr.u = to_std_coords(F, b7, sa.u);
    fr.v = to_std_coords(F, b7, sa.v);
    fr.w = to_std_coords(F, b7, sa.w);
    fr.u2 = to_std_coords(F, b7, sb.u);
    fr.v2 = to_std_coords(F, b7, sb.v);
    fr.w2 = to_std_coords(F, b7, sb.w);

    fr.u5_rows = Matrix(0, 9);
    fr.u5_rows.append_row(fr.v1);
    fr.u5_rows.append_row(fr.v);
    fr.u5_rows.append_row(fr.w);
    fr.u5_rows.append_row(fr.v2);
    fr.u5_rows.append_row(fr.w2);
    fr.U5 = Subspace(F, 9, fr.u5_rows, Side::vectors);
    if (fr.U5.dim() != 5) throw DegenerateChord("U5 degenerates");

    Matrix u4(0, 9);
    u4.append_row(fr.vP);
    u4.append_row(fr.vQ);
    u4.append_row(fr.u);
    u4.append_row(fr.u2);
    fr.U4 = Subspace(F, 9, u4, Side::vectors);
    if (fr.U4.dim() != 4 || fr.U4.sum(F, fr.U5).dim() != 9)
        throw DegenerateChord("U4 + U5 does not span");

    // sigma over V7 = <u> + <u2> + U5, in the chart (u, u2, v1, v, w, v2, w2)
    Matrix c7(0, 7);
    c7.append_row(sa.u);
    c7.append_row(sb.u);
    c7.append_row(v1c);
    c7.append_row(sa.v);
    c7.append_row(sa.w);
    c7.append_row(sb.v);
    c7.append_row(sb.w);
    Mv sig_ad = change_basis(F, sigma, c7.transposed());
    fr.sigma0.assign(5, 0);
    fr.sigma_u = Mv(5, 2);
    fr.sigma_u2 = Mv(5, 2);
    const KTable& f2 = KTable::get(5, 2);
    for (int idx = 0; idx < s3.size(); ++idx) {
        fe c = sig_ad.c[idx];
        if (!c) continue;
        int a = s3.elems[idx][0], b = s3.elems[idx][1], d = s3.elems[idx][2];
        if (a == 0 && b == 1)
            fr.sigma0[d - 2] = c;
        else if (a == 0)
            fr.sigma_u.c[f2.index(static_cast<std::uint16_t>((1u << (b - 2)) | (1u << (d - 2))))] = c;
        else if (a == 1)
            fr.sigma_u2.c[f2.index(static_cast<std::uint16_t>((1u << (b - 2)) | (1u << (d - 2))))] = c;
    }
    return fr;
}

namespace {

// Columns v1 ^ sigma0 ^ {v^w, v2^w2, sigma_u, sigma_u2} in Lambda^4 U5,
// using the chart where U5 has basis (v1, v, w, v2, w2).
Matrix chord_kernel_system(const Fp& F, const ChordFrame& fr) {
    std::vector<fe> e0(5, 0);
    e0[0] = 1;
    Mv v1m = mv_from_vector(5, e0);
    Mv s0 = mv_from_vector(5, fr.sigma0);
    Mv head = wedge(F, v1m, s0);
    std::vector<fe> e1(5, 0), e2(5, 0), e3(5, 0), e4(5, 0);
    e1[1] = e2[2] = e3[3] = e4[4] = 1;
    Mv vw = wedge(F, mv_from_vector(5, e1), mv_from_vector(5, e2));
    Mv vw2 = wedge(F, mv_from_vector(5, e3), mv_from_vector(5, e4));
    Mv cols[4] = {wedge(F, head, vw), wedge(F, head, vw2), wedge(F, head, fr.sigma_u),
                  wedge(F, head, fr.sigma_u2)};
    Matrix M(5, 4);
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 5; ++i) M.at(i, j) = cols[j].c[i];
    return M;
}

std::vector<fe> covector_from_u4_values(const Fp& F, const ChordFrame& fr,
                                        const std::vector<fe>& vals) {
    Matrix G9(0, 9);
    G9.append_row(fr.vP);
    G9.append_row(fr.vQ);
    G9.append_row(fr.u);
    G9.append_row(fr.u2);
    for (int i = 0; i < 5; ++i) G9.append_row(fr.u5_rows.row_vec(i));
    Matrix inv = inverse(F, G9.transposed());  // rows: dual basis
    std::vector<fe> r(9, 0);
    for (int i = 0; i < 4; ++i) {
        if (!vals[i]) continue;
        for (int k = 0; k < 9; ++k) r[k] = F.add(r[k], F.mul(vals[i], inv.at(i, k)));
    }
    return r;
}

void check_triple(const PfaffianGeometry& G, ChordTriple& tr) {
    const Fp& F = G.field();
    Matrix pencil(0, 9);
    pencil.append_row(tr.P);
    pencil.append_row(tr.Q);
    pencil.append_row(tr.R);
    if (rank(F, pencil) != 3) throw DegenerateChord("third point in the input pencil");
    if (!G.on_abelian(tr.R)) throw DegenerateChord("third point off the surface");
    std::vector<fe> l1 = normalize_point(F, double_contract(F, G.omega(), tr.P, tr.R));
    std::vector<fe> l2 = normalize_point(F, double_contract(F, G.omega(), tr.Q, tr.R));
    if (l1 != tr.line || l2 != tr.line) throw DegenerateChord("contraction lines disagree");
}

}  // namespace

ChordTriple third_point(const PfaffianGeometry& G, const std::vector<fe>& P,
                        const std::vector<fe>& Q, Rng& rng) {
    const Fp& F = G.field();
    ChordFrame fr = build_chord_frame(G, P, Q, rng);
    Matrix sys = chord_kernel_system(F, fr);
    Matrix K = kernel_basis(F, sys);
    if (K.rows != 1) throw DegenerateChord("chord system kernel dimension " + std::to_string(K.rows));
    ChordTriple tr;
    tr.P = P;
    tr.Q = Q;
    tr.R = normalize_point(F, covector_from_u4_values(F, fr, K.row_vec(0)));
    if (is_zero_vec(tr.R)) throw DegenerateChord("zero third point");
    tr.line = normalize_point(F, fr.v1);
    check_triple(G, tr);
    return tr;
}

ChordTriple third_point_oracle(const PfaffianGeometry& G, const std::vector<fe>& P,
                               const std::vector<fe>& Q, Rng& rng) {
    const Fp& F = G.field();
    if (F.q() > 31) throw FieldTooLarge(F.q(), 31);
    ChordFrame fr = build_chord_frame(G, P, Q, rng);
    // covectors vanishing on U5
    Matrix ann = kernel_basis(F, fr.u5_rows);  // 4 rows
    std::vector<std::vector<fe>> hits;
    projective_scan(F, 4, {}, 1, [&](int, const std::vector<fe>& c) {
        std::vector<fe> r = normalize_point(F, vec_mat(F, c, ann));
        if (r == P || r == Q) return;
        if (G.on_abelian(r)) hits.push_back(r);
    });
    if (hits.size() != 1) throw NotUnique(static_cast<int>(hits.size()));
    ChordTriple tr;
    tr.P = P;
    tr.Q = Q;
    tr.R = hits.front();
    tr.line = normalize_point(F, fr.v1);
    check_triple(G, tr);
    return tr;
}

GroupContext::GroupContext(const PfaffianGeometry& G, std::vector<std::vector<fe>> pool,
                           std::uint64_t seed)
    : G_(&G), pool_(std::move(pool)), seed_(seed), rng_(Rng(seed).split("group")) {
    std::sort(pool_.begin(), pool_.end());
    pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
    if (pool_.size() < 3) throw DegenerateChord("group bootstrap needs at least 3 points");
    E_ = pool_.front();
    OE_ = tangent_completion(E_);
}

std::vector<fe> GroupContext::random_point(Rng& rng) const {
    return pool_[rng.below(pool_.size())];
}

std::vector<fe> GroupContext::pick_other(Rng& rng,
                                         const std::vector<const std::vector<fe>*>& avoid) const {
    for (int i = 0; i < 64; ++i) {
        const auto& cand = pool_[rng.below(pool_.size())];
        bool ok = true;
        for (const auto* a : avoid)
            if (*a == cand) {
                ok = false;
                break;
            }
        if (ok) return cand;
    }
    throw DegenerateChord("auxiliary pool exhausted");
}

ChordTriple GroupContext::third(const std::vector<fe>& P, const std::vector<fe>& Q) const {
    Rng sub = rng_.split("third");
    try {
        return third_point(*G_, P, Q, sub);
    } catch (const DegenerateChord&) {
    } catch (const ZeroContraction&) {
        throw;
    }
    if (G_->field().q() <= 31) {
        Rng sub2 = rng_.split("oracle");
        try {
            return third_point_oracle(*G_, P, Q, sub2);
        } catch (const NotUnique&) {
            throw DegenerateChord("oracle fallback not unique");
        }
    }
    throw DegenerateChord("constructive chord failed and oracle is gated");
}

std::vector<fe> GroupContext::add(const std::vector<fe>& P, const std::vector<fe>& Q) const {
    if (P == Q) return dbl(P);
    if (P == E_) return Q;
    if (Q == E_) return P;
    std::vector<fe> R = third(P, Q).R;
    if (R == E_) return OE_;  // P (+) Q closes the chord at the identity
    return third(E_, R).R;
}

std::vector<fe> GroupContext::tangent_completion(const std::vector<fe>& P) const {
    Rng local = rng_.split("tangent");
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        try {
            std::vector<fe> T1 = pick_other(local, {&P});
            std::vector<fe> T2 = pick_other(local, {&P,
                                                    &T1});
            std::vector<fe> X1 = third(P, T1).R;
            std::vector<fe> X2 = third(P, T2).R;
            if (X1 == X2) continue;
            std::vector<fe> X3 = third(X1, X2).R;
            std::vector<fe> X4 = third(T1, T2).R;
            if (X3 == X4) continue;  // (P,T1,T2) was itself a chord
            return third(X3, X4).R;
        } catch (const DegenerateChord&) {
        } catch (const ZeroContraction&) {
        }
    }
    throw DegenerateChord("tangent completion exhausted retries");
}

std::vector<fe> GroupContext::neg(const std::vector<fe>& P) const {
    if (P == E_) return E_;
    if (P != OE_) {
        try {
            return third(OE_, P).R;
        } catch (const DegenerateChord&) {
        } catch (const ZeroContraction&) {
        }
    }
    // shift by an auxiliary: neg(P) = neg(P (+) T) (+) T
    Rng local = rng_.split("neg");
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        try {
            std::vector<fe> T = pick_other(local, {&P,
                                                   &E_});
            std::vector<fe> shifted = add(P, T);
            if (shifted == OE_ || shifted == E_) continue;
            return add(third(OE_, shifted).R, T);
        } catch (const DegenerateChord&) {
        } catch (const ZeroContraction&) {
        }
    }
    throw DegenerateChord("negation exhausted retries");
}

std::vector<fe> GroupContext::dbl(const std::vector<fe>& P) const {
    Rng local = rng_.split("dbl");
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        try {
            std::vector<fe> T = pick_other(local, {&P,
                                                   &E_});
            std::vector<fe> a = add(P, T);
            if (a == P) continue;
            std::vector<fe> b = add(a, P);
            std::vector<fe> nT = neg(T);
            if (b == nT) continue;
            return add(b, nT);
        } catch (const DegenerateChord&) {
        } catch (const ZeroContraction&) {
        }
    }
    throw DegenerateChord("doubling exhausted retries");
}

std::vector<fe> GroupContext::scalar_mul(std::int64_t n, const std::vector<fe>& P) const {
    if (n < 0) return neg(scalar_mul(-n, P));
    std::vector<fe> result = E_;
    std::vector<fe> base = P;
    std::uint64_t k = static_cast<std::uint64_t>(n);
    while (k) {
        if (k & 1) result = (result == base) ? dbl(base) : add(result, base);
        k >>= 1;
        if (k) base = dbl(base);
    }
    return result;
}

GroupContext make_group(const PfaffianGeometry& G, std::uint64_t seed, int threads) {
    Rng rng = Rng(seed).split("bootstrap");
    std::vector<std::vector<fe>> pool = bootstrap_points(G, 24, rng, threads);
    return GroupContext(G, std::move(pool), seed);
}

}  // namespace coble
