#include "coble/pfaffloci.hpp"

#include <bit>

#include "coble/errors.hpp"

namespace coble {

PfaffianGeometry::PfaffianGeometry(const Fp& F, const Trivector& omega)
    : F_(F), omega_(omega) {
    if (omega.n != 9 || omega.k != 3) throw DimensionMismatch("PfaffianGeometry wants a 9-variable trivector");
}

int PfaffianGeometry::rank_at(const std::vector<fe>& p) const {
    Matrix M = skew_matrix(F_, omega_, p);
    return rank(F_, M);
}

void PfaffianGeometry::build_pfaffians() const {
    if (built_) return;
    // M[a][b] as a linear form in p: each coefficient c_ijk contributes
    // c p_i to M[j][k], -c p_j to M[i][k], c p_k to M[i][j].
    linear_entries_.assign(81, Form(9, 1));
    const KTable& t = KTable::get(9, 3);
    auto ent = [&](int a, int b) -> Form& { return linear_entries_[a * 9 + b]; };
    for (int idx = 0; idx < t.size(); ++idx) {
        fe c = omega_.c[idx];
        if (!c) continue;
        int i = t.elems[idx][0], j = t.elems[idx][1], k = t.elems[idx][2];
        ent(j, k).c[i] = F_.add(ent(j, k).c[i], c);
        ent(i, k).c[j] = F_.sub(ent(i, k).c[j], c);
        ent(i, j).c[k] = F_.add(ent(i, j).c[k], c);
    }
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < a; ++b)
            for (int v = 0; v < 9; ++v) ent(a, b).c[v] = F_.neg(ent(b, a).c[v]);
    pf_cache_.clear();
    pf_cache_[0] = Form(9, 0);
    pf_cache_[0].c[0] = 1;

    surface_cubics_.clear();
    surface_gradients_.clear();
    const KTable& six = KTable::get(9, 6);
    for (int s = 0; s < six.size(); ++s) {
        const Form& f = pf_form(six.masks[s]);
        surface_cubics_.push_back(f);
        std::vector<Form> grads;
        for (int v = 0; v < 9; ++v) grads.push_back(form_derivative(F_, f, v));
        surface_gradients_.push_back(std::move(grads));
    }
    kernel_vector_.clear();
    for (int i = 0; i < 9; ++i) {
        Form h = pf_form(0x1FFu & ~(1u << i));
        if (i & 1)
            for (auto& x : h.c) x = F_.neg(x);
        kernel_vector_.push_back(std::move(h));
    }
    built_ = true;
}

const Form& PfaffianGeometry::pf_form(unsigned mask) const {
    auto it = pf_cache_.find(mask);
    if (it != pf_cache_.end()) return it->second;
    std::vector<int> idx;
    for (int i = 0; i < 9; ++i)
        if (mask & (1u << i)) idx.push_back(i);
    int m = static_cast<int>(idx.size());
    Form acc(9, m / 2);
    for (int j = 1; j < m; ++j) {
        const Form& sub = pf_form(mask & ~(1u << idx[0]) & ~(1u << idx[j]));
        Form term = form_mul_linear(F_, sub, linear_entries_[idx[0] * 9 + idx[j]].c);
        if ((j - 1) & 1)
            acc = form_sub(F_, acc, term);
        else
            acc = form_add(F_, acc, term);
    }
    return pf_cache_.emplace(mask, std::move(acc)).first->second;
}

const std::vector<Form>& PfaffianGeometry::surface_cubics() const {
    build_pfaffians();
    return surface_cubics_;
}

const Form& PfaffianGeometry::pfaffian_vector_component(int i) const {
    build_pfaffians();
    return kernel_vector_[i];
}

const Form& PfaffianGeometry::coble_cubic() const {
    if (coble_built_) return coble_;
    build_pfaffians();
    // kernel_vector_[i] = C * x_i for one cubic C; extract C from the first
    // nonzero component by shifting exponents, then certify all nine
    // identities coefficient-wise.
    const MonTable& quartics = MonTable::get(9, 4);
    const MonTable& cubics = MonTable::get(9, 3);
    int src = -1;
    for (int i = 0; i < 9 && src < 0; ++i)
        if (!kernel_vector_[i].is_zero()) src = i;
    if (src < 0) throw NotDivisible();
    Form C(9, 3);
    const Form& h = kernel_vector_[src];
    for (int m = 0; m < quartics.size(); ++m) {
        if (!h.c[m]) continue;
        std::array<std::uint8_t, 9> e = quartics.exps[m];
        if (e[src] == 0) throw NotDivisible();
        e[src] -= 1;
        C.c[cubics.index_of(e)] = h.c[m];
    }
    for (int i = 0; i < 9; ++i) {
        std::vector<fe> xi(9, 0);
        xi[i] = 1;
        Form prod = form_mul_linear(F_, C, xi);
        if (!(prod.c == kernel_vector_[i].c)) throw NotDivisible();
    }
    coble_ = form_normalized(F_, C);
    coble_built_ = true;
    return coble_;
}

Subspace PfaffianGeometry::kernel5(const std::vector<fe>& p) const {
    Matrix M = skew_matrix(F_, omega_, p);
    Matrix K = kernel_basis(F_, M);
    if (9 - K.rows > 4) throw RankTooHigh();
    return Subspace(F_, 9, K, Side::covectors);
}

Subspace PfaffianGeometry::p4_of(const std::vector<fe>& p) const {
    Matrix M = skew_matrix(F_, omega_, p);
    if (rank(F_, M) > 4) throw RankTooHigh();
    return Subspace(F_, 9, M, Side::vectors);  // rows span the image
}

Subspace PfaffianGeometry::tangent_cone(const std::vector<fe>& p) const {
    build_pfaffians();
    Matrix J(84, 9);
    for (int s = 0; s < 84; ++s)
        for (int v = 0; v < 9; ++v) J.at(s, v) = form_eval(F_, surface_gradients_[s][v], p);
    Matrix K = kernel_basis(F_, J);
    if (K.rows != 3) throw SingularSurfacePoint(K.rows);
    return Subspace(F_, 9, K, Side::covectors);
}

Form cubic_by_interpolation(const Fp& F, const std::vector<std::vector<fe>>& points) {
    const MonTable& cubics = MonTable::get(9, 3);
    Matrix sys(0, cubics.size());
    for (const auto& p : points) {
        std::vector<fe> row(cubics.size());
        for (int m = 0; m < cubics.size(); ++m) {
            fe val = 1;
            for (int v = 0; v < 9; ++v)
                for (int e = 0; e < cubics.exps[m][v]; ++e) val = F.mul(val, p[v]);
            row[m] = val;
        }
        sys.append_row(row);
        for (int d = 0; d < 9; ++d) {
            std::vector<fe> grow(cubics.size(), 0);
            for (int m = 0; m < cubics.size(); ++m) {
                int e = cubics.exps[m][d];
                if (!e) continue;
                fe val = static_cast<fe>(e % F.q());
                for (int v = 0; v < 9; ++v) {
                    int ev = cubics.exps[m][v] - (v == d ? 1 : 0);
                    for (int x = 0; x < ev; ++x) val = F.mul(val, p[v]);
                }
                grow[m] = val;
            }
            sys.append_row(grow);
        }
    }
    Matrix K = kernel_basis(F, sys);
    if (K.rows != 1) throw KernelNotOneDim(K.rows);
    Form G(9, 3);
    G.c = K.row_vec(0);
    return form_normalized(F, G);
}

}  // namespace coble
