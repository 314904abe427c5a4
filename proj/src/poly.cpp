#include "coble/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "coble/errors.hpp"

namespace coble {

std::uint64_t pack_exps(const std::array<std::uint8_t, 9>& e) {
    std::uint64_t p = 0;
    for (int i = 0; i < 9; ++i) p = (p << 7) | e[i];
    return p;
}

namespace {

void gen_exps(int nvars, int degree, int var, std::array<std::uint8_t, 9>& cur,
              std::vector<std::array<std::uint8_t, 9>>& out) {
    if (var == nvars - 1) {
        cur[var] = static_cast<std::uint8_t>(degree);
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[var] = static_cast<std::uint8_t>(e);
        gen_exps(nvars, degree - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

}  // namespace

const MonTable& MonTable::get(int nvars, int degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, MonTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, degree);
    auto it = cache.find(key);
    if (it == cache.end()) {
        MonTable t;
        t.nvars = nvars;
        t.degree = degree;
        std::array<std::uint8_t, 9> cur{};
        gen_exps(nvars, degree, 0, cur, t.exps);
        t.lookup_.reserve(t.exps.size());
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            t.lookup_.emplace_back(pack_exps(t.exps[i]), static_cast<int>(i));
        std::sort(t.lookup_.begin(), t.lookup_.end());
        it = cache.emplace(key, std::move(t)).first;
    }
    return it->second;
}

int MonTable::index_of(const std::array<std::uint8_t, 9>& e) const {
    std::uint64_t p = pack_exps(e);
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(p, -1));
    if (it == lookup_.end() || it->first != p) throw DimensionMismatch("monomial lookup");
    return it->second;
}

Form form_add(const Fp& F, const Form& a, const Form& b) {
    if (a.nvars != b.nvars || a.degree != b.degree) throw DimensionMismatch("form_add");
    Form r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
    return r;
}

Form form_sub(const Fp& F, const Form& a, const Form& b) {
    if (a.nvars != b.nvars || a.degree != b.degree) throw DimensionMismatch("form_sub");
    Form r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
    return r;
}

Form form_scale(const Fp& F, fe s, const Form& a) {
    Form r = a;
    for (auto& x : r.c) x = F.mul(s, x);
    return r;
}

Form form_mul(const Fp& F, const Form& a, const Form& b) {
    if (a.nvars != b.nvars) throw DimensionMismatch("form_mul");
    const MonTable& ta = MonTable::get(a.nvars, a.degree);
    const MonTable& tb = MonTable::get(b.nvars, b.degree);
    Form r(a.nvars, a.degree + b.degree);
    const MonTable& tr = MonTable::get(r.nvars, r.degree);
    for (int i = 0; i < ta.size(); ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < tb.size(); ++j) {
            if (!b.c[j]) continue;
            std::array<std::uint8_t, 9> e{};
            for (int v = 0; v < a.nvars; ++v)
                e[v] = static_cast<std::uint8_t>(ta.exps[i][v] + tb.exps[j][v]);
            int out = tr.index_of(e);
            r.c[out] = F.add(r.c[out], F.mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

Form form_mul_linear(const Fp& F, const Form& a, const std::vector<fe>& lin) {
    Form l(a.nvars, 1);
    for (int i = 0; i < a.nvars; ++i) l.c[i] = lin[i];
    return form_mul(F, a, l);
}

fe form_eval(const Fp& F, const Form& f, const std::vector<fe>& x) {
    const MonTable& t = MonTable::get(f.nvars, f.degree);
    std::uint64_t acc = 0;
    for (int i = 0; i < t.size(); ++i) {
        if (!f.c[i]) continue;
        fe m = 1;
        for (int v = 0; v < f.nvars; ++v)
            for (int e = 0; e < t.exps[i][v]; ++e) m = F.mul(m, x[v]);
        acc += static_cast<std::uint64_t>(f.c[i]) * m;
        if (acc >= (1ULL << 61)) acc = F.reduce(acc);
    }
    return F.reduce(acc);
}

Form form_derivative(const Fp& F, const Form& f, int var) {
    if (f.degree == 0) return Form(f.nvars, 0);
    const MonTable& t = MonTable::get(f.nvars, f.degree);
    Form r(f.nvars, f.degree - 1);
    const MonTable& tr = MonTable::get(f.nvars, f.degree - 1);
    for (int i = 0; i < t.size(); ++i) {
        if (!f.c[i] || !t.exps[i][var]) continue;
        std::array<std::uint8_t, 9> e = t.exps[i];
        fe coef = F.mul(f.c[i], e[var] % F.q());
        if (!coef) continue;
        e[var] -= 1;
        int out = tr.index_of(e);
        r.c[out] = F.add(r.c[out], coef);
    }
    return r;
}

std::vector<fe> form_gradient_at(const Fp& F, const Form& f, const std::vector<fe>& x) {
    std::vector<fe> g(f.nvars);
    for (int v = 0; v < f.nvars; ++v) g[v] = form_eval(F, form_derivative(F, f, v), x);
    return g;
}

Form form_normalized(const Fp& F, Form f) {
    for (fe x : f.c)
        if (x) {
            if (x != 1) {
                fe s = F.inv(x);
                for (auto& y : f.c) y = F.mul(s, y);
            }
            return f;
        }
    return f;
}

std::vector<fe> form_on_line(const Fp& F, const Form& f, const std::vector<fe>& base,
                             const std::vector<fe>& dir) {
    // Evaluate at t = 0..degree and interpolate; q > degree always holds here.
    int d = f.degree;
    std::vector<fe> vals(d + 1);
    std::vector<fe> x(f.nvars);
    for (int t = 0; t <= d; ++t) {
        for (int v = 0; v < f.nvars; ++v)
            x[v] = F.add(base[v], F.mul(static_cast<fe>(t % F.q()), dir[v]));
        vals[t] = form_eval(F, f, x);
    }
    // Solve the Vandermonde system V c = vals with nodes 0..d.
    Matrix V(d + 1, d + 1);
    for (int r = 0; r <= d; ++r) {
        fe node = static_cast<fe>(r % F.q());
        fe p = 1;
        for (int c = 0; c <= d; ++c) {
            V.at(r, c) = p;
            p = F.mul(p, node);
        }
    }
    Matrix B(d + 1, 1);
    for (int r = 0; r <= d; ++r) B.at(r, 0) = vals[r];
    Solution s = solve_dense(F, V, B);
    std::vector<fe> coeffs(d + 1);
    for (int r = 0; r <= d; ++r) coeffs[r] = s.particular.at(r, 0);
    return coeffs;
}

Form form_restrict(const Fp& F, const Form& f, const Matrix& S) {
    if (S.cols != f.nvars) throw DimensionMismatch("form_restrict");
    int m = S.rows;
    const MonTable& t = MonTable::get(f.nvars, f.degree);
    Form r(m, f.degree);
    for (int i = 0; i < t.size(); ++i) {
        if (!f.c[i]) continue;
        Form term(m, 0);
        term.c[0] = f.c[i];
        for (int v = 0; v < f.nvars; ++v) {
            for (int e = 0; e < t.exps[i][v]; ++e) {
                std::vector<fe> lin(m);
                for (int rr = 0; rr < m; ++rr) lin[rr] = S.at(rr, v);
                term = form_mul_linear(F, term, lin);
            }
        }
        r = form_add(F, r, term);
    }
    return r;
}

CompiledCubic CompiledCubic::compile(const Form& f) {
    if (f.degree != 3) throw DimensionMismatch("CompiledCubic wants degree 3");
    CompiledCubic cc;
    cc.nvars = f.nvars;
    const MonTable& t = MonTable::get(f.nvars, 3);
    int last = f.nvars - 1;
    for (int i = 0; i < t.size(); ++i) {
        if (!f.c[i]) continue;
        int tdeg = t.exps[i][last];
        Term term;
        term.v = {-1, -1, -1};
        term.coeff = f.c[i];
        int slot = 0;
        for (int v = 0; v < last; ++v)
            for (int e = 0; e < t.exps[i][v]; ++e) term.v[slot++] = static_cast<std::int8_t>(v);
        cc.by_tdeg[tdeg].push_back(term);
    }
    return cc;
}

std::array<fe, 4> CompiledCubic::line_coeffs(const Fp& F, const fe* prefix) const {
    std::array<fe, 4> out{0, 0, 0, 0};
    for (int d = 0; d < 4; ++d) {
        std::uint64_t acc = 0;
        for (const Term& t : by_tdeg[d]) {
            fe m = t.coeff;
            for (int s = 0; s < 3 - d; ++s) m = F.mul(m, prefix[t.v[s]]);
            acc += m;
            if (acc >= (1ULL << 61)) acc = F.reduce(acc);
        }
        out[d] = F.reduce(acc);
    }
    return out;
}

fe CompiledCubic::eval(const Fp& F, const fe* x) const {
    std::array<fe, 4> c = line_coeffs(F, x);
    fe t = x[nvars - 1];
    // Horner in the last variable
    return F.add(c[0], F.mul(t, F.add(c[1], F.mul(t, F.add(c[2], F.mul(t, c[3]))))));
}

}  // namespace coble
