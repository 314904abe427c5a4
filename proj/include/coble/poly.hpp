#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coble/fp.hpp"
#include "coble/matrix.hpp"

namespace coble {

// Monomials of a fixed total degree in nvars variables, in lexicographically
// decreasing exponent order: x0^d first, xlast^d last. The order is part of
// the serialized form format.
struct MonTable {
    int nvars = 0, degree = 0;
    std::vector<std::array<std::uint8_t, 9>> exps;

    static const MonTable& get(int nvars, int degree);
    int size() const { return static_cast<int>(exps.size()); }
    int index_of(const std::array<std::uint8_t, 9>& e) const;

  private:
    mutable std::vector<std::pair<std::uint64_t, int>> lookup_;  // packed exp -> index, sorted
    friend const MonTable& mon_table_build(int, int);
};

std::uint64_t pack_exps(const std::array<std::uint8_t, 9>& e);

// Dense homogeneous form of degree d in nvars variables.
struct Form {
    int nvars = 0, degree = 0;
    std::vector<fe> c;

    Form() = default;
    Form(int nv, int d) : nvars(nv), degree(d), c(MonTable::get(nv, d).size(), 0) {}

    bool is_zero() const {
        for (fe x : c)
            if (x) return false;
        return true;
    }
};

Form form_add(const Fp& F, const Form& a, const Form& b);
Form form_sub(const Fp& F, const Form& a, const Form& b);
Form form_scale(const Fp& F, fe s, const Form& a);
Form form_mul(const Fp& F, const Form& a, const Form& b);
Form form_mul_linear(const Fp& F, const Form& a, const std::vector<fe>& lin);

fe form_eval(const Fp& F, const Form& f, const std::vector<fe>& x);
Form form_derivative(const Fp& F, const Form& f, int var);
std::vector<fe> form_gradient_at(const Fp& F, const Form& f, const std::vector<fe>& x);

// First nonzero coefficient in monomial order scaled to 1.
Form form_normalized(const Fp& F, Form f);

// Coefficients (t^0 .. t^degree) of f(base + t * dir).
std::vector<fe> form_on_line(const Fp& F, const Form& f, const std::vector<fe>& base,
                             const std::vector<fe>& dir);

// f composed with the linear map x = c * S (rows of S span the slice), as a
// form in S.rows variables.
Form form_restrict(const Fp& F, const Form& f, const Matrix& S);

// One monomial resolved into its variable indices (i <= j <= k for cubics);
// evaluation-friendly layout for the scan prefilters.
struct CompiledCubic {
    // grouped by degree in the last variable: value(prefix, t) =
    // g0(prefix) + g1(prefix) t + g2(prefix) t^2 + g3 t^3
    struct Term {
        std::array<std::int8_t, 3> v;  // variable indices, -1 padding
        fe coeff;
    };
    int nvars = 0;
    std::array<std::vector<Term>, 4> by_tdeg;  // terms with last-var degree 0..3

    static CompiledCubic compile(const Form& f);
    // Coefficients in t of f(x) with x = prefix except x[last] = t.
    std::array<fe, 4> line_coeffs(const Fp& F, const fe* prefix) const;
    fe eval(const Fp& F, const fe* x) const;
};

}  // namespace coble
