#pragma once

#include <map>
#include <vector>

#include "coble/poly.hpp"
#include "coble/subspace.hpp"
#include "coble/trivector.hpp"

namespace coble {

// Geometry of the rank stratification on the hyperplane side: the skew
// matrix M(p) of a trivector contracted with a covector p, its sub-Pfaffian
// forms, the cubic hypersurface cut out by the rank <= 6 condition, and the
// local data (kernel, support, tangent cone) along the rank <= 4 surface.
class PfaffianGeometry {
  public:
    PfaffianGeometry(const Fp& F, const Trivector& omega);

    const Fp& field() const { return F_; }
    const Trivector& omega() const { return omega_; }

    int rank_at(const std::vector<fe>& p) const;
    bool on_abelian(const std::vector<fe>& p) const { return rank_at(p) <= 4; }

    // The cubic C with Pf_i(p) = +-C(p) p_i for the nine principal 8x8
    // sub-Pfaffians; verified as an exact polynomial identity on
    // construction of the cubic. Throws NotDivisible for unsuitable input.
    const Form& coble_cubic() const;

    // Degree-4 form (-1)^i Pf(M with row/col i removed); the vector of these
    // spans ker M(p) for every p.
    const Form& pfaffian_vector_component(int i) const;

    // The 84 principal 6x6 sub-Pfaffian cubics, in lex order of their
    // index sets; their common zero locus is the rank <= 4 surface.
    const std::vector<Form>& surface_cubics() const;

    Subspace kernel5(const std::vector<fe>& p) const;   // dim 5, covector side
    Subspace p4_of(const std::vector<fe>& p) const;     // dim 4, vector side
    Subspace tangent_cone(const std::vector<fe>& p) const;  // dim 3, covector side

  private:
    void build_pfaffians() const;
    const Form& pf_form(unsigned mask) const;

    Fp F_;
    Trivector omega_;
    mutable std::vector<Form> linear_entries_;  // 9x9 row-major linear forms
    mutable std::map<unsigned, Form> pf_cache_;
    mutable std::vector<Form> surface_cubics_;
    mutable std::vector<std::vector<Form>> surface_gradients_;  // [cubic][var]
    mutable std::vector<Form> kernel_vector_;                   // the nine quartics
    mutable Form coble_;
    mutable bool built_ = false;
    mutable bool coble_built_ = false;
};

// Unique cubic through the sampled points, singular there: kernel of the
// interpolation system {G(p)=0, grad G(p)=0}. Throws KernelNotOneDim.
Form cubic_by_interpolation(const Fp& F, const std::vector<std::vector<fe>>& points);

}  // namespace coble
