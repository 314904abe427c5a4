#pragma once

#include <optional>
#include <vector>

#include "coble/pfaffloci.hpp"
#include "coble/rng.hpp"
#include "coble/scanner.hpp"

namespace coble {

// Three surface points whose pairwise contractions with the trivector span
// one common line of V_9.
struct ChordTriple {
    std::vector<fe> P, Q, R;
    std::vector<fe> line;  // normalized representative of the contraction line
};

// The adapted decomposition used by the third-point construction and by the
// flag builders. With V9 = <vP> + <vQ> + V7 the trivector splits as
//   omega = vP^vQ^v1 + vP^(v1^u + v^w) + vQ^(v1^u2 + v2^w2) + sigma,
// and sigma splits further over V7 = <u> + <u2> + U5.
struct ChordFrame {
    std::vector<fe> P, Q;         // the two covectors
    std::vector<fe> vP, vQ;       // p(vP)=1, q(vP)=0, p(vQ)=0, q(vQ)=1
    Subspace V7;                  // ker p cap ker q (vectors)
    std::vector<fe> v1;           // the contraction vector, std coords
    std::vector<fe> u, v, w;      // std coords
    std::vector<fe> u2, v2, w2;
    Subspace U5;                  // <v1,v,w,v2,w2>
    Subspace U4;                  // <vP,vQ,u,u2>
    Matrix u5_rows;               // rows v1,v,w,v2,w2 (the U5 chart)
    std::vector<fe> sigma0;       // U5 coords
    Mv sigma_u, sigma_u2;         // Lambda^2 U5, in the U5 chart
};

// Steps (1)-(5) of the construction; throws DegenerateChord on any failed
// assertion. Random choices (the vector u in the rank-4 split) come from
// rng with internal retries.
ChordFrame build_chord_frame(const PfaffianGeometry& G, const std::vector<fe>& P,
                             const std::vector<fe>& Q, Rng& rng);

// Exact third point: one 5x4 kernel computation on top of the frame.
ChordTriple third_point(const PfaffianGeometry& G, const std::vector<fe>& P,
                        const std::vector<fe>& Q, Rng& rng);

// Scan oracle: enumerate the dual P^3 of covectors vanishing on U5 and keep
// the unique surface point besides P and Q. Gate: q <= 31.
ChordTriple third_point_oracle(const PfaffianGeometry& G, const std::vector<fe>& P,
                               const std::vector<fe>& Q, Rng& rng);

// Abelian group on the surface points with the lexicographically first
// sampled point as identity. Sums reduce to chord constructions; the chord
// constant O_E closes every chord triple: P (+) Q (+) R = O_E.
class GroupContext {
  public:
    GroupContext(const PfaffianGeometry& G, std::vector<std::vector<fe>> pool,
                 std::uint64_t seed);

    const PfaffianGeometry& geometry() const { return *G_; }
    const std::vector<fe>& identity() const { return E_; }
    const std::vector<fe>& chord_constant() const { return OE_; }
    const std::vector<std::vector<fe>>& pool() const { return pool_; }
    std::uint64_t seed() const { return seed_; }

    // Constructive chord with oracle fallback for flagged degeneracies.
    ChordTriple third(const std::vector<fe>& P, const std::vector<fe>& Q) const;

    std::vector<fe> add(const std::vector<fe>& P, const std::vector<fe>& Q) const;
    std::vector<fe> neg(const std::vector<fe>& P) const;
    std::vector<fe> dbl(const std::vector<fe>& P) const;
    std::vector<fe> scalar_mul(std::int64_t n, const std::vector<fe>& P) const;

    // Completion of the degenerate chord through P twice: the point R with
    // (P,P,R) on a chord, computed by the four-chord composite.
    std::vector<fe> tangent_completion(const std::vector<fe>& P) const;

    std::vector<fe> random_point(Rng& rng) const;

  private:
    std::vector<fe> pick_other(Rng& rng, const std::vector<const std::vector<fe>*>& avoid) const;

    const PfaffianGeometry* G_;
    std::vector<std::vector<fe>> pool_;  // sorted, distinct
    std::vector<fe> E_, OE_;
    std::uint64_t seed_;
    mutable Rng rng_;
};

// Scan (or bootstrap) enough surface points, then build the group.
GroupContext make_group(const PfaffianGeometry& G, std::uint64_t seed,
                        int threads = default_scan_threads());

}  // namespace coble
