#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coble/chords.hpp"
#include "coble/pfaffloci.hpp"

namespace coble {

enum class StratumLabel { OffSextic, SexticSmooth, DY3, DY4, DY6, DY8, Undetermined };

std::string stratum_name(StratumLabel s);

// Verified realization of a point of one of the three flag models: the
// trivector lies in the model's wedge-space sum (certified on construction).
struct ModelFlag {
    char model = '?';  // 'Z' (1,3,6), 'T' (1,5,7), 'X' (1,3,5,6,7)
    Flag flag;
};

// [omega(P,Q,.)] as a normalized point of the dual space.
std::vector<fe> sigma_image(const PfaffianGeometry& G, const std::vector<fe>& P,
                            const std::vector<fe>& Q);

// Smooth cubic points found by cutting random lines and scanning the
// parameter roots; each comes with a nonzero gradient.
std::vector<std::vector<fe>> sample_cubic_points(const PfaffianGeometry& G, std::size_t count,
                                                 Rng& rng);

// The sextic dual to the cubic, interpolated through >= 3500 gradient
// images of smooth cubic points. Throws KernelNotOneDim when the sample
// does not pin the form down (caller escalates the prime ladder).
Form sextic_interpolate(const PfaffianGeometry& G, std::uint64_t seed,
                        int threads = default_scan_threads());

// Smallest t-adic valuation of f along `trials` random lines at x.
int multiplicity(const Fp& F, const Form& f, const std::vector<fe>& x, int trials, Rng& rng);

ModelFlag t_flag(const PfaffianGeometry& G, const std::vector<fe>& P, const std::vector<fe>& Q,
                 Rng& rng);
ModelFlag z_flag(const PfaffianGeometry& G, const std::vector<fe>& P, const std::vector<fe>& Q,
                 const std::vector<fe>& R, Rng& rng);
ModelFlag x_flag(const PfaffianGeometry& G, const std::vector<fe>& P, const std::vector<fe>& Q,
                 const std::vector<fe>& R, Rng& rng);

// All pairs (V5, V7) completing a Z-flag to an X-flag, by exhaustive scan
// of the P^2 x P^2 of middle choices; generically three. Gate: q <= 31.
std::vector<std::pair<Subspace, Subspace>> triple_cover_enumerate(const PfaffianGeometry& G,
                                                                  const ModelFlag& zf);

// Image of the degenerate chord (P,P,R): R is the tangent completion of P
// in the group, and the contraction line lands in the deeper singular
// stratum of the sextic.
std::vector<fe> dy6_image(const GroupContext& ctx, const std::vector<fe>& P);

// Multiplicity thresholds measured from constructed witnesses.
struct Calibration {
    int m4 = -1;  // multiplicity of the sextic along the fourfold stratum
    int m6 = -1;  // along the surface stratum
};

Calibration measure_calibration(const GroupContext& ctx, const Form& sextic, int samples,
                                Rng& rng);

StratumLabel classify_point(const PfaffianGeometry& G, const std::vector<fe>& x,
                            const Form& sextic, const Calibration& calib, int trials, Rng& rng);

}  // namespace coble
