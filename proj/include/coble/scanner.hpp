#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coble/pfaffloci.hpp"
#include "coble/rng.hpp"

namespace coble {

struct ScanReport {
    fe q = 0;
    std::string predicate;
    std::uint64_t count = 0;
    std::vector<std::vector<fe>> points;  // scan order (lex on normalized coords)
    std::int64_t millis = 0;
};

struct CensusReport {
    fe q = 0;
    std::array<std::uint64_t, 5> by_rank{};  // ranks 0,2,4,6,8
    std::int64_t millis = 0;
};

int default_scan_threads();

// Enumerates P^{m-1}(F_q) by normalized representatives in lexicographic
// order (first nonzero coordinate is 1, last coordinate varies fastest).
// Points where every prefilter cubic vanishes are reported to on_candidate;
// prefilters are advanced along coordinate lines by third differences.
// An empty prefilter list reports every point. Candidate order within a
// worker follows the scan; workers own contiguous index ranges, so results
// are independent of the worker count.
void projective_scan(const Fp& F, int m, const std::vector<Form>& prefilters, int threads,
                     const std::function<void(int worker, const std::vector<fe>& x)>& on_candidate);

// All points of the rank <= 4 surface, by full scan. Gate: q <= 13.
ScanReport enumerate_A(const PfaffianGeometry& G, int threads = default_scan_threads());

// Points of the theta curve C_P = A cut by the projectivized kernel of
// M(P); a P^4 scan. Gate: q <= 31.
ScanReport curve_points(const PfaffianGeometry& G, const std::vector<fe>& P);

// Points of the A list lying on the hyperplane {p(v) = 0}. Gate: q <= 13.
ScanReport hyperplane_section(const PfaffianGeometry& G, const ScanReport& a_points,
                              const std::vector<fe>& v);

// Exhaustive rank profile of M(p) over P^8(F_q). Gate: q <= 13.
CensusReport rank_census(const PfaffianGeometry& G, int threads = default_scan_threads());

// A-points on the slice P(W) for a subspace W of covectors (rows of `slice`).
std::vector<std::vector<fe>> slice_scan_A(const PfaffianGeometry& G, const Matrix& slice,
                                          int threads = default_scan_threads());

// At least min_count points of A, at any q: full scan when the gate allows,
// otherwise random P^6 slices to seed the surface and theta-curve scans to
// expand. Deterministic given the rng state.
std::vector<std::vector<fe>> bootstrap_points(const PfaffianGeometry& G, std::size_t min_count,
                                              Rng& rng, int threads = default_scan_threads());

std::uint64_t projective_space_size(fe q, int dim_plus_one);

}  // namespace coble
