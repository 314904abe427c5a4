#pragma once

#include <stdexcept>
#include <string>

namespace coble {

// Every failure mode named by the module contracts gets its own type so
// callers can distinguish "retry with fresh randomness" from "input is wrong".
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroInverse : Error {
    ZeroInverse() : Error("inverse of zero in F_q") {}
};
struct Inconsistent : Error {
    Inconsistent() : Error("linear system has no solution") {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& w) : Error("dimension mismatch: " + w) {}
};
struct OddSize : Error {
    OddSize() : Error("pfaffian needs an even index set") {}
};
struct NotNested : Error {
    NotNested() : Error("wedge_space requires nested subspaces") {}
};
struct RankTooHigh : Error {
    RankTooHigh() : Error("point is not on the rank-4 locus") {}
};
struct NotDivisible : Error {
    NotDivisible() : Error("pfaffian vector is not divisible by the coordinates; trivector unsuitable") {}
};
struct KernelNotOneDim : Error {
    explicit KernelNotOneDim(int dim) : Error("interpolation kernel has dimension " + std::to_string(dim)) {}
};
struct SingularSurfacePoint : Error {
    explicit SingularSurfacePoint(int dim) : Error("tangent cone dimension " + std::to_string(dim) + " != 3") {}
};
struct FieldTooLarge : Error {
    explicit FieldTooLarge(unsigned q, unsigned gate) :
        Error("full scan gated at q <= " + std::to_string(gate) + ", got q = " + std::to_string(q)) {}
};
struct DegenerateChord : Error {
    explicit DegenerateChord(const std::string& step) : Error("degenerate chord configuration: " + step) {}
};
struct NotUnique : Error {
    explicit NotUnique(int count) : Error("chord oracle found " + std::to_string(count) + " candidates") {}
};
struct ZeroContraction : Error {
    ZeroContraction() : Error("contraction of the two points vanishes") {}
};
struct MembershipFailed : Error {
    explicit MembershipFailed(const std::string& model) : Error("wedge-sum membership failed for model " + model) {}
};
struct BadIntersection : Error {
    explicit BadIntersection(int dim) : Error("flag intersection has dimension " + std::to_string(dim)) {}
};
struct UnknownLabel : Error {
    explicit UnknownLabel(const std::string& l) : Error("unknown orbit label: " + l) {}
};
struct SuitabilityExhausted : Error {
    explicit SuitabilityExhausted(int n) : Error("no suitable trivector after " + std::to_string(n) + " attempts") {}
};

}  // namespace coble
