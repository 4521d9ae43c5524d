#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccc/construct.hpp"
#include "ccc/gbf.hpp"

namespace ccc {

struct CorrelationValue {
    std::complex<double> value;
    int u1 = 0;
    int u2 = 0;
};

struct VerificationReport {
    bool passed = false;
    bool structural_failure = false;
    std::string failure_reason; // nonempty only on structural failure
    std::size_t worst_p = 0;    // offending set pair; worst_p == worst_p2 for auto terms
    std::size_t worst_p2 = 0;
    int worst_u1 = 0;
    int worst_u2 = 0;
    double worst_error = 0.0; // |value - expected| at the worst shift
    std::complex<double> worst_value;
    double tolerance = 0.0;
    std::uint64_t shifts_checked = 0;
};

// Aperiodic cross-correlation at shift (u1, u2): the shift applies to the
// second array, sum of xi^(D_{g+u1,i+u2} - C_{g,i}) over the overlap window.
// Exact (integer-carried) arithmetic whenever q divides 4.
CorrelationValue cross_correlation(const ZqArray& C, const ZqArray& D, int u1, int u2);
CorrelationValue auto_correlation(const ZqArray& C, int u1, int u2);

// Sum of member-wise cross-correlations of two equally sized sets.
CorrelationValue set_correlation_sum(const std::vector<ZqArray>& a, const std::vector<ZqArray>& b,
                                     int u1, int u2);

// 0 when q divides 4 (correlations are Gaussian integers), 1e-9*N*L1*L2 otherwise.
double default_tolerance(int q, std::size_t N, std::size_t L1, std::size_t L2);

// Auto-correlation sums: N*L1*L2 at (0,0), within tolerance of 0 at every other
// shift with u1 in [0, L1) and u2 in (-L2, L2); the remaining quadrants follow
// from conjugate symmetry.
VerificationReport verify_gcas(const std::vector<ZqArray>& set, double tolerance);

// Every set passes verify_gcas and every ordered pair of distinct sets has
// correlation sum within tolerance of 0 at all shifts including (0,0).
// threads = 0 picks the hardware concurrency; the report is deterministic
// regardless (worst witness = max error, ties broken by lexicographic
// (p, p', u1, u2)).
VerificationReport verify_ccc(const CccFamily& family, double tolerance, int threads = 0);

// Sequence view of a family whose arrays have a single row.
struct SequenceFamily {
    int q = 2;
    std::vector<std::vector<std::vector<int>>> sets; // [p][t] -> sequence of length L2
};

// Requires L1 == 1; exposes each 1 x L2 array as a sequence.
SequenceFamily reduce_to_1d(const CccFamily& family);

// 1D aperiodic cross-correlation, sum of xi^(b[i+u] - a[i]); |u| < length.
std::complex<double> cross_correlation_1d(std::span<const int> a, std::span<const int> b, int q,
                                          int u);

} // namespace ccc
