#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ccc/gbf.hpp"

namespace ccc {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cdouble> values;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}
    cdouble& at(std::size_t g, std::size_t i) { return values[g * cols + i]; }
    const cdouble& at(std::size_t g, std::size_t i) const { return values[g * cols + i]; }
};

// Uniform rectangular array geometry: L1 rows spaced d_y, L2 columns spaced d_x.
struct SteeringConfig {
    std::size_t L1 = 1;
    std::size_t L2 = 1;
    double wavelength = 1.0;
    double dx = 0.5; // defaults give half-wavelength spacing
    double dy = 0.5;

    void validate() const; // throws SpecError
};

// Entry (g,i) = exp(-j(2pi/lambda)(g*dy*sin(phi)*sin(theta) + i*dx*sin(phi)*cos(theta))).
// phi in [0, pi/2], theta in [0, 2pi].
CMatrix steering_matrix(const SteeringConfig& cfg, double phi, double theta);

// N precoding matrices sharing dimensions, scaled by `normalization`.
struct PrecoderSet {
    std::vector<CMatrix> matrices;
    double normalization = 1.0; // already applied to the stored entries
    std::string label;          // "ccc", "zc-surrogate", "random"

    std::size_t size() const { return matrices.size(); }
};

// 1/sqrt(L1*L2*N): unit total transmit power per time slot for unimodular sets.
double precoder_normalization(std::size_t L1, std::size_t L2, std::size_t N);

// Unimodular precoders xi^value from a set of q-ary arrays; normalized unless
// unit_entries is true (then entries stay unimodular and normalization is 1).
PrecoderSet precoders_from_arrays(const std::vector<ZqArray>& set, bool unit_entries = false);

// Zadoff-Chu sequence of the given length and root (root coprime to length):
// z[i] = exp(-j*pi*root*i^2/L) for even L, exp(-j*pi*root*i*(i+1)/L) for odd L.
std::vector<cdouble> zc_sequence(std::size_t length, std::size_t root);

// Surrogate baseline: W_n = outer(rotate(z1, (n%2)*L1/2), rotate(z2, (n/2)*L2/2))
// from ZC sequences z1 (length L1, root1) and z2 (length L2, root2), normalized.
PrecoderSet zc_precoders(std::size_t L1, std::size_t L2, std::size_t root1, std::size_t root2);

// Four (or N) random +-1 matrices; deterministic per seed; normalized.
PrecoderSet random_precoders(std::size_t L1, std::size_t L2, std::size_t N, std::uint64_t seed);

// h_n = sum_{g,i} A[g][i] * W_n[g][i] (vectorized dot product without conjugation).
std::vector<cdouble> effective_gain(const PrecoderSet& W, const CMatrix& A);

// Received power sum_n |h_n(phi,theta)|^2 over the angle grid; result is
// row-major with phi varying over rows and theta over columns.
std::vector<double> power_pattern(const PrecoderSet& W, const SteeringConfig& cfg,
                                  const std::vector<double>& phi_grid,
                                  const std::vector<double>& theta_grid);

// The 4x4 real orthogonal design: row n = code index, column t = time slot,
// entry (n,t) = sign[n][t] * s[symbol[n][t]].
struct StbcDesign {
    static constexpr std::size_t N = 4;
    static constexpr std::array<std::array<int, 4>, 4> symbol = {{
        {0, 1, 2, 3},
        {1, 0, 3, 2},
        {2, 3, 0, 1},
        {3, 2, 1, 0},
    }};
    static constexpr std::array<std::array<int, 4>, 4> sign = {{
        {+1, -1, -1, -1},
        {+1, +1, +1, -1},
        {+1, -1, +1, +1},
        {+1, +1, -1, +1},
    }};
};

// 4 BPSK symbols -> the 4x4 code matrix.
std::array<std::array<double, 4>, 4> stbc_encode(const std::array<double, 4>& symbols);

// Matched-filter combining per symbol: r_j = Re(sum_t y[t] * conj(g_j(t))) with
// g_j(t) the gain-weighted signed coefficient of symbol j in slot t. Returns
// the four soft outputs; harden with sign().
std::array<double, 4> stbc_decode(const std::array<cdouble, 4>& y,
                                  const std::array<cdouble, 4>& h);

enum class DirectionPolicy { fixed, random_per_frame };

struct SimConfig {
    std::vector<double> snr_db;            // Eb/N0 sweep; infinity = noiseless
    std::uint64_t bits_per_point = 400000; // rounded up to whole frames (4 bits each)
    std::uint64_t seed = 1;
    DirectionPolicy direction = DirectionPolicy::random_per_frame;
    double fixed_phi = 0.0; // used when direction == fixed
    double fixed_theta = 0.0;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
};

struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    std::uint64_t frames = 0;
};

// Monte-Carlo BER of BPSK + the 4x4 orthogonal design over a LOS + AWGN
// channel: per frame, h = effective_gain at the frame's direction, slot
// signal y(t) = sum_n h_n S[n][t] + w(t) with w ~ CN(0, sigma^2),
// sigma^2 = 10^(-snr_db/10). Deterministic for fixed (seed, threads).
std::vector<BerPoint> ber_simulation(const SimConfig& sim, const SteeringConfig& cfg,
                                     const PrecoderSet& W);

// Closed-form BPSK-over-AWGN reference: 0.5*erfc(sqrt(10^(snr_db/10))).
double bpsk_awgn_ber(double snr_db);

} // namespace ccc
