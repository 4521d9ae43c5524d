#include "ccc/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "ccc/errors.hpp"
#include "ccc/rng.hpp"

namespace ccc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Row index carrying symbol j in slot t (the design is a Latin square, so
// the row is unique).
constexpr std::array<std::array<int, 4>, 4> make_row_of() {
    std::array<std::array<int, 4>, 4> row_of{};
    for (int n = 0; n < 4; ++n)
        for (int t = 0; t < 4; ++t) row_of[StbcDesign::symbol[n][t]][t] = n;
    return row_of;
}
constexpr std::array<std::array<int, 4>, 4> row_of = make_row_of();

} // namespace

void SteeringConfig::validate() const {
    if (L1 < 1 || L2 < 1) throw SpecError("array dimensions must be >= 1");
    if (!(wavelength > 0.0) || !(dx > 0.0) || !(dy > 0.0)) {
        throw SpecError("wavelength and spacings must be positive");
    }
}

CMatrix steering_matrix(const SteeringConfig& cfg, double phi, double theta) {
    cfg.validate();
    if (!(phi >= 0.0 && phi <= std::numbers::pi / 2)) {
        throw SpecError("phi = " + std::to_string(phi) + " outside [0, pi/2]");
    }
    if (!(theta >= 0.0 && theta <= two_pi)) {
        throw SpecError("theta = " + std::to_string(theta) + " outside [0, 2pi]");
    }
    const double wave = two_pi / cfg.wavelength;
    const double row_step = wave * cfg.dy * std::sin(phi) * std::sin(theta);
    const double col_step = wave * cfg.dx * std::sin(phi) * std::cos(theta);
    std::vector<cdouble> row_phase(cfg.L1), col_phase(cfg.L2);
    for (std::size_t g = 0; g < cfg.L1; ++g) row_phase[g] = std::polar(1.0, -row_step * g);
    for (std::size_t i = 0; i < cfg.L2; ++i) col_phase[i] = std::polar(1.0, -col_step * i);
    CMatrix A(cfg.L1, cfg.L2);
    for (std::size_t g = 0; g < cfg.L1; ++g)
        for (std::size_t i = 0; i < cfg.L2; ++i) A.at(g, i) = row_phase[g] * col_phase[i];
    return A;
}

double precoder_normalization(std::size_t L1, std::size_t L2, std::size_t N) {
    return 1.0 / std::sqrt(static_cast<double>(L1) * static_cast<double>(L2) *
                           static_cast<double>(N));
}

PrecoderSet precoders_from_arrays(const std::vector<ZqArray>& set, bool unit_entries) {
    if (set.empty()) throw SpecError("precoder set must be nonempty");
    const std::size_t L1 = set[0].rows();
    const std::size_t L2 = set[0].cols();
    PrecoderSet W;
    W.label = "ccc";
    W.normalization = unit_entries ? 1.0 : precoder_normalization(L1, L2, set.size());
    for (const ZqArray& array : set) {
        if (array.rows() != L1 || array.cols() != L2 || array.q() != set[0].q()) {
            throw SpecError("precoder arrays do not share (q, L1, L2)");
        }
        CMatrix mat(L1, L2);
        for (std::size_t g = 0; g < L1; ++g)
            for (std::size_t i = 0; i < L2; ++i)
                mat.at(g, i) =
                    std::polar(W.normalization, two_pi * array.at(g, i) / array.q());
        W.matrices.push_back(std::move(mat));
    }
    return W;
}

std::vector<cdouble> zc_sequence(std::size_t length, std::size_t root) {
    if (length < 1) throw SpecError("sequence length must be >= 1");
    if (root < 1 || root >= length || std::gcd(root, length) != 1) {
        throw SpecError("root " + std::to_string(root) + " is not in [1, " +
                        std::to_string(length) + ") and coprime to the length");
    }
    std::vector<cdouble> z(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double num = length % 2 == 0 ? static_cast<double>(i) * i
                                           : static_cast<double>(i) * (i + 1);
        z[i] = std::polar(1.0, -std::numbers::pi * root * num / length);
    }
    return z;
}

PrecoderSet zc_precoders(std::size_t L1, std::size_t L2, std::size_t root1, std::size_t root2) {
    if (L1 < 2 || L2 < 2) throw SpecError("zc precoders need L1, L2 >= 2");
    const std::vector<cdouble> z1 = zc_sequence(L1, root1);
    const std::vector<cdouble> z2 = zc_sequence(L2, root2);
    PrecoderSet W;
    W.label = "zc-surrogate";
    W.normalization = precoder_normalization(L1, L2, 4);
    for (std::size_t n = 0; n < 4; ++n) {
        const std::size_t shift1 = (n % 2) * L1 / 2;
        const std::size_t shift2 = (n / 2) * L2 / 2;
        CMatrix mat(L1, L2);
        for (std::size_t g = 0; g < L1; ++g)
            for (std::size_t i = 0; i < L2; ++i)
                mat.at(g, i) = W.normalization * z1[(g + shift1) % L1] * z2[(i + shift2) % L2];
        W.matrices.push_back(std::move(mat));
    }
    return W;
}

PrecoderSet random_precoders(std::size_t L1, std::size_t L2, std::size_t N, std::uint64_t seed) {
    if (L1 < 1 || L2 < 1 || N < 1) throw SpecError("precoder dimensions must be >= 1");
    RngStream rng = RngStream::derive(seed, 0x72616e64);
    PrecoderSet W;
    W.label = "random";
    W.normalization = precoder_normalization(L1, L2, N);
    for (std::size_t n = 0; n < N; ++n) {
        CMatrix mat(L1, L2);
        for (cdouble& v : mat.values) {
            v = rng.below(2) ? -W.normalization : W.normalization;
        }
        W.matrices.push_back(std::move(mat));
    }
    return W;
}

std::vector<cdouble> effective_gain(const PrecoderSet& W, const CMatrix& A) {
    std::vector<cdouble> h(W.size());
    for (std::size_t n = 0; n < W.size(); ++n) {
        const CMatrix& mat = W.matrices[n];
        if (mat.rows != A.rows || mat.cols != A.cols) {
            throw SpecError("steering matrix and precoder dimensions differ");
        }
        cdouble sum = 0.0;
        for (std::size_t idx = 0; idx < A.values.size(); ++idx) {
            sum += A.values[idx] * mat.values[idx];
        }
        h[n] = sum;
    }
    return h;
}

std::vector<double> power_pattern(const PrecoderSet& W, const SteeringConfig& cfg,
                                  const std::vector<double>& phi_grid,
                                  const std::vector<double>& theta_grid) {
    if (phi_grid.empty() || theta_grid.empty()) throw SpecError("angle grids must be nonempty");
    std::vector<double> grid;
    grid.reserve(phi_grid.size() * theta_grid.size());
    for (double phi : phi_grid) {
        for (double theta : theta_grid) {
            const CMatrix A = steering_matrix(cfg, phi, theta);
            double power = 0.0;
            for (const cdouble& hn : effective_gain(W, A)) power += std::norm(hn);
            grid.push_back(power);
        }
    }
    return grid;
}

std::array<std::array<double, 4>, 4> stbc_encode(const std::array<double, 4>& symbols) {
    std::array<std::array<double, 4>, 4> S{};
    for (int n = 0; n < 4; ++n)
        for (int t = 0; t < 4; ++t)
            S[n][t] = StbcDesign::sign[n][t] * symbols[StbcDesign::symbol[n][t]];
    return S;
}

std::array<double, 4> stbc_decode(const std::array<cdouble, 4>& y,
                                  const std::array<cdouble, 4>& h) {
    std::array<double, 4> r{};
    for (int j = 0; j < 4; ++j) {
        double sum = 0.0;
        for (int t = 0; t < 4; ++t) {
            const int n = row_of[j][t];
            const cdouble gain = static_cast<double>(StbcDesign::sign[n][t]) * h[n];
            sum += (y[t] * std::conj(gain)).real();
        }
        r[j] = sum;
    }
    return r;
}

void SimConfig::validate() const {
    if (snr_db.empty()) throw SpecError("SNR sweep must be nonempty");
    if (bits_per_point < 1) throw SpecError("bit budget must be positive");
    if (threads < 0) throw SpecError("thread count must be >= 0");
}

double bpsk_awgn_ber(double snr_db) {
    return 0.5 * std::erfc(std::sqrt(std::pow(10.0, snr_db / 10.0)));
}

namespace {

struct WorkerTally {
    std::uint64_t errors = 0;
};

// One worker's share of a simulation point. Draw order per frame is fixed:
// direction (if per-frame), then the 4 bits, then the 4 noise samples.
WorkerTally run_frames(const SimConfig& sim, const SteeringConfig& cfg, const PrecoderSet& W,
                       const std::vector<cdouble>& fixed_h, double sigma2, std::uint64_t frames,
                       RngStream rng) {
    const double noise_std = sigma2 > 0.0 ? std::sqrt(sigma2 / 2.0) : 0.0;
    WorkerTally tally;
    std::array<cdouble, 4> h{};
    if (sim.direction == DirectionPolicy::fixed) {
        std::copy(fixed_h.begin(), fixed_h.end(), h.begin());
    }
    for (std::uint64_t frame = 0; frame < frames; ++frame) {
        if (sim.direction == DirectionPolicy::random_per_frame) {
            const double phi = rng.uniform(0.0, std::numbers::pi / 2);
            const double theta = rng.uniform(0.0, two_pi);
            const std::vector<cdouble> gains = effective_gain(W, steering_matrix(cfg, phi, theta));
            std::copy(gains.begin(), gains.end(), h.begin());
        }
        std::array<double, 4> s{};
        for (double& bit : s) bit = rng.below(2) ? -1.0 : 1.0;
        const std::array<std::array<double, 4>, 4> S = stbc_encode(s);
        std::array<cdouble, 4> y{};
        for (int t = 0; t < 4; ++t) {
            cdouble sum = 0.0;
            for (int n = 0; n < 4; ++n) sum += h[n] * S[n][t];
            if (noise_std > 0.0) {
                sum += cdouble(noise_std * rng.normal(), noise_std * rng.normal());
            }
            y[t] = sum;
        }
        const std::array<double, 4> r = stbc_decode(y, h);
        for (int j = 0; j < 4; ++j) {
            const bool decoded_positive = r[j] > 0.0;
            if (decoded_positive != (s[j] > 0.0)) ++tally.errors;
        }
    }
    return tally;
}

} // namespace

std::vector<BerPoint> ber_simulation(const SimConfig& sim, const SteeringConfig& cfg,
                                     const PrecoderSet& W) {
    sim.validate();
    cfg.validate();
    if (W.size() != StbcDesign::N) {
        throw SpecError("simulation needs exactly " + std::to_string(StbcDesign::N) +
                        " precoders, got " + std::to_string(W.size()));
    }
    std::vector<cdouble> fixed_h;
    if (sim.direction == DirectionPolicy::fixed) {
        fixed_h = effective_gain(W, steering_matrix(cfg, sim.fixed_phi, sim.fixed_theta));
    }
    const std::uint64_t frames_total = (sim.bits_per_point + 3) / 4;
    unsigned workers = sim.threads > 0 ? static_cast<unsigned>(sim.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, frames_total));

    std::vector<BerPoint> points;
    for (std::size_t idx = 0; idx < sim.snr_db.size(); ++idx) {
        const double snr = sim.snr_db[idx];
        const double sigma2 = std::isinf(snr) ? 0.0 : std::pow(10.0, -snr / 10.0);
        std::vector<WorkerTally> tallies(workers);
        auto worker_frames = [&](unsigned wi) {
            return frames_total / workers + (wi < frames_total % workers ? 1 : 0);
        };
        auto run = [&](unsigned wi) {
            tallies[wi] = run_frames(sim, cfg, W, fixed_h, sigma2, worker_frames(wi),
                                     RngStream::derive(sim.seed, 0xbe50000000000000ull + idx, wi));
        };
        if (workers <= 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned wi = 0; wi < workers; ++wi) pool.emplace_back(run, wi);
            for (std::thread& t : pool) t.join();
        }
        BerPoint point;
        point.snr_db = snr;
        point.frames = frames_total;
        point.bits = frames_total * 4;
        for (const WorkerTally& tally : tallies) point.errors += tally.errors;
        point.ber = static_cast<double>(point.errors) / static_cast<double>(point.bits);
        points.push_back(point);
    }
    return points;
}

} // namespace ccc
