#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ccc/construct.hpp"
#include "ccc/errors.hpp"
#include "ccc/family_io.hpp"
#include "ccc/mimo.hpp"
#include "ccc/rng.hpp"

using namespace ccc;

namespace {

ConstructionSpec canonical_spec() {
    ConstructionSpec spec;
    spec.q = 2;
    spec.m = 4;
    spec.n = 3;
    spec.k = 2;
    spec.x_partition = {{1, 3}, {2, 4}};
    spec.y_partition = {{1, 2}, {3}};
    spec.x_bijections = spec.x_partition;
    spec.y_bijections = spec.y_partition;
    spec.d = {0, 0, 0, 0};
    spec.w = {0, 0, 0};
    spec.w0 = 0;
    return spec;
}

PrecoderSet canonical_precoders() {
    return precoders_from_arrays(build_ccc(canonical_spec()).set(0));
}

// Transmit energy of one space-time frame: sum over slots of the squared
// Frobenius norm of sum_n W_n * S[n][t].
double frame_energy(const PrecoderSet& W, const std::array<std::array<double, 4>, 4>& S) {
    double energy = 0.0;
    const std::size_t cells = W.matrices[0].values.size();
    for (int t = 0; t < 4; ++t) {
        for (std::size_t c = 0; c < cells; ++c) {
            cdouble x = 0.0;
            for (int n = 0; n < 4; ++n) x += W.matrices[n].values[c] * S[n][t];
            energy += std::norm(x);
        }
    }
    return energy;
}

// A unit channel on the first code row: 1x1 precoders (1, 0, 0, 0).
PrecoderSet unit_channel_precoders() {
    PrecoderSet W;
    W.label = "test";
    for (int n = 0; n < 4; ++n) {
        CMatrix mat(1, 1);
        mat.at(0, 0) = n == 0 ? 1.0 : 0.0;
        W.matrices.push_back(mat);
    }
    return W;
}

} // namespace

TEST_SUITE("mimo") {

TEST_CASE("steering matrix basics") {
    SteeringConfig cfg;
    cfg.L1 = 4;
    cfg.L2 = 6;

    const CMatrix at_zenith = steering_matrix(cfg, 0.0, 1.0);
    for (const cdouble& v : at_zenith.values) CHECK(std::abs(v - 1.0) <= 1e-12);
    CHECK(at_zenith.rows == 4);
    CHECK(at_zenith.cols == 6);

    const CMatrix any = steering_matrix(cfg, 0.7, 4.0);
    CHECK(std::abs(any.at(0, 0) - 1.0) <= 1e-12);
    for (const cdouble& v : any.values) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
}

TEST_CASE("steering phases advance linearly along rows and columns") {
    SteeringConfig cfg;
    cfg.L1 = 3;
    cfg.L2 = 4;
    cfg.wavelength = 2.0;
    cfg.dx = 1.0;
    cfg.dy = 1.0;
    // theta = 0 kills the row term: entry (g,i) = exp(-j*pi*i).
    const CMatrix a = steering_matrix(cfg, std::numbers::pi / 2, 0.0);
    for (std::size_t g = 0; g < 3; ++g) {
        for (std::size_t i = 0; i < 4; ++i) {
            const cdouble want = std::polar(1.0, -std::numbers::pi * static_cast<double>(i));
            CHECK(std::abs(a.at(g, i) - want) <= 1e-12);
        }
    }
    // theta = pi/2 kills the column term: entry (g,i) = exp(-j*pi*g).
    const CMatrix b = steering_matrix(cfg, std::numbers::pi / 2, std::numbers::pi / 2);
    for (std::size_t g = 0; g < 3; ++g) {
        for (std::size_t i = 0; i < 4; ++i) {
            const cdouble want = std::polar(1.0, -std::numbers::pi * static_cast<double>(g));
            CHECK(std::abs(b.at(g, i) - want) <= 1e-12);
        }
    }
}

TEST_CASE("steering domain and configuration are validated") {
    SteeringConfig cfg;
    cfg.L1 = 2;
    cfg.L2 = 2;
    CHECK_NOTHROW(steering_matrix(cfg, std::numbers::pi / 2, 2.0 * std::numbers::pi));
    CHECK_THROWS_AS(steering_matrix(cfg, -0.1, 0.0), SpecError);
    CHECK_THROWS_AS(steering_matrix(cfg, 1.6, 0.0), SpecError);
    CHECK_THROWS_AS(steering_matrix(cfg, 0.0, -0.1), SpecError);
    CHECK_THROWS_AS(steering_matrix(cfg, 0.0, 6.3), SpecError);

    SteeringConfig bad = cfg;
    bad.L1 = 0;
    CHECK_THROWS_AS(steering_matrix(bad, 0.0, 0.0), SpecError);
    bad = cfg;
    bad.wavelength = 0.0;
    CHECK_THROWS_AS(steering_matrix(bad, 0.0, 0.0), SpecError);
    bad = cfg;
    bad.dx = -1.0;
    CHECK_THROWS_AS(steering_matrix(bad, 0.0, 0.0), SpecError);
}

TEST_CASE("code rows of the all-ones symbol vector are the sign rows") {
    const std::array<std::array<double, 4>, 4> S = stbc_encode({1.0, 1.0, 1.0, 1.0});
    for (int n = 0; n < 4; ++n) {
        for (int t = 0; t < 4; ++t) {
            CHECK(S[n][t] == static_cast<double>(StbcDesign::sign[n][t]));
        }
    }
}

TEST_CASE("code matrix rows are orthogonal with squared norm sum s_j^2") {
    RngStream rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 4> s{};
        long long energy = 0;
        for (double& v : s) {
            const long long value = static_cast<long long>(rng.below(7)) - 3;
            v = static_cast<double>(value);
            energy += value * value;
        }
        const std::array<std::array<double, 4>, 4> S = stbc_encode(s);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                long long dot = 0;
                for (int t = 0; t < 4; ++t) {
                    dot += static_cast<long long>(S[a][t]) * static_cast<long long>(S[b][t]);
                }
                REQUIRE(dot == (a == b ? energy : 0));
            }
        }
    }
}

TEST_CASE("matched-filter decoding recovers every symbol exactly") {
    RngStream rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<cdouble, 4> h{};
        double h_norm2 = 0.0;
        for (cdouble& v : h) {
            v = cdouble(rng.normal(), rng.normal());
            h_norm2 += std::norm(v);
        }
        for (int combo = 0; combo < 16; ++combo) {
            std::array<double, 4> s{};
            for (int j = 0; j < 4; ++j) s[j] = (combo >> j & 1) ? -1.0 : 1.0;
            const std::array<std::array<double, 4>, 4> S = stbc_encode(s);
            std::array<cdouble, 4> y{};
            for (int t = 0; t < 4; ++t) {
                for (int n = 0; n < 4; ++n) y[t] += h[n] * S[n][t];
            }
            const std::array<double, 4> r = stbc_decode(y, h);
            for (int j = 0; j < 4; ++j) {
                REQUIRE(std::abs(r[j] - h_norm2 * s[j]) <= 1e-9 * (1.0 + h_norm2));
            }
        }
    }
}

TEST_CASE("effective gain is the unconjugated overlap with the steering matrix") {
    SteeringConfig cfg;
    cfg.L1 = 4;
    cfg.L2 = 4;
    const CMatrix A = steering_matrix(cfg, 0.9, 2.5);

    PrecoderSet matched;
    matched.label = "test";
    for (int n = 0; n < 4; ++n) {
        CMatrix mat(4, 4);
        for (std::size_t c = 0; c < 16; ++c) mat.values[c] = std::conj(A.values[c]) / 16.0;
        matched.matrices.push_back(std::move(mat));
    }
    for (const cdouble& hn : effective_gain(matched, A)) {
        CHECK(std::abs(hn - 1.0) <= 1e-12);
    }

    PrecoderSet zero;
    zero.matrices.assign(4, CMatrix(4, 4));
    for (const cdouble& hn : effective_gain(zero, A)) CHECK(hn == cdouble(0.0, 0.0));

    PrecoderSet mismatched;
    mismatched.matrices.assign(1, CMatrix(2, 4));
    CHECK_THROWS_AS(effective_gain(mismatched, A), SpecError);
}

TEST_CASE("published set radiates 512 in every direction") {
    const FamilyFile fixture = read_family_file(std::string(CCC_TEST_DATA_DIR) +
                                                "/published_sets_8x16.txt");
    const PrecoderSet W = precoders_from_arrays(fixture.sets[0], /*unit_entries=*/true);
    CHECK(W.normalization == 1.0);
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    RngStream rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const double phi = rng.uniform(0.0, std::numbers::pi / 2);
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        double power = 0.0;
        for (const cdouble& hn : effective_gain(W, steering_matrix(cfg, phi, theta))) {
            power += std::norm(hn);
        }
        REQUIRE(std::abs(power - 512.0) <= 1e-9 * 512.0);
    }
}

TEST_CASE("power pattern of a normalized complete set is identically one") {
    const PrecoderSet W = canonical_precoders();
    CHECK(W.label == "ccc");
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    const std::vector<double> phis = {0.0, 0.4, 0.9, 1.3, std::numbers::pi / 2};
    const std::vector<double> thetas = {0.0, 1.0, 2.5, 4.0, 5.5, 2.0 * std::numbers::pi};
    const std::vector<double> grid = power_pattern(W, cfg, phis, thetas);
    REQUIRE(grid.size() == phis.size() * thetas.size());
    for (double p : grid) CHECK(std::abs(p - 1.0) <= 1e-9);
}

TEST_CASE("random precoders do not radiate uniformly") {
    const PrecoderSet W = random_precoders(8, 16, 4, 5);
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    std::vector<double> phis, thetas;
    for (int i = 0; i < 12; ++i) phis.push_back(std::numbers::pi / 2 * i / 11.0);
    for (int i = 0; i < 12; ++i) thetas.push_back(2.0 * std::numbers::pi * i / 12.0);
    const std::vector<double> grid = power_pattern(W, cfg, phis, thetas);
    const double lo = *std::min_element(grid.begin(), grid.end());
    const double hi = *std::max_element(grid.begin(), grid.end());
    CHECK(hi / lo > 1.001);
}

TEST_CASE("trivial single-antenna pattern is flat at one") {
    PrecoderSet W;
    W.matrices.assign(1, CMatrix(1, 1));
    W.matrices[0].at(0, 0) = 1.0;
    SteeringConfig cfg;
    const std::vector<double> grid = power_pattern(W, cfg, {0.0, 0.5}, {0.0, 3.0});
    for (double p : grid) CHECK(p == 1.0);
    CHECK_THROWS_AS(power_pattern(W, cfg, {}, {0.0}), SpecError);
}

TEST_CASE("zc sequences are unimodular with ideal periodic autocorrelation") {
    for (const auto& [length, root] : std::vector<std::pair<std::size_t, std::size_t>>{
             {8, 1}, {8, 3}, {7, 1}, {7, 3}, {16, 5}}) {
        const std::vector<cdouble> z = zc_sequence(length, root);
        REQUIRE(z.size() == length);
        CHECK(std::abs(z[0] - 1.0) <= 1e-12);
        for (const cdouble& v : z) REQUIRE(std::abs(std::abs(v) - 1.0) <= 1e-12);
        for (std::size_t u = 1; u < length; ++u) {
            cdouble acc = 0.0;
            for (std::size_t i = 0; i < length; ++i) {
                acc += z[(i + u) % length] * std::conj(z[i]);
            }
            REQUIRE(std::abs(acc) <= 1e-9 * static_cast<double>(length));
        }
    }
    CHECK_THROWS_AS(zc_sequence(8, 0), SpecError);
    CHECK_THROWS_AS(zc_sequence(8, 8), SpecError);
    CHECK_THROWS_AS(zc_sequence(8, 2), SpecError);
    CHECK_THROWS_AS(zc_sequence(0, 1), SpecError);
}

TEST_CASE("zc surrogate precoders are labeled shifted outer products") {
    const PrecoderSet W = zc_precoders(8, 16, 1, 3);
    CHECK(W.label == "zc-surrogate");
    REQUIRE(W.size() == 4);
    CHECK(W.normalization == doctest::Approx(1.0 / std::sqrt(512.0)).epsilon(1e-12));
    const std::vector<cdouble> z1 = zc_sequence(8, 1);
    const std::vector<cdouble> z2 = zc_sequence(16, 3);
    for (std::size_t n = 0; n < 4; ++n) {
        const std::size_t s1 = (n % 2) * 4;
        const std::size_t s2 = (n / 2) * 8;
        for (std::size_t g = 0; g < 8; ++g) {
            for (std::size_t i = 0; i < 16; ++i) {
                const cdouble want =
                    W.normalization * z1[(g + s1) % 8] * z2[(i + s2) % 16];
                REQUIRE(std::abs(W.matrices[n].at(g, i) - want) <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(zc_precoders(1, 16, 1, 1), SpecError);
}

TEST_CASE("zc surrogate does not radiate uniformly") {
    const PrecoderSet W = zc_precoders(8, 16, 1, 1);
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    std::vector<double> phis, thetas;
    for (int i = 0; i < 12; ++i) phis.push_back(std::numbers::pi / 2 * i / 11.0);
    for (int i = 0; i < 12; ++i) thetas.push_back(2.0 * std::numbers::pi * i / 12.0);
    const std::vector<double> grid = power_pattern(W, cfg, phis, thetas);
    const double lo = *std::min_element(grid.begin(), grid.end());
    const double hi = *std::max_element(grid.begin(), grid.end());
    CHECK(hi / lo > 1.001);
}

TEST_CASE("random precoders are deterministic sign matrices") {
    const PrecoderSet a = random_precoders(4, 6, 4, 11);
    const PrecoderSet b = random_precoders(4, 6, 4, 11);
    const PrecoderSet c = random_precoders(4, 6, 4, 12);
    CHECK(a.label == "random");
    REQUIRE(a.size() == 4);
    const double norm = precoder_normalization(4, 6, 4);
    bool all_equal_c = true;
    for (std::size_t n = 0; n < 4; ++n) {
        for (std::size_t idx = 0; idx < 24; ++idx) {
            const cdouble v = a.matrices[n].values[idx];
            REQUIRE((v == cdouble(norm, 0.0) || v == cdouble(-norm, 0.0)));
            REQUIRE(v == b.matrices[n].values[idx]);
            all_equal_c = all_equal_c && v == c.matrices[n].values[idx];
        }
    }
    CHECK(!all_equal_c);
}

TEST_CASE("every normalized scheme transmits the same frame energy") {
    const std::vector<PrecoderSet> schemes = {
        canonical_precoders(),
        zc_precoders(8, 16, 1, 1),
        random_precoders(8, 16, 4, 7),
    };
    for (const PrecoderSet& W : schemes) {
        for (int combo = 0; combo < 16; ++combo) {
            std::array<double, 4> s{};
            for (int j = 0; j < 4; ++j) s[j] = (combo >> j & 1) ? -1.0 : 1.0;
            const double energy = frame_energy(W, stbc_encode(s));
            REQUIRE(std::abs(energy - 4.0) <= 1e-9);
        }
    }
}

TEST_CASE("closed-form reference curve is sane") {
    CHECK(bpsk_awgn_ber(0.0) == doctest::Approx(0.0786496).epsilon(1e-5));
    CHECK(bpsk_awgn_ber(10.0) < 1e-5);
    for (double snr = -5.0; snr < 12.0; snr += 1.0) {
        CHECK(bpsk_awgn_ber(snr + 1.0) < bpsk_awgn_ber(snr));
    }
}

TEST_CASE("noiseless transmission is error free") {
    SimConfig sim;
    sim.snr_db = {std::numeric_limits<double>::infinity()};
    sim.bits_per_point = 4000;
    sim.seed = 3;
    sim.threads = 1;
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    const std::vector<BerPoint> points = ber_simulation(sim, cfg, canonical_precoders());
    REQUIRE(points.size() == 1);
    CHECK(points[0].errors == 0);
    CHECK(points[0].ber == 0.0);
    CHECK(points[0].bits == 4000);
    CHECK(points[0].frames == 1000);
}

TEST_CASE("bit budgets are rounded up to whole frames") {
    SimConfig sim;
    sim.snr_db = {std::numeric_limits<double>::infinity()};
    sim.bits_per_point = 5;
    sim.threads = 1;
    sim.direction = DirectionPolicy::fixed;
    sim.fixed_phi = 0.3;
    sim.fixed_theta = 1.0;
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    const std::vector<BerPoint> points = ber_simulation(sim, cfg, canonical_precoders());
    CHECK(points[0].frames == 2);
    CHECK(points[0].bits == 8);
}

TEST_CASE("simulation is deterministic for a fixed seed and thread count") {
    SimConfig sim;
    sim.snr_db = {0.0, 4.0};
    sim.bits_per_point = 40000;
    sim.seed = 9;
    sim.threads = 2;
    sim.direction = DirectionPolicy::fixed;
    sim.fixed_phi = 0.8;
    sim.fixed_theta = 2.0;
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    const PrecoderSet W = canonical_precoders();
    const std::vector<BerPoint> a = ber_simulation(sim, cfg, W);
    const std::vector<BerPoint> b = ber_simulation(sim, cfg, W);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].errors == b[i].errors);
        CHECK(a[i].ber == b[i].ber);
        CHECK(a[i].bits == 40000);
    }
    sim.seed = 10;
    const std::vector<BerPoint> c = ber_simulation(sim, cfg, W);
    CHECK((c[0].errors != a[0].errors || c[1].errors != a[1].errors));
}

TEST_CASE("unit channel reproduces the closed-form BPSK curve") {
    SimConfig sim;
    sim.snr_db = {0.0, 2.0};
    sim.bits_per_point = 200000;
    sim.seed = 5;
    sim.threads = 1;
    sim.direction = DirectionPolicy::fixed;
    sim.fixed_phi = 0.0;
    sim.fixed_theta = 0.0;
    SteeringConfig cfg; // 1x1 array
    const std::vector<BerPoint> points = ber_simulation(sim, cfg, unit_channel_precoders());
    for (const BerPoint& point : points) {
        const double p = bpsk_awgn_ber(point.snr_db);
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(point.bits));
        REQUIRE(std::abs(point.ber - p) <= 3.0 * sigma);
    }
}

TEST_CASE("error rate decreases along the SNR sweep") {
    SimConfig sim;
    sim.snr_db = {0.0, 4.0, 8.0};
    sim.bits_per_point = 60000;
    sim.seed = 6;
    sim.threads = 1;
    SteeringConfig cfg;
    cfg.L1 = 8;
    cfg.L2 = 16;
    const std::vector<BerPoint> points = ber_simulation(sim, cfg, canonical_precoders());
    CHECK(points[0].ber > points[1].ber);
    CHECK(points[1].ber > points[2].ber);
}

TEST_CASE("simulation inputs are validated") {
    SimConfig sim;
    sim.snr_db = {};
    SteeringConfig cfg;
    CHECK_THROWS_AS(ber_simulation(sim, cfg, unit_channel_precoders()), SpecError);
    sim.snr_db = {0.0};
    sim.bits_per_point = 0;
    CHECK_THROWS_AS(ber_simulation(sim, cfg, unit_channel_precoders()), SpecError);
    sim.bits_per_point = 4;
    sim.threads = -1;
    CHECK_THROWS_AS(ber_simulation(sim, cfg, unit_channel_precoders()), SpecError);
    sim.threads = 0;
    PrecoderSet three;
    three.matrices.assign(3, CMatrix(1, 1));
    CHECK_THROWS_AS(ber_simulation(sim, cfg, three), SpecError);
}

TEST_CASE("precoder construction validates its inputs") {
    CHECK_THROWS_AS(precoders_from_arrays({}), SpecError);
    const ZqArray a(2, 2, 2, {0, 1, 1, 0});
    const ZqArray wide(2, 2, 3, {0, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(precoders_from_arrays({a, wide}), SpecError);
    CHECK_THROWS_AS(random_precoders(0, 4, 4, 1), SpecError);

    const PrecoderSet W = precoders_from_arrays({a});
    CHECK(W.normalization == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(W.matrices[0].at(0, 1) - cdouble(-0.5, 0.0)) <= 1e-12);
}

} // TEST_SUITE
