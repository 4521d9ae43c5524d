#include "ccc/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "ccc/errors.hpp"

namespace ccc {

namespace {

// Every correlation is a sum of q-th roots of unity xi^e; counting the
// exponents first keeps the arithmetic exact for q in {2, 4} (values lie in
// the Gaussian integers) and minimizes rounding otherwise.
using ExponentCounts = std::vector<std::int64_t>;

void check_pair(const ZqArray& C, const ZqArray& D) {
    if (C.q() != D.q() || C.rows() != D.rows() || C.cols() != D.cols()) {
        throw SpecError("correlation operands do not share (q, L1, L2)");
    }
}

void check_shift(const ZqArray& C, int u1, int u2) {
    const int L1 = static_cast<int>(C.rows());
    const int L2 = static_cast<int>(C.cols());
    if (u1 <= -L1 || u1 >= L1 || u2 <= -L2 || u2 >= L2) {
        throw SpecError("shift (" + std::to_string(u1) + "," + std::to_string(u2) +
                        ") outside (-L1,L1) x (-L2,L2)");
    }
}

// Adds the exponent histogram of xi^(D_{.+u} - C_{.}) over the overlap window
// of shift (u1, u2), one branch per quadrant.
void accumulate(const ZqArray& C, const ZqArray& D, int u1, int u2, ExponentCounts& counts) {
    const int q = C.q();
    const int L1 = static_cast<int>(C.rows());
    const int L2 = static_cast<int>(C.cols());
    auto bump = [&](int e) { ++counts[((e % q) + q) % q]; };
    if (u1 >= 0 && u2 >= 0) {
        for (int g = 0; g <= L1 - 1 - u1; ++g)
            for (int i = 0; i <= L2 - 1 - u2; ++i) bump(D.at(g + u1, i + u2) - C.at(g, i));
    } else if (u1 >= 0) {
        for (int g = 0; g <= L1 - 1 - u1; ++g)
            for (int i = 0; i <= L2 - 1 + u2; ++i) bump(D.at(g + u1, i) - C.at(g, i - u2));
    } else if (u2 < 0) {
        for (int g = 0; g <= L1 - 1 + u1; ++g)
            for (int i = 0; i <= L2 - 1 + u2; ++i) bump(D.at(g, i) - C.at(g - u1, i - u2));
    } else {
        for (int g = 0; g <= L1 - 1 + u1; ++g)
            for (int i = 0; i <= L2 - 1 - u2; ++i) bump(D.at(g, i + u2) - C.at(g - u1, i));
    }
}

std::complex<double> combine(const ExponentCounts& counts, int q) {
    if (q == 2) {
        return {static_cast<double>(counts[0] - counts[1]), 0.0};
    }
    if (q == 4) {
        return {static_cast<double>(counts[0] - counts[2]),
                static_cast<double>(counts[1] - counts[3])};
    }
    std::complex<double> sum = 0.0;
    for (int e = 0; e < q; ++e) {
        if (counts[e] != 0) {
            const double angle = 2.0 * std::numbers::pi * e / q;
            sum += static_cast<double>(counts[e]) *
                   std::complex<double>(std::cos(angle), std::sin(angle));
        }
    }
    return sum;
}

void check_set_pair(const std::vector<ZqArray>& a, const std::vector<ZqArray>& b) {
    if (a.empty() || a.size() != b.size()) {
        throw SpecError("set correlation needs two nonempty sets of equal size");
    }
    for (std::size_t t = 0; t < a.size(); ++t) {
        check_pair(a[t], b[t]);
        check_pair(a[0], a[t]);
    }
}

std::complex<double> set_value(const std::vector<ZqArray>& a, const std::vector<ZqArray>& b,
                               int u1, int u2, ExponentCounts& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t t = 0; t < a.size(); ++t) accumulate(a[t], b[t], u1, u2, counts);
    return combine(counts, a[0].q());
}

struct PairWorst {
    double error = -1.0;
    int u1 = 0;
    int u2 = 0;
    std::complex<double> value;
    std::uint64_t shifts = 0;
};

// Scans u1 in [0, L1), u2 in (-L2, L2) in ascending order and keeps the first
// maximal deviation from the expected value (N*L1*L2 at the (0,0) peak of an
// auto pair, 0 everywhere else).
PairWorst scan_pair(const std::vector<ZqArray>& a, const std::vector<ZqArray>& b, bool is_auto) {
    const int L1 = static_cast<int>(a[0].rows());
    const int L2 = static_cast<int>(a[0].cols());
    const double peak = static_cast<double>(a.size()) * L1 * L2;
    ExponentCounts counts(a[0].q());
    PairWorst worst;
    for (int u1 = 0; u1 < L1; ++u1) {
        for (int u2 = -(L2 - 1); u2 < L2; ++u2) {
            const std::complex<double> value = set_value(a, b, u1, u2, counts);
            const double expected = (is_auto && u1 == 0 && u2 == 0) ? peak : 0.0;
            const double error = std::abs(value - expected);
            ++worst.shifts;
            if (error > worst.error) {
                worst.error = error;
                worst.u1 = u1;
                worst.u2 = u2;
                worst.value = value;
            }
        }
    }
    return worst;
}

} // namespace

CorrelationValue cross_correlation(const ZqArray& C, const ZqArray& D, int u1, int u2) {
    check_pair(C, D);
    check_shift(C, u1, u2);
    ExponentCounts counts(C.q());
    accumulate(C, D, u1, u2, counts);
    return CorrelationValue{combine(counts, C.q()), u1, u2};
}

CorrelationValue auto_correlation(const ZqArray& C, int u1, int u2) {
    return cross_correlation(C, C, u1, u2);
}

CorrelationValue set_correlation_sum(const std::vector<ZqArray>& a, const std::vector<ZqArray>& b,
                                     int u1, int u2) {
    check_set_pair(a, b);
    check_shift(a[0], u1, u2);
    ExponentCounts counts(a[0].q());
    return CorrelationValue{set_value(a, b, u1, u2, counts), u1, u2};
}

double default_tolerance(int q, std::size_t N, std::size_t L1, std::size_t L2) {
    if (q == 2 || q == 4) return 0.0;
    return 1e-9 * static_cast<double>(N) * static_cast<double>(L1) * static_cast<double>(L2);
}

VerificationReport verify_gcas(const std::vector<ZqArray>& set, double tolerance) {
    if (set.empty()) throw SpecError("cannot verify an empty set");
    check_set_pair(set, set);
    const PairWorst worst = scan_pair(set, set, true);
    VerificationReport report;
    report.tolerance = tolerance;
    report.shifts_checked = worst.shifts;
    report.worst_u1 = worst.u1;
    report.worst_u2 = worst.u2;
    report.worst_error = worst.error;
    report.worst_value = worst.value;
    report.passed = worst.error <= tolerance;
    return report;
}

VerificationReport verify_ccc(const CccFamily& family, double tolerance, int threads) {
    VerificationReport report;
    report.tolerance = tolerance;
    const std::size_t M = family.set_count();
    const std::size_t N = family.arrays_per_set();
    if (M != N) {
        report.structural_failure = true;
        report.failure_reason = "family has M = " + std::to_string(M) + " sets but N = " +
                                std::to_string(N) + " arrays per set; a CCC needs M = N";
        return report;
    }
    if (M == 1) {
        report.structural_failure = true;
        report.failure_reason = "single-set family is degenerate; a CCC needs M >= 2";
        return report;
    }

    // One task per ordered set pair; every task scans the full shift domain.
    struct Task {
        std::size_t p, p2;
    };
    std::vector<Task> tasks;
    tasks.reserve(M * M);
    for (std::size_t p = 0; p < M; ++p)
        for (std::size_t p2 = 0; p2 < M; ++p2) tasks.push_back({p, p2});

    std::vector<PairWorst> results(tasks.size());
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t idx; (idx = next.fetch_add(1)) < tasks.size();) {
            results[idx] =
                scan_pair(family.set(tasks[idx].p), family.set(tasks[idx].p2),
                          tasks[idx].p == tasks[idx].p2);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
        for (std::thread& t : pool) t.join();
    }

    report.worst_error = -1.0;
    for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
        report.shifts_checked += results[idx].shifts;
        if (results[idx].error > report.worst_error) {
            report.worst_error = results[idx].error;
            report.worst_p = tasks[idx].p;
            report.worst_p2 = tasks[idx].p2;
            report.worst_u1 = results[idx].u1;
            report.worst_u2 = results[idx].u2;
            report.worst_value = results[idx].value;
        }
    }
    report.passed = report.worst_error <= tolerance;
    return report;
}

SequenceFamily reduce_to_1d(const CccFamily& family) {
    if (family.rows() != 1) {
        throw SpecError("1D reduction requires L1 = 1, got L1 = " +
                        std::to_string(family.rows()));
    }
    SequenceFamily seqs;
    seqs.q = family.q();
    seqs.sets.resize(family.set_count());
    for (std::size_t p = 0; p < family.set_count(); ++p) {
        for (const ZqArray& array : family.set(p)) {
            std::vector<int> seq(array.values().begin(), array.values().end());
            seqs.sets[p].push_back(std::move(seq));
        }
    }
    return seqs;
}

std::complex<double> cross_correlation_1d(std::span<const int> a, std::span<const int> b, int q,
                                          int u) {
    if (a.size() != b.size() || a.empty()) {
        throw SpecError("1D correlation needs two nonempty sequences of equal length");
    }
    const int L = static_cast<int>(a.size());
    if (u <= -L || u >= L) {
        throw SpecError("shift " + std::to_string(u) + " outside (-L, L)");
    }
    ExponentCounts counts(q);
    auto bump = [&](int e) { ++counts[((e % q) + q) % q]; };
    if (u >= 0) {
        for (int i = 0; i <= L - 1 - u; ++i) bump(b[i + u] - a[i]);
    } else {
        for (int i = 0; i <= L - 1 + u; ++i) bump(b[i] - a[i - u]);
    }
    return combine(counts, q);
}

} // namespace ccc
