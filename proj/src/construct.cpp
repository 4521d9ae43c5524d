#include "ccc/construct.hpp"

#include <algorithm>
#include <string>

#include "ccc/errors.hpp"
#include "ccc/rng.hpp"

namespace ccc {

namespace {

// Blocks must be nonempty, disjoint, and cover {1..count} exactly.
void check_partition(const std::vector<std::vector<int>>& blocks, int count, int k,
                     const std::string& name) {
    if (static_cast<int>(blocks.size()) != k) {
        throw SpecError(name + " has " + std::to_string(blocks.size()) + " blocks, expected " +
                        std::to_string(k));
    }
    std::vector<int> seen(count + 1, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw SpecError(name + " block " + std::to_string(b + 1) + " is empty");
        }
        for (int idx : blocks[b]) {
            if (idx < 1 || idx > count) {
                throw SpecError(name + " contains index " + std::to_string(idx) +
                                " outside 1.." + std::to_string(count));
            }
            if (seen[idx]++) {
                throw SpecError(name + " repeats index " + std::to_string(idx));
            }
        }
    }
    for (int idx = 1; idx <= count; ++idx) {
        if (!seen[idx]) {
            throw SpecError(name + " misses index " + std::to_string(idx));
        }
    }
}

// Each ordering must be a permutation of its partition block.
void check_bijections(const std::vector<std::vector<int>>& orders,
                      const std::vector<std::vector<int>>& blocks, int k,
                      const std::string& name) {
    if (static_cast<int>(orders.size()) != k) {
        throw SpecError(name + " has " + std::to_string(orders.size()) + " orderings, expected " +
                        std::to_string(k));
    }
    for (int b = 0; b < k; ++b) {
        std::vector<int> a = orders[b];
        std::vector<int> want = blocks[b];
        std::sort(a.begin(), a.end());
        std::sort(want.begin(), want.end());
        if (a != want) {
            throw SpecError(name + " ordering " + std::to_string(b + 1) +
                            " is not a permutation of its block");
        }
    }
}

void check_coeffs(const std::vector<int>& coeffs, std::size_t count, int q,
                  const std::string& name) {
    if (coeffs.size() != count) {
        throw SpecError(name + " has " + std::to_string(coeffs.size()) + " entries, expected " +
                        std::to_string(count));
    }
    for (std::size_t l = 0; l < coeffs.size(); ++l) {
        if (coeffs[l] < 0 || coeffs[l] >= q) {
            throw SpecError(name + " entry " + std::to_string(l + 1) + " = " +
                            std::to_string(coeffs[l]) + " outside [0," + std::to_string(q) + ")");
        }
    }
}

} // namespace

void ConstructionSpec::validate() const {
    if (q < 2 || q % 2 != 0) {
        throw SpecError("alphabet size q must be an even integer >= 2, got " + std::to_string(q));
    }
    if (k < 1) throw SpecError("block count k must be >= 1, got " + std::to_string(k));
    if (m < k) throw SpecError("m = " + std::to_string(m) + " is smaller than k = " +
                               std::to_string(k));
    if (n < k) throw SpecError("n = " + std::to_string(n) + " is smaller than k = " +
                               std::to_string(k));
    if (m > 20 || n > 20) throw SpecError("m and n are capped at 20 (array would not fit memory)");
    check_partition(x_partition, m, k, "x-partition");
    check_partition(y_partition, n, k, "y-partition");
    check_bijections(x_bijections, x_partition, k, "x-bijection");
    check_bijections(y_bijections, y_partition, k, "y-bijection");
    check_coeffs(d, static_cast<std::size_t>(m), q, "d");
    check_coeffs(w, static_cast<std::size_t>(n), q, "w");
    if (w0 < 0 || w0 >= q) {
        throw SpecError("w0 = " + std::to_string(w0) + " outside [0," + std::to_string(q) + ")");
    }
}

CccFamily::CccFamily(int q, std::vector<std::vector<ZqArray>> sets)
    : q_(q), sets_(std::move(sets)) {
    if (sets_.empty() || sets_[0].empty()) {
        throw SpecError("family must contain at least one set with at least one array");
    }
    const std::size_t N = sets_[0].size();
    const std::size_t L1 = sets_[0][0].rows();
    const std::size_t L2 = sets_[0][0].cols();
    for (const auto& set : sets_) {
        if (set.size() != N) throw SpecError("family sets have differing sizes");
        for (const ZqArray& a : set) {
            if (a.q() != q_ || a.rows() != L1 || a.cols() != L2) {
                throw SpecError("family arrays do not share (q, L1, L2)");
            }
        }
    }
}

GbfPolynomial build_base_function(const ConstructionSpec& spec) {
    spec.validate();
    const int half = spec.q / 2;
    std::vector<Monomial> terms;
    for (int a = 0; a < spec.k; ++a) {
        const std::vector<int>& pi = spec.x_bijections[a];
        for (std::size_t l = 0; l + 1 < pi.size(); ++l) {
            terms.push_back(Monomial{0u, (1u << (pi[l] - 1)) | (1u << (pi[l + 1] - 1)), half});
        }
        const std::vector<int>& sigma = spec.y_bijections[a];
        for (std::size_t l = 0; l + 1 < sigma.size(); ++l) {
            terms.push_back(
                Monomial{(1u << (sigma[l] - 1)) | (1u << (sigma[l + 1] - 1)), 0u, half});
        }
        terms.push_back(Monomial{1u << (sigma.front() - 1), 1u << (pi.back() - 1), half});
    }
    for (int l = 1; l <= spec.m; ++l) {
        terms.push_back(Monomial{0u, 1u << (l - 1), spec.d[l - 1]});
    }
    for (int l = 1; l <= spec.n; ++l) {
        terms.push_back(Monomial{1u << (l - 1), 0u, spec.w[l - 1]});
    }
    terms.push_back(Monomial{0u, 0u, spec.w0});
    return GbfPolynomial(spec.q, spec.n, spec.m, std::move(terms));
}

GbfPolynomial set_member_function(const ConstructionSpec& spec, std::uint32_t p, std::uint32_t t) {
    const std::uint32_t bound = 1u << spec.k;
    if (p >= bound) throw SpecError("set index p = " + std::to_string(p) + " outside [0,2^k)");
    if (t >= bound) throw SpecError("array index t = " + std::to_string(t) + " outside [0,2^k)");
    GbfPolynomial f = build_base_function(spec);
    const int half = spec.q / 2;
    for (int a = 0; a < spec.k; ++a) {
        if (t >> a & 1) f = add_linear_x(f, spec.x_bijections[a].front(), half);
        if (p >> a & 1) f = add_linear_y(f, spec.y_bijections[a].back(), half);
    }
    return f;
}

std::vector<ZqArray> build_set(const ConstructionSpec& spec, std::uint32_t p) {
    spec.validate();
    std::vector<ZqArray> arrays;
    const std::uint32_t count = 1u << spec.k;
    arrays.reserve(count);
    for (std::uint32_t t = 0; t < count; ++t) {
        arrays.push_back(to_array(set_member_function(spec, p, t)));
    }
    return arrays;
}

CccFamily build_ccc(const ConstructionSpec& spec) {
    spec.validate();
    std::vector<std::vector<ZqArray>> sets;
    const std::uint32_t count = 1u << spec.k;
    sets.reserve(count);
    for (std::uint32_t p = 0; p < count; ++p) {
        sets.push_back(build_set(spec, p));
    }
    return CccFamily(spec.q, std::move(sets));
}

namespace {

// Assign items 1..count to k labeled blocks, uniformly over assignments that
// leave no block empty. ways[r][u] counts completions with r items left and u
// blocks still empty; doubles are adequate for the supported sizes.
std::vector<std::vector<int>> random_partition(int count, int k, RngStream& rng) {
    std::vector<std::vector<double>> ways(count + 1, std::vector<double>(k + 1, 0.0));
    ways[0][0] = 1.0;
    for (int r = 1; r <= count; ++r) {
        for (int u = 0; u <= k; ++u) {
            ways[r][u] = (k - u) * ways[r - 1][u];
            if (u > 0) ways[r][u] += u * ways[r - 1][u - 1];
        }
    }
    std::vector<std::vector<int>> blocks(k);
    int unused = k;
    for (int item = 1; item <= count; ++item) {
        const int remaining = count - item;
        const double to_unused = unused > 0 ? unused * ways[remaining][unused - 1] : 0.0;
        const double total = to_unused + (k - unused) * ways[remaining][unused];
        int pick;
        if (rng.uniform01() * total < to_unused) {
            int slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(unused)));
            pick = -1;
            for (int b = 0; b < k; ++b) {
                if (blocks[b].empty() && slot-- == 0) {
                    pick = b;
                    break;
                }
            }
            --unused;
        } else {
            int slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(k - unused)));
            pick = -1;
            for (int b = 0; b < k; ++b) {
                if (!blocks[b].empty() && slot-- == 0) {
                    pick = b;
                    break;
                }
            }
        }
        blocks[pick].push_back(item);
    }
    return blocks;
}

} // namespace

ConstructionSpec sample_random_spec(int q, int m, int n, int k, std::uint64_t seed) {
    if (q < 2 || q % 2 != 0) {
        throw SpecError("alphabet size q must be an even integer >= 2, got " + std::to_string(q));
    }
    if (k < 1 || m < k || n < k) {
        throw SpecError("need m, n >= k >= 1; got m=" + std::to_string(m) + " n=" +
                        std::to_string(n) + " k=" + std::to_string(k));
    }
    RngStream rng = RngStream::derive(seed, 0x73706563);
    ConstructionSpec spec;
    spec.q = q;
    spec.m = m;
    spec.n = n;
    spec.k = k;
    spec.x_partition = random_partition(m, k, rng);
    spec.y_partition = random_partition(n, k, rng);
    spec.x_bijections = spec.x_partition;
    for (auto& order : spec.x_bijections) rng.shuffle(order);
    spec.y_bijections = spec.y_partition;
    for (auto& order : spec.y_bijections) rng.shuffle(order);
    spec.d.resize(m);
    for (int& c : spec.d) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    spec.w.resize(n);
    for (int& c : spec.w) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    spec.w0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    spec.validate();
    return spec;
}

} // namespace ccc
