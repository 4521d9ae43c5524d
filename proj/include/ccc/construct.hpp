#pragma once

#include <cstdint>
#include <vector>

#include "ccc/gbf.hpp"

namespace ccc {

// Parameters for the direct family construction: ordered partitions of the
// x- and y-variable index sets, one ordering (bijection) per block, and the
// linear/constant coefficients. Indices are 1-based throughout.
struct ConstructionSpec {
    int q = 2;
    int m = 0; // x-variable count (columns exponent)
    int n = 0; // y-variable count (rows exponent)
    int k = 0; // block count
    std::vector<std::vector<int>> x_partition;  // I_1..I_k covering {1..m}
    std::vector<std::vector<int>> y_partition;  // I'_1..I'_k covering {1..n}
    std::vector<std::vector<int>> x_bijections; // pi_a listed as (pi_a(1)..pi_a(m_a))
    std::vector<std::vector<int>> y_bijections; // sigma_a listed likewise
    std::vector<int> d;                         // size m, entries in [0,q)
    std::vector<int> w;                         // size n, entries in [0,q)
    int w0 = 0;

    friend bool operator==(const ConstructionSpec&, const ConstructionSpec&) = default;

    // Throws SpecError naming the first offending index/block.
    void validate() const;
};

// M sets of N arrays, all sharing (q, L1, L2).
class CccFamily {
  public:
    CccFamily(int q, std::vector<std::vector<ZqArray>> sets);

    int q() const { return q_; }
    std::size_t set_count() const { return sets_.size(); }          // M
    std::size_t arrays_per_set() const { return sets_[0].size(); }  // N
    std::size_t rows() const { return sets_[0][0].rows(); }         // L1
    std::size_t cols() const { return sets_[0][0].cols(); }         // L2
    const std::vector<std::vector<ZqArray>>& sets() const { return sets_; }
    const std::vector<ZqArray>& set(std::size_t p) const { return sets_.at(p); }
    const ZqArray& array(std::size_t p, std::size_t t) const { return sets_.at(p).at(t); }

  private:
    int q_;
    std::vector<std::vector<ZqArray>> sets_;
};

// Base function: (q/2)[sum of x-chains + sum of y-chains] +
// (q/2) sum_a x_{pi_a(m_a)} y_{sigma_a(1)} + sum d_l x_l + sum w_l y_l + w0.
GbfPolynomial build_base_function(const ConstructionSpec& spec);

// f + (q/2) sum_a t_a x_{pi_a(1)} + (q/2) sum_a p_a y_{sigma_a(n_a)} with
// t = sum t_a 2^(a-1) and p = sum p_a 2^(a-1).
GbfPolynomial set_member_function(const ConstructionSpec& spec, std::uint32_t p, std::uint32_t t);

// Arrays C^p_0..C^p_{2^k-1} of one set.
std::vector<ZqArray> build_set(const ConstructionSpec& spec, std::uint32_t p);

// The full family: 2^k sets of 2^k arrays of size 2^n x 2^m.
CccFamily build_ccc(const ConstructionSpec& spec);

// Uniformly random valid spec (partitions, block orderings, coefficients);
// deterministic per seed.
ConstructionSpec sample_random_spec(int q, int m, int n, int k, std::uint64_t seed);

} // namespace ccc
