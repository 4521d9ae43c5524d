#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

// One monomial of a generalized Boolean function: coeff * prod(y_h) * prod(x_l).
// Variable sets are bitmasks; bit h-1 set means variable index h participates
// (indices are 1-based, matching the textual format "y1", "x3", ...).
// Both masks zero is the constant term.
struct Monomial {
    std::uint32_t y_mask = 0;
    std::uint32_t x_mask = 0;
    int coeff = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// A q-ary array: values in [0, q) laid out row-major, realized as the
// unimodular complex array exp(2*pi*j*value/q) by the correlation and
// precoding code.
class ZqArray {
public:
    ZqArray(int q, std::size_t rows, std::size_t cols, std::vector<int> values);

    int q() const { return q_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int at(std::size_t g, std::size_t i) const { return values_[g * cols_ + i]; }
    std::span<const int> values() const { return values_; }

    friend bool operator==(const ZqArray&, const ZqArray&) = default;

private:
    int q_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<int> values_;
};

// Multivariate polynomial over Z_q in n row-variables y1..yn and m
// column-variables x1..xm, each variable taking values in {0,1}.
// Terms are kept canonical: sorted by (y_mask, x_mask), coefficients merged
// mod q, zero terms dropped. Immutable after construction.
class GbfPolynomial {
public:
    // Canonicalizes `terms` (coefficients merged and reduced mod q); throws
    // SpecError on odd/too-small q or a variable index beyond n/m.
    GbfPolynomial(int q, int y_var_count, int x_var_count, std::vector<Monomial> terms);

    static GbfPolynomial zero(int q, int y_var_count, int x_var_count) {
        return GbfPolynomial(q, y_var_count, x_var_count, {});
    }

    int q() const { return q_; }
    int y_var_count() const { return y_vars_; }
    int x_var_count() const { return x_vars_; }
    std::span<const Monomial> terms() const { return terms_; }

    // Value at the point given by bit vectors (entry h-1 is the value of
    // variable index h). Throws SpecError if lengths differ from (n, m).
    int evaluate(std::span<const int> y_bits, std::span<const int> x_bits) const;

    // Value at the grid point (g, i): bit h of g, with g = sum g_h 2^(h-1),
    // is the value of y_h, and likewise for i and x. The variable bitmask
    // therefore equals the integer index itself.
    int evaluate_index(std::uint32_t g, std::uint32_t i) const;

    friend bool operator==(const GbfPolynomial&, const GbfPolynomial&) = default;

private:
    int q_;
    int y_vars_;
    int x_vars_;
    std::vector<Monomial> terms_;
};

// The 2^n x 2^m array with entry (g, i) = f.evaluate_index(g, i).
ZqArray to_array(const GbfPolynomial& f);

// Coefficient-wise sum mod q. Operands must share (q, n, m).
GbfPolynomial add(const GbfPolynomial& f, const GbfPolynomial& g);

// All coefficients multiplied by c mod q.
GbfPolynomial scale(const GbfPolynomial& f, int c);

// f plus a single linear term coeff * y_index (or coeff * x_index).
GbfPolynomial add_linear_y(const GbfPolynomial& f, int y_index, int coeff);
GbfPolynomial add_linear_x(const GbfPolynomial& f, int x_index, int coeff);

// f plus a constant.
GbfPolynomial add_constant(const GbfPolynomial& f, int coeff);

// Textual format, e.g. "q=2; n=3; m=4; f = x1*x3 + x2*x4 + y1*y2 + x3*y1".
// n/m statements are optional and default to the largest index mentioned.
// Throws ParseError on bad syntax, SpecError on semantic violations.
GbfPolynomial parse_polynomial(std::string_view text);

// Inverse of parse_polynomial, canonical form (round-trips exactly).
std::string format_polynomial(const GbfPolynomial& f);

} // namespace ccc
