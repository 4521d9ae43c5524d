#include "ccc/gbf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ccc/errors.hpp"

namespace ccc {

namespace {

int mod_q(long long v, int q) {
    long long r = v % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

void check_q(int q) {
    if (q < 2 || q % 2 != 0) {
        throw SpecError("alphabet size q must be an even integer >= 2, got " + std::to_string(q));
    }
}

} // namespace

ZqArray::ZqArray(int q, std::size_t rows, std::size_t cols, std::vector<int> values)
    : q_(q), rows_(rows), cols_(cols), values_(std::move(values)) {
    check_q(q);
    if (rows_ == 0 || cols_ == 0) {
        throw SpecError("array dimensions must be positive");
    }
    if (values_.size() != rows_ * cols_) {
        throw SpecError("array has " + std::to_string(values_.size()) + " values, expected " +
                        std::to_string(rows_ * cols_));
    }
    for (int v : values_) {
        if (v < 0 || v >= q) {
            throw SpecError("array value " + std::to_string(v) + " outside [0," +
                            std::to_string(q) + ")");
        }
    }
}

GbfPolynomial::GbfPolynomial(int q, int y_var_count, int x_var_count, std::vector<Monomial> terms)
    : q_(q), y_vars_(y_var_count), x_vars_(x_var_count) {
    check_q(q);
    if (y_vars_ < 0 || x_vars_ < 0 || y_vars_ > 31 || x_vars_ > 31) {
        throw SpecError("variable counts must be in [0, 31]");
    }
    const std::uint32_t y_limit = (y_vars_ == 0) ? 0u : ((1u << y_vars_) - 1u);
    const std::uint32_t x_limit = (x_vars_ == 0) ? 0u : ((1u << x_vars_) - 1u);
    std::map<std::pair<std::uint32_t, std::uint32_t>, long long> merged;
    for (const Monomial& t : terms) {
        if ((t.y_mask & ~y_limit) != 0 || (t.x_mask & ~x_limit) != 0) {
            throw SpecError("monomial uses a variable index beyond the declared counts");
        }
        merged[{t.y_mask, t.x_mask}] += t.coeff;
    }
    for (const auto& [key, c] : merged) {
        const int cq = mod_q(c, q_);
        if (cq != 0) {
            terms_.push_back(Monomial{key.first, key.second, cq});
        }
    }
}

int GbfPolynomial::evaluate(std::span<const int> y_bits, std::span<const int> x_bits) const {
    if (y_bits.size() != static_cast<std::size_t>(y_vars_) ||
        x_bits.size() != static_cast<std::size_t>(x_vars_)) {
        throw SpecError("bit-vector lengths (" + std::to_string(y_bits.size()) + "," +
                        std::to_string(x_bits.size()) + ") do not match variable counts (" +
                        std::to_string(y_vars_) + "," + std::to_string(x_vars_) + ")");
    }
    std::uint32_t g = 0, i = 0;
    for (int h = 0; h < y_vars_; ++h) {
        if (y_bits[h] != 0 && y_bits[h] != 1) throw SpecError("bit-vector entries must be 0 or 1");
        g |= static_cast<std::uint32_t>(y_bits[h]) << h;
    }
    for (int l = 0; l < x_vars_; ++l) {
        if (x_bits[l] != 0 && x_bits[l] != 1) throw SpecError("bit-vector entries must be 0 or 1");
        i |= static_cast<std::uint32_t>(x_bits[l]) << l;
    }
    return evaluate_index(g, i);
}

int GbfPolynomial::evaluate_index(std::uint32_t g, std::uint32_t i) const {
    long long acc = 0;
    for (const Monomial& t : terms_) {
        // A product of 0/1 variables is 1 iff every participant bit is set.
        if ((t.y_mask & g) == t.y_mask && (t.x_mask & i) == t.x_mask) {
            acc += t.coeff;
        }
    }
    return mod_q(acc, q_);
}

ZqArray to_array(const GbfPolynomial& f) {
    const std::size_t rows = std::size_t{1} << f.y_var_count();
    const std::size_t cols = std::size_t{1} << f.x_var_count();
    std::vector<int> values(rows * cols);
    for (std::size_t g = 0; g < rows; ++g) {
        for (std::size_t i = 0; i < cols; ++i) {
            values[g * cols + i] = f.evaluate_index(static_cast<std::uint32_t>(g),
                                                    static_cast<std::uint32_t>(i));
        }
    }
    return ZqArray(f.q(), rows, cols, std::move(values));
}

namespace {

void check_same_shape(const GbfPolynomial& f, const GbfPolynomial& g) {
    if (f.q() != g.q() || f.y_var_count() != g.y_var_count() ||
        f.x_var_count() != g.x_var_count()) {
        throw SpecError("polynomial operands do not share (q, n, m)");
    }
}

} // namespace

GbfPolynomial add(const GbfPolynomial& f, const GbfPolynomial& g) {
    check_same_shape(f, g);
    std::vector<Monomial> terms(f.terms().begin(), f.terms().end());
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return GbfPolynomial(f.q(), f.y_var_count(), f.x_var_count(), std::move(terms));
}

GbfPolynomial scale(const GbfPolynomial& f, int c) {
    std::vector<Monomial> terms(f.terms().begin(), f.terms().end());
    for (Monomial& t : terms) {
        t.coeff = mod_q(static_cast<long long>(t.coeff) * c, f.q());
    }
    return GbfPolynomial(f.q(), f.y_var_count(), f.x_var_count(), std::move(terms));
}

GbfPolynomial add_linear_y(const GbfPolynomial& f, int y_index, int coeff) {
    if (y_index < 1 || y_index > f.y_var_count()) {
        throw SpecError("y-variable index " + std::to_string(y_index) + " out of range");
    }
    std::vector<Monomial> terms(f.terms().begin(), f.terms().end());
    terms.push_back(Monomial{1u << (y_index - 1), 0u, mod_q(coeff, f.q())});
    return GbfPolynomial(f.q(), f.y_var_count(), f.x_var_count(), std::move(terms));
}

GbfPolynomial add_linear_x(const GbfPolynomial& f, int x_index, int coeff) {
    if (x_index < 1 || x_index > f.x_var_count()) {
        throw SpecError("x-variable index " + std::to_string(x_index) + " out of range");
    }
    std::vector<Monomial> terms(f.terms().begin(), f.terms().end());
    terms.push_back(Monomial{0u, 1u << (x_index - 1), mod_q(coeff, f.q())});
    return GbfPolynomial(f.q(), f.y_var_count(), f.x_var_count(), std::move(terms));
}

GbfPolynomial add_constant(const GbfPolynomial& f, int coeff) {
    std::vector<Monomial> terms(f.terms().begin(), f.terms().end());
    terms.push_back(Monomial{0u, 0u, mod_q(coeff, f.q())});
    return GbfPolynomial(f.q(), f.y_var_count(), f.x_var_count(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Textual format.
//
//   input      := stmt (';' stmt)* [';']
//   stmt       := 'q' '=' int | 'n' '=' int | 'm' '=' int | 'f' '=' sum
//   sum        := ['-'] term (('+' | '-') term)*
//   term       := int ['*' factors] | factors
//   factors    := var ('*' var)*
//   var        := ('x' | 'y') index          (1-based index)
//
// Whitespace is insignificant. Repeated variables in a term collapse
// (variables are 0/1 valued). A '-' folds into the coefficient mod q.
// ---------------------------------------------------------------------------

namespace {

struct PolyLexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer at offset " + std::to_string(pos));
        return std::stoll(std::string(text.substr(start, pos - start)));
    }
};

} // namespace

GbfPolynomial parse_polynomial(std::string_view text) {
    PolyLexer lx{text};
    long long q = -1, n = -1, m = -1;
    bool have_f = false;

    struct RawTerm {
        long long coeff = 1;
        std::uint32_t y_mask = 0, x_mask = 0;
        int max_y = 0, max_x = 0;
    };
    std::vector<RawTerm> raw;

    while (!lx.eof()) {
        char key = lx.peek();
        if (key == 'q' || key == 'n' || key == 'm') {
            ++lx.pos;
            if (!lx.consume('=')) throw ParseError(std::string("expected '=' after '") + key + "'");
            long long v = lx.integer();
            if (key == 'q') q = v;
            else if (key == 'n') n = v;
            else m = v;
        } else if (key == 'f') {
            ++lx.pos;
            if (!lx.consume('=')) throw ParseError("expected '=' after 'f'");
            if (have_f) throw ParseError("multiple 'f =' statements");
            have_f = true;
            bool negate = lx.consume('-');
            while (true) {
                RawTerm t;
                if (negate) t.coeff = -1;
                bool has_vars = true;
                if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
                    t.coeff *= lx.integer();
                    has_vars = lx.consume('*'); // a bare integer is a constant term
                } else if (lx.peek() != 'x' && lx.peek() != 'y') {
                    throw ParseError("expected a variable or integer at offset " +
                                     std::to_string(lx.pos));
                }
                while (has_vars) {
                    char v = lx.peek();
                    if (v != 'x' && v != 'y') {
                        throw ParseError("expected 'x<i>' or 'y<i>' at offset " +
                                         std::to_string(lx.pos));
                    }
                    ++lx.pos;
                    long long idx = lx.integer();
                    if (idx < 1 || idx > 31) {
                        throw ParseError("variable index " + std::to_string(idx) +
                                         " outside [1, 31]");
                    }
                    if (v == 'y') {
                        t.y_mask |= 1u << (idx - 1);
                        t.max_y = std::max(t.max_y, static_cast<int>(idx));
                    } else {
                        t.x_mask |= 1u << (idx - 1);
                        t.max_x = std::max(t.max_x, static_cast<int>(idx));
                    }
                    has_vars = lx.consume('*');
                }
                raw.push_back(t);
                if (lx.consume('+')) {
                    negate = false;
                } else if (lx.consume('-')) {
                    negate = true;
                } else {
                    break;
                }
            }
        } else {
            throw ParseError(std::string("unexpected character '") + key + "' at offset " +
                             std::to_string(lx.pos));
        }
        if (!lx.consume(';')) break;
    }
    if (!lx.eof()) {
        throw ParseError("trailing input at offset " + std::to_string(lx.pos));
    }
    if (q < 0) throw ParseError("missing 'q =' statement");
    if (!have_f) throw ParseError("missing 'f =' statement");

    int max_y = 0, max_x = 0;
    for (const RawTerm& t : raw) {
        max_y = std::max(max_y, t.max_y);
        max_x = std::max(max_x, t.max_x);
    }
    if (n < 0) n = max_y;
    if (m < 0) m = max_x;
    if (max_y > n || max_x > m) {
        throw SpecError("polynomial mentions a variable beyond the declared n/m");
    }

    std::vector<Monomial> terms;
    terms.reserve(raw.size());
    for (const RawTerm& t : raw) {
        long long c = t.coeff % q;
        if (c < 0) c += q;
        terms.push_back(Monomial{t.y_mask, t.x_mask, static_cast<int>(c)});
    }
    return GbfPolynomial(static_cast<int>(q), static_cast<int>(n), static_cast<int>(m),
                         std::move(terms));
}

std::string format_polynomial(const GbfPolynomial& f) {
    std::ostringstream out;
    out << "q=" << f.q() << "; n=" << f.y_var_count() << "; m=" << f.x_var_count() << "; f = ";
    if (f.terms().empty()) {
        out << "0";
        return out.str();
    }
    bool first = true;
    for (const Monomial& t : f.terms()) {
        if (!first) out << " + ";
        first = false;
        const bool constant = t.y_mask == 0 && t.x_mask == 0;
        if (t.coeff != 1 || constant) {
            out << t.coeff;
            if (!constant) out << "*";
        }
        bool need_star = false;
        for (int h = 1; h <= f.y_var_count(); ++h) {
            if (t.y_mask & (1u << (h - 1))) {
                if (need_star) out << "*";
                out << "y" << h;
                need_star = true;
            }
        }
        for (int l = 1; l <= f.x_var_count(); ++l) {
            if (t.x_mask & (1u << (l - 1))) {
                if (need_star) out << "*";
                out << "x" << l;
                need_star = true;
            }
        }
    }
    return out.str();
}

} // namespace ccc
