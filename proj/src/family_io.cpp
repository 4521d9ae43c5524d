#include "ccc/family_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ccc/errors.hpp"

namespace ccc {

namespace {

// Line reader tracking position for diagnostics.
struct LineReader {
    std::istream& in;
    std::string line;
    std::size_t number = 0;

    bool next() {
        if (!std::getline(in, line)) return false;
        ++number;
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(number) + ": " + what);
    }
    void expect(const std::string& want) {
        if (!next()) throw ParseError("unexpected end of file, expected '" + want + "'");
        if (line != want) fail("expected '" + want + "', got '" + line + "'");
    }
};

long long parse_int(const std::string& token, const LineReader& reader) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(reader.number) + ": expected integer, got '" +
                         token + "'");
    }
    return value;
}

long long header_value(LineReader& reader, const std::string& key) {
    if (!reader.next()) throw ParseError("unexpected end of file, expected '" + key + "' header");
    std::istringstream fields(reader.line);
    std::string k, v, extra;
    if (!(fields >> k >> v) || fields >> extra || k != key) {
        reader.fail("expected '" + key + " <value>', got '" + reader.line + "'");
    }
    return parse_int(v, reader);
}

std::vector<int> parse_row(LineReader& reader, std::size_t want, int q) {
    std::istringstream fields(reader.line);
    std::vector<int> row;
    std::string token;
    while (fields >> token) {
        const long long v = parse_int(token, reader);
        if (v < 0 || v >= q) reader.fail("value " + token + " outside [0," + std::to_string(q) + ")");
        row.push_back(static_cast<int>(v));
    }
    if (row.size() != want) {
        reader.fail("row has " + std::to_string(row.size()) + " values, expected " +
                    std::to_string(want));
    }
    return row;
}

} // namespace

CccFamily FamilyFile::to_family() const {
    return CccFamily(q, sets);
}

FamilyFile FamilyFile::from_family(const CccFamily& family, std::string provenance,
                                   std::vector<std::string> spec_echo) {
    FamilyFile file;
    file.q = family.q();
    file.M = family.set_count();
    file.N = family.arrays_per_set();
    file.L1 = family.rows();
    file.L2 = family.cols();
    file.provenance = std::move(provenance);
    file.spec_echo = std::move(spec_echo);
    file.sets = family.sets();
    return file;
}

FamilyFile read_family(std::istream& in) {
    LineReader reader{in, {}, 0};
    reader.expect("ccc-family v1");
    FamilyFile file;
    file.q = static_cast<int>(header_value(reader, "q"));
    if (file.q < 2 || file.q % 2 != 0) reader.fail("q must be an even integer >= 2");
    file.M = static_cast<std::size_t>(header_value(reader, "M"));
    file.N = static_cast<std::size_t>(header_value(reader, "N"));
    file.L1 = static_cast<std::size_t>(header_value(reader, "L1"));
    file.L2 = static_cast<std::size_t>(header_value(reader, "L2"));
    if (file.M < 1 || file.N < 1 || file.L1 < 1 || file.L2 < 1) {
        reader.fail("M, N, L1, L2 must all be >= 1");
    }
    if (!reader.next()) throw ParseError("unexpected end of file, expected 'provenance' header");
    {
        std::istringstream fields(reader.line);
        std::string key;
        if (!(fields >> key) || key != "provenance" ||
            !(fields >> file.provenance) || file.provenance.empty()) {
            reader.fail("expected 'provenance <tag>', got '" + reader.line + "'");
        }
        std::string extra;
        if (fields >> extra) reader.fail("trailing tokens after provenance tag");
    }

    if (!reader.next()) throw ParseError("unexpected end of file, expected array data");
    if (reader.line == "spec-begin") {
        while (true) {
            if (!reader.next()) throw ParseError("unexpected end of file inside spec echo block");
            if (reader.line == "spec-end") break;
            file.spec_echo.push_back(reader.line);
        }
        if (!reader.next()) throw ParseError("unexpected end of file, expected array data");
    }

    for (std::size_t p = 0; p < file.M; ++p) {
        std::vector<ZqArray> set;
        for (std::size_t t = 0; t < file.N; ++t) {
            const std::string marker =
                "set " + std::to_string(p) + " array " + std::to_string(t);
            if (p > 0 || t > 0) {
                if (!reader.next()) {
                    throw ParseError("unexpected end of file, expected '" + marker + "'");
                }
            }
            if (reader.line != marker) {
                reader.fail("expected '" + marker + "', got '" + reader.line + "'");
            }
            std::vector<int> values;
            values.reserve(file.L1 * file.L2);
            for (std::size_t g = 0; g < file.L1; ++g) {
                if (!reader.next()) throw ParseError("unexpected end of file inside array rows");
                const std::vector<int> row = parse_row(reader, file.L2, file.q);
                values.insert(values.end(), row.begin(), row.end());
            }
            set.emplace_back(file.q, file.L1, file.L2, std::move(values));
        }
        file.sets.push_back(std::move(set));
    }
    if (reader.next()) reader.fail("trailing content after the last array");
    return file;
}

FamilyFile read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return read_family(in);
}

void write_family(std::ostream& out, const FamilyFile& file) {
    out << "ccc-family v1\n";
    out << "q " << file.q << "\n";
    out << "M " << file.M << "\n";
    out << "N " << file.N << "\n";
    out << "L1 " << file.L1 << "\n";
    out << "L2 " << file.L2 << "\n";
    out << "provenance " << file.provenance << "\n";
    if (!file.spec_echo.empty()) {
        out << "spec-begin\n";
        for (const std::string& line : file.spec_echo) out << line << "\n";
        out << "spec-end\n";
    }
    for (std::size_t p = 0; p < file.sets.size(); ++p) {
        for (std::size_t t = 0; t < file.sets[p].size(); ++t) {
            out << "set " << p << " array " << t << "\n";
            const ZqArray& array = file.sets[p][t];
            for (std::size_t g = 0; g < array.rows(); ++g) {
                for (std::size_t i = 0; i < array.cols(); ++i) {
                    if (i) out << ' ';
                    out << array.at(g, i);
                }
                out << "\n";
            }
        }
    }
}

void write_family_file(const std::string& path, const FamilyFile& file) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_family(out, file);
    out.flush();
    if (!out) throw ParseError("failed writing '" + path + "'");
}

namespace {

// Minimal parser for the `key = value` spec format. Values are integers,
// [a,b,c] lists, or [[..],[..]] nested lists.
struct SpecScanner {
    std::string text;
    std::size_t pos = 0;
    std::size_t line = 1;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("spec line " + std::to_string(line) + ": " + what);
    }
    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
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
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, value);
        if (ec != std::errc() || start == pos) fail("expected an integer");
        (void)ptr;
        return value;
    }
    std::vector<int> int_list() {
        if (!consume('[')) fail("expected '['");
        std::vector<int> values;
        if (!consume(']')) {
            do {
                values.push_back(static_cast<int>(integer()));
            } while (consume(','));
            if (!consume(']')) fail("expected ']' or ','");
        }
        return values;
    }
    std::vector<std::vector<int>> nested_list() {
        if (!consume('[')) fail("expected '['");
        std::vector<std::vector<int>> blocks;
        if (!consume(']')) {
            do {
                blocks.push_back(int_list());
            } while (consume(','));
            if (!consume(']')) fail("expected ']' or ','");
        }
        return blocks;
    }
    void expect_end() {
        skip_ws();
        if (pos < text.size()) fail("trailing input after value");
    }
};

} // namespace

ConstructionSpec parse_spec(std::istream& in) {
    ConstructionSpec spec;
    bool have_q = false, have_m = false, have_n = false, have_k = false;
    bool have_xp = false, have_yp = false, have_xb = false, have_yb = false;
    bool have_d = false, have_w = false;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
        const std::size_t eq = body.find('=');
        std::string key = body.substr(0, eq == std::string::npos ? body.size() : eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!key.empty() && (key.front() == ' ' || key.front() == '\t')) key.erase(0, 1);
        if (key.empty()) {
            if (body.find_first_not_of(" \t") != std::string::npos) {
                throw ParseError("spec line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            continue;
        }
        if (eq == std::string::npos) {
            throw ParseError("spec line " + std::to_string(line_no) + ": missing '=' after '" +
                             key + "'");
        }
        SpecScanner scan{body.substr(eq + 1), 0, line_no};
        if (key == "q") {
            spec.q = static_cast<int>(scan.integer());
            have_q = true;
        } else if (key == "m") {
            spec.m = static_cast<int>(scan.integer());
            have_m = true;
        } else if (key == "n") {
            spec.n = static_cast<int>(scan.integer());
            have_n = true;
        } else if (key == "k") {
            spec.k = static_cast<int>(scan.integer());
            have_k = true;
        } else if (key == "w0") {
            spec.w0 = static_cast<int>(scan.integer());
        } else if (key == "d") {
            spec.d = scan.int_list();
            have_d = true;
        } else if (key == "w") {
            spec.w = scan.int_list();
            have_w = true;
        } else if (key == "x_partition") {
            spec.x_partition = scan.nested_list();
            have_xp = true;
        } else if (key == "y_partition") {
            spec.y_partition = scan.nested_list();
            have_yp = true;
        } else if (key == "x_bijections") {
            spec.x_bijections = scan.nested_list();
            have_xb = true;
        } else if (key == "y_bijections") {
            spec.y_bijections = scan.nested_list();
            have_yb = true;
        } else {
            throw ParseError("spec line " + std::to_string(line_no) + ": unknown key '" + key +
                             "'");
        }
        scan.expect_end();
    }
    const char* missing = !have_q ? "q"
                          : !have_m ? "m"
                          : !have_n ? "n"
                          : !have_k ? "k"
                          : !have_xp ? "x_partition"
                          : !have_yp ? "y_partition"
                          : !have_xb ? "x_bijections"
                          : !have_yb ? "y_bijections"
                                     : nullptr;
    if (missing) throw ParseError(std::string("spec is missing required key '") + missing + "'");
    if (!have_d) spec.d.assign(spec.m > 0 ? spec.m : 0, 0);
    if (!have_w) spec.w.assign(spec.n > 0 ? spec.n : 0, 0);
    return spec;
}

ConstructionSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return parse_spec(in);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string provenance_tag(const std::string& spec_bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t hash = fnv1a64(spec_bytes);
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    return "spec-fnv1a-" + hex;
}

void write_sequences(std::ostream& out, const SequenceFamily& seqs,
                     const std::string& provenance) {
    const std::size_t M = seqs.sets.size();
    const std::size_t N = M ? seqs.sets[0].size() : 0;
    const std::size_t L = N ? seqs.sets[0][0].size() : 0;
    out << "ccc-seqs v1\n";
    out << "q " << seqs.q << "\n";
    out << "M " << M << "\n";
    out << "N " << N << "\n";
    out << "L " << L << "\n";
    out << "provenance " << provenance << "\n";
    for (std::size_t p = 0; p < M; ++p) {
        for (std::size_t t = 0; t < seqs.sets[p].size(); ++t) {
            out << "set " << p << " seq " << t << "\n";
            const std::vector<int>& seq = seqs.sets[p][t];
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i) out << ' ';
                out << seq[i];
            }
            out << "\n";
        }
    }
}

} // namespace ccc
