#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ccc/construct.hpp"
#include "ccc/correlation.hpp"

namespace ccc {

// On-disk family representation: header, optional echo of the construction
// spec it came from, and the M*N integer grids. Serialization is canonical,
// so read-then-write reproduces a written file byte for byte.
struct FamilyFile {
    int q = 2;
    std::size_t M = 0;
    std::size_t N = 0;
    std::size_t L1 = 0;
    std::size_t L2 = 0;
    std::string provenance;             // "external" or "spec-fnv1a-<hex>"
    std::vector<std::string> spec_echo; // original spec file lines, if any
    std::vector<std::vector<ZqArray>> sets;

    CccFamily to_family() const;
    static FamilyFile from_family(const CccFamily& family, std::string provenance,
                                  std::vector<std::string> spec_echo = {});
};

FamilyFile read_family(std::istream& in);
FamilyFile read_family_file(const std::string& path); // throws ParseError
void write_family(std::ostream& out, const FamilyFile& file);
void write_family_file(const std::string& path, const FamilyFile& file);

// Construction-spec file: `key = value` lines, '#' comments, lists in
// [...] / [[...],...] form. Required keys: q, m, n, k, x_partition,
// y_partition, x_bijections, y_bijections; optional: d, w, w0 (default 0).
ConstructionSpec parse_spec(std::istream& in);
ConstructionSpec parse_spec_file(const std::string& path);
std::vector<std::string> read_lines(const std::string& path); // throws ParseError

// FNV-1a 64-bit over the raw bytes; used for family provenance tags.
std::uint64_t fnv1a64(const std::string& bytes);
std::string provenance_tag(const std::string& spec_bytes);

// 1D sequence export of an L1 == 1 family.
void write_sequences(std::ostream& out, const SequenceFamily& seqs, const std::string& provenance);

} // namespace ccc
