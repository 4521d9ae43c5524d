#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccc {

// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_io_error = 2;
inline constexpr int exit_spec_error = 3;

struct ConstructOptions {
    std::string spec_path;
    std::string out_path;
};

struct VerifyOptions {
    std::string family_path;
    double tolerance = -1.0; // < 0 picks the q-dependent default
    int threads = 0;
    std::string report_path; // optional copy of the report text
    std::string table_csv;   // optional full correlation table
};

struct RadiateOptions {
    std::string family_path;
    std::size_t set_index = 0;
    double wavelength = 1.0;
    double dx = 0.5;
    double dy = 0.5;
    std::size_t phi_points = 50;
    std::size_t theta_points = 50;
    std::string out_csv;
};

struct BerOptions {
    std::string scheme = "ccc"; // ccc | zc | random
    std::string family_path;    // required for ccc
    std::size_t set_index = 0;
    std::size_t L1 = 8; // geometry for zc/random schemes
    std::size_t L2 = 16;
    std::size_t zc_root1 = 1;
    std::size_t zc_root2 = 1;
    std::vector<double> snr_db = {0, 2, 4, 6, 8};
    std::uint64_t bits_per_point = 400000;
    std::uint64_t seed = 1;
    int threads = 0;
    bool fixed_direction = false;
    double phi_deg = 30.0; // used when fixed_direction
    double theta_deg = 60.0;
    double wavelength = 1.0;
    double dx = 0.5;
    double dy = 0.5;
    std::string out_csv;
};

struct Export1dOptions {
    std::string family_path;
    std::string out_path;
};

int cmd_construct(const ConstructOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_radiate(const RadiateOptions& opt);
int cmd_ber(const BerOptions& opt);
int cmd_export_1d(const Export1dOptions& opt);

} // namespace ccc
