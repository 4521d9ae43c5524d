#include "ccc/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "ccc/correlation.hpp"
#include "ccc/errors.hpp"
#include "ccc/family_io.hpp"
#include "ccc/mimo.hpp"

namespace ccc {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int resolved_threads(int threads) {
    if (threads > 0) return threads;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    return out;
}

// Uniform handling of the documented exit codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io_error;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_spec_error;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io_error;
    }
}

std::string report_text(const VerificationReport& report, const FamilyFile& file,
                        const std::string& path, int threads) {
    std::ostringstream out;
    out << "ccc2d verify report\n";
    out << "family " << path << "\n";
    out << "q " << file.q << "\n";
    out << "M " << file.M << "\n";
    out << "N " << file.N << "\n";
    out << "L1 " << file.L1 << "\n";
    out << "L2 " << file.L2 << "\n";
    out << "tolerance " << fmt_double(report.tolerance) << "\n";
    out << "threads " << threads << "\n";
    out << "shifts-checked " << report.shifts_checked << "\n";
    out << "result " << (report.passed ? "PASS" : "FAIL") << "\n";
    if (!report.passed) {
        if (report.structural_failure) {
            out << "reason " << report.failure_reason << "\n";
        } else {
            out << "worst p " << report.worst_p << " p' " << report.worst_p2 << " u1 "
                << report.worst_u1 << " u2 " << report.worst_u2 << " value "
                << fmt_double(report.worst_value.real()) << (report.worst_value.imag() < 0 ? "" : "+")
                << fmt_double(report.worst_value.imag()) << "j error "
                << fmt_double(report.worst_error) << "\n";
        }
    }
    return out.str();
}

} // namespace

int cmd_construct(const ConstructOptions& opt) {
    return guarded([&] {
        const std::vector<std::string> spec_lines = read_lines(opt.spec_path);
        std::string spec_bytes;
        for (const std::string& line : spec_lines) {
            spec_bytes += line;
            spec_bytes += '\n';
        }
        ConstructionSpec spec = parse_spec_file(opt.spec_path);
        spec.validate();
        const CccFamily family = build_ccc(spec);
        const FamilyFile file =
            FamilyFile::from_family(family, provenance_tag(spec_bytes), spec_lines);
        write_family_file(opt.out_path, file);
        std::cout << "constructed (" << file.M << "," << file.N << "," << file.L1 << ","
                  << file.L2 << ")-CCC over Z_" << file.q << " -> " << opt.out_path << "\n";
        return exit_ok;
    });
}

int cmd_verify(const VerifyOptions& opt) {
    return guarded([&] {
        const FamilyFile file = read_family_file(opt.family_path);
        const CccFamily family = file.to_family();
        const double tolerance =
            opt.tolerance >= 0.0
                ? opt.tolerance
                : default_tolerance(file.q, file.N, file.L1, file.L2);
        const int threads = resolved_threads(opt.threads);
        const VerificationReport report = verify_ccc(family, tolerance, threads);
        const std::string text = report_text(report, file, opt.family_path, threads);
        std::cout << text;
        if (!opt.report_path.empty()) {
            std::ofstream out = open_out(opt.report_path);
            out << text;
        }
        if (!opt.table_csv.empty()) {
            std::ofstream out = open_out(opt.table_csv);
            out << "p,p2,u1,u2,re,im\n";
            const int L1 = static_cast<int>(file.L1);
            const int L2 = static_cast<int>(file.L2);
            for (std::size_t p = 0; p < file.M; ++p) {
                for (std::size_t p2 = 0; p2 < file.M; ++p2) {
                    for (int u1 = 0; u1 < L1; ++u1) {
                        for (int u2 = -(L2 - 1); u2 < L2; ++u2) {
                            const CorrelationValue v =
                                set_correlation_sum(file.sets[p], file.sets[p2], u1, u2);
                            out << p << ',' << p2 << ',' << u1 << ',' << u2 << ','
                                << fmt_double(v.value.real()) << ',' << fmt_double(v.value.imag())
                                << "\n";
                        }
                    }
                }
            }
        }
        return report.passed ? exit_ok : exit_verify_failed;
    });
}

int cmd_radiate(const RadiateOptions& opt) {
    return guarded([&] {
        const FamilyFile file = read_family_file(opt.family_path);
        if (opt.set_index >= file.M) {
            throw SpecError("set index " + std::to_string(opt.set_index) +
                            " outside [0," + std::to_string(file.M) + ")");
        }
        if (opt.phi_points < 1 || opt.theta_points < 1) {
            throw SpecError("angle grids need at least one point per axis");
        }
        SteeringConfig cfg;
        cfg.L1 = file.L1;
        cfg.L2 = file.L2;
        cfg.wavelength = opt.wavelength;
        cfg.dx = opt.dx;
        cfg.dy = opt.dy;
        const PrecoderSet W = precoders_from_arrays(file.sets[opt.set_index], true);

        std::vector<double> phi_grid(opt.phi_points), theta_grid(opt.theta_points);
        for (std::size_t i = 0; i < opt.phi_points; ++i) {
            phi_grid[i] = opt.phi_points == 1
                              ? 0.0
                              : (std::numbers::pi / 2) * static_cast<double>(i) /
                                    static_cast<double>(opt.phi_points - 1);
        }
        for (std::size_t j = 0; j < opt.theta_points; ++j) {
            theta_grid[j] = 2.0 * std::numbers::pi * static_cast<double>(j) /
                            static_cast<double>(opt.theta_points);
        }
        const std::vector<double> grid = power_pattern(W, cfg, phi_grid, theta_grid);

        std::ofstream out = open_out(opt.out_csv);
        out << "# ccc2d radiate\n";
        out << "# family: " << opt.family_path << "\n";
        out << "# set: " << opt.set_index << "\n";
        out << "# label: " << W.label << "\n";
        out << "# geometry: L1=" << cfg.L1 << " L2=" << cfg.L2 << " wavelength="
            << fmt_double(cfg.wavelength) << " dx=" << fmt_double(cfg.dx) << " dy="
            << fmt_double(cfg.dy) << "\n";
        out << "# entries: unimodular (no power normalization)\n";
        out << "phi_deg,theta_deg,power\n";
        for (std::size_t i = 0; i < phi_grid.size(); ++i) {
            for (std::size_t j = 0; j < theta_grid.size(); ++j) {
                out << fmt_double(phi_grid[i] * 180.0 / std::numbers::pi) << ','
                    << fmt_double(theta_grid[j] * 180.0 / std::numbers::pi) << ','
                    << fmt_double(grid[i * theta_grid.size() + j]) << "\n";
            }
        }
        std::cout << "wrote " << grid.size() << " grid points -> " << opt.out_csv << "\n";
        return exit_ok;
    });
}

int cmd_ber(const BerOptions& opt) {
    return guarded([&] {
        PrecoderSet W;
        SteeringConfig cfg;
        cfg.wavelength = opt.wavelength;
        cfg.dx = opt.dx;
        cfg.dy = opt.dy;
        std::string source;
        if (opt.scheme == "ccc") {
            if (opt.family_path.empty()) {
                throw SpecError("scheme 'ccc' needs a family file (--family)");
            }
            const FamilyFile file = read_family_file(opt.family_path);
            if (opt.set_index >= file.M) {
                throw SpecError("set index " + std::to_string(opt.set_index) +
                                " outside [0," + std::to_string(file.M) + ")");
            }
            W = precoders_from_arrays(file.sets[opt.set_index]);
            cfg.L1 = file.L1;
            cfg.L2 = file.L2;
            source = opt.family_path + " (set " + std::to_string(opt.set_index) + ")";
        } else if (opt.scheme == "zc") {
            W = zc_precoders(opt.L1, opt.L2, opt.zc_root1, opt.zc_root2);
            cfg.L1 = opt.L1;
            cfg.L2 = opt.L2;
            source = "zc roots (" + std::to_string(opt.zc_root1) + "," +
                     std::to_string(opt.zc_root2) + ")";
        } else if (opt.scheme == "random") {
            W = random_precoders(opt.L1, opt.L2, 4, opt.seed);
            cfg.L1 = opt.L1;
            cfg.L2 = opt.L2;
            source = "seed-derived +-1 matrices";
        } else {
            throw SpecError("unknown scheme '" + opt.scheme + "' (expected ccc, zc, or random)");
        }

        SimConfig sim;
        sim.snr_db = opt.snr_db;
        sim.bits_per_point = opt.bits_per_point;
        sim.seed = opt.seed;
        sim.threads = resolved_threads(opt.threads);
        if (opt.fixed_direction) {
            sim.direction = DirectionPolicy::fixed;
            sim.fixed_phi = opt.phi_deg * std::numbers::pi / 180.0;
            sim.fixed_theta = opt.theta_deg * std::numbers::pi / 180.0;
        }
        const std::vector<BerPoint> points = ber_simulation(sim, cfg, W);

        std::ofstream out = open_out(opt.out_csv);
        out << "# ccc2d ber\n";
        out << "# scheme: " << opt.scheme << "\n";
        out << "# label: " << W.label << "\n";
        if (W.label == "zc-surrogate") {
            out << "# note: surrogate baseline (outer products of cyclically shifted ZC"
                   " sequences), not the reference construction\n";
        }
        out << "# source: " << source << "\n";
        out << "# geometry: L1=" << cfg.L1 << " L2=" << cfg.L2 << " wavelength="
            << fmt_double(cfg.wavelength) << " dx=" << fmt_double(cfg.dx) << " dy="
            << fmt_double(cfg.dy) << "\n";
        if (opt.fixed_direction) {
            out << "# direction: fixed phi_deg=" << fmt_double(opt.phi_deg)
                << " theta_deg=" << fmt_double(opt.theta_deg) << "\n";
        } else {
            out << "# direction: random-per-frame\n";
        }
        out << "# snr: Eb/N0 in dB; noise variance 10^(-snr/10)\n";
        out << "# seed: " << opt.seed << "\n";
        out << "# threads: " << sim.threads << "\n";
        out << "# bits-per-point: " << opt.bits_per_point << "\n";
        out << "snr_db,ber,bit_count,frame_count\n";
        for (const BerPoint& point : points) {
            out << fmt_double(point.snr_db) << ',' << fmt_double(point.ber) << ',' << point.bits
                << ',' << point.frames << "\n";
        }
        std::cout << "simulated " << points.size() << " SNR points -> " << opt.out_csv << "\n";
        return exit_ok;
    });
}

int cmd_export_1d(const Export1dOptions& opt) {
    return guarded([&] {
        const FamilyFile file = read_family_file(opt.family_path);
        const SequenceFamily seqs = reduce_to_1d(file.to_family());
        std::ofstream out = open_out(opt.out_path);
        write_sequences(out, seqs, file.provenance);
        out.flush();
        if (!out) throw ParseError("failed writing '" + opt.out_path + "'");
        std::cout << "exported " << file.M << "x" << file.N << " sequences of length " << file.L2
                  << " -> " << opt.out_path << "\n";
        return exit_ok;
    });
}

} // namespace ccc
