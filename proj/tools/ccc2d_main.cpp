#include <CLI11.hpp>

#include "ccc/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"2D complete complementary code toolkit"};
    app.require_subcommand(1);

    ccc::ConstructOptions construct_opt;
    CLI::App* construct = app.add_subcommand(
        "construct", "Build a CCC family from a construction-spec file");
    construct->add_option("-s,--spec", construct_opt.spec_path, "construction spec file")
        ->required();
    construct->add_option("-o,--out", construct_opt.out_path, "family file to write")->required();

    ccc::VerifyOptions verify_opt;
    CLI::App* verify =
        app.add_subcommand("verify", "Exhaustively check the CCC correlation properties");
    verify->add_option("-f,--family", verify_opt.family_path, "family file")->required();
    verify->add_option("--tolerance", verify_opt.tolerance,
                       "magnitude tolerance; negative picks the alphabet default")
        ->capture_default_str();
    verify->add_option("--threads", verify_opt.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    verify->add_option("--report", verify_opt.report_path, "also write the report to this file");
    verify->add_option("--table", verify_opt.table_csv,
                       "write the full correlation table CSV to this file");

    ccc::RadiateOptions radiate_opt;
    CLI::App* radiate =
        app.add_subcommand("radiate", "Power radiation pattern of one set over an angle grid");
    radiate->add_option("-f,--family", radiate_opt.family_path, "family file")->required();
    radiate->add_option("--set", radiate_opt.set_index, "set index")->capture_default_str();
    radiate->add_option("--wavelength", radiate_opt.wavelength, "carrier wavelength")
        ->capture_default_str();
    radiate->add_option("--dx", radiate_opt.dx, "column spacing")->capture_default_str();
    radiate->add_option("--dy", radiate_opt.dy, "row spacing")->capture_default_str();
    radiate->add_option("--phi-points", radiate_opt.phi_points, "grid points over [0, 90] deg")
        ->capture_default_str();
    radiate->add_option("--theta-points", radiate_opt.theta_points,
                        "grid points over [0, 360) deg")
        ->capture_default_str();
    radiate->add_option("-o,--out", radiate_opt.out_csv, "CSV to write")->required();

    ccc::BerOptions ber_opt;
    CLI::App* ber = app.add_subcommand("ber", "Monte-Carlo BER of a precoding scheme");
    ber->add_option("--scheme", ber_opt.scheme, "precoder scheme")
        ->check(CLI::IsMember({"ccc", "zc", "random"}))
        ->capture_default_str();
    ber->add_option("-f,--family", ber_opt.family_path, "family file (scheme ccc)");
    ber->add_option("--set", ber_opt.set_index, "set index (scheme ccc)")->capture_default_str();
    ber->add_option("--L1", ber_opt.L1, "array rows (schemes zc/random)")->capture_default_str();
    ber->add_option("--L2", ber_opt.L2, "array columns (schemes zc/random)")
        ->capture_default_str();
    ber->add_option("--zc-root1", ber_opt.zc_root1, "ZC root for the length-L1 sequence")
        ->capture_default_str();
    ber->add_option("--zc-root2", ber_opt.zc_root2, "ZC root for the length-L2 sequence")
        ->capture_default_str();
    ber->add_option("--snr", ber_opt.snr_db, "Eb/N0 sweep in dB (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    ber->add_option("--bits", ber_opt.bits_per_point, "bit budget per SNR point")
        ->capture_default_str();
    ber->add_option("--seed", ber_opt.seed, "master RNG seed")->capture_default_str();
    ber->add_option("--threads", ber_opt.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    ber->add_flag("--fixed-direction", ber_opt.fixed_direction,
                  "use one fixed user direction instead of per-frame random directions");
    ber->add_option("--phi-deg", ber_opt.phi_deg, "fixed elevation in degrees")
        ->capture_default_str();
    ber->add_option("--theta-deg", ber_opt.theta_deg, "fixed azimuth in degrees")
        ->capture_default_str();
    ber->add_option("--wavelength", ber_opt.wavelength, "carrier wavelength")
        ->capture_default_str();
    ber->add_option("--dx", ber_opt.dx, "column spacing")->capture_default_str();
    ber->add_option("--dy", ber_opt.dy, "row spacing")->capture_default_str();
    ber->add_option("-o,--out", ber_opt.out_csv, "CSV to write")->required();

    ccc::Export1dOptions export_opt;
    CLI::App* export1d =
        app.add_subcommand("export-1d", "Write the sequence view of a single-row family");
    export1d->add_option("-f,--family", export_opt.family_path, "family file with L1 = 1")
        ->required();
    export1d->add_option("-o,--out", export_opt.out_path, "sequence file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ccc::exit_ok : ccc::exit_io_error;
    }

    if (app.got_subcommand(construct)) return ccc::cmd_construct(construct_opt);
    if (app.got_subcommand(verify)) return ccc::cmd_verify(verify_opt);
    if (app.got_subcommand(radiate)) return ccc::cmd_radiate(radiate_opt);
    if (app.got_subcommand(ber)) return ccc::cmd_ber(ber_opt);
    if (app.got_subcommand(export1d)) return ccc::cmd_export_1d(export_opt);
    return ccc::exit_io_error;
}
