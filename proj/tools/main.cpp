// Command-line front-end: state synthesis, Bell runs, tomography and
// curve emission built from the entsim library.

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entsim/apparatus.hpp"
#include "entsim/chsh.hpp"
#include "entsim/io.hpp"
#include "entsim/measures.hpp"
#include "entsim/random.hpp"
#include "entsim/states.hpp"
#include "entsim/tomography.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConvergence = 4;

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateFlags {
    std::string family = "werner";
    double p = 0.42;
    double phi_deg = 180.0;
    double wA = 1.0, wB = 0.0, wC = 0.0;
    double dx = 0.0, x0 = 1.0;
    double visibility = -1.0;  // < 0: not applied

    void add_options(CLI::App& app) {
        app.add_option("--family", family,
                       "State family: bell|singlet|werner|mems|sectors|displacement|mixed");
        app.add_option("--p", p, "Family parameter p (werner, mems)");
        app.add_option("--phi-deg", phi_deg, "Bell phase in degrees (bell family)");
        app.add_option("--wA", wA, "Singlet sector weight (sectors family)");
        app.add_option("--wB", wB, "Decohered HV/VH sector weight");
        app.add_option("--wC", wC, "Decohered HH/VV sector weight");
        app.add_option("--dx", dx, "Plate displacement in mm (displacement family)");
        app.add_option("--x0", x0, "Displacement saturation scale in mm");
        app.add_option("--visibility", visibility,
                       "Mix with the flat background to this fringe visibility");
    }

    json spec() const {
        json s = {{"family", family}};
        if (family == "bell") s["phi"] = phi_deg * kDegToRad;
        if (family == "werner" || family == "mems") s["p"] = p;
        if (family == "sectors") {
            s["wA"] = wA;
            s["wB"] = wB;
            s["wC"] = wC;
        }
        if (family == "displacement") {
            s["dx"] = dx;
            s["x0"] = x0;
        }
        if (visibility >= 0.0) s["visibility"] = visibility;
        return s;
    }
};

struct DetectorFlags {
    entsim::DetectorModel model;
    bool ideal = false;

    void add_options(CLI::App& app) {
        app.add_flag("--ideal", ideal, "Ideal detectors: dqe 1, no darks, no accidentals");
        app.add_option("--dqe", model.dqe, "Detector quantum efficiency");
        app.add_option("--dark-rate", model.dark_rate, "Dark counts per second per detector");
        app.add_option("--pair-rate", model.pair_rate, "Detected pair rate, counts/s");
        app.add_option("--window", model.coincidence_window, "Coincidence window, s");
        app.add_option("--background", model.singles_rate_background,
                       "Background singles rate, counts/s");
    }

    entsim::DetectorModel resolve() const {
        if (!ideal) return model;
        entsim::DetectorModel m = entsim::DetectorModel::ideal();
        m.pair_rate = model.pair_rate;
        return m;
    }

    json to_json() const {
        const entsim::DetectorModel m = resolve();
        return {{"dqe", m.dqe},
                {"dark_rate", m.dark_rate},
                {"pair_rate", m.pair_rate},
                {"coincidence_window", m.coincidence_window},
                {"singles_rate_background", m.singles_rate_background}};
    }
};

struct AngleFlags {
    std::string preset = "optimal";  // optimal | printed
    std::vector<double> degrees;     // explicit theta1, theta1', theta2, theta2'

    void add_options(CLI::App& app) {
        app.add_option("--angles", preset, "CHSH angle preset: optimal|printed");
        app.add_option("--angles-deg", degrees,
                       "Explicit CHSH angles theta1,theta1',theta2,theta2' in degrees")
            ->expected(4);
    }

    entsim::ChshAngles resolve() const {
        if (!degrees.empty()) {
            return {degrees[0] * kDegToRad, degrees[1] * kDegToRad,
                    degrees[2] * kDegToRad, degrees[3] * kDegToRad};
        }
        if (preset == "optimal") return entsim::ChshAngles::optimal();
        if (preset == "printed") return entsim::ChshAngles::printed();
        throw entsim::ValidationError("unknown angle preset '" + preset + "'");
    }

    json to_json() const {
        const entsim::ChshAngles a = resolve();
        return {{"theta1_deg", a.theta1 / kDegToRad},
                {"theta1p_deg", a.theta1p / kDegToRad},
                {"theta2_deg", a.theta2 / kDegToRad},
                {"theta2p_deg", a.theta2p / kDegToRad}};
    }
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string matrix_csv(const entsim::DensityMatrix& rho) {
    std::ostringstream out;
    out << "row,col,real,imag\n";
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out << r << ',' << c << ',' << format_double(rho(r, c).real()) << ','
                << format_double(rho(r, c).imag()) << '\n';
    return out.str();
}

int cmd_state(const StateFlags& state, const std::string& out_path) {
    const json spec = state.spec();
    const entsim::DensityMatrix rho = entsim::state_from_spec(spec);
    json out = {{"config", {{"subcommand", "state"}, {"state", spec}}},
                {"rho", entsim::density_to_json(rho)},
                {"report", entsim::report_to_json(entsim::report(rho))}};
    write_text(out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_bell(const StateFlags& state, const DetectorFlags& detector,
             const AngleFlags& angles, double duration, std::uint64_t seed,
             const std::string& out_path, const std::string& fringe_path,
             double fringe_step_deg) {
    const json spec = state.spec();
    const entsim::DensityMatrix rho = entsim::state_from_spec(spec);
    const entsim::ChshAngles a = angles.resolve();
    const entsim::DetectorModel model = detector.resolve();
    const entsim::ChshEstimate est =
        entsim::run_bell_experiment(rho, a, duration, model, seed);

    json config = {{"subcommand", "bell"}, {"state", spec},
                   {"detector", detector.to_json()}, {"angles", angles.to_json()},
                   {"duration_s", duration}, {"seed", seed},
                   {"fringe_step_deg", fringe_step_deg}};
    json out = {{"config", config},
                {"S", est.S},
                {"sigma_S", est.sigma_S},
                {"significance", est.significance}};
    write_text(out_path, out.dump(2) + "\n");

    if (!fringe_path.empty()) {
        std::vector<double> theta1;
        for (double d = 45.0; d <= 135.0 + 1e-9; d += fringe_step_deg) {
            theta1.push_back(d * kDegToRad);
        }
        const auto pts = entsim::fringe(rho, 45.0 * kDegToRad, theta1);
        std::ostringstream csv;
        csv << "theta1_deg,coincidence_probability\n";
        for (const auto& [t, p] : pts) {
            csv << format_double(t / kDegToRad) << ',' << format_double(p) << '\n';
        }
        write_text(fringe_path, csv.str());
    }
    return 0;
}

int cmd_simulate(const StateFlags& state, const DetectorFlags& detector,
                 double duration, std::uint64_t seed, const std::string& mode,
                 const std::string& out_path) {
    const json spec = state.spec();
    const entsim::DensityMatrix rho = entsim::state_from_spec(spec);
    const auto settings = entsim::standard_settings(
        mode == "36" ? entsim::SettingsMode::ThirtySix : entsim::SettingsMode::Sixteen);
    const auto records =
        entsim::simulate_counts(rho, settings, duration, detector.resolve(), seed);
    write_text(out_path, entsim::count_records_to_csv(records));
    return 0;
}

int cmd_tomo(const StateFlags& state, const DetectorFlags& detector, double duration,
             std::uint64_t seed, const std::string& mode, const std::string& counts_path,
             const std::string& out_path, const std::string& matrix_csv_path,
             bool no_accidental_subtraction) {
    const json spec = state.spec();
    const entsim::DensityMatrix target = entsim::state_from_spec(spec);
    const auto settings = entsim::standard_settings(
        mode == "36" ? entsim::SettingsMode::ThirtySix : entsim::SettingsMode::Sixteen);

    std::vector<entsim::CountRecord> records;
    if (!counts_path.empty()) {
        std::ifstream in(counts_path);
        if (!in) throw IoError("cannot open counts file '" + counts_path + "'");
        records = entsim::count_records_from_csv(in);
    } else {
        records =
            entsim::simulate_counts(target, settings, duration, detector.resolve(), seed);
    }

    entsim::MleOptions options;
    options.subtract_accidentals = !no_accidental_subtraction;
    const entsim::TomographyResult result =
        entsim::mle_reconstruct(records, settings, options, &target);

    json config = {{"subcommand", "tomo"}, {"state", spec},
                   {"detector", detector.to_json()}, {"duration_s", duration},
                   {"seed", seed}, {"settings_mode", mode},
                   {"counts_file", counts_path},
                   {"subtract_accidentals", options.subtract_accidentals}};
    json out = {{"config", config},
                {"rho", entsim::density_to_json(result.rho)},
                {"log_likelihood", result.log_likelihood},
                {"iterations", result.iterations},
                {"converged", result.converged},
                {"fidelity_vs_target", result.fidelity_vs_target.value()},
                {"report", entsim::report_to_json(entsim::derived_quantities(result))}};
    write_text(out_path, out.dump(2) + "\n");
    if (!matrix_csv_path.empty()) write_text(matrix_csv_path, matrix_csv(result.rho));
    if (!result.converged) throw ConvergenceError("MLE did not converge");
    return 0;
}

int cmd_curve(const DetectorFlags& detector, double step, bool simulate,
              double duration, std::uint64_t seed, const std::string& out_path) {
    std::ostringstream csv;
    csv << "family,p,linear_entropy,tangle,chsh_max,ppt_min_eigenvalue\n";
    const auto emit = [&](const std::string& family, double p,
                          const entsim::DensityMatrix& rho) {
        const entsim::StateReport rep = entsim::report(rho);
        csv << family << ',' << format_double(p) << ','
            << format_double(rep.linear_entropy) << ',' << format_double(rep.tangle)
            << ',' << format_double(rep.chsh_max) << ','
            << format_double(rep.ppt_min_eigenvalue) << '\n';
    };

    std::vector<double> grid;
    for (double p = 0.0; p <= 1.0 + 1e-12; p += step) grid.push_back(std::min(p, 1.0));
    for (double p : grid) emit("werner", p, entsim::werner(p));
    for (double p : grid) emit("mems", p, entsim::mems(p));

    if (simulate) {
        const auto settings = entsim::standard_settings(entsim::SettingsMode::Sixteen);
        const entsim::DetectorModel model = detector.resolve();
        std::uint64_t point = 0;
        for (const std::string& family : {"werner", "mems"}) {
            for (double p : grid) {
                const entsim::DensityMatrix rho =
                    family == "werner" ? entsim::werner(p) : entsim::mems(p);
                const auto records = entsim::simulate_counts(
                    rho, settings, duration, model, entsim::split_seed(seed, point++));
                const auto result = entsim::mle_reconstruct(records, settings);
                emit(family + "_reconstructed", p, result.rho);
            }
        }
    }
    write_text(out_path, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit entangled-state synthesis, Bell tests and tomography"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "",
                   "INI file with one [subcommand] section of flat key=value options");
    app.allow_config_extras(false);

    StateFlags state;
    DetectorFlags detector;
    AngleFlags angles;
    double duration = 180.0;
    std::uint64_t seed = 1;
    std::string out_path;       // empty/- : stdout
    std::string fringe_path;
    std::string matrix_csv_path;
    std::string counts_path;
    std::string settings_mode = "16";
    double fringe_step_deg = 1.0;
    double curve_step = 0.01;
    bool curve_simulate = false;
    bool no_accidental_subtraction = false;

    if (const char* dir = std::getenv("ENTSIM_OUTPUT_DIR")) {
        // sets the default directory for relative output paths
        if (chdir(dir) != 0) {
            std::cerr << "error: cannot enter ENTSIM_OUTPUT_DIR '" << dir << "'\n";
            return kExitIo;
        }
    }

    CLI::App* c_state = app.add_subcommand("state", "Synthesize a state and report its measures");
    state.add_options(*c_state);
    c_state->add_option("-o,--out", out_path, "Output JSON path (default stdout)");

    CLI::App* c_bell = app.add_subcommand("bell", "Simulated CHSH run with statistical errors");
    state.add_options(*c_bell);
    detector.add_options(*c_bell);
    angles.add_options(*c_bell);
    c_bell->add_option("--duration", duration, "Acquisition time per setting, s");
    c_bell->add_option("--seed", seed, "Random seed");
    c_bell->add_option("-o,--out", out_path, "Output JSON path (default stdout)");
    c_bell->add_option("--fringe-out", fringe_path, "Fringe CSV path");
    c_bell->add_option("--fringe-step-deg", fringe_step_deg, "Fringe angle step, degrees");

    CLI::App* c_sim = app.add_subcommand("simulate", "Simulate tomography counts only");
    state.add_options(*c_sim);
    detector.add_options(*c_sim);
    c_sim->add_option("--duration", duration, "Acquisition time per setting, s");
    c_sim->add_option("--seed", seed, "Random seed");
    c_sim->add_option("--settings", settings_mode, "Tomography settings: 16|36");
    c_sim->add_option("-o,--out", out_path, "Counts CSV path (default stdout)");

    CLI::App* c_tomo = app.add_subcommand("tomo", "Simulate (or replay) counts and reconstruct");
    state.add_options(*c_tomo);
    detector.add_options(*c_tomo);
    c_tomo->add_option("--duration", duration, "Acquisition time per setting, s");
    c_tomo->add_option("--seed", seed, "Random seed");
    c_tomo->add_option("--settings", settings_mode, "Tomography settings: 16|36");
    c_tomo->add_option("--counts", counts_path, "Replay counts from CSV instead of simulating");
    c_tomo->add_flag("--no-accidental-subtraction", no_accidental_subtraction,
                     "Keep accidentals in the likelihood counts");
    c_tomo->add_option("-o,--out", out_path, "Output JSON path (default stdout)");
    c_tomo->add_option("--matrix-csv", matrix_csv_path, "Reconstructed-matrix CSV path");

    CLI::App* c_curve = app.add_subcommand("curve", "Tangle/entropy curves for Werner and MEMS");
    detector.add_options(*c_curve);
    c_curve->add_option("--step", curve_step, "Grid step in p");
    c_curve->add_flag("--simulate", curve_simulate,
                      "Add tomographically reconstructed grid points");
    c_curve->add_option("--duration", duration, "Acquisition time per setting, s");
    c_curve->add_option("--seed", seed, "Base random seed for per-point sub-seeds");
    c_curve->add_option("-o,--out", out_path, "Output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (c_state->parsed()) return cmd_state(state, out_path);
        if (c_bell->parsed()) {
            return cmd_bell(state, detector, angles, duration, seed, out_path,
                            fringe_path, fringe_step_deg);
        }
        if (c_sim->parsed()) {
            return cmd_simulate(state, detector, duration, seed, settings_mode, out_path);
        }
        if (c_tomo->parsed()) {
            return cmd_tomo(state, detector, duration, seed, settings_mode, counts_path,
                            out_path, matrix_csv_path, no_accidental_subtraction);
        }
        if (c_curve->parsed()) {
            return cmd_curve(detector, curve_step, curve_simulate, duration, seed, out_path);
        }
    } catch (const entsim::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
