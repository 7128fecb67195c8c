#pragma once

/**
 * @file cli.hpp
 * @brief The `qspectral` command line: argument parsing and command dispatch.
 *
 * Exit codes: 0 success, 1 input error (bad flags, unreadable or malformed
 * files, operator outside a command's domain), 2 verification failure.
 */

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qspectral/compact.hpp"
#include "qspectral/io.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/spectral.hpp"
#include "qspectral/verify.hpp"

namespace qspectral::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;
inline constexpr int exit_verification = 2;

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"spectrum", "classify", "decompose", "synth", "verify", "simulate"};
    return c;
}

struct RunConfig {
    std::string command;
    std::optional<std::string> input;
    std::optional<std::string> output;
    Quaternion slice{0.0, 1.0, 0.0, 0.0};
    double tol{1e-9};
    std::uint64_t seed{0};
    std::optional<std::size_t> random;
    std::size_t count{1};
    std::vector<std::size_t> levels;
};

inline std::string usage() {
    return "usage: qspectral <command> [--input FILE] [--output FILE] [--slice w,x,y,z] [--tol T]\n"
           "                 [--seed S] [--random N] [--count K] [--levels N1,N2,...]\n"
           "\n"
           "commands:\n"
           "  spectrum   spherical point spectrum and spectral radius of a matrix\n"
           "  classify   normal / self-adjoint / anti self-adjoint / unitary / positive\n"
           "  decompose  A + JB splitting, spectral decomposition and its canonical form\n"
           "  synth      matrix from {\"basis\", \"lambdas\"}\n"
           "  verify     invariant suite on --input, or on --random N --count K normals\n"
           "  simulate   compact-model sweep over --levels\n"
           "\n"
           "QSPECTRAL_TOL sets the default tolerance; --tol overrides it.\n";
}

/// QSPECTRAL_TOL, when set to a positive number.
inline std::optional<double> env_tolerance() {
    const char* v = std::getenv("QSPECTRAL_TOL");
    if (v == nullptr || *v == '\0') return std::nullopt;
    char* end = nullptr;
    const double t = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(t > 0.0)) throw std::invalid_argument("QSPECTRAL_TOL must be a positive number");
    return t;
}

/// "w,x,y,z" or "[w, x, y, z]".
inline Quaternion parse_slice(std::string text) {
    for (char& c : text)
        if (c == '[' || c == ']' || c == ',') c = ' ';
    std::istringstream is(text);
    Quaternion q;
    if (!(is >> q.w >> q.x >> q.y >> q.z)) throw std::invalid_argument("--slice needs four numbers w,x,y,z");
    std::string rest;
    if (is >> rest) throw std::invalid_argument("--slice needs exactly four numbers");
    return q;
}

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code{exit_ok};
};

/// Parses argv; on --help, usage errors or unknown commands returns the exit code instead of a config.
inline ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral analysis of quaternionic matrices", "qspectral"};
    app.set_help_flag();
    RunConfig cfg;
    bool help = false;
    std::string slice;
    std::optional<double> tol;
    std::string input, output;
    std::optional<std::size_t> random;
    app.add_flag("-h,--help", help);
    app.add_option("command", cfg.command);
    app.add_option("--input", input);
    app.add_option("--output", output);
    app.add_option("--slice", slice);
    app.add_option("--tol", tol);
    app.add_option("--seed", cfg.seed);
    app.add_option("--random", random);
    app.add_option("--count", cfg.count);
    app.add_option("--levels", cfg.levels)->delimiter(',');
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << usage();
        return {std::nullopt, exit_input};
    }
    if (help) {
        out << usage();
        return {std::nullopt, exit_ok};
    }
    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end()) {
        if (cfg.command.empty()) err << "error: missing command\n\n";
        else err << "error: unknown command '" << cfg.command << "'\n\n";
        err << usage();
        return {std::nullopt, exit_input};
    }
    try {
        if (const auto env = env_tolerance()) cfg.tol = *env;
        if (tol) cfg.tol = *tol;
        if (!(cfg.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
        if (!slice.empty()) cfg.slice = parse_slice(slice);
        (void)ImaginaryUnit::from(cfg.slice, 1e-9);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, exit_input};
    }
    if (!input.empty()) cfg.input = input;
    if (!output.empty()) cfg.output = output;
    cfg.random = random;
    return {cfg, exit_ok};
}

namespace detail {

inline io::json read_input(const RunConfig& cfg) {
    if (!cfg.input) throw io::format_error(cfg.command + " needs --input");
    std::ifstream f(*cfg.input);
    if (!f) throw io::format_error("cannot open " + *cfg.input);
    try {
        return io::json::parse(f);
    } catch (const io::json::exception& e) {
        throw io::format_error(*cfg.input + ": " + e.what());
    }
}

inline io::json spectrum_report(const QMatrix& t, const ImaginaryUnit& iota, double tol) {
    const auto s = point_spectrum(t, iota, tol);
    return {{"spectrum", io::to_json(s.points)},
            {"spectral_radius", s.points.max_modulus()},
            {"normal", s.normal},
            {"note", s.note()}};
}

inline io::json decompose_report(const QMatrix& t, const ImaginaryUnit& iota, double tol) {
    const double ctol = std::max(default_classify_tol(t.dim()), tol);
    const auto cls = classify(t, ctol);
    if (!cls.normal) throw structure_error("decompose: operator is not normal");
    const auto ajb = ajb_decompose(t, iota, ctol);
    const auto dec = spectral_decomposition(t, iota, ctol);
    const auto canon = canonicalize(dec, iota, tol);
    return {{"classification", io::to_json(cls)},
            {"ajb", io::to_json(ajb)},
            {"decomposition", io::to_json(dec)},
            {"canonical", io::to_json(canon)}};
}

/// {"basis": "standard" | basis, "lambdas": [...]}.
inline QMatrix synth_from_json(const io::json& j, double tol) {
    if (!j.is_object() || !j.contains("lambdas") || !j.contains("basis"))
        throw io::format_error("synth input needs \"basis\" and \"lambdas\"");
    if (!j["lambdas"].is_array()) throw io::format_error("\"lambdas\" must be a list of quaternions");
    std::vector<Quaternion> lambdas;
    for (const auto& l : j["lambdas"]) lambdas.push_back(io::quaternion_from_json(l));
    const HilbertBasis basis = j["basis"] == "standard" ? HilbertBasis::standard(lambdas.size()) : io::basis_from_json(j["basis"]);
    return synthesize(basis, lambdas, std::max(tol, basis_tol(basis.dim())));
}

inline std::vector<std::size_t> simulate_levels(const RunConfig& cfg, const CompactModel& m) {
    if (!cfg.levels.empty()) return cfg.levels;
    return {m.N};
}

}  // namespace detail

/// Runs one command; JSON or report text goes to --output or `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream body;
    int code = exit_ok;
    try {
        if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
        const ImaginaryUnit iota = ImaginaryUnit::from(cfg.slice, 1e-9);
        const auto& c = cfg.command;
        if (c == "spectrum") {
            io::write_json(body, detail::spectrum_report(io::matrix_from_json(detail::read_input(cfg)), iota, cfg.tol));
        } else if (c == "classify") {
            const QMatrix t = io::matrix_from_json(detail::read_input(cfg));
            io::write_json(body, io::to_json(classify(t, std::max(default_classify_tol(t.dim()), cfg.tol))));
        } else if (c == "decompose") {
            io::write_json(body, detail::decompose_report(io::matrix_from_json(detail::read_input(cfg)), iota, cfg.tol));
        } else if (c == "synth") {
            io::write_json(body, io::to_json(detail::synth_from_json(detail::read_input(cfg), cfg.tol)));
        } else if (c == "verify") {
            VerifyReport report;
            if (cfg.random) {
                if (*cfg.random < 1 || cfg.count < 1) throw std::invalid_argument("--random and --count must be >= 1");
                body << "# verify random n=" << *cfg.random << " count=" << cfg.count << " seed=" << cfg.seed
                     << " tol=" << io::format_double(cfg.tol) << '\n';
                report = verify_random(*cfg.random, cfg.count, cfg.seed, iota, cfg.tol);
            } else {
                const QMatrix t = io::matrix_from_json(detail::read_input(cfg));
                body << "# verify input=" << *cfg.input << " tol=" << io::format_double(cfg.tol) << '\n';
                verify_operator(report, "input", t, iota, cfg.tol);
            }
            report.write(body);
            if (!report.ok()) code = exit_verification;
        } else if (c == "simulate") {
            const CompactModel model = io::model_from_json(detail::read_input(cfg));
            const auto levels = detail::simulate_levels(cfg, model);
            const auto reports = verify_compact_laws(model, levels, cfg.tol);
            io::json rs = io::json::array();
            bool ok = true;
            for (const auto& r : reports) {
                rs.push_back(io::to_json(r));
                ok = ok && r.ok();
            }
            io::write_json(body, {{"model", io::to_json(model)}, {"levels", std::move(rs)}, {"ok", ok}});
            if (!ok) code = exit_verification;
        } else {
            err << "error: unknown command '" << c << "'\n\n" << usage();
            return exit_input;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    if (cfg.output) {
        std::ofstream f(*cfg.output);
        if (!f || !(f << body.str())) {
            err << "error: cannot write " << *cfg.output << '\n';
            return exit_input;
        }
    } else {
        out << body.str();
    }
    return code;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto parsed = parse_args(argc, argv, out, err);
    if (!parsed.config) return parsed.exit_code;
    return run(*parsed.config, out, err);
}

}  // namespace qspectral::cli
