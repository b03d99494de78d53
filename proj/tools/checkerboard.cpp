// Command-line front end: reads a moment file, runs one command, prints the
// JSON report on stdout. Exit status 0 pass, 1 check failure, 2 usage or
// parse error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "checkerboard/io.hpp"

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("checkerboard");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("CHECKERBOARD_LOG")) {
        const auto parsed = spdlog::level::from_str(level);
        if (parsed == spdlog::level::off && std::string(level) != "off")
            spdlog::warn("unknown CHECKERBOARD_LOG level '{}', keeping warn", level);
        else
            spdlog::set_level(parsed);
    }
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Structured LDU factorization and biorthogonal polynomials of checkerboard Gram matrices"};
    std::string input;
    std::string command_name;
    std::optional<long long> nmax;
    std::optional<double> tolerance;
    bool emit_matrices = false;
    app.add_option("--input", input, "moment file (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--command", command_name, "factorize | polys | verify | christoffel | kernels | hankel")
        ->check(CLI::IsMember({"factorize", "polys", "verify", "christoffel", "kernels", "hankel"}));
    app.add_option("--nmax", nmax, "largest kernel index n (default: maximal for the truncation)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--tolerance", tolerance, "float-mode tolerance (default 1e-10)")->check(CLI::PositiveNumber);
    app.add_flag("--emit-matrices", emit_matrices, "include factor matrices in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    using namespace checkerboard;
    JobConfig config;
    Command command;
    try {
        config = ingest(input);
        if (tolerance) config.tolerance = *tolerance;
        if (!command_name.empty())
            command = parse_command(command_name);
        else if (config.command)
            command = *config.command;
        else
            throw ParseError("no command given (use --command or a \"command\" field)");
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << '\n';
        return 2;
    }
    spdlog::info("{}: n = {}, m = {}, {} payload, {} mode", input, config.order, config.truncation,
                 to_string(config.kind()), config.scalar == ScalarMode::rational ? "rational" : "float");

    RunOptions options;
    options.nmax = nmax;
    options.emit_matrices = emit_matrices;
    const Report report = run(config, command, options);
    spdlog::info("{}: {} records, {} failed, {:.1f} ms", to_string(command), report.records.size(),
                 report.failures().size(), report.timing_ms);
    for (const auto* f : report.failures())
        spdlog::debug("failed {} {}", f->name, f->detail);

    std::cout << to_json(report).dump(2) << '\n';
    return report.pass() ? 0 : 1;
}
