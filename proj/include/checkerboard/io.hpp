#ifndef CHECKERBOARD_IO_HPP
#define CHECKERBOARD_IO_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "checkerboard/matrix.hpp"
#include "checkerboard/report.hpp"

namespace checkerboard {

enum class ScalarMode { rational, floating };

enum class Command { factorize, polys, verify, christoffel, kernels, hankel };

enum class PayloadKind { condensed, unwrapped, gram };

const char* to_string(Command c);
const char* to_string(PayloadKind k);
Command parse_command(std::string_view name);

/// Moment data in one scalar type. `moments` holds S_k (condensed) or h_k
/// (unwrapped); `entries` holds the odd-order Gram entries (gram).
template <Scalar T>
struct Payload {
    PayloadKind kind = PayloadKind::condensed;
    std::vector<BlockEntry<T>> moments;
    std::map<std::pair<std::size_t, std::size_t>, BlockEntry<T>> entries;
};

struct JobConfig {
    ScalarMode scalar = ScalarMode::rational;
    double tolerance = kDefaultTolerance;
    std::size_t order = 1;
    std::size_t truncation = 2;
    std::variant<Payload<Rational>, Payload<double>> payload;
    std::optional<Command> command;
    std::optional<long long> nmax;

    PayloadKind kind() const;
    /// Zero in rational mode, the configured tolerance otherwise.
    double check_tolerance() const { return scalar == ScalarMode::rational ? 0.0 : tolerance; }
};

struct RunOptions {
    std::optional<long long> nmax;
    bool emit_matrices = false;
};

/// Validates and converts an input document. Throws ParseError,
/// PatternViolation or OddTruncation.
JobConfig ingest_json(const nlohmann::json& doc);

/// Reads and ingests a file.
JobConfig ingest(const std::filesystem::path& path);

/// Runs one command. Domain errors are reported as failed records.
Report run(const JobConfig& config, Command command, const RunOptions& options = {});

nlohmann::json scalar_to_json(const Rational& x);
nlohmann::json scalar_to_json(double x);
nlohmann::json matrix_to_json(const Matrix<Rational>& m);
nlohmann::json matrix_to_json(const Matrix<double>& m);

} // namespace checkerboard

#endif
