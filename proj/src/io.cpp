#include "checkerboard/io.hpp"

#include <fstream>
#include <sstream>

namespace checkerboard {

using nlohmann::json;

const char* to_string(Command c) {
    switch (c) {
    case Command::factorize: return "factorize";
    case Command::polys: return "polys";
    case Command::verify: return "verify";
    case Command::christoffel: return "christoffel";
    case Command::kernels: return "kernels";
    case Command::hankel: return "hankel";
    }
    return "?";
}

const char* to_string(PayloadKind k) {
    switch (k) {
    case PayloadKind::condensed: return "condensed_moments";
    case PayloadKind::unwrapped: return "unwrapped_moments";
    case PayloadKind::gram: return "gram_entries";
    }
    return "?";
}

Command parse_command(std::string_view name) {
    for (Command c : {Command::factorize, Command::polys, Command::verify, Command::christoffel, Command::kernels,
                      Command::hankel})
        if (name == to_string(c)) return c;
    throw ParseError("unknown command '" + std::string(name) + "'");
}

PayloadKind JobConfig::kind() const {
    return std::visit([](const auto& p) { return p.kind; }, payload);
}

json scalar_to_json(const Rational& x) { return format_rational(x); }
json scalar_to_json(double x) { return x; }

namespace {

template <Scalar T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <Scalar T>
T scalar_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return parse_scalar<T>(j.get<std::string>());
    if (j.is_number()) return parse_scalar<T>(j.dump());
    throw ParseError(where + ": expected a number or a \"p/q\" string, got " + j.dump());
}

// A block is a bare scalar (order 1 only), a flat list of n*n values, or a
// nested row-major array.
template <Scalar T>
BlockEntry<T> block_from_json(const json& j, std::size_t n, const std::string& where) {
    Matrix<T> b(n, n);
    if (!j.is_array()) {
        if (n != 1) throw ParseError(where + ": a bare scalar is only a block when n = 1");
        b(0, 0) = scalar_from_json<T>(j, where);
        return b;
    }
    if (!j.empty() && j.front().is_array()) {
        if (j.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " rows");
        for (std::size_t r = 0; r < n; ++r) {
            if (!j[r].is_array() || j[r].size() != n)
                throw ParseError(where + ": row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
            for (std::size_t c = 0; c < n; ++c) b(r, c) = scalar_from_json<T>(j[r][c], where);
        }
        return b;
    }
    if (j.size() != n * n) throw ParseError(where + ": expected " + std::to_string(n * n) + " values");
    for (std::size_t k = 0; k < n * n; ++k) b(k / n, k % n) = scalar_from_json<T>(j[k], where);
    return b;
}

std::size_t index_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

template <Scalar T>
Payload<T> payload_from_json(const json& doc, PayloadKind kind, std::size_t n) {
    Payload<T> p;
    p.kind = kind;
    const json& body = doc.at(to_string(kind));
    if (!body.is_array()) throw ParseError(std::string(to_string(kind)) + " must be an array");
    if (kind == PayloadKind::gram) {
        for (std::size_t k = 0; k < body.size(); ++k) {
            const std::string where = "gram_entries[" + std::to_string(k) + "]";
            const json& e = body[k];
            std::size_t i, j;
            const json* block;
            if (e.is_object()) {
                if (!e.contains("i") || !e.contains("j") || !e.contains("block"))
                    throw ParseError(where + ": needs i, j and block");
                i = index_from_json(e["i"], where);
                j = index_from_json(e["j"], where);
                block = &e["block"];
            } else if (e.is_array() && e.size() == 3) {
                i = index_from_json(e[0], where);
                j = index_from_json(e[1], where);
                block = &e[2];
            } else {
                throw ParseError(where + ": expected {i, j, block} or [i, j, block]");
            }
            if ((i + j) % 2 == 0)
                throw PatternViolation(where + ": position (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") has even order");
            if (p.entries.contains({i, j})) throw ParseError(where + ": duplicate entry");
            p.entries.emplace(std::make_pair(i, j), block_from_json<T>(*block, n, where));
        }
        return p;
    }
    for (std::size_t k = 0; k < body.size(); ++k)
        p.moments.push_back(block_from_json<T>(body[k], n, std::string(to_string(kind)) + "[" + std::to_string(k) + "]"));
    if (kind == PayloadKind::unwrapped)
        for (std::size_t k = 0; k < p.moments.size(); k += 2)
            if (!p.moments[k].is_zero())
                throw PatternViolation("unwrapped moment h_" + std::to_string(k) + " must be zero");
    return p;
}

} // namespace

json matrix_to_json(const Matrix<Rational>& m) { return matrix_json(m); }
json matrix_to_json(const Matrix<double>& m) { return matrix_json(m); }

JobConfig ingest_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("input must be a JSON object");
    JobConfig cfg;
    try {
        const std::string scalar = doc.value("scalar", std::string("rational"));
        if (scalar == "rational")
            cfg.scalar = ScalarMode::rational;
        else if (scalar == "float")
            cfg.scalar = ScalarMode::floating;
        else
            throw ParseError("scalar must be \"rational\" or \"float\", got \"" + scalar + "\"");

        if (!doc.contains("n") || !doc.contains("m")) throw ParseError("input needs block order n and truncation m");
        if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) throw ParseError("n must be an integer >= 1");
        if (!doc["m"].is_number_integer()) throw ParseError("m must be an integer");
        const long long m = doc["m"].get<long long>();
        if (m < 2 || m % 2 != 0) throw OddTruncation("truncation m = " + std::to_string(m) + " must be even and >= 2");
        cfg.order = doc["n"].get<std::size_t>();
        cfg.truncation = static_cast<std::size_t>(m);

        if (doc.contains("tolerance")) {
            if (!doc["tolerance"].is_number()) throw ParseError("tolerance must be a number");
            cfg.tolerance = doc["tolerance"].get<double>();
            if (!(cfg.tolerance > 0.0)) throw ParseError("tolerance must be positive");
        }
        if (doc.contains("command")) cfg.command = parse_command(doc["command"].get<std::string>());
        if (doc.contains("nmax")) {
            if (!doc["nmax"].is_number_integer()) throw ParseError("nmax must be an integer");
            cfg.nmax = doc["nmax"].get<long long>();
        }

        std::optional<PayloadKind> kind;
        for (PayloadKind k : {PayloadKind::condensed, PayloadKind::unwrapped, PayloadKind::gram})
            if (doc.contains(to_string(k))) {
                if (kind) throw ParseError("input must contain exactly one moment payload");
                kind = k;
            }
        if (!kind) throw ParseError("input needs one of condensed_moments, unwrapped_moments, gram_entries");
        if (cfg.scalar == ScalarMode::rational)
            cfg.payload = payload_from_json<Rational>(doc, *kind, cfg.order);
        else
            cfg.payload = payload_from_json<double>(doc, *kind, cfg.order);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed input: ") + e.what());
    }
    return cfg;
}

JobConfig ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return ingest_json(doc);
}

} // namespace checkerboard
