#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "checkerboard/io.hpp"
#include "checkerboard/kernels.hpp"

namespace checkerboard {

using nlohmann::json;

namespace {

std::string describe(const Error& e) { return std::string(e.kind()) + ": " + e.what(); }

template <Scalar T>
json block_matrix_json(const BlockMatrix<T>& m) {
    return matrix_to_json(m.flat());
}

template <Scalar T>
json polynomial_json(const MatrixPolynomial<T>& p) {
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(matrix_to_json(c));
    return coeffs;
}

template <Scalar T>
json family_json(const std::vector<MatrixPolynomial<T>>& polys) {
    json out = json::array();
    for (const auto& p : polys) out.push_back(polynomial_json(p));
    return out;
}

// Nonzero coefficients only, as {omega, z, block}.
template <Scalar T>
json kernel_json(const KernelPolynomial<T>& k) {
    json out = json::array();
    for (std::size_t a = 0; a <= k.omega_degree(); ++a)
        for (std::size_t b = 0; b <= k.z_degree(); ++b) {
            const auto c = k.coeff(a, b);
            if (!c.is_zero()) out.push_back({{"omega", a}, {"z", b}, {"block", matrix_to_json(c)}});
        }
    return out;
}

template <Scalar T>
std::vector<BlockEntry<T>> condensed_of(const Payload<T>& p) {
    if (p.kind == PayloadKind::condensed) return p.moments;
    std::vector<BlockEntry<T>> s;
    for (std::size_t k = 1; k < p.moments.size(); k += 2) s.push_back(p.moments[k]);
    return s;
}

template <Scalar T>
CheckerboardGram<T> gram_of(const Payload<T>& p, std::size_t order, std::size_t m) {
    switch (p.kind) {
    case PayloadKind::condensed: return hankel_gram(unwrap_moments(p.moments, order), m);
    case PayloadKind::unwrapped: return hankel_gram(MomentSequence<T>{order, p.moments, true}, m);
    case PayloadKind::gram: break;
    }
    return build_checkerboard(p.entries, order, m);
}

template <Scalar T>
void check_factorization(Report& report, const Factorization<T>& f, const BlockMatrix<T>& target, double tol) {
    check_block_matrix(report, "factorize.reconstruction", {}, reconstruct(f), target, tol);
    check_positions(report, "factorize.L1_pattern", {}, parity_lower_violations(f.L1, tol));
    check_positions(report, "factorize.L2_pattern", {}, parity_lower_violations(f.L2, tol));
    check_positions(report, "factorize.D_pattern", {}, antidiagonal_pair_violations(f.D, tol));
}

template <Scalar T>
std::optional<Factorization<T>> full_factorization(Report& report, const CheckerboardGram<T>& g) {
    auto progress = factorize_checkerboard_partial(g);
    report.data["levels"] = progress.levels;
    if (progress.singular_level) {
        report.data["singular_level"] = *progress.singular_level;
        report.add("factorize.pivots", {static_cast<long long>(*progress.singular_level)}, false, 0.0,
                   "SingularPivot: singular pivot at level " + std::to_string(*progress.singular_level));
        return std::nullopt;
    }
    report.add("factorize.pivots", {}, true);
    return std::move(progress.factorization);
}

template <Scalar T>
void run_factorize(Report& report, const CheckerboardGram<T>& g, const RunOptions& opt, double tol) {
    auto progress = factorize_checkerboard_partial(g);
    report.data["levels"] = progress.levels;
    report.data["singular_level"] = progress.singular_level ? json(*progress.singular_level) : json(nullptr);
    if (progress.singular_level) {
        report.add("factorize.pivots", {static_cast<long long>(*progress.singular_level)}, false, 0.0,
                   "SingularPivot: singular pivot at level " + std::to_string(*progress.singular_level));
        if (progress.levels > 0)
            report.notes.push_back("checks below cover the leading " + std::to_string(2 * progress.levels) +
                                   " block rows");
    } else {
        report.add("factorize.pivots", {}, true);
    }
    const auto& f = progress.factorization;
    if (f.size() > 0) check_factorization(report, f, g.matrix().leading(f.size()), tol);
    if (opt.emit_matrices) {
        report.data["L1"] = block_matrix_json(f.L1);
        report.data["D"] = block_matrix_json(f.D);
        report.data["L2"] = block_matrix_json(f.L2);
    }
}

template <Scalar T>
void run_polys(Report& report, const CheckerboardGram<T>& g, double tol) {
    const auto f = full_factorization(report, g);
    if (!f) return;
    const auto fam = polys_from_factorization(*f);
    report.data["p"] = family_json(fam.p);
    report.data["q"] = family_json(fam.q);
    for (std::size_t k = 0; k < fam.size(); ++k) {
        const std::vector<long long> idx{static_cast<long long>(k)};
        try {
            check_polynomial(report, "polys.route.p", idx, quasidet_poly(g, k, Side::P), fam.p[k], tol);
            check_polynomial(report, "polys.route.q", idx, quasidet_poly(g, k, Side::Q), fam.q[k], tol);
        } catch (const Error& e) {
            report.add("polys.route", idx, false, 0.0, describe(e));
        }
    }
}

template <Scalar T>
void run_verify(Report& report, const CheckerboardGram<T>& g, double tol) {
    const auto f = full_factorization(report, g);
    if (!f) return;
    check_factorization(report, *f, g.matrix(), tol);
    const auto fam = polys_from_factorization(*f);
    report.absorb(verify_family_structure(fam, tol));
    report.absorb(verify_biorthogonality(fam, g, tol));
    report.absorb(verify_orthogonality_relations(fam, g, tol));
}

template <Scalar T>
void run_christoffel(Report& report, const CheckerboardGram<T>& g, const RunOptions& opt, double tol) {
    report.absorb(verify_christoffel(g, tol));
    try {
        const auto f = factorize_checkerboard(g);
        const auto ct = christoffel_transform(g);
        const auto c = connector_from_L(f, ct);
        json subdiag = json::array();
        for (const auto& s : c.subdiag) subdiag.push_back(matrix_to_json(s));
        json dhat = json::array();
        for (std::size_t k = 0; k < ct.size(); ++k) dhat.push_back(matrix_to_json(ct.d(k)));
        report.data["sigma_subdiag"] = std::move(subdiag);
        report.data["dhat"] = std::move(dhat);
        report.data["hat_p"] = family_json(polys_from_factorization(ct.factorization).p);
        if (opt.emit_matrices) {
            report.data["shifted"] = block_matrix_json(ct.shifted);
            report.data["L1hat"] = block_matrix_json(ct.factorization.L1);
            report.data["Dhat"] = block_matrix_json(ct.factorization.D);
            report.data["L2hat"] = block_matrix_json(ct.factorization.L2);
            report.data["sigma"] = block_matrix_json(c.sigma);
        }
    } catch (const Error&) {
        // already reported by the suite
    }
}

template <Scalar T>
void run_kernels(Report& report, const CheckerboardGram<T>& g, std::optional<long long> nmax, double tol) {
    report.absorb(verify_kernels(g, nmax, tol));
    try {
        const auto fam = polys_from_factorization(factorize_checkerboard(g));
        const long long top = std::min(nmax.value_or(max_kernel_index(g.size())), max_kernel_index(g.size()));
        json kernels = json::array();
        for (long long n = 0; n <= top; ++n)
            kernels.push_back({{"n", n},
                               {"even", kernel_json(kernel(fam, Parity::even, n))},
                               {"odd", kernel_json(kernel(fam, Parity::odd, n))}});
        report.data["kernels"] = std::move(kernels);
    } catch (const Error&) {
    }
}

template <Scalar T>
void run_hankel(Report& report, const Payload<T>& payload, const CheckerboardGram<T>& g,
                std::optional<long long> nmax, double tol) {
    if (payload.kind == PayloadKind::gram) {
        report.add("hankel.input", {}, false, 0.0, "NotHankel: the hankel command needs a moment payload");
        return;
    }
    const auto s = condensed_of(payload);
    const auto f = full_factorization(report, g);
    if (!f) return;
    try {
        const auto lifted = hankel_factorize(s, g.order(), g.size() / 2);
        check_block_matrix(report, "hankel.kronecker_route.L1", {}, lifted.L1, f->L1, tol);
        check_block_matrix(report, "hankel.kronecker_route.D", {}, lifted.D, f->D, tol);
        check_block_matrix(report, "hankel.kronecker_route.L2", {}, lifted.L2, f->L2, tol);
        const auto condensed = generic_ldu(condensed_hankel(s, g.order(), g.size() / 2));
        json dt = json::array();
        for (std::size_t j = 0; j < condensed.size(); ++j) dt.push_back(matrix_to_json(condensed.D.block(j, j)));
        report.data["condensed_d"] = std::move(dt);
    } catch (const Error& e) {
        report.add("hankel.kronecker_route", {}, false, 0.0, describe(e));
    }
    const auto fam = polys_from_factorization(*f);
    report.data["p"] = family_json(fam.p);
    report.absorb(verify_hankel_specialization(fam, s, tol));
    const long long top = std::min(nmax.value_or(max_kernel_index(g.size())), max_kernel_index(g.size()));
    report.absorb(hankel_kernels(fam, s, top, tol));
}

template <Scalar T>
void run_typed(Report& report, const JobConfig& cfg, const Payload<T>& payload, Command command,
               const RunOptions& opt) {
    const double tol = cfg.check_tolerance();
    std::optional<CheckerboardGram<T>> g;
    try {
        g.emplace(gram_of(payload, cfg.order, cfg.truncation));
    } catch (const Error& e) {
        report.add("input", {}, false, 0.0, describe(e));
        return;
    }
    const auto nmax = opt.nmax ? opt.nmax : cfg.nmax;
    try {
        switch (command) {
        case Command::factorize: run_factorize(report, *g, opt, tol); break;
        case Command::polys: run_polys(report, *g, tol); break;
        case Command::verify: run_verify(report, *g, tol); break;
        case Command::christoffel: run_christoffel(report, *g, opt, tol); break;
        case Command::kernels: run_kernels(report, *g, nmax, tol); break;
        case Command::hankel: run_hankel(report, payload, *g, nmax, tol); break;
        }
    } catch (const SingularPivot& e) {
        report.add(std::string(to_string(command)), {static_cast<long long>(e.level())}, false, 0.0, describe(e));
    } catch (const Error& e) {
        report.add(std::string(to_string(command)), {}, false, 0.0, describe(e));
    }
}

} // namespace

Report run(const JobConfig& config, Command command, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.command = to_string(command);
    report.data["scalar"] = config.scalar == ScalarMode::rational ? "rational" : "float";
    report.data["n"] = config.order;
    report.data["m"] = config.truncation;
    std::visit([&](const auto& payload) { run_typed(report, config, payload, command, options); }, config.payload);
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace checkerboard
