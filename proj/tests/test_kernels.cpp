#include <doctest.h>

#include "checkerboard/kernels.hpp"
#include "support/support.hpp"

using namespace checkerboard;
using support::q;
using support::Q;
using support::s1;

namespace {

using Kernel = KernelPolynomial<Q>;

CheckerboardGram<Q> from_moments(const std::vector<Matrix<Q>>& s, std::size_t m) {
    return hankel_gram(unwrap_moments(s, 1), m);
}

Kernel scalar_kernel(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix<Q> k(rows.size(), rows.begin()->size());
    std::size_t a = 0;
    for (const auto& r : rows) {
        std::size_t b = 0;
        for (long v : r) k(a, b++) = v;
        ++a;
    }
    return Kernel(BlockMatrix<Q>(k, 1));
}

// w sum_j He_j(w^2) He_j(z^2) / j!, the Gaussian even kernel written out
// from the Hermite recurrence
Kernel gaussian_even_oracle(std::size_t n) {
    const auto he = support::hermite(n + 1);
    Matrix<Q> k(2 * n + 2, 2 * n + 1);
    Q fact = 1;
    for (std::size_t j = 0; j <= n; ++j) {
        if (j > 0) fact *= static_cast<long>(j);
        for (std::size_t a = 0; a < he[j].size(); ++a)
            for (std::size_t b = 0; b < he[j].size(); ++b) k(2 * a + 1, 2 * b) += Q(he[j][a] * he[j][b]) / fact;
    }
    return Kernel(BlockMatrix<Q>(k, 1));
}

} // namespace

TEST_CASE("identity-lift kernels") {
    const auto g = from_moments(support::scalar_moments({1, 0, 1}), 4);
    const auto fam = polys_from_factorization(factorize_checkerboard(g));
    CHECK(same_kernel(kernel(fam, Parity::even, 0), scalar_kernel({{0}, {1}}), 0.0));
    CHECK(same_kernel(kernel(fam, Parity::odd, 0), scalar_kernel({{0, 1}}), 0.0));
    CHECK(kernel(fam, Parity::even, 0).evaluate(q(3), q(5)) == s1(5));
    CHECK_THROWS_AS(kernel(fam, Parity::even, 2), OutOfRange);
    CHECK_THROWS_AS(kernel(fam, Parity::even, -1), OutOfRange);
    CHECK_THROWS_AS(kernel(fam, Parity::none, 0), OutOfRange);
}

TEST_CASE("Gaussian kernels against the Hermite oracle") {
    const auto g = from_moments(support::gaussian_moments(7), 8);
    const auto f = factorize_checkerboard(g);
    const auto fam = polys_from_factorization(f);
    for (long long n = 0; n <= 3; ++n) {
        const auto even = kernel(fam, Parity::even, n);
        CHECK(same_kernel(even, gaussian_even_oracle(n), 0.0));
        CHECK(same_kernel(kernel(fam, Parity::odd, n), gaussian_even_oracle(n).swapped().block_transposed(), 0.0));
        CHECK(same_kernel(abc_representation(f, Parity::even, n), even, 0.0));
        CHECK(same_kernel(abc_representation(f, Parity::odd, n), kernel(fam, Parity::odd, n), 0.0));
    }
    const auto report = hankel_kernels(fam, support::gaussian_moments(7), 3, 0.0);
    CHECK(report.pass());
    CHECK(report.records.size() == 12);
}

TEST_CASE("hat kernels") {
    const auto stieltjes = from_moments(support::factorial_moments(6), 6);
    const auto hat = polys_from_factorization(christoffel_transform(stieltjes).factorization);
    CHECK(same_kernel(hat_kernel(hat, Parity::even, 0), scalar_kernel({{1}}), 0.0));
    CHECK(same_kernel(hat_kernel(hat, Parity::odd, 0), scalar_kernel({{0, 0}, {0, 1}}), 0.0));
    CHECK_THROWS_AS(hat_kernel(hat, Parity::even, -1), OutOfRange);
    CHECK_THROWS_AS(hat_kernel(hat, Parity::odd, 2), OutOfRange);

    // the Gaussian shift is singular at level 1; level 0 alone still gives Khat^{[0]} = 1
    const auto gauss = from_moments(support::gaussian_moments(5), 6);
    const auto leading = polys_from_factorization(generic_ldu(shifted_square(gauss).leading(1)));
    CHECK(same_kernel(hat_kernel(leading, Parity::even, 0), scalar_kernel({{1}}), 0.0));
    CHECK_THROWS_AS(hat_kernel(leading, Parity::odd, 0), OutOfRange);
}

TEST_CASE("kernel relations") {
    SUBCASE("Stieltjes") {
        const auto g = from_moments(support::factorial_moments(10), 10);
        const auto fam = polys_from_factorization(factorize_checkerboard(g));
        const auto hat = polys_from_factorization(christoffel_transform(g).factorization);
        for (long long n = 0; n <= max_relation_index(10); ++n) CHECK(verify_kernel_relation(fam, hat, n, 0.0).pass());
        const auto past = verify_kernel_relation(fam, hat, max_relation_index(10) + 1, 0.0);
        CHECK(past.count_failures("kernel_relation") == 1);
    }
    SUBCASE("random shift-definite") {
        support::Generator gen(61);
        for (int t = 0; t < 12; ++t) {
            const std::size_t n = gen.pick(1, 3), m = 2 * gen.pick(2, 5);
            const CheckerboardGram<Q> g(support::shift_definite_checkerboard(gen, m, n));
            const auto fam = polys_from_factorization(factorize_checkerboard(g));
            const auto hat = polys_from_factorization(christoffel_transform(g).factorization);
            for (long long k = 0; k <= max_relation_index(m); ++k) {
                const auto r = verify_kernel_relation(fam, hat, k, 0.0);
                CHECK(r.pass());
                CHECK(r.records.size() == 2);
            }
        }
    }
    SUBCASE("corrupted dhat") {
        const auto g = from_moments(support::factorial_moments(10), 10);
        const auto fam = polys_from_factorization(factorize_checkerboard(g));
        auto hat = polys_from_factorization(christoffel_transform(g).factorization);
        auto d = hat.D.flat();
        d(1, 1) *= 2;
        d(2, 2) *= 3;
        hat.D = BlockMatrix<Q>(d, 1);
        CHECK(verify_kernel_relation(fam, hat, 0, 0.0).count_failures("kernel_relation.even") == 1);
        CHECK(verify_kernel_relation(fam, hat, 1, 0.0).count_failures("kernel_relation.odd") == 1);
    }
}

TEST_CASE("selection matrices") {
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto s = abc_matrices<Q>(n, 2);
        const std::size_t N = 2 * n + 2;
        CHECK(s.theta * s.theta.transpose() == BlockMatrix<Q>::identity(N, 2));
        CHECK(s.pi_even + s.pi_odd == BlockMatrix<Q>::identity(N, 2));
        CHECK(s.pi_even * s.pi_odd == BlockMatrix<Q>(N, N, 2));
        CHECK(s.pi_even * s.pi_even == s.pi_even);
        // theta e_k = e_{k+1 mod N}
        for (std::size_t k = 0; k < N; ++k) CHECK(s.theta.block((k + 1) % N, k) == Matrix<Q>::identity(2));
    }
    const auto s0 = abc_matrices<Q>(0, 1);
    CHECK(s0.theta == s0.theta.transpose());
    CHECK(s0.theta.flat() == Matrix<Q>{{0, 1}, {1, 0}});
}

TEST_CASE("ABC representation on random inputs; flipped theta fails past n = 0") {
    support::Generator gen(62);
    for (int t = 0; t < 12; ++t) {
        const std::size_t n = gen.pick(1, 3), m = 2 * gen.pick(1, 4);
        const CheckerboardGram<Q> g(support::quasi_definite_checkerboard(gen, m, n));
        const auto f = factorize_checkerboard(g);
        const auto fam = polys_from_factorization(f);
        for (long long k = 0; k <= max_kernel_index(m); ++k)
            for (Parity parity : {Parity::even, Parity::odd}) {
                const auto sum = kernel(fam, parity, k);
                CHECK(same_kernel(abc_representation(f, parity, k), sum, 0.0));
                const bool flipped_agrees =
                    same_kernel(abc_representation(f, parity, k, ThetaPlacement::flipped), sum, 0.0);
                if (k == 0) CHECK(flipped_agrees);
                else CHECK_FALSE(flipped_agrees);
            }
        CHECK(verify_kernels(g, std::nullopt, 0.0).count_failures("abc") == 0);
    }
}

TEST_CASE("kernel polynomial algebra") {
    support::Generator gen(63);
    const CheckerboardGram<Q> g(support::quasi_definite_checkerboard(gen, 6, 2));
    const auto fam = polys_from_factorization(factorize_checkerboard(g));
    const auto k = kernel(fam, Parity::odd, 2);
    CHECK(k.terms().size() == 3);
    for (int t = 0; t < 5; ++t) {
        const Q z = gen.scalar(), w = gen.scalar();
        CHECK(k.evaluate(z, w) == k.evaluate_terms(z, w));
        CHECK(k.times_z().evaluate(z, w) == k.evaluate(z, w) * z);
        CHECK(k.times_omega().evaluate(z, w) == k.evaluate(z, w) * w);
        CHECK(k.swapped().evaluate(z, w) == k.evaluate(w, z));
        CHECK(k.block_transposed().evaluate(z, w) == k.evaluate(z, w).transpose());
    }
    CHECK(same_kernel(k - k, Kernel::zero(2), 0.0));
    CHECK(same_kernel(k + k - k, k, 0.0));
    CHECK_THROWS_AS(k + Kernel::zero(1), ShapeMismatch);
}

TEST_CASE("verify_kernels skips relations when the shift is singular") {
    const auto report = verify_kernels(from_moments(support::gaussian_moments(7), 8), std::nullopt, 0.0);
    CHECK(report.pass());
    CHECK(report.count_failures() == 0);
    REQUIRE(report.notes.size() == 1);
    CHECK(report.notes.front().find("level 1") != std::string::npos);

    const auto stieltjes = verify_kernels(from_moments(support::factorial_moments(8), 8), 1, 0.0);
    CHECK(stieltjes.pass());
    CHECK(stieltjes.notes.empty());
    // abc even/odd for n = 0, 1 and both relations for n = 0, 1
    CHECK(stieltjes.records.size() == 8);
}

TEST_CASE("Hankel kernels with random symmetric block moments and a corrupted pivot") {
    support::Generator gen(64);
    int done = 0;
    while (done < 6) {
        const std::size_t n = gen.pick(1, 3), k = gen.pick(2, 4);
        std::vector<Matrix<Q>> s;
        for (std::size_t i = 0; i < 2 * k - 1; ++i) {
            const auto b = gen.block(n);
            s.push_back(b + b.transpose());
        }
        if (support::leading_singular_oracle(condensed_hankel(s, n, k))) continue;
        const auto fam = polys_from_factorization(factorize_checkerboard(hankel_gram(unwrap_moments(s, n), 2 * k)));
        CHECK(hankel_kernels(fam, s, static_cast<long long>(k) - 1, 0.0).pass());
        ++done;
    }

    auto fam = polys_from_factorization(factorize_checkerboard(from_moments(support::gaussian_moments(7), 8)));
    auto d = fam.D.flat();
    d(3, 2) += 1;
    fam.D = BlockMatrix<Q>(d, 1);
    const auto report = hankel_kernels(fam, support::gaussian_moments(7), 3, 0.0);
    CHECK(report.count_failures("hankel_kernel.odd") == 3);
    CHECK(report.count_failures("hankel_kernel.even") == 0);
}
