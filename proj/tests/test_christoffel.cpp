#include <doctest.h>

#include "checkerboard/christoffel.hpp"
#include "support/support.hpp"

using namespace checkerboard;
using support::q;
using support::Q;
using support::s1;

namespace {

using Poly = MatrixPolynomial<Q>;

Poly scalar_poly(std::vector<long> coeffs) {
    std::vector<Matrix<Q>> c;
    for (long v : coeffs) c.push_back(s1(v));
    return Poly(std::move(c));
}

CheckerboardGram<Q> from_moments(const std::vector<Matrix<Q>>& s, std::size_t m) {
    return hankel_gram(unwrap_moments(s, 1), m);
}

// d_kk of a scalar matrix as a ratio of leading principal minors
Q pivot_oracle(const BlockMatrix<Q>& a, std::size_t k) {
    const auto upper = support::determinant(a.flat().sub(0, 0, k + 1, k + 1));
    const auto lower = k == 0 ? Q(1) : support::determinant(a.flat().sub(0, 0, k, k));
    return upper / lower;
}

} // namespace

TEST_CASE("moments with S_1 = 0 have a singular shifted pivot at level 1") {
    // the shifted matrix decouples; its odd part is the Hankel matrix of S_1, S_2, ...
    for (const auto& g : {from_moments(support::gaussian_moments(5), 6),
                          from_moments(support::scalar_moments({1, 0, 1}), 4)}) {
        try {
            christoffel_transform(g);
            FAIL("expected SingularPivot");
        } catch (const SingularPivot& e) {
            CHECK(e.level() == 1);
        }
    }
    auto raw = support::Generator(51).checkerboard(4, 1);
    raw.set_block(1, 0, Matrix<Q>(1, 1));
    try {
        christoffel_transform(CheckerboardGram<Q>(raw));
        FAIL("expected SingularPivot");
    } catch (const SingularPivot& e) {
        CHECK(e.level() == 0);
    }
}

TEST_CASE("Gaussian phat through the relation until p_2(0) vanishes") {
    const auto g = from_moments(support::gaussian_moments(7), 8);
    const auto fam = polys_from_factorization(factorize_checkerboard(g));
    CHECK(same_polynomial(hat_poly_via_relation(fam, 0), scalar_poly({1}), 0.0));
    CHECK(same_polynomial(hat_poly_via_relation(fam, 1), scalar_poly({0, 1}), 0.0));
    CHECK(same_polynomial(hat_poly_via_relation(fam, 2), scalar_poly({0, 0, 1}), 0.0));
    CHECK(hat_poly_via_relation(fam, 1).parity() == Parity::none);
    CHECK_THROWS_AS(hat_poly_via_relation(fam, 3), SingularConstantTerm);
    CHECK_THROWS_AS(hat_poly_via_relation(fam, 7), OutOfRange);
}

TEST_CASE("Stieltjes moments k!") {
    const std::size_t m = 10;
    const auto g = from_moments(support::factorial_moments(m), m);
    const auto f = factorize_checkerboard(g);
    const auto ct = christoffel_transform(g);
    CHECK(ct.size() == m - 2);
    CHECK(ct.shifted == lambda_shift(g).sub(0, 0, m - 2, m - 2));
    CHECK(verify_transform_structure(ct, 0.0).pass());
    for (std::size_t k = 0; k < ct.size(); ++k) CHECK(ct.d(k) == Matrix<Q>::scalar(1, pivot_oracle(ct.shifted, k)));

    const auto from_l = connector_from_L(f, ct);
    const auto from_d = connector_from_D(f, ct);
    CHECK(from_l.sigma == from_d.sigma);
    CHECK(verify_connector_sparsity(from_l, f, ct, 0.0).pass());
    // dhat_{2j+1} / d_{2j,2j+1} = j! (j+1)! / (j!)^2
    for (std::size_t j = 0; j < from_l.subdiag.size(); ++j)
        CHECK(from_l.subdiag[j] == s1(static_cast<long>(j + 1)));

    const auto fam = polys_from_factorization(f);
    const auto hat_fam = polys_from_factorization(ct.factorization);
    const auto via = hat_polys_via_relation(fam);
    REQUIRE(via.size() == ct.size());
    for (std::size_t k = 0; k < via.size(); ++k) CHECK(same_polynomial(via[k], hat_fam.p[k], 0.0));
    CHECK(verify_connector_action(from_l, fam, hat_fam.p, 0.0).pass());
    CHECK(verify_q_relation(from_l, fam, hat_fam, 0.0).pass());
    CHECK(verify_christoffel(g, 0.0).pass());
}

TEST_CASE("random shift-definite inputs") {
    support::Generator gen(52);
    for (int t = 0; t < 15; ++t) {
        const std::size_t n = gen.pick(1, 3), m = 2 * gen.pick(2, 5);
        const CheckerboardGram<Q> g(support::shift_definite_checkerboard(gen, m, n));
        const auto ct = christoffel_transform(g);
        CHECK(reconstruct(ct.factorization) == ct.shifted);
        const auto report = verify_christoffel(g, 0.0);
        CHECK(report.pass());
        CHECK(report.count_failures() == 0);
        for (const auto* r : report.failures()) MESSAGE(r->name << " " << r->detail);
    }
}

TEST_CASE("connector sizes must be compatible") {
    const auto g = from_moments(support::factorial_moments(10), 10);
    const auto ct = christoffel_transform(g);
    const auto small = factorize_checkerboard(g.truncated(8));
    CHECK_THROWS_AS(connector_from_L(small, ct), TruncationMismatch);
    CHECK_NOTHROW(connector_from_D(small, ct));
    const auto tiny = factorize_checkerboard(g.truncated(6));
    CHECK_THROWS_AS(connector_from_D(tiny, ct), TruncationMismatch);
}

TEST_CASE("mutations are caught") {
    const auto g = from_moments(support::factorial_moments(10), 10);
    const auto f = factorize_checkerboard(g);
    const auto ct = christoffel_transform(g);
    const auto fam = polys_from_factorization(f);
    const auto hat_fam = polys_from_factorization(ct.factorization);

    SUBCASE("sigma_{1,0}") {
        auto c = connector_from_L(f, ct);
        auto s = c.sigma.flat();
        s(1, 0) += 1;
        c.sigma = BlockMatrix<Q>(s, 1);
        c.subdiag[0] = c.sigma.block(1, 0);
        const auto action = verify_connector_action(c, fam, hat_fam.p, 0.0);
        CHECK(action.count_failures() == 1);
        CHECK(action.failures().front()->indices == std::vector<long long>{1});
        CHECK_FALSE(verify_connector_sparsity(c, f, ct, 0.0).pass());
        CHECK_FALSE(verify_q_relation(c, fam, hat_fam, 0.0).pass());
    }
    SUBCASE("a phat coefficient") {
        auto p = hat_fam.p;
        auto coeffs = p[2].coefficients();
        coeffs[0] += s1(1);
        p[2] = Poly(coeffs);
        CHECK(verify_connector_action(connector_from_L(f, ct), fam, p, 0.0).count_failures() == 1);
    }
    SUBCASE("a dhat block") {
        auto broken = hat_fam;
        auto d = broken.D.flat();
        d(3, 3) += 1;
        broken.D = BlockMatrix<Q>(d, 1);
        CHECK_FALSE(verify_q_relation(connector_from_L(f, ct), fam, broken, 0.0).pass());
    }
    SUBCASE("an off-pattern entry in Lhat1") {
        auto bad = ct;
        auto l = bad.factorization.L1.flat();
        l(3, 0) = 1;
        bad.factorization.L1 = BlockMatrix<Q>(l, 1);
        CHECK_FALSE(verify_transform_structure(bad, 0.0).pass());
    }
}
