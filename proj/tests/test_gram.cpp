#include <doctest.h>

#include "checkerboard/gram.hpp"
#include "support/support.hpp"

using namespace checkerboard;
using support::q;
using support::Q;
using support::s1;

namespace {

BlockMatrix<Q> grid(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix<Q> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long v : r) m(i, j++) = v;
        ++i;
    }
    return BlockMatrix<Q>(m, 1);
}

std::vector<long> values(const MomentSequence<Q>& seq) {
    std::vector<long> out;
    for (const auto& h : seq.h) out.push_back(h(0, 0).get_num().get_si());
    return out;
}

} // namespace

TEST_CASE("unwrap interleaves zeros") {
    CHECK(values(unwrap_moments(support::scalar_moments({1}), 1)) == std::vector<long>{0, 1});
    CHECK(values(unwrap_moments(support::scalar_moments({1, 0, 1, 0}), 1)) ==
          std::vector<long>{0, 1, 0, 0, 0, 1, 0, 0});
    const auto gauss = unwrap_moments(support::gaussian_moments(7), 1);
    CHECK(gauss.h.size() == 14);
    CHECK(gauss.h[9](0, 0) == 3);
    CHECK(gauss.h[13](0, 0) == 15);
    CHECK_THROWS_AS(unwrap_moments(std::vector<Matrix<Q>>{Matrix<Q>(2, 2)}, 1), ShapeMismatch);
}

TEST_CASE("build_checkerboard") {
    std::map<std::pair<std::size_t, std::size_t>, Matrix<Q>> e{{{0, 1}, s1(1)}, {{1, 0}, s1(1)}};
    CHECK(build_checkerboard(e, 1, 2).matrix() == grid({{0, 1}, {1, 0}}));

    auto bad = e;
    bad[{0, 0}] = s1(1);
    CHECK_THROWS_AS(build_checkerboard(bad, 1, 2), PatternViolation);
    auto zero_even = e;
    zero_even[{1, 1}] = s1(0);
    CHECK_NOTHROW(build_checkerboard(zero_even, 1, 2));

    CHECK_THROWS_AS(build_checkerboard(e, 1, 4), MissingEntry);
    CHECK_THROWS_AS(build_checkerboard(e, 1, 3), OddTruncation);
    auto outside = e;
    outside[{2, 3}] = s1(1);
    CHECK_THROWS_AS(build_checkerboard(outside, 1, 2), OutOfRange);

    std::map<std::pair<std::size_t, std::size_t>, Matrix<Q>> h4;
    const std::vector<long> h{0, 1, 0, 0, 0, 1, 0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if ((i + j) % 2 == 1) h4[{i, j}] = s1(h[i + j]);
    CHECK(build_checkerboard(h4, 1, 4).matrix() == grid({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
}

TEST_CASE("CheckerboardGram validates its invariants") {
    CHECK_THROWS_AS(CheckerboardGram<Q>(grid({{1, 1}, {1, 0}})), PatternViolation);
    CHECK_THROWS_AS(CheckerboardGram<Q>(grid({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}})), OddTruncation);
    CHECK_THROWS_AS(CheckerboardGram<Q>(grid({{0, 1}, {2, 0}}), true), NotHankel);
    CHECK_THROWS_AS(CheckerboardGram<Q>(BlockMatrix<Q>(2, 4, 1)), ShapeMismatch);
}

TEST_CASE("hankel_gram") {
    MomentSequence<Q> seq{1, {s1(0), s1(1)}, true};
    CHECK(hankel_gram(seq, 2).matrix() == grid({{0, 1}, {1, 0}}));

    const auto gauss = unwrap_moments(support::gaussian_moments(5), 1);
    const auto g = hankel_gram(gauss, 6);
    CHECK(g.size() == 6);
    CHECK(g.is_hankel());
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            if ((i + j) % 2 == 0) CHECK(g.entry(i, j).is_zero());
            else CHECK(g.entry(i, j) == gauss.h[i + j]);
        }

    auto bad = seq;
    bad.h.push_back(s1(1));
    CHECK_THROWS_AS(hankel_gram(bad, 2), PatternViolation);
    CHECK_THROWS_AS(hankel_gram(unwrap_moments(support::gaussian_moments(4), 1), 6), InsufficientMoments);
    CHECK_NOTHROW(hankel_gram(unwrap_moments(support::gaussian_moments(7), 1), 8));
}

TEST_CASE("kron_lift") {
    CHECK(kron_lift(grid({{1}})).matrix() == grid({{0, 1}, {1, 0}}));
    CHECK(kron_lift(grid({{1, 0}, {0, 1}})).matrix() ==
          grid({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
    const auto mt = grid({{1, 0, 1}, {0, 1, 0}, {1, 0, 3}});
    CHECK(kron_lift(mt).matrix() == hankel_gram(unwrap_moments(support::gaussian_moments(5), 1), 6).matrix());
    CHECK_THROWS_AS(kron_lift(grid({{1, 2}, {3, 4}})), NotHankel);
}

TEST_CASE("kron_lift equals hankel_gram for random block moments") {
    support::Generator gen(21);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = gen.pick(1, 3), k = gen.pick(1, 5);
        std::vector<Matrix<Q>> s;
        for (std::size_t i = 0; i < 2 * k - 1; ++i) s.push_back(gen.block(n));
        CHECK(kron_lift(condensed_hankel(s, n, k)).matrix() == hankel_gram(unwrap_moments(s, n), 2 * k).matrix());
    }
}

TEST_CASE("lambda_shift") {
    const auto h4 = kron_lift(grid({{1, 0}, {0, 1}}));
    CHECK(lambda_shift(h4) == grid({{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
    const auto two = kron_lift(grid({{5}}));
    CHECK(lambda_shift(two) == grid({{5, 0}}));
    CHECK(shifted_square(h4) == grid({{1, 0}, {0, 0}}));

    support::Generator gen(22);
    for (int t = 0; t < 10; ++t) {
        const std::size_t m = 2 * gen.pick(2, 5), n = gen.pick(1, 3);
        const CheckerboardGram<Q> g(gen.checkerboard(m, n));
        const auto once = lambda_shift(g);
        for (std::size_t i = 0; i < m - 1; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(once.block(i, j) == g.entry(i + 1, j));
                if ((i + j) % 2 == 1) CHECK(once.block_is_zero(i, j));
            }
        const auto twice = lambda_shift(once);
        BlockMatrix<Q> shift(m, m, n);
        for (std::size_t i = 0; i + 1 < m; ++i) shift.set_block(i, i + 1, Matrix<Q>::identity(n));
        CHECK(twice == (shift * shift * g.matrix()).sub(0, 0, m - 2, m));
    }
}

TEST_CASE("condensed submatrices") {
    const auto h4 = kron_lift(grid({{1, 0}, {0, 1}}));
    CHECK(condensed_eo(h4, 1) == grid({{1}}));
    CHECK(condensed_eo(h4, 0).block_rows() == 0);
    CHECK_THROWS_AS(condensed_oe(h4, 3), OutOfRange);

    support::Generator gen(23);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = gen.pick(1, 3), k = gen.pick(1, 5);
        std::vector<Matrix<Q>> s;
        for (std::size_t i = 0; i < 2 * k - 1; ++i) s.push_back(gen.block(n));
        const auto g = hankel_gram(unwrap_moments(s, n), 2 * k);
        for (std::size_t j = 0; j <= k; ++j) {
            CHECK(condensed_eo(g, j) == condensed_hankel(s, n, j));
            CHECK(condensed_oe(g, j) == condensed_hankel(s, n, j));
        }
    }
}
