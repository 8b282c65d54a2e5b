#include "pgm/hall_littlewood.hpp"
#include "pgm/measures.hpp"
#include "pgm/qseries.hpp"
#include "pgm/random_stream.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>

using namespace pgm;

namespace {

Rational r(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST_SUITE("hall_littlewood")
{
    TEST_CASE("normalizer examples")
    {
        CHECK(v_lambda(Partition{}, 2, r(1, 2)) == r(3, 2));
        for (const Rational& t : {r(0), r(1, 2), r(1, 3), r(2)})
            CHECK(v_lambda(Partition{1}, 2, t) == r(1));
        CHECK(v_lambda(Partition{1, 1}, 2, r(1, 3)) == r(4, 3));
        // t = 1 counts the stabilizer of the exponent vector
        CHECK(v_lambda(Partition{2, 1, 1}, 5, r(1)) == r(4));
    }

    TEST_CASE("evaluation examples")
    {
        const std::vector<Rational> x = {r(1, 2), r(1, 4)};
        for (const Rational& t : {r(0), r(1, 2), r(1, 3), r(3)}) {
            CHECK(hl_eval(Partition{}, x, t) == r(1));
            CHECK(hl_eval(Partition{1}, x, t) == r(3, 4));
        }
        CHECK(hl_eval(Partition{1, 1}, x, r(1, 2)) == r(1, 8));
    }

    TEST_CASE("t = 0 gives Schur polynomials")
    {
        const Rational a = r(1, 2), b = r(1, 3), c = r(1, 7);
        CHECK(hl_eval(Partition{1}, {a, b}, r(0)) == a + b);
        CHECK(hl_eval(Partition{2}, {a, b}, r(0)) == a * a + a * b + b * b);
        CHECK(hl_eval(Partition{1, 1}, {a, b}, r(0)) == a * b);
        CHECK(hl_eval(Partition{2}, {a, b, c}, r(0)) == a * a + b * b + c * c + a * b + a * c + b * c);
        CHECK(hl_eval(Partition{1, 1}, {a, b, c}, r(0)) == a * b + a * c + b * c);
        CHECK(hl_eval(Partition{2, 1}, {a, b, c}, r(0)) ==
              a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b + r(2) * a * b * c);
    }

    TEST_CASE("t = 1 gives monomial symmetric polynomials")
    {
        const Rational a = r(2), b = r(-1, 3), c = r(5, 7);
        CHECK(hl_eval(Partition{2, 1}, {a, b, c}, r(1)) ==
              a * a * b + a * a * c + b * b * a + b * b * c + c * c * a + c * c * b);
        CHECK(hl_eval(Partition{1, 1}, {a, b, c}, r(1)) == a * b + a * c + b * c);
        CHECK(hl_eval(Partition{3}, {a, b, c}, r(1)) == a * a * a + b * b * b + c * c * c);
    }

    TEST_CASE("P_(1^r) in r variables is the product of the variables")
    {
        for (unsigned n = 1; n <= 5; ++n) {
            std::vector<Rational> x;
            Rational product(1);
            for (unsigned i = 1; i <= n; ++i) {
                x.push_back(r(i, i + 2));
                product *= x.back();
            }
            const Partition ones(std::vector<unsigned>(n, 1));
            for (const Rational& t : {r(0), r(1, 2), r(2, 3)})
                CHECK(hl_eval(ones, x, t) == product);
        }
    }

    TEST_CASE("evaluation is symmetric in the variables")
    {
        RandomStream stream(17);
        std::vector<Rational> x = {r(1, 2), r(1, 3), r(2, 5), r(3, 7), r(5, 11)};
        for (const Partition& lambda : partitions_up_to(5, 5)) {
            const Rational base = hl_eval(lambda, x, r(1, 3));
            for (int trial = 0; trial < 4; ++trial) {
                std::vector<Rational> shuffled = x;
                for (std::size_t i = shuffled.size() - 1; i > 0; --i)
                    std::swap(shuffled[i], shuffled[stream.uniform_below(i + 1)]);
                CHECK(hl_eval(lambda, shuffled, r(1, 3)) == base);
            }
        }
    }

    TEST_CASE("an extra tiny variable barely moves the value")
    {
        const std::vector<Rational> x = {r(1, 2), r(1, 4), r(1, 8)};
        const Rational eps = Rational(10).pow(-12);
        for (const Partition& lambda : partitions_up_to(4, 3)) {
            std::vector<Rational> padded = x;
            padded.push_back(eps);
            Rational gap = (hl_eval(lambda, padded, r(1, 2)) - hl_eval(lambda, x, r(1, 2))).abs();
            CHECK(gap < Rational(10).pow(-9));
        }
    }

    TEST_CASE("invalid evaluations are rejected")
    {
        CHECK_THROWS_AS(hl_eval(Partition{1}, {r(1, 2), r(1, 2)}, r(0)), std::invalid_argument);
        CHECK_THROWS_AS(hl_eval(Partition{1}, {r(0), r(1, 2)}, r(0)), std::invalid_argument);
        CHECK_THROWS_AS(hl_eval(Partition{1, 1, 1}, {r(1, 2), r(1, 3)}, r(0)), std::invalid_argument);
        std::vector<Rational> nine;
        for (long i = 1; i <= 9; ++i)
            nine.push_back(r(1, i + 1));
        CHECK_THROWS_AS(hl_eval(Partition{1}, nine, r(0)), std::invalid_argument);
    }

    TEST_CASE("principal specialization examples")
    {
        CHECK(hl_pmf(Partition{}, 3, r(1), r(2)) == pochhammer(r(1, 2), 3, r(2)));
        CHECK(hl_pmf(Partition{1}, 1, r(1), r(2)) == r(1, 4));
        CHECK(hl_pmf(Partition{1}, 2, r(1), r(2)) == r(9, 32));
        CHECK(hl_pmf(Partition{1, 1, 1}, 2, r(1), r(2)).is_zero());
    }

    TEST_CASE("principal specialization equals the pmf")
    {
        for (const auto& [p, u] : std::vector<std::pair<Rational, Rational>>{
                 {r(2), r(1)}, {r(2), r(1, 2)}, {r(3), r(1)}, {r(3), r(1, 2)}, {r(7, 2), r(3, 2)}})
            for (unsigned d = 1; d <= 4; ++d)
                for (const Partition& lambda : partitions_up_to(6, d))
                    CHECK(hl_pmf(lambda, d, u, p) == pmf_exact(MeasureSpec::general(p, u, d), lambda));
    }
}
