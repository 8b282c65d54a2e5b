#include "pgm/group_counting.hpp"
#include "pgm/matrix_lab.hpp"
#include "pgm/measures.hpp"
#include "pgm/qseries.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace pgm;

namespace {

Rational r(long a, long b = 1) { return Rational(a, b); }

const std::vector<std::pair<Rational, Rational>> kGrid = {
    {r(2), r(1)}, {r(2), r(1, 2)}, {r(3), r(1)}, {r(7, 2), r(3, 2)}, {r(3), r(1, 2)}, {r(7, 2), r(1)}};

// Every type whose parts are all below k is decided by the matrix mod p^k, so
// the exhaustive law over Z/p^k must equal the measure exactly on those types.
void check_against_matrices(const Ensemble& ensemble, std::uint64_t p, unsigned k, const MeasureSpec& spec)
{
    CAPTURE(ensemble.to_string());
    CAPTURE(k);
    const EmpiricalDistribution law = exhaustive_cokernel_law(ensemble, p, k);
    Rational decided(0);
    const unsigned max_size = (k - 1) * std::min(ensemble.rows, ensemble.cols);
    for (const Partition& lambda : partitions_up_to(max_size, std::nullopt, k - 1)) {
        CAPTURE(lambda.to_string());
        const Rational exact = pmf_exact(spec, lambda);
        CHECK(law.frequency(lambda) == exact);
        decided += exact;
    }
    CHECK(Rational(law.ambiguous, law.total) == Rational(1) - decided);
}

}  // namespace

TEST_SUITE("measures")
{
    TEST_CASE("measure specs parse, render and validate")
    {
        for (const char* text : {"general:p=2,u=1/2,d=3", "general:p=2,u=1,d=inf", "alt:p=3,n=4", "sym:p=2,n=3",
                                 "syminf:p=2", "general:p=7/2,u=3/2,d=5"}) {
            MeasureSpec spec = MeasureSpec::parse(text);
            CHECK(spec.to_string() == text);
            CHECK(MeasureSpec::parse(spec.to_string()) == spec);
        }
        CHECK(MeasureSpec::parse("general:p=2,u=1,d=inf").family == Family::GeneralInfU);
        CHECK(MeasureSpec::parse("general:p=2,u=1,d=3").dimension() == Dimension(3));
        CHECK_FALSE(MeasureSpec::parse("general:p=2,u=1,d=inf").dimension().has_value());
        for (const char* bad : {"general:p=2,u=2,d=3", "general:p=1,u=1/2,d=3", "general:p=2,u=0,d=3",
                                "general:p=2,u=1,d=0", "alt:p=2,n=3", "alt:p=2,n=0", "sym:p=1,n=2", "bogus",
                                "general:p=2,u=1", "general:p=2,u=1,d=3,x=1", "syminf:p=2,n=3"})
            CHECK_THROWS_AS(MeasureSpec::parse(bad), std::invalid_argument);
    }

    TEST_CASE("pmf examples")
    {
        for (const auto& [p, u] : kGrid)
            for (unsigned d = 1; d <= 4; ++d)
                CHECK(pmf_exact(MeasureSpec::general(p, u, d), Partition{}) == pochhammer(u / p, d, p));
        const MeasureSpec fw1 = MeasureSpec::general(r(2), r(1), 1);
        for (unsigned k = 1; k <= 10; ++k)
            CHECK(pmf_exact(fw1, Partition{k}) == Rational(2).pow(-static_cast<long>(k) - 1));
        for (const Rational& p : {r(2), r(3), r(5, 2)})
            for (unsigned k = 0; k <= 8; ++k) {
                Partition lambda = k == 0 ? Partition{} : Partition{k};
                CHECK(pmf_exact(MeasureSpec::symmetric(1, p), lambda) ==
                      (Rational(1) - p.reciprocal()) / p.pow(k));
            }
        CHECK(pmf_exact(MeasureSpec::general(r(2), r(1), 2), Partition{1}) == r(9, 32));
        CHECK(pmf_exact(MeasureSpec::alternating(2, r(3)), Partition{}) == r(2, 3));
        CHECK_THROWS_AS(pmf_exact(MeasureSpec::general(r(2), r(1), kInfinite), Partition{}), std::invalid_argument);
    }

    TEST_CASE("pmf vanishes outside the rank constraints")
    {
        CHECK(pmf_exact(MeasureSpec::general(r(2), r(1), 2), Partition{1, 1, 1}).is_zero());
        CHECK(pmf_exact(MeasureSpec::alternating(4, r(2)), Partition{1, 1, 1}).is_zero());
        CHECK(pmf_exact(MeasureSpec::symmetric(2, r(3)), Partition{2, 1, 1}).is_zero());
        CHECK(pmf_exact(MeasureSpec::alternating(4, r(2)), Partition{1, 1}) > r(0));
    }

    TEST_CASE("subgroup form equals the defining form")
    {
        CHECK(pmf_subgroup_form(r(2), r(1), 2, Partition{1}) == r(9, 32));
        CHECK(pmf_subgroup_form(r(3), r(1, 3), 2, Partition{1, 1}) ==
              pmf_exact(MeasureSpec::general(r(3), r(1, 3), 2), Partition{1, 1}));
        for (const auto& [p, u] : kGrid)
            for (unsigned d = 1; d <= 5; ++d) {
                CHECK(pmf_subgroup_form(p, u, d, Partition{}) == pochhammer(u / p, d, p));
                for (const Partition& lambda : partitions_up_to(9, d))
                    CHECK(pmf_subgroup_form(p, u, d, lambda) == pmf_exact(MeasureSpec::general(p, u, d), lambda));
            }
    }

    TEST_CASE("identity between the two normalizations of the square-matrix law")
    {
        // p^{-|lambda| d} prod_i p^{lambda'_{i+1}(d - lambda'_i)} [..]_p = prod_{i=d-r+1}^{d} (1 - p^{-i}) / |Aut lambda|
        for (const Rational& p : {r(2), r(3), r(7, 2)})
            for (unsigned d = 1; d <= 5; ++d)
                for (const Partition& lambda : partitions_up_to(12, d)) {
                    Rational left = pmf_subgroup_form(p, r(1), d, lambda) / pochhammer(p.reciprocal(), d, p);
                    Rational right(1);
                    for (unsigned i = d - lambda.length() + 1; i <= d; ++i)
                        right *= Rational(1) - p.pow(-static_cast<long>(i));
                    right /= aut_order(lambda, p);
                    CHECK(left == right);
                }
    }

    TEST_CASE("square matrices over Z/p^k give the square-matrix law")
    {
        check_against_matrices(Ensemble::square(1), 2, 5, MeasureSpec::general(r(2), r(1), 1));
        check_against_matrices(Ensemble::square(1), 3, 4, MeasureSpec::general(r(3), r(1), 1));
        check_against_matrices(Ensemble::square(2), 2, 3, MeasureSpec::general(r(2), r(1), 2));
        check_against_matrices(Ensemble::square(2), 3, 2, MeasureSpec::general(r(3), r(1), 2));
        check_against_matrices(Ensemble::square(3), 2, 2, MeasureSpec::general(r(2), r(1), 3));
    }

    TEST_CASE("1 x (1+w) matrices give P_{1,1/p^w}")
    {
        check_against_matrices(Ensemble::rect(1, 2), 2, 4, MeasureSpec::general(r(2), r(1, 2), 1));
        check_against_matrices(Ensemble::rect(1, 3), 2, 3, MeasureSpec::general(r(2), r(1, 4), 1));
        check_against_matrices(Ensemble::rect(1, 2), 3, 3, MeasureSpec::general(r(3), r(1, 3), 1));
    }

    TEST_CASE("symmetric matrices over Z/p^k give the symmetric law")
    {
        check_against_matrices(Ensemble::symmetric(1), 2, 5, MeasureSpec::symmetric(1, r(2)));
        check_against_matrices(Ensemble::symmetric(2), 2, 3, MeasureSpec::symmetric(2, r(2)));
        check_against_matrices(Ensemble::symmetric(2), 3, 2, MeasureSpec::symmetric(2, r(3)));
        check_against_matrices(Ensemble::symmetric(3), 2, 2, MeasureSpec::symmetric(3, r(2)));
    }

    TEST_CASE("alternating matrices over Z/p^k give the alternating law")
    {
        check_against_matrices(Ensemble::alternating(2), 2, 5, MeasureSpec::alternating(2, r(2)));
        check_against_matrices(Ensemble::alternating(2), 3, 4, MeasureSpec::alternating(2, r(3)));
        check_against_matrices(Ensemble::alternating(4), 2, 2, MeasureSpec::alternating(4, r(2)));
        check_against_matrices(Ensemble::alternating(4), 3, 2, MeasureSpec::alternating(4, r(3)));
    }

    TEST_CASE("normalization with tail bounds")
    {
        const unsigned N = 30;
        for (const auto& [p, u] : kGrid)
            for (Dimension d : {Dimension(1), Dimension(3), Dimension(6), kInfinite}) {
                MeasureSpec spec = MeasureSpec::general(p, u, d);
                CAPTURE(spec.to_string());
                Rational lower(0), upper(0);
                for (unsigned n = 0; n <= N; ++n)
                    for (const Partition& lambda : enumerate_partitions(n, d)) {
                        IntervalRational mass = pmf(spec, lambda);
                        CHECK(mass.lower >= r(0));
                        CHECK(mass.upper <= r(1));
                        lower += mass.lower;
                        upper += mass.upper;
                    }
                const Rational tail = tail_bound_size(spec, N);
                CHECK(lower <= r(1));
                CHECK(upper + tail >= r(1));
                CHECK(r(1) - lower <= tail + (upper - lower));
            }
    }

    TEST_CASE("number-of-parts law")
    {
        const MeasureSpec fw1 = MeasureSpec::general(r(2), r(1), 1);
        CHECK(prob_num_parts(fw1, 0).lower == r(1, 2));
        CHECK(prob_num_parts(fw1, 1).lower == r(1, 2));
        CHECK(prob_num_parts(fw1, 2).lower == r(0));
        const MeasureSpec sym1 = MeasureSpec::symmetric(1, r(2));
        CHECK(prob_num_parts(sym1, 0).lower == r(1, 2));
        CHECK(prob_num_parts(sym1, 1).lower == r(1, 2));
        for (const auto& [p, u] : kGrid)
            for (unsigned d = 1; d <= 5; ++d) {
                MeasureSpec spec = MeasureSpec::general(p, u, d);
                CHECK(prob_num_parts(spec, 0).lower == pmf_exact(spec, Partition{}));
                Rational total(0);
                for (unsigned rr = 0; rr <= d + 1; ++rr)
                    total += prob_num_parts(spec, rr).lower;
                CHECK(total == r(1));
            }
        for (const Rational& p : {r(2), r(3)})
            for (unsigned n = 1; n <= 6; ++n) {
                Rational total(0);
                for (unsigned rr = 0; rr <= n; ++rr)
                    total += prob_num_parts(MeasureSpec::symmetric(n, p), rr).lower;
                CHECK(total == r(1));
            }
    }

    TEST_CASE("number-of-parts law of the infinite families")
    {
        for (const auto& [p, u] : kGrid) {
            MeasureSpec inf = MeasureSpec::general(p, u, kInfinite);
            MeasureSpec big = MeasureSpec::general(p, u, 80);
            for (unsigned rr = 0; rr <= 4; ++rr) {
                IntervalRational limit = prob_num_parts(inf, rr);
                CHECK(limit.width() < Rational(2).pow(-60));
                CHECK((limit.midpoint() - prob_num_parts(big, rr).lower).abs() < Rational(2).pow(-50));
            }
        }
        MeasureSpec syminf = MeasureSpec::symmetric_infinite(r(3));
        for (unsigned rr = 0; rr <= 4; ++rr) {
            IntervalRational limit = prob_num_parts(syminf, rr);
            CHECK((limit.midpoint() - prob_num_parts(MeasureSpec::symmetric(80, r(3)), rr).lower).abs() <
                  Rational(2).pow(-50));
        }
    }

    TEST_CASE("size law")
    {
        const MeasureSpec fw1 = MeasureSpec::general(r(2), r(1), 1);
        CHECK(prob_size(fw1, 1).lower == r(1, 4));
        CHECK(prob_size(fw1, 1).lower == pmf_exact(fw1, Partition{1}));
        const MeasureSpec fw2 = MeasureSpec::general(r(2), r(1), 2);
        CHECK(prob_size(fw2, 2).lower == r(21, 128));
        CHECK(pmf_exact(fw2, Partition{2}) == r(9, 64));
        CHECK(pmf_exact(fw2, Partition{1, 1}) == r(3, 128));
        CHECK(prob_size(fw2, 2).lower == pmf_exact(fw2, Partition{2}) + pmf_exact(fw2, Partition{1, 1}));
        for (const auto& [p, u] : kGrid)
            for (unsigned d = 1; d <= 5; ++d) {
                MeasureSpec spec = MeasureSpec::general(p, u, d);
                CHECK(prob_size(spec, 0).lower == pochhammer(u / p, d, p));
                for (unsigned n = 0; n <= 12; ++n) {
                    Rational sum(0);
                    for (const Partition& lambda : enumerate_partitions(n, d))
                        sum += pmf_exact(spec, lambda);
                    CHECK(prob_size(spec, n).lower == sum);
                }
            }
    }

    TEST_CASE("joint size and parts law")
    {
        for (const auto& [p, u] : kGrid)
            for (unsigned d = 1; d <= 4; ++d) {
                MeasureSpec spec = MeasureSpec::general(p, u, d);
                CHECK(prob_size_and_parts(spec, 0, 0).lower == pochhammer(u / p, d, p));
                for (unsigned n = 0; n <= 10; ++n) {
                    Rational across(0);
                    for (unsigned rr = 0; rr <= n + 1; ++rr) {
                        Rational cell = prob_size_and_parts(spec, n, rr).lower;
                        across += cell;
                        if (rr > std::min(d, n) || (rr == 0 && n > 0))
                            CHECK(cell.is_zero());
                    }
                    CHECK(across == prob_size(spec, n).lower);
                }
            }
        const MeasureSpec fw2 = MeasureSpec::general(r(2), r(1), 2);
        CHECK(prob_size_and_parts(fw2, 2, 1).lower == pmf_exact(fw2, Partition{2}));
    }

    TEST_CASE("size tail bound")
    {
        for (const auto& [p, u] : kGrid)
            for (Dimension d : {Dimension(1), Dimension(4), kInfinite}) {
                MeasureSpec spec = MeasureSpec::general(p, u, d);
                Rational previous = tail_bound_size(spec, 0);
                IntervalRational partial = IntervalRational::exact(r(0));
                for (unsigned N = 0; N <= 25; ++N) {
                    partial += prob_size(spec, N);
                    Rational bound = tail_bound_size(spec, N);
                    CHECK(bound > r(0));
                    CHECK(bound <= previous);
                    CHECK(partial.upper + bound >= r(1));
                    previous = bound;
                }
            }
        // p = 2, u = 1: (1/2)^{N+1} / ((1 - 1/2) c) with c <= (1/2)_inf
        MeasureSpec fw = MeasureSpec::general(r(2), r(1), 3);
        Rational c = inverse_pochhammer_floor(r(2));
        CHECK(c <= pochhammer_infinite_bits(r(1), r(2), 64).lower);
        CHECK(tail_bound_size(fw, 10) == Rational(2).pow(-11) / (r(1, 2) * c));
        CHECK(geometric_size_tail(r(0), r(1), 3).is_zero());
    }

    TEST_CASE("size cutoff meets its target")
    {
        for (const auto& [p, u] : kGrid) {
            MeasureSpec spec = MeasureSpec::general(p, u, 3);
            for (const Rational& eps : {r(1, 10), r(1, 1000), r(1, 1000000)}) {
                unsigned N = size_cutoff(spec, eps);
                CHECK(tail_bound_size(spec, N) <= eps);
                if (N > 0)
                    CHECK(tail_bound_size(spec, N - 1) > eps);
            }
        }
    }

    TEST_CASE("alternating specialization")
    {
        for (const Rational& p : {r(2), r(3), r(5, 2)}) {
            auto empty = alternating_specialization_check(2, p, Partition{});
            CHECK(empty.general == Rational(1) - p.reciprocal());
            CHECK(empty.alternating == Rational(1) - p.reciprocal());
        }
        for (unsigned k = 1; k <= 6; ++k) {
            auto cyclic = alternating_specialization_check(2, r(2), Partition{k});
            CHECK(cyclic.general == cyclic.alternating);
        }
        auto wide = alternating_specialization_check(4, r(2), Partition{1, 1, 1});
        CHECK(wide.general.is_zero());
        CHECK(wide.alternating.is_zero());
        for (unsigned n : {2u, 4u, 6u})
            for (const Rational& p : {r(2), r(3)})
                for (const Partition& lambda : partitions_up_to(8)) {
                    auto sides = alternating_specialization_check(n, p, lambda);
                    CHECK(sides.general == sides.alternating);
                }
        CHECK_THROWS_AS(alternating_specialization_check(3, r(2), Partition{}), std::invalid_argument);
        CHECK(alternating_as_general(MeasureSpec::alternating(4, r(3))) == MeasureSpec::general(r(9), r(3), 2));
    }

    TEST_CASE("infinite families are limits of the finite ones")
    {
        for (const auto& [p, u] : kGrid) {
            MeasureSpec inf = MeasureSpec::general(p, u, kInfinite);
            MeasureSpec big = MeasureSpec::general(p, u, 100);
            for (const Partition& lambda : partitions_up_to(5)) {
                IntervalRational limit = pmf(inf, lambda);
                CHECK(limit.width() < Rational(2).pow(-64));
                CHECK((limit.midpoint() - pmf_exact(big, lambda)).abs() < Rational(2).pow(-60));
            }
        }
        for (const Rational& p : {r(2), r(3)}) {
            MeasureSpec inf = MeasureSpec::symmetric_infinite(p);
            for (const Partition& lambda : partitions_up_to(5)) {
                IntervalRational limit = pmf(inf, lambda);
                CHECK((limit.midpoint() - pmf_exact(MeasureSpec::symmetric(120, p), lambda)).abs() <
                      Rational(2).pow(-50));
            }
        }
        IntervalRational refined = pmf(MeasureSpec::general(r(2), r(1), kInfinite), Partition{1}, 200);
        CHECK(refined.width() < Rational(2).pow(-200));
    }

    TEST_CASE("support of a given mass")
    {
        for (const char* text : {"general:p=2,u=1,d=3", "general:p=2,u=1/2,d=inf", "sym:p=3,n=3", "alt:p=2,n=4",
                                 "syminf:p=2"}) {
            MeasureSpec spec = MeasureSpec::parse(text);
            auto support = support_with_mass(spec, r(999, 1000));
            Rational mass(0);
            for (const Partition& lambda : support)
                mass += pmf(spec, lambda).lower;
            CHECK(mass >= r(999, 1000));
            CHECK_FALSE(support.empty());
        }
        CHECK_THROWS(support_with_mass(MeasureSpec::parse("general:p=2,u=1,d=3"), r(999, 1000), 2));
    }
}
