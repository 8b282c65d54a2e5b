// Acceptance harness: one PASS/FAIL line per criterion, with runtime.

#include "pgm/matrix_lab.hpp"
#include "pgm/measures.hpp"
#include "pgm/moments.hpp"
#include "pgm/qseries.hpp"
#include "pgm/samplers.hpp"
#include "pgm/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace pgm;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
            passed = false;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }

    void absorb(const IdentityResult& r)
    {
        std::ostringstream line;
        line << r.name << ": " << r.cases << " cases, " << r.failure_count << " failures";
        for (const auto& note : r.notes)
            line << "; " << note;
        require(r.passed(), line.str());
        for (const auto& f : r.failures)
            details.push_back("       " + f);
    }
};

const std::vector<GeneralParameters> kGrid = {
    {Rational(2), Rational(1)}, {Rational(2), Rational(1, 2)}, {Rational(3), Rational(1)},
    {Rational(7, 2), Rational(3, 2)}};
const std::vector<GeneralParameters> kMomentGrid = {
    {Rational(2), Rational(1)}, {Rational(2), Rational(1, 2)}, {Rational(3), Rational(1)}};

const Rational kSupportMass(999, 1000);

Outcome dual_form()
{
    Outcome o;
    o.absorb(check_dual_form(kGrid, 5, 12));
    return o;
}

Outcome hall_littlewood()
{
    Outcome o;
    o.absorb(check_hall_littlewood({{Rational(2), Rational(1)}, {Rational(3), Rational(1, 2)}}, 6, 8));
    return o;
}

Outcome markov_chains()
{
    Outcome o;
    o.absorb(check_general_chain(kGrid, 12, 5, 10));
    o.absorb(check_symmetric_chain({Rational(2), Rational(3)}, 6, 10));
    return o;
}

Outcome marginals()
{
    Outcome o;
    o.absorb(check_marginals(kGrid, 5, 15, 20));
    return o;
}

Outcome alternating_specialization()
{
    Outcome o;
    o.absorb(check_alternating_specialization({2, 4, 6}, {Rational(2), Rational(3)}, 8));
    return o;
}

Outcome moments()
{
    Outcome o;
    const std::vector<Dimension> dims = {Dimension(2), Dimension(4), kInfinite};
    o.absorb(check_moments({Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}}, dims, kMomentGrid, 20));
    o.absorb(check_torsion({1, 2, 3}, dims, kMomentGrid, 20));
    return o;
}

Outcome subgroup_zeta()
{
    Outcome o;
    o.absorb(check_subgroup_zeta(4, 6, {Rational(2), Rational(3), Rational(5, 2)}));
    return o;
}

Outcome subgroup_counts()
{
    Outcome o;
    o.absorb(check_subgroup_counts({2, 3}, 4096, std::uint64_t{1} << 27));
    return o;
}

unsigned valuation(std::uint64_t x, std::uint64_t p, unsigned k)
{
    unsigned v = 0;
    while (v < k && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Cokernel law of all 1x1 and 2x2 matrices over Z/p^k from gcd and
// determinant valuations, without row reduction.
EmpiricalDistribution determinant_law(unsigned d, std::uint64_t p, unsigned k)
{
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i)
        q *= p;
    EmpiricalDistribution law;
    auto record = [&](unsigned v1, unsigned v2) {
        if (v1 >= k || v2 >= k) {
            law.add_ambiguous();
            return;
        }
        std::vector<unsigned> parts;
        for (unsigned v : {v2, v1})
            if (v > 0)
                parts.push_back(v);
        law.add(Partition(parts));
    };
    if (d == 1) {
        for (std::uint64_t a = 0; a < q; ++a)
            record(valuation(a, p, k), 0);
        return law;
    }
    for (std::uint64_t a = 0; a < q; ++a)
        for (std::uint64_t b = 0; b < q; ++b)
            for (std::uint64_t c = 0; c < q; ++c)
                for (std::uint64_t e = 0; e < q; ++e) {
                    unsigned v1 = std::min({valuation(a, p, k), valuation(b, p, k), valuation(c, p, k),
                                            valuation(e, p, k)});
                    if (v1 >= k) {
                        record(k, k);
                        continue;
                    }
                    // det = v1-scaled minor; valuation of det mod p^{2k} decides v1 + v2
                    std::uint64_t big = q * q;
                    std::uint64_t det = (a * e % big + big - b * c % big) % big;
                    unsigned vdet = valuation(det, p, 2 * k);
                    record(v1, vdet >= v1 + k ? k : vdet - v1);
                }
    return law;
}

Outcome exhaustive_matrices()
{
    Outcome o;
    const unsigned k = 2;
    for (std::uint64_t prime : {2u, 3u})
        for (unsigned d : {1u, 2u}) {
            const Ensemble ensemble = Ensemble::square(d);
            const EmpiricalDistribution law = exhaustive_cokernel_law(ensemble, prime, k);
            const std::string tag = ensemble.to_string() + " p=" + std::to_string(prime) + " k=2";
            o.require(law == determinant_law(d, prime, k), tag + ": row reduction agrees with gcd/determinant law over " +
                                                               std::to_string(law.total) + " matrices");

            const MeasureSpec spec = MeasureSpec::general(Rational(prime), Rational(1), d);
            Rational unambiguous(0);
            bool matches = true;
            for (const Partition& lambda : partitions_up_to(d, d, k - 1)) {
                Rational exact = pmf_exact(spec, lambda);
                unambiguous += exact;
                matches = matches && law.frequency(lambda) == exact;
            }
            o.require(matches, tag + ": frequencies of types with parts <= 1 equal P_{d,1}");
            const Rational ambiguous(law.ambiguous, law.total);
            o.require(ambiguous == Rational(1) - unambiguous,
                      tag + ": ambiguity mass " + ambiguous.to_string() + " equals residual mass " +
                          (Rational(1) - unambiguous).to_string());
        }
    return o;
}

struct MonteCarloCase {
    std::string label;
    Ensemble ensemble;
    std::uint64_t p;
    MeasureSpec compare;
    Rational threshold;
    std::uint64_t seed;
};

Outcome monte_carlo()
{
    Outcome o;
    const std::uint64_t trials = 100000;
    const unsigned k = 8;
    auto report = [&](const std::string& label, const EmpiricalDistribution& emp, const MeasureSpec& compare,
                      const Rational& threshold) {
        const Rational tv = tv_distance(emp, compare, support_with_mass(compare, kSupportMass));
        o.require(tv < threshold, label + " vs " + compare.to_string() + ": TV=" + tv.to_decimal(4) + " (< " +
                                      threshold.to_decimal(3) + "), ambiguous " + std::to_string(emp.ambiguous));
        return tv;
    };
    const std::vector<MonteCarloCase> cases = {
        {"square:2 p=2", Ensemble::square(2), 2, MeasureSpec::general(2, 1, 2), Rational(2, 100), 101},
        {"alt:4 p=2", Ensemble::alternating(4), 2, MeasureSpec::alternating(4, 2), Rational(2, 100), 102},
        {"sym:3 p=3", Ensemble::symmetric(3), 3, MeasureSpec::symmetric(3, 3), Rational(2, 100), 103},
        {"rect:2x3 p=2", Ensemble::rect(2, 3), 2, MeasureSpec::general(2, Rational(1, 2), kInfinite),
         Rational(3, 100), 104},
    };
    for (const auto& c : cases) {
        EmpiricalDistribution emp = monte_carlo_cokernel(c.ensemble, c.p, k, trials, c.seed);
        report(c.label, emp, c.compare, c.threshold);
        if (c.ensemble.kind == Ensemble::Kind::Rect) {
            const Rational onto = full_rank_probability(2, 1, 2);
            const IntervalRational limit = pmf(c.compare, Partition());
            o.details.push_back("       exact P(cokernel trivial) for 2x3 = " + onto.to_string() + " = " +
                                onto.to_decimal(6) + ", limit law gives " + limit.lower.to_decimal(6) +
                                ", so the true law is at TV >= " + (onto - limit.upper).to_decimal(4) + " from the limit");
            const MeasureSpec finite = MeasureSpec::general(2, Rational(1, 2), 2);
            const Rational tv = tv_distance(emp, finite, support_with_mass(finite, kSupportMass));
            o.details.push_back("       same sample vs " + finite.to_string() + ": TV=" + tv.to_decimal(4));
        }
    }
    EmpiricalDistribution quotient = monte_carlo_quotient(1, 2, trials, 105);
    report("quotient-sim w=1 p=2", quotient, MeasureSpec::general(2, Rational(1, 2), kInfinite), Rational(2, 100));
    return o;
}

Outcome sampler()
{
    Outcome o;
    const MeasureSpec spec = MeasureSpec::general(2, 1, 3);
    EmpiricalDistribution emp = sample_many(spec, 100000, 2024);
    const Rational tv = tv_distance(emp, spec, support_with_mass(spec, kSupportMass));
    o.require(tv < Rational(2, 100), spec.to_string() + " 10^5 draws: TV=" + tv.to_decimal(4) + " (< 0.02)");
    return o;
}

Outcome uniqueness()
{
    Outcome o;
    auto three = moments_unique_condition(kInfinite, 1, 3);
    auto two = moments_unique_condition(kInfinite, 1, 2);
    o.require(three.has_value() && *three, "p=3 u=1 d=inf: 1/(u/p)_inf < 2");
    o.require(two.has_value() && !*two, "p=2 u=1 d=inf: 1/(u/p)_inf >= 2");
    return o;
}

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "dual-form identity", 10, dual_form},
        {2, "Hall-Littlewood identity", 60, hall_littlewood},
        {3, "Markov-chain kernels and path products", 10, markov_chains},
        {4, "size, parts and joint marginals", 30, marginals},
        {5, "alternating specialization", 5, alternating_specialization},
        {6, "moments and torsion expectations", 60, moments},
        {7, "subgroup zeta identity", 30, subgroup_zeta},
        {8, "subgroup counts against independent oracles", 120, subgroup_counts},
        {9, "exhaustive small-matrix cokernel law", 60, exhaustive_matrices},
        {10, "Monte Carlo cokernel and quotient laws", 300, monte_carlo},
        {11, "Markov-chain sampler against exact pmf", 60, sampler},
        {12, "moment-uniqueness condition", 1, uniqueness},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::stoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.limit_seconds;
        const bool passed = outcome.passed && in_time;
        failed += !passed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", seconds, c.limit_seconds);
        std::cout << (passed ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << timing
                  << (in_time ? "" : ", over time limit") << ")\n";
        for (const auto& line : outcome.details)
            std::cout << "        " << line << "\n";
        std::cout.flush();
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
    return failed == 0 ? 0 : 1;
}
