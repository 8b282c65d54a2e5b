#include "pgm/validation.hpp"

#include "pgm/group_counting.hpp"
#include "pgm/hall_littlewood.hpp"
#include "pgm/moments.hpp"
#include "pgm/samplers.hpp"
#include "pgm/subgroup_oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace pgm {

namespace {

constexpr std::size_t kKeptFailures = 20;

std::string describe(const std::vector<GeneralParameters>& grid)
{
    std::string out;
    for (const auto& [p, u] : grid)
        out += (out.empty() ? "" : " ") + std::string("(p=") + p.to_string() + ",u=" + u.to_string() + ")";
    return out;
}

std::string describe(const std::vector<Rational>& values)
{
    std::string out;
    for (const auto& v : values)
        out += (out.empty() ? "" : ",") + v.to_string();
    return "{" + out + "}";
}

bool admissible(const GeneralParameters& g)
{
    return g.p > Rational(1) && g.u.sign() > 0 && g.u < g.p;
}

}  // namespace

void IdentityResult::fail(std::string message)
{
    ++failure_count;
    if (failures.size() < kKeptFailures)
        failures.push_back(std::move(message));
}

bool ValidationReport::passed() const
{
    for (const auto& r : results)
        if (!r.passed())
            return false;
    return !results.empty();
}

IdentityResult check_dual_form(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_size)
{
    IdentityResult result{"dual-form", describe(grid) + " d<=" + std::to_string(max_d) + " |lambda|<=" +
                                           std::to_string(max_size)};
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (unsigned d = 1; d <= max_d; ++d) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            for (const Partition& lambda : partitions_up_to(max_size, d)) {
                ++result.cases;
                Rational direct = pmf_exact(spec, lambda);
                Rational other = pmf_subgroup_form(g.p, g.u, d, lambda);
                if (direct != other)
                    result.fail(spec.to_string() + " lambda=" + lambda.to_string() + ": pmf=" + direct.to_string() +
                                " subgroup form=" + other.to_string());
            }
        }
    }
    return result;
}

IdentityResult check_hall_littlewood(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_size)
{
    IdentityResult result{"hall-littlewood", describe(grid) + " d<=" + std::to_string(max_d) + " |lambda|<=" +
                                                 std::to_string(max_size)};
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (unsigned d = 1; d <= max_d; ++d) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            for (const Partition& lambda : partitions_up_to(max_size, d)) {
                ++result.cases;
                Rational direct = pmf_exact(spec, lambda);
                Rational hl = hl_pmf(lambda, d, g.u, g.p);
                if (direct != hl)
                    result.fail(spec.to_string() + " lambda=" + lambda.to_string() + ": pmf=" + direct.to_string() +
                                " hall-littlewood=" + hl.to_string());
            }
        }
    }
    return result;
}

IdentityResult check_general_chain(const std::vector<GeneralParameters>& grid, unsigned max_state, unsigned max_d,
                                   unsigned max_size)
{
    IdentityResult result{"general-chain", describe(grid) + " a<=" + std::to_string(max_state) + " d<=" +
                                               std::to_string(max_d) + " |lambda|<=" + std::to_string(max_size)};
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (unsigned a = 0; a <= max_state; ++a) {
            ++result.cases;
            Rational row(0);
            for (unsigned b = 0; b <= a; ++b)
                row += kernel_general(a, b, max_state, g.u, g.p);
            if (row != Rational(1))
                result.fail("p=" + g.p.to_string() + " u=" + g.u.to_string() + " row a=" + std::to_string(a) +
                            " sums to " + row.to_string());
        }
        for (unsigned d = 1; d <= max_d; ++d) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            for (const Partition& lambda : partitions_up_to(max_size, d)) {
                ++result.cases;
                Rational path(1);
                unsigned a = d;
                for (unsigned i = 1; i <= lambda.largest() + 1; ++i) {
                    unsigned b = lambda.column(i);
                    path *= kernel_general(a, b, d, g.u, g.p);
                    a = b;
                }
                Rational direct = pmf_exact(spec, lambda);
                if (path != direct)
                    result.fail(spec.to_string() + " lambda=" + lambda.to_string() + ": path product=" +
                                path.to_string() + " pmf=" + direct.to_string());
            }
        }
    }
    return result;
}

IdentityResult check_symmetric_chain(const std::vector<Rational>& primes, unsigned max_n, unsigned max_size)
{
    IdentityResult result{"symmetric-chain", "p in " + describe(primes) + " n<=" + std::to_string(max_n) +
                                                 " |lambda|<=" + std::to_string(max_size)};
    for (const Rational& p : primes) {
        for (unsigned a = 0; a <= std::max(max_n, 12u); ++a) {
            ++result.cases;
            Rational row(0);
            for (unsigned b = 0; b <= a; ++b)
                row += kernel_sym(a, b, a, p);
            if (row != Rational(1))
                result.fail("p=" + p.to_string() + " row a=" + std::to_string(a) + " sums to " + row.to_string());
        }
        for (unsigned n = 1; n <= max_n; ++n) {
            MeasureSpec spec = MeasureSpec::symmetric(n, p);
            for (unsigned r = 0; r <= n; ++r) {
                ++result.cases;
                Rational parts = prob_num_parts(spec, r).lower;
                if (parts != kernel_sym(n, r, n, p))
                    result.fail(spec.to_string() + " r=" + std::to_string(r) + ": parts law=" + parts.to_string());
            }
            for (const Partition& lambda : partitions_up_to(max_size, n)) {
                ++result.cases;
                Rational path(1);
                unsigned a = n;
                for (unsigned i = 1; i <= lambda.largest() + 1; ++i) {
                    unsigned b = lambda.column(i);
                    path *= kernel_sym(a, b, n, p);
                    a = b;
                }
                Rational direct = pmf_exact(spec, lambda);
                if (path != direct)
                    result.fail(spec.to_string() + " lambda=" + lambda.to_string() + ": path product=" +
                                path.to_string() + " pmf=" + direct.to_string());
            }
        }
    }
    return result;
}

IdentityResult check_marginals(const std::vector<GeneralParameters>& grid, unsigned max_d, unsigned max_n,
                               unsigned parts_truncation)
{
    IdentityResult result{"marginals", describe(grid) + " d<=" + std::to_string(max_d) + " n<=" +
                                           std::to_string(max_n) + " parts truncation " +
                                           std::to_string(parts_truncation)};
    const unsigned sweep = std::max(max_n, parts_truncation);
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (unsigned d = 1; d <= max_d; ++d) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            const std::string tag = spec.to_string();
            // cell[n][r] = sum of pmf over |lambda| = n, r(lambda) = r
            std::vector<std::vector<Rational>> cell(sweep + 1, std::vector<Rational>(d + 1, Rational(0)));
            for (unsigned n = 0; n <= sweep; ++n)
                for (const Partition& lambda : enumerate_partitions(n, d))
                    cell[n][lambda.length()] += pmf_exact(spec, lambda);

            for (unsigned n = 0; n <= max_n; ++n) {
                Rational size_sum(0), joint_sum(0);
                for (unsigned r = 0; r <= d; ++r) {
                    size_sum += cell[n][r];
                    Rational joint = prob_size_and_parts(spec, n, r).lower;
                    joint_sum += joint;
                    ++result.cases;
                    if (joint != cell[n][r])
                        result.fail(tag + " n=" + std::to_string(n) + " r=" + std::to_string(r) + ": joint law=" +
                                    joint.to_string() + " pmf sum=" + cell[n][r].to_string());
                }
                Rational size = prob_size(spec, n).lower;
                result.cases += 2;
                if (size != size_sum)
                    result.fail(tag + " n=" + std::to_string(n) + ": size law=" + size.to_string() +
                                " pmf sum=" + size_sum.to_string());
                if (size != joint_sum)
                    result.fail(tag + " n=" + std::to_string(n) + ": size law=" + size.to_string() +
                                " joint sum=" + joint_sum.to_string());
            }

            const Rational tail = tail_bound_size(spec, parts_truncation);
            Rational total(0);
            for (unsigned r = 0; r <= d; ++r) {
                Rational partial(0);
                for (unsigned n = 0; n <= parts_truncation; ++n)
                    partial += cell[n][r];
                total += partial;
                Rational parts = prob_num_parts(spec, r).lower;
                ++result.cases;
                if (parts < partial || parts > partial + tail)
                    result.fail(tag + " r=" + std::to_string(r) + ": parts law=" + parts.to_string() +
                                " outside [" + partial.to_string() + ", +" + tail.to_string() + "]");
            }
            ++result.cases;
            if (total > Rational(1) || total + tail < Rational(1))
                result.fail(tag + ": total mass " + total.to_string() + " with tail " + tail.to_string());
        }
    }
    return result;
}

IdentityResult check_alternating_specialization(const std::vector<unsigned>& sizes, const std::vector<Rational>& primes,
                                                unsigned max_size)
{
    std::string n_list;
    for (unsigned n : sizes)
        n_list += (n_list.empty() ? "" : ",") + std::to_string(n);
    IdentityResult result{"alternating-specialization",
                          "n in {" + n_list + "} p in " + describe(primes) + " |lambda|<=" + std::to_string(max_size)};
    for (unsigned n : sizes)
        for (const Rational& p : primes)
            // include partitions beyond n/2 parts, where both sides must vanish
            for (const Partition& lambda : partitions_up_to(max_size)) {
                ++result.cases;
                auto [general, alternating] = alternating_specialization_check(n, p, lambda);
                if (general != alternating)
                    result.fail("n=" + std::to_string(n) + " p=" + p.to_string() + " lambda=" + lambda.to_string() +
                                ": general=" + general.to_string() + " alternating=" + alternating.to_string());
            }
    return result;
}

IdentityResult check_subgroup_zeta(unsigned max_d, unsigned max_n, const std::vector<Rational>& primes)
{
    IdentityResult result{"subgroup-zeta", "d<=" + std::to_string(max_d) + " n<=" + std::to_string(max_n) +
                                               " p in " + describe(primes)};
    for (const Rational& p : primes)
        for (unsigned d = 1; d <= max_d; ++d)
            for (unsigned n = 0; n <= max_n; ++n) {
                ++result.cases;
                auto [sum, closed] = subgroup_zeta_check(d, n, p);
                if (sum != closed)
                    result.fail("d=" + std::to_string(d) + " n=" + std::to_string(n) + " p=" + p.to_string() +
                                ": subgroup sum=" + sum.to_string() + " closed form=" + closed.to_string());
            }
    return result;
}

IdentityResult check_moments(const std::vector<Partition>& mus, const std::vector<Dimension>& dims,
                             const std::vector<GeneralParameters>& grid, unsigned max_size)
{
    IdentityResult result{"moments", describe(grid) + " truncation |lambda|<=" + std::to_string(max_size)};
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (Dimension d : dims) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            for (const Partition& mu : mus) {
                ++result.cases;
                Rational closed = moment_closed_form(mu, d, g.u, g.p);
                TruncatedSum truncated = moment_truncated(mu, spec, max_size);
                if (!truncated.encloses(closed))
                    result.fail(spec.to_string() + " mu=" + mu.to_string() + ": closed form=" + closed.to_string() +
                                " outside " + to_string(truncated.enclosure()));
            }
        }
    }
    return result;
}

IdentityResult check_torsion(const std::vector<unsigned>& levels, const std::vector<Dimension>& dims,
                             const std::vector<GeneralParameters>& grid, unsigned max_size)
{
    IdentityResult result{"torsion", describe(grid) + " truncation |lambda|<=" + std::to_string(max_size)};
    for (const auto& g : grid) {
        if (!admissible(g))
            continue;
        for (Dimension d : dims) {
            MeasureSpec spec = MeasureSpec::general(g.p, g.u, d);
            for (unsigned ell : levels) {
                ++result.cases;
                Rational closed = torsion_expectation(ell, d, g.u, g.p);
                TruncatedSum truncated = torsion_truncated(ell, spec, max_size);
                if (!truncated.encloses(closed))
                    result.fail(spec.to_string() + " ell=" + std::to_string(ell) + ": closed form=" +
                                closed.to_string() + " outside " + to_string(truncated.enclosure()));
                ++result.cases;
                Rational layered = closed - (ell == 1 ? Rational(1) : torsion_expectation(ell - 1, d, g.u, g.p));
                Rational exact_order = torsion_expectation_exact_order(ell, d, g.u, g.p);
                if (layered != exact_order)
                    result.fail(spec.to_string() + " ell=" + std::to_string(ell) + ": E[T_ell - T_ell-1]=" +
                                exact_order.to_string() + " difference=" + layered.to_string());
            }
        }
    }
    return result;
}

IdentityResult check_subgroup_counts(const std::vector<std::uint64_t>& primes, std::uint64_t max_order,
                                     std::uint64_t enumeration_budget)
{
    std::string p_list;
    for (auto p : primes)
        p_list += (p_list.empty() ? "" : ",") + std::to_string(p);
    IdentityResult result{"subgroup-counts", "p in {" + p_list + "} p^|lambda| <= " + std::to_string(max_order)};
    for (std::uint64_t prime : primes) {
        const Rational p(prime);
        std::uint64_t enumerated = 0, by_generators = 0;
        unsigned max_size = 0;
        for (std::uint64_t order = prime; order <= max_order; order *= prime)
            ++max_size;
        for (const Partition& lambda : partitions_up_to(max_size)) {
            std::vector<Partition> mus = partitions_up_to(lambda.size());
            Rational lattice_size(0);
            for (const Partition& mu : mus)
                lattice_size += subgroup_count(lambda, mu, p);
            const Rational order = p.pow(lambda.size());
            const std::string tag = "p=" + std::to_string(prime) + " lambda=" + lambda.to_string();

            if (lattice_size * order <= Rational(enumeration_budget)) {
                ++enumerated;
                SubgroupCensus census = subgroup_census(lambda, prime, max_order);
                ++result.cases;
                if (Rational(census.total) != lattice_size)
                    result.fail(tag + ": " + std::to_string(census.total) + " subgroups enumerated, formula total " +
                                lattice_size.to_string());
                ++result.cases;
                if (census.by_type != census.by_quotient_type)
                    result.fail(tag + ": subgroup types and quotient types are not equidistributed");
                for (const Partition& mu : mus) {
                    ++result.cases;
                    auto it = census.by_type.find(mu);
                    Rational counted(it == census.by_type.end() ? 0 : it->second);
                    Rational formula = subgroup_count(lambda, mu, p);
                    Rational generators = subgroup_count_by_generators(lambda, mu, p);
                    if (counted != formula || counted != generators)
                        result.fail(tag + " mu=" + mu.to_string() + ": enumerated=" + counted.to_string() +
                                    " formula=" + formula.to_string() + " generator count=" + generators.to_string());
                }
            } else {
                ++by_generators;
                for (const Partition& mu : mus) {
                    ++result.cases;
                    Rational formula = subgroup_count(lambda, mu, p);
                    Rational generators = subgroup_count_by_generators(lambda, mu, p);
                    if (formula != generators)
                        result.fail(tag + " mu=" + mu.to_string() + ": formula=" + formula.to_string() +
                                    " generator count=" + generators.to_string());
                }
            }
        }
        result.notes.push_back("p=" + std::to_string(prime) + ": " + std::to_string(enumerated) +
                               " groups by lattice enumeration, " + std::to_string(by_generators) +
                               " by generator-tuple count");
    }
    return result;
}

ValidationReport run_validation(std::string_view preset)
{
    const bool full = preset == "full";
    if (!full && preset != "quick")
        throw std::invalid_argument("unknown validation preset '" + std::string(preset) + "'");
    const std::vector<GeneralParameters> grid = {
        {Rational(2), Rational(1)}, {Rational(2), Rational(1, 2)}, {Rational(3), Rational(1)},
        {Rational(7, 2), Rational(3, 2)}};
    const std::vector<GeneralParameters> hl_grid = {{Rational(2), Rational(1)}, {Rational(3), Rational(1, 2)}};
    const std::vector<GeneralParameters> moment_grid = {
        {Rational(2), Rational(1)}, {Rational(2), Rational(1, 2)}, {Rational(3), Rational(1)}};
    const std::vector<Rational> small_primes = {Rational(2), Rational(3)};

    ValidationReport report;
    report.preset = std::string(preset);
    auto& out = report.results;
    out.push_back(check_dual_form(grid, 5, full ? 12 : 6));
    out.push_back(check_hall_littlewood(hl_grid, full ? 6 : 4, full ? 8 : 4));
    out.push_back(check_general_chain(grid, 12, 5, full ? 10 : 6));
    out.push_back(check_symmetric_chain(small_primes, 6, full ? 10 : 6));
    out.push_back(check_marginals(grid, 5, full ? 15 : 8, full ? 20 : 10));
    out.push_back(check_alternating_specialization({2, 4, 6}, small_primes, full ? 8 : 5));
    out.push_back(check_subgroup_zeta(4, full ? 6 : 4, {Rational(2), Rational(3), Rational(5, 2)}));
    out.push_back(check_moments({Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}},
                                {Dimension(2), Dimension(4), kInfinite}, moment_grid, full ? 20 : 12));
    out.push_back(check_torsion({1, 2, 3}, {Dimension(2), Dimension(4), kInfinite}, moment_grid, full ? 20 : 12));
    out.push_back(check_subgroup_counts({2, 3}, full ? 4096 : 256, std::uint64_t{1} << (full ? 27 : 22)));
    return report;
}

}  // namespace pgm
