#include "pgm/measures.hpp"

#include "pgm/group_counting.hpp"
#include "pgm/qseries.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace pgm {

namespace {

const Rational kOne(1);

/// prod_{i=from}^{to} (1 - base^{-i}); empty when from > to.
Rational inverse_power_product(const Rational& base, long from, long to)
{
    Rational result(1);
    if (from > to)
        return result;
    Rational term = base.pow(-from);
    Rational step = base.reciprocal();
    for (long i = from; i <= to; ++i) {
        result *= kOne - term;
        term *= step;
    }
    return result;
}

/// prod_{i=1}^{count} (1 - p^{-(2i-1)})
Rational odd_power_product(const Rational& p, long count)
{
    Rational result(1);
    Rational term = p.reciprocal();
    Rational step = (p * p).reciprocal();
    for (long i = 1; i <= count; ++i) {
        result *= kOne - term;
        term *= step;
    }
    return result;
}

/// Memoized enclosure of prod_{i>=1} (1 - x/base^i).
IntervalRational infinite_product(const Rational& x, const Rational& base, unsigned bits)
{
    static std::mutex mutex;
    static std::map<std::tuple<std::string, std::string, unsigned>, IntervalRational> cache;
    auto key = std::make_tuple(x.to_string(), base.to_string(), bits);
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    IntervalRational value = pochhammer_infinite_bits(x, base, bits);
    std::lock_guard lock(mutex);
    cache.emplace(key, value);
    return value;
}

/// factor * prod_{i>=1}(1 - x/base^i), with extra precision so the result
/// still has width below 2^-bits when factor > 1.
IntervalRational scaled_infinite_product(const Rational& factor, const Rational& x, const Rational& base,
                                         unsigned bits)
{
    if (factor.is_zero())
        return IntervalRational::exact(Rational(0));
    unsigned extra = 0;
    if (factor > kOne) {
        mpz_class ceiling = factor.numerator() / factor.denominator() + 1;
        extra = static_cast<unsigned>(mpz_sizeinbase(ceiling.get_mpz_t(), 2));
    }
    return infinite_product(x, base, bits + extra) * factor;
}

Rational sym_denominator(const Partition& lambda, const Rational& p)
{
    Rational result = p.pow(static_cast<long>(lambda.n_lambda() + lambda.size()));
    Rational p2 = p * p;
    for (unsigned i = 1; i <= lambda.largest(); ++i)
        result *= inverse_power_product(p2, 1, lambda.multiplicity(i) / 2);
    return result;
}

Rational parse_param(const std::map<std::string, std::string>& params, const std::string& key)
{
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("measure is missing parameter '" + key + "'");
    return Rational::parse(it->second);
}

unsigned parse_count(const std::map<std::string, std::string>& params, const std::string& key)
{
    Rational value = parse_param(params, key);
    if (!value.is_integer() || value.sign() < 0 || value > Rational(100000))
        throw std::invalid_argument("parameter '" + key + "' must be a natural number");
    return static_cast<unsigned>(value.numerator().get_ui());
}

void expect_keys(const std::map<std::string, std::string>& params, std::initializer_list<const char*> keys)
{
    if (params.size() != keys.size())
        throw std::invalid_argument("unexpected measure parameters");
    for (const char* key : keys)
        if (!params.count(key))
            throw std::invalid_argument(std::string("measure is missing parameter '") + key + "'");
}

const MeasureSpec& require_general(const MeasureSpec& spec, MeasureSpec& storage, const char* what)
{
    if (spec.family == Family::Alternating) {
        storage = alternating_as_general(spec);
        return storage;
    }
    if (spec.family != Family::GeneralDU && spec.family != Family::GeneralInfU)
        throw std::invalid_argument(std::string(what) + " is only available for the general and alternating families");
    return spec;
}

}  // namespace

MeasureSpec MeasureSpec::general(const Rational& p, const Rational& u, Dimension d)
{
    MeasureSpec spec;
    spec.family = d ? Family::GeneralDU : Family::GeneralInfU;
    spec.p = p;
    spec.u = u;
    spec.d = d.value_or(0);
    spec.validate();
    return spec;
}

MeasureSpec MeasureSpec::alternating(unsigned n, const Rational& p)
{
    MeasureSpec spec;
    spec.family = Family::Alternating;
    spec.p = p;
    spec.n = n;
    spec.validate();
    return spec;
}

MeasureSpec MeasureSpec::symmetric(unsigned n, const Rational& p)
{
    MeasureSpec spec;
    spec.family = Family::Symmetric;
    spec.p = p;
    spec.n = n;
    spec.validate();
    return spec;
}

MeasureSpec MeasureSpec::symmetric_infinite(const Rational& p)
{
    MeasureSpec spec;
    spec.family = Family::SymmetricInf;
    spec.p = p;
    spec.validate();
    return spec;
}

MeasureSpec MeasureSpec::parse(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("measure must look like 'general:p=2,u=1,d=3', got '" + std::string(text) + "'");
    std::string name(text.substr(0, colon));
    std::map<std::string, std::string> params;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw std::invalid_argument("malformed measure parameter '" + std::string(item) + "'");
        if (!params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second)
            throw std::invalid_argument("repeated measure parameter '" + std::string(item.substr(0, eq)) + "'");
        if (comma == std::string_view::npos)
            break;
        rest = rest.substr(comma + 1);
    }

    if (name == "general") {
        expect_keys(params, {"p", "u", "d"});
        Dimension d;
        if (params.at("d") != "inf")
            d = parse_count(params, "d");
        return general(parse_param(params, "p"), parse_param(params, "u"), d);
    }
    if (name == "alt") {
        expect_keys(params, {"p", "n"});
        return alternating(parse_count(params, "n"), parse_param(params, "p"));
    }
    if (name == "sym") {
        expect_keys(params, {"p", "n"});
        return symmetric(parse_count(params, "n"), parse_param(params, "p"));
    }
    if (name == "syminf") {
        expect_keys(params, {"p"});
        return symmetric_infinite(parse_param(params, "p"));
    }
    throw std::invalid_argument("unknown measure family '" + name + "'");
}

std::string MeasureSpec::to_string() const
{
    std::string ps = "p=" + p.to_string();
    switch (family) {
    case Family::GeneralDU:
        return "general:" + ps + ",u=" + u.to_string() + ",d=" + std::to_string(d);
    case Family::GeneralInfU:
        return "general:" + ps + ",u=" + u.to_string() + ",d=inf";
    case Family::Alternating:
        return "alt:" + ps + ",n=" + std::to_string(n);
    case Family::Symmetric:
        return "sym:" + ps + ",n=" + std::to_string(n);
    case Family::SymmetricInf:
        return "syminf:" + ps;
    }
    return {};
}

void MeasureSpec::validate() const
{
    if (p <= kOne)
        throw std::invalid_argument("measure needs p > 1, got p=" + p.to_string());
    switch (family) {
    case Family::GeneralDU:
        if (d == 0)
            throw std::invalid_argument("general measure needs d >= 1");
        [[fallthrough]];
    case Family::GeneralInfU:
        if (u.sign() <= 0 || u >= p)
            throw std::invalid_argument("general measure needs 0 < u < p, got u=" + u.to_string());
        break;
    case Family::Alternating:
        if (n == 0 || n % 2 != 0)
            throw std::invalid_argument("alternating measure needs a positive even n");
        break;
    case Family::Symmetric:
    case Family::SymmetricInf:
        break;
    }
}

Dimension MeasureSpec::dimension() const
{
    if (family == Family::GeneralDU)
        return d;
    if (family == Family::GeneralInfU)
        return kInfinite;
    throw std::invalid_argument("dimension is defined for the general families only");
}

std::optional<unsigned> MeasureSpec::max_parts() const
{
    switch (family) {
    case Family::GeneralDU:
        return d;
    case Family::Alternating:
        return n / 2;
    case Family::Symmetric:
        return n;
    default:
        return std::nullopt;
    }
}

MeasureSpec alternating_as_general(const MeasureSpec& alt)
{
    if (alt.family != Family::Alternating)
        throw std::invalid_argument("expected an alternating measure");
    return MeasureSpec::general(alt.p * alt.p, alt.p, alt.n / 2);
}

IntervalRational pmf(const MeasureSpec& spec, const Partition& lambda, unsigned bits)
{
    spec.validate();
    const Rational& p = spec.p;
    const long r = lambda.length();
    if (auto bound = spec.max_parts(); bound && lambda.length() > *bound)
        return IntervalRational::exact(Rational(0));

    switch (spec.family) {
    case Family::GeneralDU: {
        const long d = spec.d;
        Rational value = spec.u.pow(lambda.size()) / aut_order(lambda, p);
        value *= pochhammer(spec.u / p, spec.d, p);
        value *= inverse_power_product(p, d - r + 1, d);
        return IntervalRational::exact(value);
    }
    case Family::GeneralInfU:
        return scaled_infinite_product(spec.u.pow(lambda.size()) / aut_order(lambda, p), spec.u, p, bits);
    case Family::Alternating: {
        const long n = spec.n;
        Rational numerator = inverse_power_product(p, n - 2 * r + 1, n) * odd_power_product(p, n / 2 - r);
        Rational denominator = p.pow(static_cast<long>(lambda.size() + 4 * lambda.n_lambda()));
        Rational p2 = p * p;
        for (unsigned i = 1; i <= lambda.largest(); ++i)
            denominator *= inverse_power_product(p2, 1, lambda.multiplicity(i));
        return IntervalRational::exact(numerator / denominator);
    }
    case Family::Symmetric: {
        const long n = spec.n;
        Rational numerator = inverse_power_product(p, n - r + 1, n) * odd_power_product(p, (n - r + 1) / 2);
        return IntervalRational::exact(numerator / sym_denominator(lambda, p));
    }
    case Family::SymmetricInf:
        // prod_{i odd}(1 - p^{-i}) = prod_{i>=1}(1 - p/(p^2)^i)
        return scaled_infinite_product(sym_denominator(lambda, p).reciprocal(), p, p * p, bits);
    }
    return {};
}

Rational pmf_exact(const MeasureSpec& spec, const Partition& lambda)
{
    if (!spec.is_exact())
        throw std::invalid_argument("measure " + spec.to_string() + " has no exact finite mass");
    return pmf(spec, lambda).lower;
}

Rational pmf_subgroup_form(const Rational& p, const Rational& u, unsigned d, const Partition& lambda)
{
    MeasureSpec::general(p, u, d);
    if (lambda.length() > d)
        return Rational(0);
    Rational value = u.pow(lambda.size()) / p.pow(static_cast<long>(lambda.size()) * d);
    for (unsigned i = 1; i <= lambda.largest(); ++i) {
        long col = lambda.column(i);
        long next = lambda.column(i + 1);
        value *= p.pow(next * (static_cast<long>(d) - col));
        value *= q_binomial(d - next, col - next, p);
    }
    return value * pochhammer(u / p, d, p);
}

IntervalRational prob_num_parts(const MeasureSpec& spec, unsigned r, unsigned bits)
{
    spec.validate();
    const Rational& p = spec.p;
    const Rational inv_p = p.reciprocal();
    if (auto bound = spec.max_parts(); bound && r > *bound)
        return IntervalRational::exact(Rational(0));

    switch (spec.family) {
    case Family::GeneralDU:
    case Family::GeneralInfU: {
        const Rational ratio = spec.u / p;
        Rational factor = spec.u.pow(r) / (p.pow(static_cast<long>(r) * r) * pochhammer(inv_p, r, p) *
                                           pochhammer(ratio, r, p));
        if (spec.family == Family::GeneralInfU)
            return scaled_infinite_product(factor, spec.u, p, bits);
        factor *= inverse_power_product(p, static_cast<long>(spec.d) - r + 1, spec.d);
        return IntervalRational::exact(factor * pochhammer(ratio, spec.d, p));
    }
    case Family::Alternating:
        return prob_num_parts(alternating_as_general(spec), r, bits);
    case Family::Symmetric: {
        const long n = spec.n;
        Rational value = inverse_power_product(p, r + 1, n);
        value /= p.pow(static_cast<long>(r) * (r + 1) / 2) * inverse_power_product(p * p, 1, (n - r) / 2);
        return IntervalRational::exact(value);
    }
    case Family::SymmetricInf: {
        Rational factor = (p.pow(static_cast<long>(r) * (r + 1) / 2) * pochhammer(inv_p, r, p)).reciprocal();
        return scaled_infinite_product(factor, p, p * p, bits);
    }
    }
    return {};
}

IntervalRational prob_size(const MeasureSpec& spec, unsigned n, unsigned bits)
{
    spec.validate();
    MeasureSpec storage;
    const MeasureSpec& general = require_general(spec, storage, "the size law");
    const Rational& p = general.p;
    const Rational inv_p = p.reciprocal();
    const Rational ratio = general.u / p;
    Rational factor = ratio.pow(n) / pochhammer(inv_p, n, p);
    if (general.family == Family::GeneralInfU)
        return scaled_infinite_product(factor, general.u, p, bits);
    factor *= inverse_power_product(p, general.d, static_cast<long>(general.d) + n - 1);
    return IntervalRational::exact(factor * pochhammer(ratio, general.d, p));
}

IntervalRational prob_size_and_parts(const MeasureSpec& spec, unsigned n, unsigned r, unsigned bits)
{
    spec.validate();
    MeasureSpec storage;
    const MeasureSpec& general = require_general(spec, storage, "the joint size and parts law");
    if (n == 0 && r == 0)
        return prob_size(general, 0, bits);
    if (r == 0 || r > n || (general.family == Family::GeneralDU && r > general.d))
        return IntervalRational::exact(Rational(0));
    const Rational& p = general.p;
    const Rational inv_p = p.reciprocal();
    Rational factor = general.u.pow(n) / (p.pow(static_cast<long>(r) * r) * pochhammer(inv_p, r, p));
    factor *= pochhammer(inv_p, n - 1, p) /
              (p.pow(static_cast<long>(n) - r) * pochhammer(inv_p, r - 1, p) * pochhammer(inv_p, n - r, p));
    if (general.family == Family::GeneralInfU)
        return scaled_infinite_product(factor, general.u, p, bits);
    factor *= inverse_power_product(p, static_cast<long>(general.d) - r + 1, general.d);
    return IntervalRational::exact(factor * pochhammer(general.u / p, general.d, p));
}

Rational inverse_pochhammer_floor(const Rational& p)
{
    return infinite_product(Rational(1), p, kDefaultBits).lower;
}

Rational geometric_size_tail(const Rational& ratio, const Rational& pochhammer_floor, unsigned max_size)
{
    if (ratio.sign() < 0 || ratio >= kOne)
        throw std::invalid_argument("size tail needs 0 <= u/p < 1");
    if (pochhammer_floor.sign() <= 0)
        throw std::invalid_argument("size tail needs a positive lower bound on (1/p)_inf");
    return ratio.pow(static_cast<long>(max_size) + 1) / ((kOne - ratio) * pochhammer_floor);
}

Rational tail_bound_size(const MeasureSpec& spec, unsigned max_size)
{
    spec.validate();
    MeasureSpec storage;
    const MeasureSpec& general = require_general(spec, storage, "the size tail bound");
    // P(|lambda| = n) <= (u/p)^n / (1/p)_n <= (u/p)^n / (1/p)_inf
    return geometric_size_tail(general.u / general.p, inverse_pochhammer_floor(general.p), max_size);
}

unsigned size_cutoff(const MeasureSpec& spec, const Rational& epsilon)
{
    if (epsilon.sign() <= 0)
        throw std::invalid_argument("epsilon must be positive");
    for (unsigned n = 0; n <= 100000; ++n)
        if (tail_bound_size(spec, n) <= epsilon)
            return n;
    throw std::invalid_argument("epsilon too small for a size cutoff");
}

SpecializationPair alternating_specialization_check(unsigned n, const Rational& p, const Partition& lambda)
{
    MeasureSpec alt = MeasureSpec::alternating(n, p);
    return {pmf_exact(alternating_as_general(alt), lambda), pmf_exact(alt, lambda)};
}

std::vector<Partition> support_with_mass(const MeasureSpec& spec, const Rational& mass, unsigned size_limit,
                                         unsigned bits)
{
    spec.validate();
    std::vector<Partition> support;
    Rational total(0);
    for (unsigned size = 0; size <= size_limit; ++size) {
        for (Partition& lambda : enumerate_partitions(size, spec.max_parts())) {
            Rational lower = pmf(spec, lambda, bits).lower;
            if (lower.is_zero())
                continue;
            total += lower;
            support.push_back(std::move(lambda));
        }
        if (total >= mass)
            return support;
    }
    throw std::runtime_error("support of " + spec.to_string() + " needs partitions beyond size " +
                             std::to_string(size_limit));
}

}  // namespace pgm
