#include "pgm/matrix_lab.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace pgm {

namespace {

using u128 = unsigned __int128;

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::uint64_t checked_modulus(std::uint64_t p, unsigned k)
{
    if (!is_prime(p))
        throw std::invalid_argument("matrix entries need a prime p, got " + std::to_string(p));
    if (k == 0)
        throw std::invalid_argument("precision k must be at least 1");
    std::uint64_t m = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (m > (std::uint64_t{1} << 62) / p)
            throw std::invalid_argument("p^k must stay below 2^62");
        m *= p;
    }
    return m;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return a >= b ? a - b : a + (m - b);
}

/// Inverse of a unit modulo m by the extended Euclidean algorithm.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m)
{
    __int128 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1)
        throw std::logic_error("pivot is not a unit");
    __int128 mm = static_cast<__int128>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

unsigned valuation(std::uint64_t x, std::uint64_t p, unsigned k)
{
    if (x == 0)
        return k;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

unsigned parse_dim(std::string_view text)
{
    if (text.empty() || text.size() > 4 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("malformed matrix dimension '" + std::string(text) + "'");
    return static_cast<unsigned>(std::stoul(std::string(text)));
}

}  // namespace

Ensemble Ensemble::square(unsigned d)
{
    Ensemble e{Kind::Square, d, d};
    e.validate();
    return e;
}

Ensemble Ensemble::rect(unsigned rows, unsigned cols)
{
    Ensemble e{Kind::Rect, rows, cols};
    e.validate();
    return e;
}

Ensemble Ensemble::alternating(unsigned n)
{
    Ensemble e{Kind::Alternating, n, n};
    e.validate();
    return e;
}

Ensemble Ensemble::symmetric(unsigned n)
{
    Ensemble e{Kind::Symmetric, n, n};
    e.validate();
    return e;
}

Ensemble Ensemble::parse(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("ensemble must look like 'square:2' or 'rect:2x3', got '" + std::string(text) + "'");
    std::string_view name = text.substr(0, colon);
    std::string_view dims = text.substr(colon + 1);
    if (name == "rect") {
        auto x = dims.find('x');
        if (x == std::string_view::npos)
            throw std::invalid_argument("rectangular ensemble needs ROWSxCOLS");
        return rect(parse_dim(dims.substr(0, x)), parse_dim(dims.substr(x + 1)));
    }
    unsigned n = parse_dim(dims);
    if (name == "square")
        return square(n);
    if (name == "alt")
        return alternating(n);
    if (name == "sym")
        return symmetric(n);
    throw std::invalid_argument("unknown ensemble '" + std::string(name) + "'");
}

std::string Ensemble::to_string() const
{
    switch (kind) {
    case Kind::Square:
        return "square:" + std::to_string(rows);
    case Kind::Rect:
        return "rect:" + std::to_string(rows) + "x" + std::to_string(cols);
    case Kind::Alternating:
        return "alt:" + std::to_string(rows);
    case Kind::Symmetric:
        return "sym:" + std::to_string(rows);
    }
    return {};
}

void Ensemble::validate() const
{
    if (rows == 0 || cols == 0 || rows > 256 || cols > 256)
        throw std::invalid_argument("matrix dimensions must be between 1 and 256");
    if (kind != Kind::Rect && rows != cols)
        throw std::invalid_argument("ensemble " + to_string() + " must be square");
    if (kind == Kind::Alternating && rows % 2 != 0)
        throw std::invalid_argument("alternating matrices need even size");
}

ModPKMatrix::ModPKMatrix(unsigned rows, unsigned cols, std::uint64_t p, unsigned k)
    : rows_(rows), cols_(cols), p_(p), k_(k), modulus_(checked_modulus(p, k)),
      entries_(static_cast<std::size_t>(rows) * cols, 0)
{
}

ModPKMatrix ModPKMatrix::operator*(const ModPKMatrix& rhs) const
{
    if (cols_ != rhs.rows_ || p_ != rhs.p_ || k_ != rhs.k_)
        throw std::invalid_argument("incompatible matrices");
    ModPKMatrix out(rows_, rhs.cols_, p_, k_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < rhs.cols_; ++j) {
            std::uint64_t sum = 0;
            for (unsigned l = 0; l < cols_; ++l)
                sum = (sum + mul_mod((*this)(i, l), rhs(l, j), modulus_)) % modulus_;
            out.set(i, j, sum);
        }
    return out;
}

ModPKMatrix random_matrix(const Ensemble& ensemble, std::uint64_t p, unsigned k, RandomStream& stream)
{
    ensemble.validate();
    ModPKMatrix m(ensemble.rows, ensemble.cols, p, k);
    const std::uint64_t q = m.modulus();
    switch (ensemble.kind) {
    case Ensemble::Kind::Square:
    case Ensemble::Kind::Rect:
        for (unsigned i = 0; i < m.rows(); ++i)
            for (unsigned j = 0; j < m.cols(); ++j)
                m.set(i, j, stream.uniform_below(q));
        break;
    case Ensemble::Kind::Alternating:
        for (unsigned i = 0; i < m.rows(); ++i)
            for (unsigned j = i + 1; j < m.cols(); ++j) {
                std::uint64_t a = stream.uniform_below(q);
                m.set(i, j, a);
                m.set(j, i, sub_mod(0, a, q));
            }
        break;
    case Ensemble::Kind::Symmetric:
        for (unsigned i = 0; i < m.rows(); ++i)
            for (unsigned j = i; j < m.cols(); ++j) {
                std::uint64_t a = stream.uniform_below(q);
                m.set(i, j, a);
                m.set(j, i, a);
            }
        break;
    }
    return m;
}

SmithValuations smith_valuations(ModPKMatrix m)
{
    const std::uint64_t p = m.p();
    const unsigned k = m.k();
    const std::uint64_t q = m.modulus();
    const unsigned size = std::min(m.rows(), m.cols());
    SmithValuations result;

    for (unsigned t = 0; t < size; ++t) {
        unsigned best = k;
        unsigned pivot_row = t, pivot_col = t;
        for (unsigned i = t; i < m.rows() && best > 0; ++i)
            for (unsigned j = t; j < m.cols(); ++j) {
                unsigned v = valuation(m(i, j), p, k);
                if (v < best) {
                    best = v;
                    pivot_row = i;
                    pivot_col = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == k) {
            result.valuations.insert(result.valuations.end(), size - t, k);
            result.saturated += size - t;
            break;
        }
        // move the pivot to (t, t)
        if (pivot_row != t)
            for (unsigned j = 0; j < m.cols(); ++j) {
                std::uint64_t tmp = m(t, j);
                m.set(t, j, m(pivot_row, j));
                m.set(pivot_row, j, tmp);
            }
        if (pivot_col != t)
            for (unsigned i = 0; i < m.rows(); ++i) {
                std::uint64_t tmp = m(i, t);
                m.set(i, t, m(i, pivot_col));
                m.set(i, pivot_col, tmp);
            }

        std::uint64_t scale = 1;
        for (unsigned i = 0; i < best; ++i)
            scale *= p;
        // pivot = p^best * unit; scale the row so the pivot is exactly p^best
        std::uint64_t unit_inverse = inverse_mod(m(t, t) / scale, q);
        for (unsigned j = t; j < m.cols(); ++j)
            m.set(t, j, mul_mod(m(t, j), unit_inverse, q));

        for (unsigned i = t + 1; i < m.rows(); ++i) {
            std::uint64_t factor = m(i, t) / scale;
            if (factor == 0)
                continue;
            for (unsigned j = t; j < m.cols(); ++j)
                m.set(i, j, sub_mod(m(i, j), mul_mod(factor, m(t, j), q), q));
        }
        // column t is now p^best e_t, so column operations only touch row t
        for (unsigned j = t + 1; j < m.cols(); ++j)
            m.set(t, j, 0);
        result.valuations.push_back(best);
    }
    return result;
}

CokernelSample cokernel_type(const ModPKMatrix& m)
{
    SmithValuations smith = smith_valuations(m);
    if (smith.saturated > 0)
        return std::nullopt;
    std::vector<unsigned> parts;
    for (unsigned v : smith.valuations)
        if (v > 0)
            parts.push_back(v);
    std::sort(parts.rbegin(), parts.rend());
    return Partition(std::move(parts));
}

CokernelSample halve_alternating(const CokernelSample& sample)
{
    if (!sample)
        return std::nullopt;
    std::vector<unsigned> half;
    auto parts = sample->parts();
    for (std::size_t i = 0; i < parts.size(); i += 2) {
        if (i + 1 >= parts.size() || parts[i + 1] != parts[i])
            return std::nullopt;
        half.push_back(parts[i]);
    }
    return Partition(std::move(half));
}

EmpiricalDistribution monte_carlo_cokernel(const Ensemble& ensemble, std::uint64_t p, unsigned k,
                                           std::uint64_t trials, std::uint64_t seed, unsigned jobs)
{
    ensemble.validate();
    checked_modulus(p, k);
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    const bool alternating = ensemble.kind == Ensemble::Kind::Alternating;
    return run_trials(trials, seed, jobs, [&]() -> TrialFunction {
        return [ensemble, p, k, alternating](RandomStream& stream) -> std::optional<Partition> {
            CokernelSample sample = cokernel_type(random_matrix(ensemble, p, k, stream));
            return alternating ? halve_alternating(sample) : sample;
        };
    });
}

CokernelSample random_quotient_process(unsigned w, std::uint64_t p, RandomStream& stream,
                                       PartitionSampler& group_sampler)
{
    if (w == 0)
        throw std::invalid_argument("quotient process needs w >= 1");
    Partition mu = group_sampler(stream);
    if (mu.empty())
        return Partition();
    const unsigned r = mu.length();
    // relations of G = Z^r / diag(p^{mu_i}), then the w generator columns
    ModPKMatrix relations(r, r + w, p, mu.largest() + 1);
    for (unsigned i = 0; i < r; ++i) {
        std::uint64_t order = 1;
        for (unsigned e = 0; e < mu.parts()[i]; ++e)
            order *= p;
        relations.set(i, i, order);
        for (unsigned j = 0; j < w; ++j)
            relations.set(i, r + j, stream.uniform_below(order));
    }
    return cokernel_type(relations);
}

EmpiricalDistribution monte_carlo_quotient(unsigned w, std::uint64_t p, std::uint64_t trials, std::uint64_t seed,
                                           unsigned jobs)
{
    checked_modulus(p, 1);
    if (w == 0)
        throw std::invalid_argument("quotient process needs w >= 1");
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    const MeasureSpec groups = MeasureSpec::general(Rational(p), Rational(1), kInfinite);
    return run_trials(trials, seed, jobs, [&]() -> TrialFunction {
        auto sampler = std::make_shared<PartitionSampler>(groups);
        return [sampler, w, p](RandomStream& stream) -> std::optional<Partition> {
            return random_quotient_process(w, p, stream, *sampler);
        };
    });
}

Rational tv_distance(const EmpiricalDistribution& emp, const MeasureSpec& spec, const std::vector<Partition>& support)
{
    Rational deviation(0);
    Rational empirical_on(0);
    Rational exact_on(0);
    for (const Partition& lambda : support) {
        IntervalRational mass = pmf(spec, lambda);
        Rational f = emp.frequency(lambda);
        deviation += (f - mass.midpoint()).abs();
        empirical_on += f;
        exact_on += mass.lower;
    }
    Rational empirical_off = emp.total == 0 ? Rational(0) : Rational(1) - empirical_on;
    Rational exact_off = max(Rational(0), Rational(1) - exact_on);
    return (deviation + empirical_off + exact_off) / Rational(2);
}

EmpiricalDistribution exhaustive_cokernel_law(const Ensemble& ensemble, std::uint64_t p, unsigned k)
{
    ensemble.validate();
    const std::uint64_t q = checked_modulus(p, k);
    std::vector<std::pair<unsigned, unsigned>> free_entries;
    for (unsigned i = 0; i < ensemble.rows; ++i)
        for (unsigned j = 0; j < ensemble.cols; ++j) {
            bool free = ensemble.kind == Ensemble::Kind::Alternating ? j > i
                        : ensemble.kind == Ensemble::Kind::Symmetric ? j >= i
                                                                     : true;
            if (free)
                free_entries.emplace_back(i, j);
        }
    std::uint64_t total = 1;
    for (std::size_t e = 0; e < free_entries.size(); ++e) {
        if (total > (std::uint64_t{1} << 24) / q)
            throw std::invalid_argument("too many matrices to enumerate");
        total *= q;
    }

    EmpiricalDistribution law;
    ModPKMatrix m(ensemble.rows, ensemble.cols, p, k);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        for (auto [i, j] : free_entries) {
            std::uint64_t a = rest % q;
            rest /= q;
            m.set(i, j, a);
            if (ensemble.kind == Ensemble::Kind::Alternating)
                m.set(j, i, sub_mod(0, a, q));
            else if (ensemble.kind == Ensemble::Kind::Symmetric)
                m.set(j, i, a);
        }
        CokernelSample sample = cokernel_type(m);
        law.add(ensemble.kind == Ensemble::Kind::Alternating ? halve_alternating(sample) : sample);
    }
    return law;
}

Rational full_rank_probability(unsigned d, unsigned w, const Rational& p)
{
    Rational result(1);
    for (unsigned i = w + 1; i <= d + w; ++i)
        result *= Rational(1) - p.pow(-static_cast<long>(i));
    return result;
}

}  // namespace pgm
