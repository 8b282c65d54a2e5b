#include "pgm/samplers.hpp"

#include "pgm/qseries.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pgm {

namespace {

using u128 = unsigned __int128;

void require_general_params(const Rational& u, const Rational& p)
{
    if (p <= Rational(1) || u.sign() <= 0 || u >= p)
        throw std::invalid_argument("kernel needs p > 1 and 0 < u < p");
}

/// Finite-a part u^b (1/p)_a (u/p)_a / (p^{b^2} (1/p)_{a-b} (1/p)_b (u/p)_b).
Rational general_kernel_value(unsigned a, unsigned b, const Rational& u, const Rational& p)
{
    const Rational inv_p = p.reciprocal();
    const Rational ratio = u / p;
    Rational numerator = u.pow(b) * pochhammer(inv_p, a, p) * pochhammer(ratio, a, p);
    Rational denominator = p.pow(static_cast<long>(b) * b) * pochhammer(inv_p, a - b, p) *
                           pochhammer(inv_p, b, p) * pochhammer(ratio, b, p);
    return numerator / denominator;
}

Rational sym_kernel_value(unsigned a, unsigned b, const Rational& p)
{
    const Rational inv_p = p.reciprocal();
    const Rational p2 = p * p;
    Rational denominator = p.pow(static_cast<long>(b) * (b + 1) / 2) * pochhammer(inv_p, b, p) *
                           pochhammer(p2.reciprocal(), (a - b) / 2, p2);
    return pochhammer(inv_p, a, p) / denominator;
}

/// Starting factor of the infinite first step: u^b / (p^{b^2} (1/p)_b (u/p)_b).
Rational first_step_factor(unsigned b, const Rational& u, const Rational& p)
{
    return u.pow(b) / (p.pow(static_cast<long>(b) * b) * pochhammer(p.reciprocal(), b, p) *
                       pochhammer(u / p, b, p));
}

mpz_class scaled_floor(const Rational& x, unsigned bits)
{
    mpz_class scaled = x.numerator() << bits;
    mpz_class result;
    mpz_fdiv_q(result.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
    return result;
}

mpz_class scaled_ceil(const Rational& x, unsigned bits)
{
    mpz_class scaled = x.numerator() << bits;
    mpz_class result;
    mpz_cdiv_q(result.get_mpz_t(), scaled.get_mpz_t(), x.denominator().get_mpz_t());
    return result;
}

const mpz_class& two_to_128()
{
    static const mpz_class value = mpz_class(1) << 128;
    return value;
}

u128 to_u128(const mpz_class& x)
{
    mpz_class high = x >> 64;
    mpz_class low = x - (high << 64);
    return (static_cast<u128>(high.get_ui()) << 64) | static_cast<u128>(low.get_ui());
}

/// Uniform real V in [0,1), known to lie in [value/2^bits, (value+1)/2^bits).
class LazyUniform {
public:
    explicit LazyUniform(RandomStream& stream) : stream_(stream)
    {
        std::uint64_t high = stream.next();
        std::uint64_t low = stream.next();
        top_ = (static_cast<u128>(high) << 64) | low;
    }

    u128 top() const { return top_; }

    /// true if V < lower, false if V >= upper, nullopt if not yet decidable.
    std::optional<bool> compare(const Rational& lower, const Rational& upper)
    {
        materialize();
        // V < lower is certain when (value+1) den <= num 2^bits
        if (mpz_class((value_ + 1) * lower.denominator()) <= mpz_class(lower.numerator() << bits_))
            return true;
        if (mpz_class(value_ * upper.denominator()) >= mpz_class(upper.numerator() << bits_))
            return false;
        return std::nullopt;
    }

    bool less_than(const Rational& c)
    {
        for (;;) {
            if (auto decided = compare(c, c))
                return *decided;
            extend();
        }
    }

    void extend()
    {
        materialize();
        value_ = (value_ << 64) + mpz_class(static_cast<unsigned long>(stream_.next()));
        bits_ += 64;
    }

private:
    void materialize()
    {
        if (materialized_)
            return;
        value_ = mpz_class(static_cast<unsigned long>(top_ >> 64));
        value_ = (value_ << 64) + mpz_class(static_cast<unsigned long>(top_));
        materialized_ = true;
    }

    RandomStream& stream_;
    u128 top_;
    mpz_class value_;
    unsigned bits_ = 128;
    bool materialized_ = false;
};

/// Exact cumulative row over outcomes 0..size-1 with 128-bit cut points.
struct FiniteRow {
    std::vector<Rational> cumulative;  // all but the last outcome
    std::vector<u128> cuts;            // floor(cumulative * 2^128)

    explicit FiniteRow(const std::vector<Rational>& probabilities)
    {
        Rational running(0);
        for (const Rational& q : probabilities) {
            if (q.sign() < 0)
                throw std::logic_error("negative transition probability");
            running += q;
        }
        if (running != Rational(1))
            throw std::logic_error("transition row does not sum to 1: " + running.to_string());
        running = Rational(0);
        for (std::size_t j = 0; j + 1 < probabilities.size(); ++j) {
            running += probabilities[j];
            cumulative.push_back(running);
            cuts.push_back(to_u128(scaled_floor(running, 128)));
        }
    }

    unsigned draw(RandomStream& stream) const
    {
        LazyUniform uniform(stream);
        const u128 top = uniform.top();
        std::size_t j = 0;
        while (j < cuts.size() && cuts[j] < top)
            ++j;
        for (; j < cuts.size(); ++j) {
            if (cuts[j] > top || uniform.less_than(cumulative[j]))
                return static_cast<unsigned>(j);
        }
        return static_cast<unsigned>(cuts.size());
    }
};

/// First step of the d = infinity chain. The cumulative mass of outcomes
/// 0..j is (u/p)_inf * S_j with S_j exact; (u/p)_inf is enclosed.
class InfiniteRow {
public:
    InfiniteRow(Rational u, Rational p) : u_(std::move(u)), p_(std::move(p))
    {
        product_ = pochhammer_infinite_bits(u_, p_, kFastBits);
    }

    unsigned draw(RandomStream& stream)
    {
        LazyUniform uniform(stream);
        const u128 top = uniform.top();
        for (unsigned j = 0;; ++j) {
            extend_to(j);
            const Cut& cut = cuts_[j];
            if (cut.low > top)
                return j;
            if (!cut.high_saturated && cut.high <= top)
                continue;
            return resolve(uniform, j);
        }
    }

private:
    static constexpr unsigned kFastBits = 192;

    struct Cut {
        u128 low;   // floor(lower * 2^128), certain V < C_j when low > top
        u128 high;  // ceil(upper * 2^128), certain V >= C_j when high <= top
        bool high_saturated;
    };

    void extend_to(unsigned j)
    {
        while (partial_sums_.size() <= j) {
            unsigned b = static_cast<unsigned>(partial_sums_.size());
            Rational previous = b == 0 ? Rational(0) : partial_sums_.back();
            partial_sums_.push_back(previous + first_step_factor(b, u_, p_));
            const Rational& s = partial_sums_.back();
            mpz_class low = scaled_floor(product_.lower * s, 128);
            mpz_class high = scaled_ceil(product_.upper * s, 128);
            Cut cut{};
            cut.low = low >= two_to_128() ? ~u128{0} : to_u128(low);
            cut.high_saturated = high >= two_to_128();
            cut.high = cut.high_saturated ? 0 : to_u128(high);
            cuts_.push_back(cut);
        }
    }

    unsigned resolve(LazyUniform& uniform, unsigned j)
    {
        unsigned bits = 2 * kFastBits;
        IntervalRational product = pochhammer_infinite_bits(u_, p_, bits);
        for (;;) {
            extend_to(j);
            auto decided = uniform.compare(product.lower * partial_sums_[j], product.upper * partial_sums_[j]);
            if (decided) {
                if (*decided)
                    return j;
                ++j;
                continue;
            }
            uniform.extend();
            bits *= 2;
            product = pochhammer_infinite_bits(u_, p_, bits);
        }
    }

    Rational u_;
    Rational p_;
    IntervalRational product_;
    std::vector<Rational> partial_sums_;
    std::vector<Cut> cuts_;
};

}  // namespace

Rational kernel_general(unsigned a, unsigned b, unsigned d, const Rational& u, const Rational& p)
{
    require_general_params(u, p);
    if (b > a || a > d)
        throw std::invalid_argument("kernel needs b <= a <= d");
    return general_kernel_value(a, b, u, p);
}

IntervalRational kernel_general_first_step_inf(unsigned b, const Rational& u, const Rational& p, unsigned bits)
{
    require_general_params(u, p);
    return pochhammer_infinite_bits(u, p, bits) * first_step_factor(b, u, p);
}

Rational kernel_sym(unsigned a, unsigned b, unsigned n, const Rational& p)
{
    if (p <= Rational(1))
        throw std::invalid_argument("kernel needs p > 1");
    if (b > a || a > n)
        throw std::invalid_argument("kernel needs b <= a <= n");
    return sym_kernel_value(a, b, p);
}

struct PartitionSampler::Rows {
    bool symmetric = false;
    Rational u;
    Rational p;
    std::map<unsigned, FiniteRow> finite;
    std::unique_ptr<InfiniteRow> infinite;

    const FiniteRow& row(unsigned a)
    {
        auto it = finite.find(a);
        if (it != finite.end())
            return it->second;
        std::vector<Rational> probabilities;
        for (unsigned b = 0; b <= a; ++b)
            probabilities.push_back(symmetric ? sym_kernel_value(a, b, p) : general_kernel_value(a, b, u, p));
        return finite.emplace(a, FiniteRow(probabilities)).first->second;
    }
};

PartitionSampler::PartitionSampler(const MeasureSpec& spec)
    : spec_(spec.family == Family::Alternating ? alternating_as_general(spec) : spec), rows_(std::make_unique<Rows>())
{
    spec_.validate();
    rows_->p = spec_.p;
    rows_->u = spec_.u;
    switch (spec_.family) {
    case Family::GeneralDU:
        break;
    case Family::GeneralInfU:
        rows_->infinite = std::make_unique<InfiniteRow>(spec_.u, spec_.p);
        break;
    case Family::Symmetric:
        rows_->symmetric = true;
        break;
    default:
        throw std::invalid_argument("no Markov-chain sampler for " + spec.to_string());
    }
}

PartitionSampler::~PartitionSampler() = default;
PartitionSampler::PartitionSampler(PartitionSampler&&) noexcept = default;
PartitionSampler& PartitionSampler::operator=(PartitionSampler&&) noexcept = default;

Partition PartitionSampler::operator()(RandomStream& stream)
{
    std::vector<unsigned> columns;
    unsigned a = 0;
    switch (spec_.family) {
    case Family::GeneralDU:
        a = spec_.d;
        break;
    case Family::Symmetric:
        a = spec_.n;
        break;
    default:
        a = rows_->infinite->draw(stream);
        if (a == 0)
            return Partition();
        columns.push_back(a);
        break;
    }
    while (a > 0) {
        unsigned b = rows_->row(a).draw(stream);
        if (b == 0)
            break;
        columns.push_back(b);
        a = b;
    }
    return Partition::from_columns(columns);
}

Partition sample_partition(const MeasureSpec& spec, RandomStream& stream)
{
    PartitionSampler sampler(spec);
    return sampler(stream);
}

void EmpiricalDistribution::add(const Partition& lambda, std::uint64_t times)
{
    counts[lambda] += times;
    total += times;
}

void EmpiricalDistribution::add_ambiguous(std::uint64_t times)
{
    ambiguous += times;
    total += times;
}

void EmpiricalDistribution::add(const std::optional<Partition>& outcome)
{
    if (outcome)
        add(*outcome);
    else
        add_ambiguous();
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other)
{
    for (const auto& [lambda, count] : other.counts)
        counts[lambda] += count;
    total += other.total;
    ambiguous += other.ambiguous;
}

std::uint64_t EmpiricalDistribution::count(const Partition& lambda) const
{
    auto it = counts.find(lambda);
    return it == counts.end() ? 0 : it->second;
}

Rational EmpiricalDistribution::frequency(const Partition& lambda) const
{
    if (total == 0)
        return Rational(0);
    return Rational(count(lambda)) / Rational(total);
}

EmpiricalDistribution empirical_pmf(const std::vector<Partition>& samples)
{
    EmpiricalDistribution dist;
    for (const Partition& lambda : samples)
        dist.add(lambda);
    return dist;
}

EmpiricalDistribution run_trials(std::uint64_t trials, std::uint64_t seed, unsigned jobs,
                                 const std::function<TrialFunction()>& make_worker)
{
    const std::uint64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
    std::vector<EmpiricalDistribution> results(chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            TrialFunction trial = make_worker();
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                RandomStream stream(seed ^ c);
                std::uint64_t count = std::min(kChunkSize, trials - c * kChunkSize);
                for (std::uint64_t i = 0; i < count; ++i)
                    results[c].add(trial(stream));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = chunks;
        }
    };

    unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(jobs, 1u), std::max<std::uint64_t>(chunks, 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
        for (auto& thread : pool)
            thread.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    EmpiricalDistribution merged;
    for (const auto& part : results)
        merged.merge(part);
    return merged;
}

EmpiricalDistribution sample_many(const MeasureSpec& spec, std::uint64_t trials, std::uint64_t seed, unsigned jobs)
{
    return run_trials(trials, seed, jobs, [&spec]() -> TrialFunction {
        auto sampler = std::make_shared<PartitionSampler>(spec);
        return [sampler](RandomStream& stream) -> std::optional<Partition> { return (*sampler)(stream); };
    });
}

}  // namespace pgm
