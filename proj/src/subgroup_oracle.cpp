#include "pgm/subgroup_oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace pgm {

namespace {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Explicit model of Z/p^{lambda_1} x ... x Z/p^{lambda_r}; element x is the
/// mixed-radix integer sum_i x_i * stride_i.
class ExplicitGroup {
public:
    ExplicitGroup(const Partition& lambda, std::uint64_t p, std::uint64_t max_order) : p_(p)
    {
        if (!is_prime(p))
            throw std::invalid_argument("explicit group model needs a prime p");
        order_ = 1;
        for (unsigned part : lambda.parts()) {
            std::uint64_t m = 1;
            for (unsigned i = 0; i < part; ++i)
                m *= p;
            if (order_ > max_order / m)
                throw std::invalid_argument("group of type " + lambda.to_string() + " exceeds the enumeration bound");
            strides_.push_back(order_);
            moduli_.push_back(m);
            parts_.push_back(part);
            order_ *= m;
        }
    }

    std::uint64_t order() const { return order_; }
    std::size_t rank() const { return moduli_.size(); }
    std::uint64_t modulus(std::size_t i) const { return moduli_[i]; }
    unsigned part(std::size_t i) const { return parts_[i]; }

    std::uint64_t coord(std::uint64_t x, std::size_t i) const { return (x / strides_[i]) % moduli_[i]; }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const
    {
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            z += ((coord(x, i) + coord(y, i)) % moduli_[i]) * strides_[i];
        return z;
    }

    std::uint64_t scale(std::uint64_t x, std::uint64_t k) const
    {
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            z += ((coord(x, i) * (k % moduli_[i])) % moduli_[i]) * strides_[i];
        return z;
    }

    std::uint64_t element(const std::vector<std::uint64_t>& coords) const
    {
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            z += (coords[i] % moduli_[i]) * strides_[i];
        return z;
    }

    /// e such that the order of x is p^e
    unsigned order_exponent(std::uint64_t x) const
    {
        unsigned e = 0;
        while (x != 0) {
            x = scale(x, p_);
            ++e;
        }
        return e;
    }

private:
    std::uint64_t p_;
    std::uint64_t order_ = 1;
    std::vector<std::uint64_t> strides_;
    std::vector<std::uint64_t> moduli_;
    std::vector<unsigned> parts_;
};

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept
    {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::uint64_t w : b) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

bool test_bit(const Bits& b, std::uint64_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, std::uint64_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::vector<std::uint64_t> members(const Bits& b, std::uint64_t order)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < order; ++x)
        if (test_bit(b, x))
            out.push_back(x);
    return out;
}

/// Recovers the type of a group from the sizes |A[p^k]|, k = 1, 2, ...
Partition type_from_torsion_sizes(const std::vector<std::uint64_t>& sizes, std::uint64_t p)
{
    // sizes[k] = |A[p^k]|, sizes[0] = 1; column k has log_p(sizes[k]/sizes[k-1]) boxes
    std::vector<unsigned> columns;
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        std::uint64_t ratio = sizes[k] / sizes[k - 1];
        unsigned c = 0;
        while (ratio > 1) {
            ratio /= p;
            ++c;
        }
        columns.push_back(c);
    }
    return Partition::from_columns(columns);
}

}  // namespace

SubgroupCensus subgroup_census(const Partition& lambda, std::uint64_t p, std::uint64_t max_order)
{
    ExplicitGroup g(lambda, p, max_order);
    const std::uint64_t order = g.order();
    const std::size_t words = static_cast<std::size_t>((order + 63) / 64);
    const unsigned depth = lambda.largest();

    std::vector<unsigned> exponent(order);
    for (std::uint64_t x = 0; x < order; ++x)
        exponent[x] = g.order_exponent(x);
    // multiples[k][x] = p^k x
    std::vector<std::vector<std::uint64_t>> multiples(depth + 1, std::vector<std::uint64_t>(order));
    for (std::uint64_t x = 0; x < order; ++x) {
        multiples[0][x] = x;
        for (unsigned k = 1; k <= depth; ++k)
            multiples[k][x] = g.scale(multiples[k - 1][x], p);
    }
    const std::size_t rank = g.rank();
    std::vector<std::uint64_t> coords(order * rank);
    for (std::uint64_t x = 0; x < order; ++x)
        for (std::size_t i = 0; i < rank; ++i)
            coords[x * rank + i] = g.coord(x, i);
    std::vector<std::uint64_t> strides(rank);
    for (std::size_t i = 0, stride = 1; i < rank; stride *= g.modulus(i), ++i)
        strides[i] = stride;
    auto add = [&](std::uint64_t x, std::uint64_t y) {
        std::uint64_t z = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            std::uint64_t c = coords[x * rank + i] + coords[y * rank + i];
            if (c >= g.modulus(i))
                c -= g.modulus(i);
            z += c * strides[i];
        }
        return z;
    };

    std::unordered_set<Bits, BitsHash> seen;
    std::deque<const Bits*> queue;
    Bits trivial(words, 0);
    set_bit(trivial, 0);
    queue.push_back(&*seen.insert(trivial).first);

    SubgroupCensus census;
    while (!queue.empty()) {
        const Bits& h_bits = *queue.front();
        queue.pop_front();
        std::vector<std::uint64_t> h = members(h_bits, order);

        std::vector<std::uint64_t> sub_sizes(depth + 1, 0);
        std::vector<std::uint64_t> quo_sizes(depth + 1, 0);
        for (std::uint64_t x : h)
            for (unsigned k = exponent[x]; k <= depth; ++k)
                ++sub_sizes[k];
        for (std::uint64_t x = 0; x < order; ++x)
            for (unsigned k = 0; k <= depth; ++k)
                if (test_bit(h_bits, multiples[k][x]))
                    ++quo_sizes[k];
        for (auto& s : quo_sizes)
            s /= h.size();
        ++census.by_type[type_from_torsion_sizes(sub_sizes, p)];
        ++census.by_quotient_type[type_from_torsion_sizes(quo_sizes, p)];
        ++census.total;

        // Every nontrivial subgroup K has a subgroup H of index p, and then
        // K = H + <x> for any x in K \ H. So it suffices to extend H by x with
        // px in H, and <H, x> depends only on the coset x + H.
        Bits covered = h_bits;
        for (std::uint64_t x = 0; x < order; ++x) {
            if (test_bit(covered, x) || !test_bit(h_bits, multiples[1][x]))
                continue;
            for (std::uint64_t y : h)
                set_bit(covered, add(x, y));
            Bits k_bits = h_bits;
            std::uint64_t multiple = x;
            while (!test_bit(h_bits, multiple)) {
                for (std::uint64_t y : h)
                    set_bit(k_bits, add(multiple, y));
                multiple = add(multiple, x);
            }
            auto [it, inserted] = seen.insert(std::move(k_bits));
            if (inserted)
                queue.push_back(&*it);
        }
    }
    return census;
}

std::uint64_t subgroup_count_bruteforce(const Partition& lambda, const Partition& mu, std::uint64_t p,
                                        std::uint64_t max_order)
{
    SubgroupCensus census = subgroup_census(lambda, p, max_order);
    auto it = census.by_type.find(mu);
    return it == census.by_type.end() ? 0 : it->second;
}

std::uint64_t sur_count_bruteforce(const Partition& lambda, const Partition& mu, std::uint64_t p,
                                   std::uint64_t max_assignments)
{
    ExplicitGroup target(mu, p, kDefaultEnumerationBound);
    const std::uint64_t order = target.order();

    // admissible images of the i-th generator of lambda: elements killed by p^{lambda_i}
    std::vector<std::vector<std::uint64_t>> choices;
    std::uint64_t assignments = 1;
    for (unsigned part : lambda.parts()) {
        std::vector<std::uint64_t> c;
        for (std::uint64_t y = 0; y < order; ++y)
            if (target.order_exponent(y) <= part)
                c.push_back(y);
        if (assignments > max_assignments / c.size())
            throw std::invalid_argument("too many generator assignments for brute-force surjection count");
        assignments *= c.size();
        choices.push_back(std::move(c));
    }

    std::uint64_t surjective = 0;
    std::vector<std::size_t> index(choices.size(), 0);
    std::vector<char> in_image(order);
    std::vector<std::uint64_t> image;
    for (std::uint64_t n = 0; n < assignments; ++n) {
        std::fill(in_image.begin(), in_image.end(), 0);
        image.assign(1, 0);
        in_image[0] = 1;
        for (std::size_t i = 0; i < choices.size(); ++i) {
            std::uint64_t gen = choices[i][index[i]];
            // image := image + <gen>
            std::size_t base = image.size();
            std::uint64_t multiple = gen;
            while (!in_image[multiple]) {
                for (std::size_t j = 0; j < base; ++j) {
                    std::uint64_t z = target.add(image[j], multiple);
                    if (!in_image[z]) {
                        in_image[z] = 1;
                        image.push_back(z);
                    }
                }
                multiple = target.add(multiple, gen);
            }
        }
        if (image.size() == order)
            ++surjective;
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (++index[i] < choices[i].size())
                break;
            index[i] = 0;
        }
    }
    return surjective;
}

std::uint64_t torsion_count_bruteforce(const Partition& lambda, unsigned ell, std::uint64_t p,
                                       std::uint64_t max_order)
{
    ExplicitGroup g(lambda, p, max_order);
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < g.order(); ++x)
        if (g.order_exponent(x) <= ell)
            ++count;
    return count;
}

Rational sur_count_by_generators(const Partition& lambda, const Partition& mu, const Rational& p)
{
    if (p <= Rational(1))
        throw std::invalid_argument("p must exceed 1");
    // A homomorphism G -> H is a choice of h_i in H[p^{lambda_i}]; it is onto iff
    // the h_i span H/pH = F_p^s. H[p^a] maps onto the coordinate subspace
    // V_a = span{e_j : mu_j <= a}, with fibres of size |H[p^a]| / p^{dim V_a}.
    // The V_a form a flag F_1 < ... < F_t (one step per distinct part of mu), and
    // the number of ways to extend a span S depends only on dim(S cap F_k).
    std::vector<unsigned> levels;  // distinct parts of mu, ascending
    for (auto it = mu.parts().rbegin(); it != mu.parts().rend(); ++it)
        if (levels.empty() || levels.back() != *it)
            levels.push_back(*it);
    const std::size_t t = levels.size();
    std::vector<unsigned> flag_dim(t + 1, 0);  // flag_dim[k] = dim F_k
    for (std::size_t k = 1; k <= t; ++k)
        for (unsigned part : mu.parts())
            if (part <= levels[k - 1])
                ++flag_dim[k];

    Rational fibres(1);
    std::map<std::vector<unsigned>, Rational> states;  // profile d_1..d_t (d_0 = 0 implicit)
    states.emplace(std::vector<unsigned>(t, 0), Rational(1));

    for (unsigned a : lambda.parts()) {
        std::size_t b = 0;
        while (b < t && levels[b] <= a)
            ++b;
        long torsion_exp = 0;
        for (unsigned part : mu.parts())
            torsion_exp += std::min(part, a);
        fibres *= p.pow(torsion_exp - static_cast<long>(flag_dim[b]));

        std::map<std::vector<unsigned>, Rational> next;
        for (const auto& [profile, weight] : states) {
            auto d = [&](std::size_t k) -> long { return k == 0 ? 0 : profile[k - 1]; };
            // v already in S: S cap F_b has p^{d_b} elements
            Rational stay = p.pow(d(b));
            next[profile] += weight * stay;
            Rational previous = stay;
            for (std::size_t c = 1; c <= b; ++c) {
                // |F_b cap (F_c + S)| = p^{dim F_c + d_b - d_c}
                Rational reach = p.pow(static_cast<long>(flag_dim[c]) + d(b) - d(c));
                Rational fresh = reach - previous;
                previous = reach;
                if (fresh.is_zero())
                    continue;
                std::vector<unsigned> grown = profile;
                for (std::size_t k = c; k <= t; ++k)
                    ++grown[k - 1];
                next[grown] += weight * fresh;
            }
        }
        states = std::move(next);
    }

    Rational spanning(0);
    for (const auto& [profile, weight] : states)
        if (t == 0 || profile[t - 1] == flag_dim[t])
            spanning += weight;
    return spanning * fibres;
}

Rational subgroup_count_by_generators(const Partition& lambda, const Partition& mu, const Rational& p)
{
    return sur_count_by_generators(lambda, mu, p) / sur_count_by_generators(mu, mu, p);
}

}  // namespace pgm
