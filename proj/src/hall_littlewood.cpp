#include "pgm/hall_littlewood.hpp"

#include "pgm/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pgm {

Rational v_lambda(const Partition& lambda, unsigned n_vars, const Rational& t)
{
    if (n_vars < lambda.length())
        throw std::invalid_argument("fewer variables than parts");
    // (1 - t^j)/(1 - t) = [j]_t, which also covers t = 1
    auto block = [&t](unsigned multiplicity) {
        Rational result(1);
        for (unsigned j = 2; j <= multiplicity; ++j)
            result *= q_integer(j, t);
        return result;
    };
    Rational result = block(n_vars - lambda.length());
    for (unsigned i = 1; i <= lambda.largest(); ++i)
        result *= block(lambda.multiplicity(i));
    return result;
}

Rational hl_eval(const Partition& lambda, const std::vector<Rational>& x, const Rational& t, std::size_t max_vars)
{
    const std::size_t n = x.size();
    if (n > max_vars)
        throw std::invalid_argument("Hall-Littlewood evaluation limited to " + std::to_string(max_vars) + " variables");
    if (n < lambda.length())
        throw std::invalid_argument("fewer variables than parts");
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero())
            throw std::invalid_argument("Hall-Littlewood variables must be nonzero");
        for (std::size_t j = 0; j < i; ++j)
            if (x[i] == x[j])
                throw std::invalid_argument("Hall-Littlewood variables must be distinct");
    }

    std::vector<unsigned> exponents(n, 0);
    std::copy(lambda.parts().begin(), lambda.parts().end(), exponents.begin());

    // ratio[a][b] = (x_a - t x_b) / (x_a - x_b), powers[a][k] = x_a^{exponents[k]}
    std::vector<std::vector<Rational>> ratio(n, std::vector<Rational>(n));
    std::vector<std::vector<Rational>> powers(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (a != b)
                ratio[a][b] = (x[a] - t * x[b]) / (x[a] - x[b]);
        for (std::size_t k = 0; k < n; ++k)
            powers[a][k] = x[a].pow(exponents[k]);
    }

    std::vector<std::size_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    Rational sum(0);
    do {
        Rational term(1);
        for (std::size_t i = 0; i < n; ++i)
            if (exponents[i] != 0)
                term *= powers[w[i]][i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                term *= ratio[w[i]][w[j]];
        sum += term;
    } while (std::next_permutation(w.begin(), w.end()));

    return sum / v_lambda(lambda, static_cast<unsigned>(n), t);
}

Rational hl_pmf(const Partition& lambda, unsigned d, const Rational& u, const Rational& p)
{
    if (p <= Rational(1) || u.sign() <= 0 || u >= p)
        throw std::invalid_argument("hl_pmf needs p > 1 and 0 < u < p");
    if (lambda.length() > d)
        return Rational(0);
    std::vector<Rational> x;
    Rational value = u / p;
    for (unsigned i = 1; i <= d; ++i) {
        x.push_back(value);
        value /= p;
    }
    return pochhammer(u / p, d, p) * hl_eval(lambda, x, p.reciprocal()) /
           p.pow(static_cast<long>(lambda.n_lambda()));
}

}  // namespace pgm
