#include "cmzv/rational.hpp"

#include <mutex>
#include <stdexcept>

namespace cmzv {

Rat binomial(const Int& t, long l)
{
    if (l < 0)
        return 0;
    Rat r = 1;
    Int factor = t;
    for (long i = 0; i < l; ++i) {
        r *= Rat(factor);
        r /= Rat(i + 1);
        factor -= 1;
    }
    r.canonicalize();
    return r;
}

Rat binomial(long t, long l) { return binomial(Int(t), l); }

long padic_valuation(const Rat& x, unsigned long p)
{
    if (x == 0)
        throw std::domain_error("padic_valuation: zero has infinite valuation");
    mpz_class tmp;
    long vnum = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(),
                                             mpz_class(p).get_mpz_t()));
    long vden = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(),
                                             mpz_class(p).get_mpz_t()));
    return vnum - vden;
}

Rat rat_pow(const Rat& x, long k)
{
    if (k == 0)
        return 1;
    bool inv = k < 0;
    unsigned long e = inv ? -static_cast<unsigned long>(k) : k;
    if (inv && x == 0)
        throw std::domain_error("rat_pow: negative power of zero");
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
    r.canonicalize();
    if (inv)
        r = 1 / r;
    return r;
}

namespace {

std::vector<Rat>& bernoulli_cache()
{
    static std::vector<Rat> cache{Rat(1)};
    return cache;
}

std::mutex& bernoulli_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

const Rat& bernoulli(unsigned n)
{
    std::lock_guard<std::mutex> lock(bernoulli_mutex());
    auto& cache = bernoulli_cache();
    // sum_{j=0}^{m} binom(m+1, j) B_j = 0 for m >= 1
    while (cache.size() <= n) {
        unsigned m = cache.size();
        Rat acc = 0;
        for (unsigned j = 0; j < m; ++j)
            acc += binomial(static_cast<long>(m) + 1, j) * cache[j];
        cache.push_back(-acc / binomial(static_cast<long>(m) + 1, m));
    }
    return cache[n];
}

const std::vector<Rat>& power_sum_poly(unsigned l)
{
    static std::vector<std::vector<Rat>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    while (cache.size() <= l) {
        unsigned ll = cache.size();
        // S_l(x) = (1/(l+1)) sum_{j=0}^{l} binom(l+1, j) B_j x^{l+1-j}
        std::vector<Rat> coeffs(ll + 2, Rat(0));
        for (unsigned j = 0; j <= ll; ++j) {
            Rat c = binomial(static_cast<long>(ll) + 1, j) * bernoulli(j);
            c /= Rat(static_cast<long>(ll) + 1);
            coeffs[ll + 1 - j] += c;
        }
        cache.push_back(std::move(coeffs));
    }
    return cache[l];
}

Rat power_sum_coeff(unsigned l, unsigned b)
{
    const auto& p = power_sum_poly(l);
    if (b >= p.size())
        return 0;
    return p[b];
}

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x)
{
    Rat acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

Rat rat_from_string(const std::string& s)
{
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace cmzv
