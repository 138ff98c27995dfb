#include "cmzv/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cmzv {

namespace {

// Polynomials are rational coefficient vectors, lowest degree first.
using Poly = std::vector<Rat>;

void poly_trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// Exact division, remainder must vanish.
Poly poly_div_exact(Poly num, const Poly& den)
{
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        poly_trim(num);
        if (num.size() < den.size())
            break;
        Rat c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= c * den[i];
    }
    poly_trim(num);
    if (!num.empty())
        throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

// num mod den (den monic-ish, any nonzero leading coefficient).
Poly poly_mod(Poly num, const Poly& den)
{
    poly_trim(num);
    while (num.size() >= den.size()) {
        Rat c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        for (size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= c * den[i];
        poly_trim(num);
    }
    return num;
}

// Extended Euclid: returns (g, u) with u*a = g mod b, g the gcd (monic).
std::pair<Poly, Poly> poly_half_xgcd(Poly a, Poly b)
{
    Poly u0{Rat(1)}, u1{};
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a = q b + r
        Poly r = a;
        Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
        while (r.size() >= b.size() && !r.empty()) {
            Rat c = r.back() / b.back();
            size_t shift = r.size() - b.size();
            q[shift] += c;
            for (size_t i = 0; i < b.size(); ++i)
                r[shift + i] -= c * b[i];
            poly_trim(r);
        }
        Poly u2 = u0;
        Poly qb = poly_mul(q, u1);
        if (u2.size() < qb.size())
            u2.resize(qb.size(), Rat(0));
        for (size_t i = 0; i < qb.size(); ++i)
            u2[i] -= qb[i];
        poly_trim(u2);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (a.empty())
        throw std::domain_error("poly_half_xgcd: gcd of zero polynomials");
    Rat lead = a.back();
    for (auto& c : a)
        c /= lead;
    for (auto& c : u0)
        c /= lead;
    return {a, u0};
}

unsigned euler_phi(unsigned n)
{
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

} // namespace

unsigned CycRat::degree(unsigned n)
{
    if (n == 0)
        throw std::invalid_argument("CycRat: root order must be positive");
    return euler_phi(n);
}

const std::vector<Rat>& CycRat::cyclotomic_poly(unsigned n)
{
    static std::map<unsigned, Poly> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    Poly num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;
    Poly den{Rat(1)};
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        // Recurse without holding a second lock: compute divisors bottom-up,
        // so the cache already contains Phi_d for d < n on this path.
        auto dit = cache.find(d);
        if (dit == cache.end()) {
            // compute Phi_d inline by the same formula
            Poly numd(d + 1, Rat(0));
            numd[0] = -1;
            numd[d] = 1;
            Poly dend{Rat(1)};
            for (unsigned e = 1; e < d; ++e)
                if (d % e == 0)
                    dend = poly_mul(dend, cache.at(e));
            cache[d] = poly_div_exact(numd, dend);
            dit = cache.find(d);
        }
        den = poly_mul(den, dit->second);
    }
    cache[n] = poly_div_exact(num, den);
    return cache.at(n);
}

CycRat CycRat::root_power(unsigned n, long k)
{
    CycRat r(n);
    long kk = ((k % static_cast<long>(n)) + n) % n;
    Poly x(kk + 1, Rat(0));
    x[kk] = 1;
    Poly red = poly_mod(std::move(x), cyclotomic_poly(n));
    for (size_t i = 0; i < red.size(); ++i)
        r.coeffs_[i] = red[i];
    return r;
}

bool CycRat::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool CycRat::is_rational() const
{
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

void CycRat::promote(unsigned n)
{
    if (n_ == n)
        return;
    if (n % n_ != 0)
        throw std::invalid_argument("CycRat: incompatible root orders");
    // xi_n^{n/n_} = xi_{n_}: re-express coefficients in Q(xi_n).
    unsigned step = n / n_;
    CycRat r(n);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        CycRat term = root_power(n, static_cast<long>(i * step));
        for (auto& c : term.coeffs_)
            c *= coeffs_[i];
        for (size_t j = 0; j < r.coeffs_.size(); ++j)
            r.coeffs_[j] += term.coeffs_[j];
    }
    *this = std::move(r);
}

void CycRat::align(CycRat& a, CycRat& b)
{
    if (a.n_ == b.n_)
        return;
    unsigned n = a.n_ * b.n_ / std::gcd(a.n_, b.n_);
    a.promote(n);
    b.promote(n);
}

CycRat CycRat::operator-() const
{
    CycRat r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

CycRat& CycRat::operator+=(const CycRat& o)
{
    if (n_ != o.n_) {
        CycRat tmp = o;
        align(*this, tmp);
        return *this += tmp;
    }
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycRat& CycRat::operator-=(const CycRat& o)
{
    if (n_ != o.n_) {
        CycRat tmp = o;
        align(*this, tmp);
        return *this -= tmp;
    }
    for (size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycRat& CycRat::operator*=(const CycRat& o)
{
    if (n_ != o.n_) {
        CycRat tmp = o;
        align(*this, tmp);
        return *this *= tmp;
    }
    if (n_ == 1) {
        coeffs_[0] *= o.coeffs_[0];
        return *this;
    }
    Poly prod = poly_mul(coeffs_, o.coeffs_);
    Poly red = poly_mod(std::move(prod), cyclotomic_poly(n_));
    std::fill(coeffs_.begin(), coeffs_.end(), Rat(0));
    for (size_t i = 0; i < red.size(); ++i)
        coeffs_[i] = red[i];
    return *this;
}

CycRat CycRat::inverse() const
{
    if (is_zero())
        throw std::domain_error("CycRat: division by zero");
    if (n_ == 1) {
        CycRat r(1u);
        r.coeffs_[0] = 1 / coeffs_[0];
        return r;
    }
    Poly a = coeffs_;
    poly_trim(a);
    auto [g, u] = poly_half_xgcd(a, cyclotomic_poly(n_));
    if (g.size() != 1)
        throw std::logic_error("CycRat: element not invertible mod cyclotomic polynomial");
    CycRat r(n_);
    Poly red = poly_mod(std::move(u), cyclotomic_poly(n_));
    for (size_t i = 0; i < red.size(); ++i)
        r.coeffs_[i] = red[i];
    return r;
}

CycRat& CycRat::operator/=(const CycRat& o)
{
    CycRat tmp = o;
    if (n_ != o.n_)
        align(*this, tmp);
    return *this *= tmp.inverse();
}

CycRat CycRat::pow(long k) const
{
    CycRat base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? -static_cast<unsigned long>(k) : k;
    CycRat r(n_, Rat(1));
    while (e) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

bool operator==(const CycRat& a, const CycRat& b)
{
    if (a.n_ == b.n_)
        return a.coeffs_ == b.coeffs_;
    CycRat x = a, y = b;
    CycRat::align(x, y);
    return x.coeffs_ == y.coeffs_;
}

std::string CycRat::to_string() const
{
    if (n_ == 1 || is_rational())
        return coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        if (!first)
            os << " + ";
        os << coeffs_[i].get_str();
        if (i > 0)
            os << "*x" << n_ << "^" << i;
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

} // namespace cmzv
