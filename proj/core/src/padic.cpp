#include "cmzv/padic.hpp"

#include <sstream>
#include <stdexcept>

namespace cmzv {

namespace {

Int pow_p(unsigned long p, long e)
{
    if (e < 0)
        throw std::logic_error("pow_p: negative exponent");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
    return r;
}

Int mod_reduce(const Int& x, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

PAdicNum PAdicNum::zero(unsigned long p)
{
    PAdicNum z;
    z.p_ = p;
    z.val_ = kInfValuation;
    z.abs_prec_ = kInfValuation;
    return z;
}

PAdicNum PAdicNum::inexact_zero(unsigned long p, long abs_prec)
{
    PAdicNum z;
    z.p_ = p;
    z.val_ = kInfValuation;
    z.abs_prec_ = abs_prec;
    return z;
}

void PAdicNum::normalize()
{
    if (val_ == kInfValuation)
        return;
    if (abs_prec_ <= val_) {
        // nothing is known beyond "divisible by p^abs_prec_"
        long ap = abs_prec_;
        *this = inexact_zero(p_, ap);
        return;
    }
    Int mod = pow_p(p_, abs_prec_ - val_);
    unit_ = mod_reduce(unit_, mod);
    if (unit_ == 0) {
        long ap = abs_prec_;
        *this = inexact_zero(p_, ap);
        return;
    }
    // factor out p from the unit if the leading digit vanished
    Int rem;
    unsigned long shift = mpz_remove(rem.get_mpz_t(), unit_.get_mpz_t(),
                                     Int(static_cast<long>(p_)).get_mpz_t());
    if (shift > 0) {
        val_ += static_cast<long>(shift);
        if (val_ >= abs_prec_) {
            long ap = abs_prec_;
            *this = inexact_zero(p_, ap);
            return;
        }
        unit_ = mod_reduce(rem, pow_p(p_, abs_prec_ - val_));
        if (unit_ == 0) {
            long ap = abs_prec_;
            *this = inexact_zero(p_, ap);
        }
    }
}

PAdicNum PAdicNum::from_rational(const Rat& x, unsigned long p, long prec)
{
    if (x == 0)
        return zero(p);
    PAdicNum r;
    r.p_ = p;
    Int pp(static_cast<long>(p));
    Int num, den;
    long vnum = static_cast<long>(mpz_remove(num.get_mpz_t(), x.get_num().get_mpz_t(), pp.get_mpz_t()));
    long vden = static_cast<long>(mpz_remove(den.get_mpz_t(), x.get_den().get_mpz_t(), pp.get_mpz_t()));
    r.val_ = vnum - vden;
    r.abs_prec_ = r.val_ + prec;
    Int mod = pow_p(p, prec);
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::domain_error("PAdicNum: denominator not invertible mod p^prec");
    r.unit_ = mod_reduce(num * dinv, mod);
    r.normalize();
    return r;
}

std::vector<unsigned long> PAdicNum::digits() const
{
    std::vector<unsigned long> d;
    if (is_zero())
        return d;
    Int u = unit_;
    long len = rel_precision();
    for (long i = 0; i < len; ++i) {
        Int q, rdig;
        mpz_fdiv_qr_ui(q.get_mpz_t(), rdig.get_mpz_t(), u.get_mpz_t(), p_);
        d.push_back(rdig.get_ui());
        u = q;
    }
    return d;
}

PAdicNum PAdicNum::operator-() const
{
    PAdicNum r = *this;
    if (r.is_zero())
        return r;
    Int mod = pow_p(p_, rel_precision());
    r.unit_ = mod_reduce(-unit_, mod);
    return r;
}

PAdicNum& PAdicNum::operator+=(const PAdicNum& o)
{
    if (p_ != o.p_ && !is_exact_zero() && !o.is_exact_zero())
        throw std::invalid_argument("PAdicNum: mixed primes");
    if (o.is_exact_zero())
        return *this;
    if (is_exact_zero()) {
        *this = o;
        return *this;
    }
    long ap = std::min(abs_prec_, o.abs_prec_);
    if (is_zero() && o.is_zero()) {
        *this = inexact_zero(p_, ap);
        return *this;
    }
    long v = std::min(is_zero() ? ap : val_, o.is_zero() ? ap : o.val_);
    if (v >= ap) {
        *this = inexact_zero(p_, ap);
        return *this;
    }
    Int mod = pow_p(p_, ap - v);
    Int a = is_zero() ? Int(0) : unit_ * pow_p(p_, val_ - v);
    Int b = o.is_zero() ? Int(0) : o.unit_ * pow_p(p_, o.val_ - v);
    p_ = o.p_;
    val_ = v;
    abs_prec_ = ap;
    unit_ = mod_reduce(a + b, mod);
    normalize();
    return *this;
}

PAdicNum& PAdicNum::operator-=(const PAdicNum& o) { return *this += -o; }

PAdicNum& PAdicNum::operator*=(const PAdicNum& o)
{
    if (p_ != o.p_ && !is_exact_zero() && !o.is_exact_zero())
        throw std::invalid_argument("PAdicNum: mixed primes");
    if (is_exact_zero())
        return *this;
    if (o.is_exact_zero()) {
        *this = o;
        return *this;
    }
    if (is_zero() || o.is_zero()) {
        // v(xy) >= v-known(x) + v-known(y)
        long ap = std::min(is_zero() ? abs_prec_ : val_, kInfValuation);
        long bp = std::min(o.is_zero() ? o.abs_prec_ : o.val_, kInfValuation);
        *this = inexact_zero(p_, ap + bp);
        return *this;
    }
    long rel = std::min(rel_precision(), o.rel_precision());
    long v = val_ + o.val_;
    val_ = v;
    abs_prec_ = v + rel;
    Int mod = pow_p(p_, rel);
    unit_ = mod_reduce(unit_ * o.unit_, mod);
    normalize();
    return *this;
}

PAdicNum& PAdicNum::operator/=(const PAdicNum& o)
{
    if (o.is_zero())
        throw std::domain_error("PAdicNum: division by (indistinguishable-from-)zero");
    long rel = o.rel_precision();
    Int mod = pow_p(o.p_, rel);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), o.unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("PAdicNum: unit not invertible");
    PAdicNum recip;
    recip.p_ = o.p_;
    recip.val_ = -o.val_;
    recip.abs_prec_ = recip.val_ + rel;
    recip.unit_ = inv;
    return *this *= recip;
}

bool operator==(const PAdicNum& a, const PAdicNum& b)
{
    PAdicNum d = a - b;
    return d.is_zero();
}

PAdicNum PAdicNum::truncated(long abs_prec) const
{
    if (is_exact_zero())
        return inexact_zero(p_, abs_prec);
    if (abs_prec >= abs_prec_)
        return *this;
    PAdicNum r = *this;
    r.abs_prec_ = abs_prec;
    r.normalize();
    return r;
}

std::string PAdicNum::to_string() const
{
    std::ostringstream os;
    if (is_exact_zero())
        return "0 (exact)";
    if (is_zero()) {
        os << "O(" << p_ << "^" << abs_prec_ << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (val_ != 0)
        os << "*" << p_ << "^" << val_;
    os << " + O(" << p_ << "^" << abs_prec_ << ")";
    return os.str();
}

PAdicNum teichmuller(unsigned long p, const Int& a, long prec)
{
    if (mpz_divisible_ui_p(a.get_mpz_t(), p))
        throw std::domain_error("teichmuller: residue divisible by p");
    Int mod = 1;
    for (long i = 0; i < prec; ++i)
        mod *= static_cast<long>(p);
    Int x = a % mod;
    if (x < 0)
        x += mod;
    // x -> x^p converges to the fixed point in <= prec iterations
    for (long i = 0; i < prec; ++i) {
        Int next;
        mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), p, mod.get_mpz_t());
        if (next == x)
            break;
        x = next;
    }
    PAdicNum r = PAdicNum::from_rational(Rat(1), p, prec);
    return r * PAdicNum::from_rational(Rat(x), p, prec);
}

PAdicNum embed(const CycRat& x, unsigned long p, long prec, unsigned long root_choice)
{
    unsigned n = x.order();
    if (x.is_zero())
        return PAdicNum::zero(p);
    if (n == 1 || x.is_rational())
        return PAdicNum::from_rational(x.rational_part(), p, prec);
    if ((p - 1) % n != 0)
        throw std::domain_error("embed: numeric backend unsupported for this (N, p): N must divide p-1");
    if (root_choice == 0)
        throw std::invalid_argument("embed: a root_choice residue is required for N > 1");
    // root_choice must have exact multiplicative order N modulo p
    unsigned long rpow = 1;
    for (unsigned k = 1; k < n; ++k) {
        rpow = (rpow * root_choice) % p;
        if (rpow == 1)
            throw std::invalid_argument("embed: root_choice has order < N mod p");
    }
    rpow = (rpow * root_choice) % p;
    if (rpow != 1)
        throw std::invalid_argument("embed: root_choice does not have order N mod p");
    PAdicNum xi = teichmuller(p, Int(static_cast<long>(root_choice)), prec);
    PAdicNum acc = PAdicNum::zero(p);
    PAdicNum xik = PAdicNum::from_rational(Rat(1), p, prec);
    const auto& coeffs = x.coeffs();
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] != 0)
            acc += PAdicNum::from_rational(coeffs[k], p, prec) * xik;
        xik *= xi;
    }
    return acc;
}

} // namespace cmzv
