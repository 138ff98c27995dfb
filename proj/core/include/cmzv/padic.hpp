#pragma once

#include "cmzv/cyclotomic.hpp"
#include "cmzv/rational.hpp"

#include <limits>
#include <string>
#include <vector>

namespace cmzv {

/// Precision-tracked element of Q_p. A nonzero value is p^val * u with u a
/// unit known modulo p^prec, i.e. the value is known modulo p^{val+prec}.
/// The exact zero is a distinguished state (infinite valuation) carrying an
/// absolute precision only when it arose from inexact cancellation.
class PAdicNum {
public:
    static constexpr long kInfValuation = std::numeric_limits<long>::max();

    PAdicNum() : p_(2), val_(kInfValuation), abs_prec_(kInfValuation) {}

    /// Exact zero of Q_p.
    static PAdicNum zero(unsigned long p);
    /// Zero known only modulo p^abs_prec.
    static PAdicNum inexact_zero(unsigned long p, long abs_prec);
    /// From an exact rational with denominator handling; result known modulo
    /// p^{val + prec} (relative precision prec).
    static PAdicNum from_rational(const Rat& x, unsigned long p, long prec);

    unsigned long prime() const { return p_; }
    bool is_exact_zero() const { return val_ == kInfValuation && abs_prec_ == kInfValuation; }
    /// True when the value is indistinguishable from zero at its precision.
    bool is_zero() const { return val_ == kInfValuation; }
    long valuation() const { return val_; }
    /// Absolute precision: the value is known modulo p^{abs_precision()}.
    long abs_precision() const { return is_exact_zero() ? kInfValuation : abs_prec_; }
    long rel_precision() const
    {
        return is_zero() ? 0 : abs_prec_ - val_;
    }

    /// Unit part as an integer mod p^{rel_precision()}.
    const Int& unit() const { return unit_; }
    /// The value as an integer multiple of p^val modulo p^{abs_precision()},
    /// i.e. unit() reduced; digits in base p, least significant first.
    std::vector<unsigned long> digits() const;

    PAdicNum operator-() const;
    PAdicNum& operator+=(const PAdicNum& o);
    PAdicNum& operator-=(const PAdicNum& o);
    PAdicNum& operator*=(const PAdicNum& o);
    PAdicNum& operator/=(const PAdicNum& o);
    friend PAdicNum operator+(PAdicNum a, const PAdicNum& b) { return a += b; }
    friend PAdicNum operator-(PAdicNum a, const PAdicNum& b) { return a -= b; }
    friend PAdicNum operator*(PAdicNum a, const PAdicNum& b) { return a *= b; }
    friend PAdicNum operator/(PAdicNum a, const PAdicNum& b) { return a /= b; }

    /// Congruence at the shared precision (values agree modulo
    /// p^{min(abs precisions)}).
    friend bool operator==(const PAdicNum& a, const PAdicNum& b);
    friend bool operator!=(const PAdicNum& a, const PAdicNum& b) { return !(a == b); }

    /// Truncate to absolute precision cap (no-op if already coarser).
    PAdicNum truncated(long abs_prec) const;

    std::string to_string() const;

private:
    void normalize();

    unsigned long p_;
    long val_ = 0;
    long abs_prec_ = 0; // value known mod p^{abs_prec_}
    Int unit_ = 0;      // unit part mod p^{abs_prec_ - val_}
};

/// Teichmueller lift: the unique (p-1)-st root of unity congruent to a mod p,
/// to relative precision prec. Requires gcd(a, p) = 1.
PAdicNum teichmuller(unsigned long p, const Int& a, long prec);

/// Ring embedding Q(xi_N) -> Q_p, sending xi_N to the Teichmueller lift of
/// root_choice (a unit residue of exact multiplicative order N mod p).
/// Requires N | p-1 and denominators coprime to p.
PAdicNum embed(const CycRat& x, unsigned long p, long prec, unsigned long root_choice = 0);

} // namespace cmzv
