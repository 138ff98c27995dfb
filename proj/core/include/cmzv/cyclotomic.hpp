#pragma once

#include "cmzv/rational.hpp"

#include <string>
#include <vector>

namespace cmzv {

/// Element of Q(xi_N), stored as a rational coefficient vector of length
/// phi(N) against the power basis 1, xi, ..., xi^{phi(N)-1} modulo the N-th
/// cyclotomic polynomial. N = 1 degenerates to plain Q.
class CycRat {
public:
    CycRat() : n_(1), coeffs_(1, Rat(0)) {}
    explicit CycRat(unsigned n) : n_(n), coeffs_(degree(n), Rat(0)) {}
    CycRat(unsigned n, const Rat& c) : n_(n), coeffs_(degree(n), Rat(0)) { coeffs_[0] = c; }
    CycRat(const Rat& c) : n_(1), coeffs_(1, c) {}
    CycRat(long c) : n_(1), coeffs_(1, Rat(c)) {}

    static unsigned degree(unsigned n); // phi(n)
    static const std::vector<Rat>& cyclotomic_poly(unsigned n); // monic, lowest first

    /// xi_N^k as an element of Q(xi_N).
    static CycRat root_power(unsigned n, long k);

    unsigned order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// The coefficient of 1; exact value when is_rational().
    const Rat& rational_part() const { return coeffs_[0]; }

    CycRat operator-() const;
    CycRat& operator+=(const CycRat& o);
    CycRat& operator-=(const CycRat& o);
    CycRat& operator*=(const CycRat& o);
    CycRat& operator/=(const CycRat& o);

    friend CycRat operator+(CycRat a, const CycRat& b) { return a += b; }
    friend CycRat operator-(CycRat a, const CycRat& b) { return a -= b; }
    friend CycRat operator*(CycRat a, const CycRat& b) { return a *= b; }
    friend CycRat operator/(CycRat a, const CycRat& b) { return a /= b; }
    friend bool operator==(const CycRat& a, const CycRat& b);
    friend bool operator!=(const CycRat& a, const CycRat& b) { return !(a == b); }

    CycRat inverse() const;
    CycRat pow(long k) const;

    std::string to_string() const;

private:
    void promote(unsigned n);
    static void align(CycRat& a, CycRat& b);

    unsigned n_;
    std::vector<Rat> coeffs_;
};

} // namespace cmzv
