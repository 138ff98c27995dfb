#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace cmzv {

using Rat = mpq_class;
using Int = mpz_class;

/// Generalized binomial coefficient binom(t, l) = t(t-1)...(t-l+1)/l! for any
/// integer t and l >= 0.
Rat binomial(long t, long l);
Rat binomial(const Int& t, long l);

/// v_p of a nonzero rational; throws for x == 0 (the valuation is +infinity).
long padic_valuation(const Rat& x, unsigned long p);

/// x^k for integer k of either sign (x != 0 when k < 0).
Rat rat_pow(const Rat& x, long k);

/// Bernoulli numbers B_0, B_1, ... with B_1 = -1/2 (cached, thread-safe for
/// sequential growth from a single thread).
const Rat& bernoulli(unsigned n);

/// Coefficients of the power-sum polynomial S_l(x) = sum_{j=0}^{x-1} j^l,
/// lowest degree first. S_l has degree l+1 and zero constant term, so for
/// l = 0 this is [0, 1] (S_0(x) = x).
const std::vector<Rat>& power_sum_poly(unsigned l);

/// Coefficient of x^b in S_l; zero outside 1 <= b <= l+1.
Rat power_sum_coeff(unsigned l, unsigned b);

/// Evaluate a coefficient vector (lowest degree first) at x.
Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x);

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

} // namespace cmzv
