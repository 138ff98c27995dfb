#pragma once

#include "cmzv/cyclotomic.hpp"
#include "cmzv/padic.hpp"
#include "cmzv/rational.hpp"

#include <string>

namespace cmzv {

inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_zero(const CycRat& x) { return x.is_zero(); }
inline bool scalar_is_zero(const PAdicNum& x) { return x.is_zero(); }

/// True when the value is exactly zero (safe to drop from sparse storage).
inline bool scalar_is_exact_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_exact_zero(const CycRat& x) { return x.is_zero(); }
inline bool scalar_is_exact_zero(const PAdicNum& x) { return x.is_exact_zero(); }

inline Rat scalar_inv(const Rat& x) { return Rat(1) / x; }
inline CycRat scalar_inv(const CycRat& x) { return x.inverse(); }
inline PAdicNum scalar_inv(const PAdicNum& x)
{
    return PAdicNum::from_rational(Rat(1), x.prime(), x.rel_precision()) / x;
}

/// Divide by a small integer (denominators arising from exp, e_0-shuffle
/// completion and similar constructions).
inline Rat scalar_div_int(const Rat& x, long k) { return x / Rat(k); }
inline CycRat scalar_div_int(const CycRat& x, long k) { return x / CycRat(Rat(k)); }
inline PAdicNum scalar_div_int(const PAdicNum& x, long k)
{
    return x / PAdicNum::from_rational(Rat(k), x.prime(), std::max<long>(x.rel_precision(), 1));
}

/// Multiplicative/additive identities in the context of a sample value.
inline Rat scalar_one_like(const Rat&) { return 1; }
inline CycRat scalar_one_like(const CycRat& x) { return CycRat(x.order(), Rat(1)); }
inline PAdicNum scalar_one_like(const PAdicNum& x)
{
    return PAdicNum::from_rational(Rat(1), x.prime(), std::max<long>(x.rel_precision(), 1));
}

inline Rat scalar_int_like(const Rat&, long k) { return Rat(k); }
inline CycRat scalar_int_like(const CycRat& x, long k) { return CycRat(x.order(), Rat(k)); }
inline PAdicNum scalar_int_like(const PAdicNum& x, long k)
{
    return PAdicNum::from_rational(Rat(k), x.prime(), std::max<long>(x.rel_precision(), 1));
}

inline Rat scalar_exact_zero_like(const Rat&) { return 0; }
inline CycRat scalar_exact_zero_like(const CycRat& x) { return CycRat(x.order()); }
inline PAdicNum scalar_exact_zero_like(const PAdicNum& x) { return PAdicNum::zero(x.prime()); }

/// Pivot quality for exact elimination: smaller is better. Exact fields are
/// flat; p-adics prefer the smallest valuation (largest norm).
inline long scalar_pivot_rank(const Rat&) { return 0; }
inline long scalar_pivot_rank(const CycRat&) { return 0; }
inline long scalar_pivot_rank(const PAdicNum& x) { return x.valuation(); }

inline std::string scalar_to_string(const Rat& x) { return rat_to_string(x); }
inline std::string scalar_to_string(const CycRat& x) { return x.to_string(); }
inline std::string scalar_to_string(const PAdicNum& x) { return x.to_string(); }

} // namespace cmzv
