#pragma once

#include "cmzv/cyclotomic.hpp"
#include "cmzv/rational.hpp"
#include "cmzv/words.hpp"

#include <map>
#include <vector>

namespace cmzv {

/// Decomposition of a localized MHS into sum of (polynomial in n) times
/// (ordinary MHS). Words are denominator exponent tuples, innermost-first,
/// all entries >= 1; the empty word carries the purely polynomial part.
struct BDecomposition {
    std::map<std::vector<int>, std::vector<Rat>> terms; // word -> poly (lowest first)
};

/// Table of localized-MHS decompositions and their polynomial coefficients.
/// Tuples lambda = (l_1, ..., l_d) are monomial exponents innermost-first:
/// the decomposed function is n -> sum_{0<n_1<...<n_d<n} n_1^{l_1}...n_d^{l_d}.
/// Entries of either sign are allowed (negative l_i are ordinary
/// denominators). Decomposition proceeds innermost-out, one position per
/// step, by discrete integration of the non-denominator positions.
class BTable {
public:
    explicit BTable(int max_entry = 64) : max_entry_(max_entry) {}

    const BDecomposition& decompose(const std::vector<int>& lambda);

    /// Coefficient of n^b in the purely polynomial part; 0 if absent.
    /// b = 0 is stored (see the localized constant-term convention:
    /// e.g. the tuple (0) decomposes to n - 1).
    Rat b_coeff(long b, const std::vector<int>& lambda);

    /// Oracle evaluation of the decomposition at a concrete index.
    Rat evaluate(long n, const std::vector<int>& lambda);

    /// Direct nested-sum evaluation (independent of the decomposition).
    static Rat direct_sum(long n, const std::vector<int>& lambda);

    size_t size() const { return cache_.size(); }

private:
    int max_entry_;
    std::map<std::vector<int>, BDecomposition> cache_;
};

/// Shared table (thread-safe access).
BTable& global_btable();

/// Coefficient of n^b in sum_{j=0}^{n-1} j^l (the zero-constant power-sum
/// polynomial); agrees with b_coeff(b, {l}) for b >= 1. This is the
/// depth-one kernel appearing in the harmonic action formulas.
Rat action_b(long b, long l);

} // namespace cmzv
