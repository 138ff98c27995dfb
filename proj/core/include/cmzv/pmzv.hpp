#pragma once

#include "cmzv/ihara.hpp"
#include "cmzv/relations.hpp"

#include <map>
#include <vector>

namespace cmzv {

/// Configuration of the Frobenius pipeline. Certified-precision mode only:
/// every emitted digit is sound.
struct FrobeniusConfig {
    unsigned long p = 5;
    int alpha = 1;
    unsigned n_roots = 1; // numeric work requires N | p-1; the pipeline is N = 1
    int max_weight = 4;   // W
    int max_depth = -1;   // D, optional
    long prec = 5;        // M
    int z_degree = 40;    // bound for the section-8 series
    int max_b = 14;       // stored b-range of the adjoint family

    PrecCtx prec_ctx() const { return PrecCtx{p, alpha, prec}; }
};

/// Truncated series in z with non-commutative coefficients.
struct ZSeries {
    std::vector<NCSeries<PAdicNum>> coeffs; // index = z-degree

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

ZSeries zs_mul(const ZSeries& a, const ZSeries& b);
ZSeries zs_inverse(const ZSeries& a);

/// Adjoint p-adic MZVs: the coefficient family of Ad_{Phi_{p,alpha}}(e_1)
/// up to adjoint-word depth 3, from prime weighted MHS via Sigma^RT.
AdjointCoeffs<PAdicNum> compute_adjoint_mzv(const FrobeniusConfig& cfg);

/// Labeled output view: zeta^Ad(s_d,...,s_1) = (-1)^d a[e_0^{s_d-1} e_1 ...].
std::map<HarmonicWord, PAdicNum> zeta_ad_view(AdjointCoeffs<PAdicNum>& a, int max_weight,
                                              int max_depth);

/// Generating series of p-adic MZVs: group-like Phi with
/// Phi[e_0] = Phi[e_1] = 0 recovered from its adjoint.
NCSeries<PAdicNum> compute_phi(const FrobeniusConfig& cfg);
NCSeries<PAdicNum> compute_phi(const FrobeniusConfig& cfg, AdjointCoeffs<PAdicNum>& a);

/// Overconvergent hyperlogarithm series from the horizontality equation:
/// Li+(z) = LiKZ(z)(p^a e_0, p^a e_1) . [LiKZ(z^{p^a})(e_0, Phi^{-1}e_1 Phi)]^{-1}.
ZSeries compute_li_dagger(const FrobeniusConfig& cfg);
ZSeries compute_li_dagger(const FrobeniusConfig& cfg, const NCSeries<PAdicNum>& phi);

/// har+_n(w) = n^{weight(w)} Li+[w][z^n].
PAdicNum har_dagger(const ZSeries& li, long n, const Word& w);

/// The convolution shuffle of the overconvergent coefficients:
/// sum_m Li+[w][z^m] Li+[w'][z^{n-m}] = Li+[w sh w'][z^n] for n <= n_max and
/// word pairs within the weight bound (this is the per-z-degree group-like
/// property of Li+).
RelationReport check_li_dagger_shuffle(const ZSeries& li, int max_pair_weight, long n_max);

} // namespace cmzv
