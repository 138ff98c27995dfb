#pragma once

#include "cmzv/btable.hpp"
#include "cmzv/mhs.hpp"
#include "cmzv/ncseries.hpp"
#include "cmzv/padic.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmzv {

/// Precision context for the p-adic pipeline: index p^alpha, target
/// precision prec (results certified modulo p^prec).
struct PrecCtx {
    unsigned long p = 5;
    int alpha = 1;
    long prec = 6;

    long p_pow_alpha() const
    {
        long r = 1;
        for (int i = 0; i < alpha; ++i)
            r *= static_cast<long>(p);
        return r;
    }
};

/// floor(log_p(x)) for x >= 1.
long flog(unsigned long p, long x);

/// Embed an exact rational at a given absolute precision.
PAdicNum embed_abs(const Rat& x, unsigned long p, long abs_prec);

/// Prime-indexed coefficient system g: exact values on plain positive
/// harmonic words (N = 1), plus a certified valuation floor by weight.
struct GSystem {
    std::function<Rat(const std::vector<int>&)> value; // innermost-first word
    std::function<long(int)> vfloor;                   // weight -> v_p lower bound

    Rat operator()(std::initializer_list<int> s) const { return value(std::vector<int>(s)); }
};

/// g = har_{p^alpha}: v_p(har_{p^alpha}(w)) >= weight(w) for positive words.
GSystem g_har(const PrecCtx& ctx);
/// The zero system (identity action).
GSystem g_zero();

/// Reversal-expansion coefficient (-1)^{u'+l} binom(-u', l): the coefficient
/// of the geometric expansion of (p^a n - m)^{-u'} along p^a n / m.
Rat rev_expand_coeff(int u_prime, long l);

/// Reversal reduction at a prime-power index: expands har_{p^alpha} of a
/// localized word with reversals into the binomial series of plain localized
/// values, with a certified tail; result modulo p^prec.
PAdicNum prop314_reduce(const PrecCtx& ctx, const HarmonicWordLoc& w);

/// RT harmonic Ihara action, depth <= 2, plain words: value approximating
/// har_{p^alpha n}(w) modulo p^prec. Depth one is the displayed kernel
/// formula; depth two is evaluated through the divisibility-case
/// decomposition of the double sum (the same map, with the inner-divisible,
/// outer-divisible and coprime families made explicit).
PAdicNum act_rt(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                const HarmonicWord& w);

/// RT action extended to words with reversals (depth <= 2): reversal
/// exponents of the coprime-to-p part expanded by the binomial series, the
/// divisible part kept at scale n.
PAdicNum act_rt_wr(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                   const HarmonicWordWR& w);

/// Adjoint coefficient family: words e_0^b e_1 w over {e_0, e_1}. Values on
/// e_1-ending words are stored; coefficients of words with trailing e_0 are
/// derived through the e_0-shuffle vanishing a[w sh e_0] = 0 and memoized.
/// Absent coefficients are exact zeros when finite_b_support is set, and
/// certified-small otherwise (vfloor gives the valuation floor).
template <class S>
struct AdjointCoeffs {
    int max_b = 0;
    int max_weight = 0; // bound on weight of e_1 w (excluding the b zeros)
    bool finite_b_support = true;
    long target_prec = 0; // certified absolute precision of the family
    std::map<WordKey, S> terms;
    std::function<long(long b, int tail_weight)> vfloor; // certified, PAdic mode
    std::function<S(const Rat&)> lift;                   // exact -> S

    void set(const WordKey& word, S v) { terms.insert_or_assign(word, std::move(v)); }
    const S* find(const WordKey& word) const
    {
        auto it = terms.find(word);
        return it == terms.end() ? nullptr : &it->second;
    }
};

/// Full coefficient lookup including trailing-e_0 completion.
Rat adjoint_coeff(AdjointCoeffs<Rat>& a, const WordKey& word);
PAdicNum adjoint_coeff(AdjointCoeffs<PAdicNum>& a, const WordKey& word);

/// Builds the adjoint family of a truncated series (test/synthetic route):
/// copies every coefficient of `a_series` (an NCSeries over {e_0,e_1}).
AdjointCoeffs<Rat> adjoint_from_series(const NCSeries<Rat>& a_series);

/// Comparison map Sigma^RT at harmonic depth <= 2 (adjoint words with up to
/// three e_1-letters): builds the coefficient family of Ad_Phi(e_1) from
/// prime weighted MHS. Words e_0^m e_1 ... for m <= max_b, tail weight <=
/// max_weight.
AdjointCoeffs<PAdicNum> sigma_rt(const PrecCtx& ctx, const GSystem& g, int max_b,
                                 int max_weight);

/// Certified valuation floor of Sigma^RT coefficients at (b, tail weight).
long sigma_rt_vfloor(const PrecCtx& ctx, long b, int tail_weight);

/// Sigma^DR_inv, numeric mode (Lambda = 1): h(w) = sum_b a[e_0^b e_1 w].
template <class S>
std::map<HarmonicWord, S> sigma_dr_inv(AdjointCoeffs<S>& a, int max_weight, int max_depth);

/// Lambda-graded mode: per word, the vector of coefficients of
/// Lambda^{weight(w)+b}, b = 0..max_b (each reads off a single b-layer).
template <class S>
std::map<HarmonicWord, std::vector<S>> sigma_dr_inv_lambda(AdjointCoeffs<S>& a, int max_weight,
                                                           int max_depth);

/// De Rham - rational harmonic Ihara action at harmonic depth <= 2 from an
/// adjoint coefficient family (the displayed depth-1/depth-2 formulas with
/// the trailing-e_0 correction family).
template <class S>
S act_drrt(AdjointCoeffs<S>& a, const HarmonicSeq& h, long n, const HarmonicWord& w);

/// Recover the group-like series Phi with Phi[e_0] = Phi[e_1] = 0 whose
/// adjoint Phi^{-1} e_1 Phi matches the given coefficients: weight-by-weight
/// linear solve of e_1 Phi = Phi a jointly with the shuffle constraints.
/// The input must carry adjoint data one weight beyond the requested
/// truncation (a.max_weight() >= max_weight + 1). `known` limits which
/// adjoint coefficients may be used as equations (coefficient data of
/// bounded harmonic depth). With full data the solution is unique (the
/// centralizer ambiguity exp(c e_1) is killed by Phi[e_1] = 0); with
/// depth-bounded data the high-depth Lie directions are undetermined and
/// `allow_underdetermined` selects the section with those coordinates zero.
template <class S>
NCSeries<S> recover_phi(const NCSeries<S>& a, int max_weight,
                        const std::function<bool(const WordKey&)>& known = nullptr,
                        bool allow_underdetermined = false);

/// Report on the tilde-Pi membership condition f[e_z] = f[e_0] = 0 and the
/// finite-truncation Sigma growth proxy v_p(f[w]) >= phi(weight, depth).
struct SigmaConditionReport {
    bool pi_tilde_ok = false;
    bool sigma_ok = false;
    struct Violation {
        std::string word;
        long required;
        long actual; // PAdicNum::kInfValuation when the value vanishes
    };
    std::vector<Violation> violations;
};

SigmaConditionReport sigma_condition_report(const NCSeries<PAdicNum>& f,
                                            const std::function<long(int, int)>& phi);
SigmaConditionReport sigma_condition_report(const NCSeries<Rat>& f, unsigned long p,
                                            const std::function<long(int, int)>& phi);

} // namespace cmzv
