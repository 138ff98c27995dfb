#pragma once

#include "cmzv/ihara.hpp"
#include "cmzv/mhs.hpp"
#include "cmzv/ncseries.hpp"
#include "cmzv/stuffle.hpp"

#include <functional>
#include <random>
#include <string>

namespace cmzv {

/// Outcome of one relation check. Failing reports always carry a concrete
/// witness (the instance and both side values).
struct RelationReport {
    enum class Verdict { HoldsExact, HoldsModP, Fails };

    std::string relation;
    std::string instance;
    Verdict verdict = Verdict::HoldsExact;
    std::string witness;

    bool ok() const { return verdict != Verdict::Fails; }
    std::string verdict_string() const;
    std::string to_json() const;
};

/// Shuffle relation f[u] f[v] = f[u sh v] within truncation.
template <class S>
RelationReport check_shuffle(const NCSeries<S>& f, bool exact_backend = true);

/// Quasi-shuffle for a coefficient system: eval(w) eval(w') = eval(w * w')
/// over nonempty pairs with combined weight/depth within bounds.
template <class S>
RelationReport check_quasi_shuffle(const std::function<S(const HarmonicWord&)>& eval,
                                   unsigned n_roots, int max_weight, int max_depth,
                                   bool exact_backend, const std::string& instance = "");

/// Adjoint quasi-shuffle in depth (1,1) (two-ordering reading):
/// a[e0^b e1 e0^{s2-1} e1 e0^{s1-1} e1] + a[.. s1 s2 ..] + a[e0^b e1 e0^{s1+s2-1} e1]
///   = sum_{b'+b''=b} a[e0^{b'} e1 e0^{s1-1} e1] a[e0^{b''} e1 e0^{s2-1} e1].
template <class S>
RelationReport check_adjoint_quasi_shuffle(AdjointCoeffs<S>& a, int max_total,
                                           bool exact_backend,
                                           const std::string& instance = "");

/// Commutant of Delta_sh(e_1) in the truncated tensor square: the kernel of
/// the commutator must be exactly span{e_1^a tensor e_1^b}.
RelationReport check_commutant(int max_weight);

/// Prop.-7.3-style three-way agreement: a) f group-like; b) f^{-1} e_1 f
/// primitive; c') the Lambda-graded shuffle system on ker of the trailing-e_0
/// stripper plus the e_0-shuffle vanishing. Requires f[e_1^s] = 0.
struct Prop73Report {
    bool a_group_like = false;
    bool b_adjoint_primitive = false;
    bool cprime_harmonic_system = false;
    bool agree() const
    {
        return a_group_like == b_adjoint_primitive && b_adjoint_primitive == cprime_harmonic_system;
    }
};
Prop73Report check_prop73(const NCSeries<Rat>& f);

/// Depth-(1,1) equivalence: the stuffle for the f-coefficients (zeta-sign
/// reading: f[s]f[t] = f[t,s] + f[s,t] - f[s+t]) against the adjoint stuffle
/// for f^{-1} e_1 f; returns both verdicts.
struct Depth11Report {
    bool f_side = false;
    bool adjoint_side = false;
    bool agree() const { return f_side == adjoint_side; }
};
Depth11Report check_depth11_equivalence(const NCSeries<Rat>& f);

/// Prime harmonic duality (degenerate special-automorphism equation):
/// with a = f^{-1} e_1 f and h(w) = (-1)^{depth w} a[ 1/(1 - Lambda e_0) e_1 w ],
/// checks h(w(e_0+e_1, -e_1)) = - sum_z (-1)^{depth z} h(z w) per
/// Lambda-degree within truncation. `source_holds` reports whether f
/// satisfies e_0 + a(e_0,e_1) + a(e_0,e_infty) = 0 at truncation.
struct DualityReport {
    bool source_holds = false;
    bool duality_holds = false;
    bool agree() const { return source_holds == duality_holds; }
};
DualityReport check_prime_harmonic_duality(const NCSeries<Rat>& f);

/// Finite-rank independence experiment: columns n^k frak_h_n(w) for the
/// given words (the empty word included automatically), k <= poly_degree,
/// rows n = 2..n_max. Verdict: full column rank (N = 1, exact arithmetic).
RelationReport rank_independence(const std::vector<HarmonicWord>& words, long n_max,
                                 int poly_degree);

/// Synthetic generators for the randomized suites (products of letter
/// exponentials; group-like by construction). When zero_e1_powers is set the
/// total e_1-coefficient vanishes, so f[e_1^s] = 0 for all s.
NCSeries<Rat> random_group_like(int max_weight, std::mt19937_64& rng, bool zero_e1_powers);

/// Group-like f with Ad_f(e_1) satisfying the degenerate special-automorphism
/// equation at truncation, solved weight-by-weight (random point of the
/// solution torsor).
NCSeries<Rat> random_duality_source(int max_weight, std::mt19937_64& rng);

} // namespace cmzv
