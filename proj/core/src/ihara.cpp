#include "cmzv/ihara.hpp"

#include "cmzv/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmzv {

long flog(unsigned long p, long x)
{
    long r = 0;
    long v = static_cast<long>(p);
    while (v <= x) {
        ++r;
        if (v > x / static_cast<long>(p))
            break;
        v *= static_cast<long>(p);
    }
    return r;
}

PAdicNum embed_abs(const Rat& x, unsigned long p, long abs_prec)
{
    if (x == 0)
        return PAdicNum::inexact_zero(p, abs_prec);
    long v = padic_valuation(x, p);
    if (v >= abs_prec)
        return PAdicNum::inexact_zero(p, abs_prec);
    return PAdicNum::from_rational(x, p, abs_prec - v);
}

namespace {

constexpr long kInfFloor = std::numeric_limits<long>::max() / 4;
constexpr long kHardCut = 4096;

Rat rat_of(const CycRat& c)
{
    if (!c.is_rational())
        throw std::logic_error("ihara: cyclotomic value in an N = 1 context");
    return c.rational_part();
}

std::vector<std::pair<int, int>> plain_entries(const std::vector<int>& s)
{
    std::vector<std::pair<int, int>> e;
    e.reserve(s.size());
    for (int x : s)
        e.emplace_back(x, 0);
    return e;
}

Rat har_plain(const PrecCtx& ctx, const std::vector<int>& s)
{
    return rat_of(har(ctx.p_pow_alpha(), HarmonicWordLoc::plain(plain_entries(s))));
}

// Smallest L such that floor(l) >= prec for all l >= L; relies on the floors
// being nondecreasing (affine growth beats the log-denominator jumps).
long scan_cutoff(const std::function<long(long)>& floor_fn, long prec)
{
    for (long l = 0; l <= kHardCut; ++l)
        if (floor_fn(l) >= prec)
            return l;
    throw std::runtime_error("ihara: cutoff certification failure (tail floor too slow)");
}

// v_p lower bound for the combined factor n^{beta+b} har_n(shifted entry):
// the n-powers cancel the negative weights, leaving the denominator mass.
long h_factor_floor(unsigned long p, long n, std::pair<int, int> entry)
{
    long posmass = std::max(entry.first, 0) + std::max(entry.second, 0);
    return -posmass * flog(p, std::max<long>(n - 1, 1));
}

} // namespace

GSystem g_har(const PrecCtx& ctx)
{
    PrecCtx c = ctx;
    return GSystem{
        [c](const std::vector<int>& s) { return har_plain(c, s); },
        [](int weight) { return static_cast<long>(weight); },
    };
}

GSystem g_zero()
{
    return GSystem{
        [](const std::vector<int>&) { return Rat(0); },
        [](int) { return kInfFloor; },
    };
}

Rat rev_expand_coeff(int u_prime, long l)
{
    Rat b = binomial(-static_cast<long>(u_prime), l);
    bool neg = ((static_cast<long>(u_prime) + l) % 2 + 2) % 2 == 1;
    return neg ? -b : b;
}

PAdicNum prop314_reduce(const PrecCtx& ctx, const HarmonicWordLoc& w)
{
    if (w.n_roots != 1)
        throw std::invalid_argument("prop314_reduce: N = 1 only");
    int d = w.depth();
    long base = 0, posmass = 0;
    for (auto [u, up] : w.e) {
        base += u + up;
        posmass += std::max(u + up, 0);
    }
    // v_p(har_{p^a}(shifted)) >= a*sum(e) - (a-1)*sum(max(e,0)) and each unit
    // of |l'| adds at least 1
    long c0 = static_cast<long>(ctx.alpha) * base -
              static_cast<long>(ctx.alpha - 1) * posmass;
    long lmax = std::max<long>(0, ctx.prec - c0 + 1);
    Rat acc = 0;
    std::vector<long> lv(d, 0);
    // iterate multi-indices with |l'| <= lmax
    std::function<void(int, long)> rec = [&](int pos, long rem) {
        if (pos == d) {
            Rat coeff = 1;
            std::vector<int> shifted(d);
            for (int i = 0; i < d; ++i) {
                coeff *= rev_expand_coeff(w.e[i].second, lv[i]);
                shifted[i] = w.e[i].first + w.e[i].second + static_cast<int>(lv[i]);
            }
            if (coeff == 0)
                return;
            acc += coeff * har_plain(ctx, shifted);
            return;
        }
        // negative reversal exponents have finite expansions
        long cap = w.e[pos].second < 0 ? -static_cast<long>(w.e[pos].second) : rem;
        cap = std::min(cap, rem);
        for (lv[pos] = 0; lv[pos] <= cap; ++lv[pos])
            rec(pos + 1, rem - lv[pos]);
        lv[pos] = 0;
    };
    rec(0, lmax);
    return embed_abs(acc, ctx.p, ctx.prec);
}

namespace {

// ---- shared exact kernels (all values exact rationals; tails certified) ----

// Depth-one correction: sum_{b>=1} n^{sigma+b} sum_{l>=b-1}
// binom(-sigma, l) B_b^l g(sigma+l); equals har_{p^a n}(sigma) - har_n(sigma)
// when g = har_{p^a}.
Rat corr_d1(const PrecCtx& ctx, const GSystem& g, long n, int sigma, long prec)
{
    auto floor_fn = [&](long l) { return g.vfloor(sigma + static_cast<int>(l)) - flog(ctx.p, l + 1) - 1; };
    long L = scan_cutoff(floor_fn, prec);
    Rat acc = 0;
    for (long l = 0; l < L; ++l) {
        Rat gv = g.value({sigma + static_cast<int>(l)});
        if (gv == 0)
            continue;
        Rat bin = binomial(-static_cast<long>(sigma), l);
        Rat npow = 0;
        for (long b = 1; b <= l + 1; ++b) {
            Rat bb = action_b(b, l);
            if (bb != 0)
                npow += bb * rat_pow(Rat(n), sigma + b);
        }
        acc += bin * npow * gv;
    }
    return acc;
}

// Inner divisible / outer coprime family at expanded outer exponent beta:
// sum_l binom(-beta, l) g(beta+l) [ sum_{b''} c^{(l)}_{b''} n^{beta+b''} h_n(e1)
//   - sum_{b'} c^{(l)}_{b'} n^{beta+b'} h_n(e1 - (b',0)) ].
Rat case_inner_div(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                   std::pair<int, int> e1, int beta, long prec)
{
    long hb = h_factor_floor(ctx.p, n, e1);
    auto floor_fn = [&](long l) {
        return g.vfloor(beta + static_cast<int>(l)) - flog(ctx.p, l + 1) - 1 + hb;
    };
    long L = scan_cutoff(floor_fn, prec);
    Rat acc = 0;
    Rat h_e1 = rat_of(h(n, HarmonicWordLoc::plain({e1})));
    for (long l = 0; l < L; ++l) {
        Rat gv = g.value({beta + static_cast<int>(l)});
        if (gv == 0)
            continue;
        Rat bin = binomial(-static_cast<long>(beta), l);
        Rat bracket = 0;
        for (long b = 1; b <= l + 1; ++b) {
            Rat c = action_b(b, l);
            if (c == 0)
                continue;
            bracket += c * rat_pow(Rat(n), beta + b) * h_e1;
            Rat h_shift = rat_of(
                h(n, HarmonicWordLoc::plain({{e1.first - static_cast<int>(b), e1.second}})));
            bracket -= c * rat_pow(Rat(n), beta + b) * h_shift;
        }
        acc += bin * gv * bracket;
    }
    return acc;
}

// Inner coprime at expanded exponent alpha / outer divisible family:
// sum_l binom(-alpha, l) g(alpha+l) sum_{b'} c^{(l)}_{b'} n^{alpha+b'}
//   h_n(e2 - (b',0)).
Rat case_outer_div(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n, int alpha,
                   std::pair<int, int> e2, long prec)
{
    long hb = h_factor_floor(ctx.p, n, e2);
    auto floor_fn = [&](long l) {
        return g.vfloor(alpha + static_cast<int>(l)) - flog(ctx.p, l + 1) - 1 + hb;
    };
    long L = scan_cutoff(floor_fn, prec);
    Rat acc = 0;
    for (long l = 0; l < L; ++l) {
        Rat gv = g.value({alpha + static_cast<int>(l)});
        if (gv == 0)
            continue;
        Rat bin = binomial(-static_cast<long>(alpha), l);
        Rat inner = 0;
        for (long b = 1; b <= l + 1; ++b) {
            Rat c = action_b(b, l);
            if (c == 0)
                continue;
            Rat h_shift = rat_of(
                h(n, HarmonicWordLoc::plain({{e2.first - static_cast<int>(b), e2.second}})));
            inner += c * rat_pow(Rat(n), alpha + b) * h_shift;
        }
        acc += bin * gv * inner;
    }
    return acc;
}

// J2(l1, l2; n) = sum_{0<=j1<j2<n} j1^{l1} j2^{l2}.
Rat j2_value(long l1, long l2, long n)
{
    Rat acc = 0;
    for (long b = 1; b <= l1 + 1; ++b) {
        Rat c = action_b(b, l1);
        if (c != 0)
            acc += c * poly_eval(power_sum_poly(static_cast<unsigned>(l2 + b)), Rat(n));
    }
    return acc;
}

// Fully coprime family:
// sum_{l1,l2} binom(-a,l1) binom(-b,l2) n^{a+b} [ J2(l1,l2;n) g(a+l1) g(b+l2)
//   + S_{l1+l2}(n) g((a+l1, b+l2)) ].
Rat case_both_coprime(const PrecCtx& ctx, const GSystem& g, long n, int a, int b, long prec)
{
    auto floor_fn = [&](long t) {
        long prod = g.vfloor(a) + g.vfloor(b) + t - 2 * flog(ctx.p, t + 2) - 2;
        long pair = g.vfloor(a + b + static_cast<int>(t)) - flog(ctx.p, t + 1) - 1;
        return std::min(prod, pair);
    };
    long T = scan_cutoff(floor_fn, prec);
    Rat acc = 0;
    Rat napb = rat_pow(Rat(n), a + b);
    for (long l1 = 0; l1 < T; ++l1) {
        Rat bin1 = binomial(-static_cast<long>(a), l1);
        for (long l2 = 0; l1 + l2 < T; ++l2) {
            Rat bin2 = binomial(-static_cast<long>(b), l2);
            Rat term = j2_value(l1, l2, n) * g.value({a + static_cast<int>(l1)}) *
                       g.value({b + static_cast<int>(l2)});
            term += poly_eval(power_sum_poly(static_cast<unsigned>(l1 + l2)), Rat(n)) *
                    g.value({a + static_cast<int>(l1), b + static_cast<int>(l2)});
            acc += bin1 * bin2 * napb * term;
        }
    }
    return acc;
}

Rat act_rt_partial(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                   const HarmonicWord& w)
{
    long prec = ctx.prec;
    if (w.n_roots != 1)
        throw std::invalid_argument("act_rt: N = 1 only");
    int d = w.depth();
    if (d == 0)
        return 1;
    if (d == 1) {
        int s = w.s[0];
        return rat_of(h(n, w)) + corr_d1(ctx, g, n, s, prec);
    }
    if (d == 2) {
        int s1 = w.s[0], s2 = w.s[1];
        Rat acc = rat_of(h(n, w));
        acc += case_inner_div(ctx, g, h, n, {s1, 0}, s2, prec);
        acc += case_outer_div(ctx, g, h, n, s1, {s2, 0}, prec);
        acc += case_both_coprime(ctx, g, n, s1, s2, prec);
        return acc;
    }
    throw std::invalid_argument("act_rt: harmonic depth <= 2 only");
}

} // namespace

PAdicNum act_rt(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                const HarmonicWord& w)
{
    return embed_abs(act_rt_partial(ctx, g, h, n, w), ctx.p, ctx.prec);
}

PAdicNum act_rt_wr(const PrecCtx& ctx, const GSystem& g, const HarmonicSeq& h, long n,
                   const HarmonicWordWR& w)
{
    if (w.n_roots != 1)
        throw std::invalid_argument("act_rt_wr: N = 1 only");
    long prec = ctx.prec;
    int d = w.depth();
    if (d == 0)
        return embed_abs(Rat(1), ctx.p, prec);
    if (d == 1) {
        auto [s, sp] = w.e[0];
        int sigma = s + sp;
        Rat acc = rat_of(h(n, widen(w)));
        // reversal exponent expanded along the coprime part; exponent 0
        // degenerates to the plain formula
        auto floor_fn = [&](long lp) { return g.vfloor(sigma + static_cast<int>(lp)) - 1; };
        long L = sp == 0 ? 1 : scan_cutoff(floor_fn, prec);
        for (long lp = 0; lp < L; ++lp) {
            Rat c = rev_expand_coeff(sp, lp);
            if (c != 0)
                acc += c * corr_d1(ctx, g, n, sigma + static_cast<int>(lp), prec + 1);
        }
        return embed_abs(acc, ctx.p, prec);
    }
    if (d == 2) {
        auto e1 = w.e[0];
        auto e2 = w.e[1];
        int sig1 = e1.first + e1.second, sig2 = e2.first + e2.second;
        Rat acc = rat_of(h(n, widen(w)));
        long hb1 = h_factor_floor(ctx.p, n, e1);
        long hb2 = h_factor_floor(ctx.p, n, e2);
        // case: inner divisible, outer coprime (expand the outer reversal)
        {
            auto floor_fn = [&](long lp) {
                return g.vfloor(sig2 + static_cast<int>(lp)) - 1 + hb1;
            };
            long L = e2.second == 0 ? 1 : scan_cutoff(floor_fn, prec);
            for (long lp = 0; lp < L; ++lp) {
                Rat c = rev_expand_coeff(e2.second, lp);
                if (c != 0)
                    acc += c * case_inner_div(ctx, g, h, n, e1, sig2 + static_cast<int>(lp),
                                              prec + 1);
            }
        }
        // case: inner coprime (expand the inner reversal), outer divisible
        {
            auto floor_fn = [&](long lp) {
                return g.vfloor(sig1 + static_cast<int>(lp)) - 1 + hb2;
            };
            long L = e1.second == 0 ? 1 : scan_cutoff(floor_fn, prec);
            for (long lp = 0; lp < L; ++lp) {
                Rat c = rev_expand_coeff(e1.second, lp);
                if (c != 0)
                    acc += c * case_outer_div(ctx, g, h, n, sig1 + static_cast<int>(lp), e2,
                                              prec + 1);
            }
        }
        // case: both coprime (expand both reversals)
        {
            auto floor_fn = [&](long t) {
                return g.vfloor(sig1) + g.vfloor(sig2) + t - 2 * flog(ctx.p, t + 2) - 2;
            };
            long T = (e1.second == 0 && e2.second == 0) ? 1 : scan_cutoff(floor_fn, prec);
            for (long l1 = 0; l1 < std::max<long>(T, 1); ++l1) {
                if (e1.second == 0 && l1 > 0)
                    break;
                Rat c1 = rev_expand_coeff(e1.second, l1);
                if (c1 == 0)
                    continue;
                for (long l2 = 0; l1 + l2 < std::max<long>(T, 1); ++l2) {
                    if (e2.second == 0 && l2 > 0)
                        break;
                    Rat c2 = rev_expand_coeff(e2.second, l2);
                    if (c2 == 0)
                        continue;
                    acc += c1 * c2 *
                           case_both_coprime(ctx, g, n, sig1 + static_cast<int>(l1),
                                             sig2 + static_cast<int>(l2), prec + 1);
                }
            }
        }
        return embed_abs(acc, ctx.p, prec);
    }
    throw std::invalid_argument("act_rt_wr: harmonic depth <= 2 only");
}

// ---- Sigma^RT ----

long sigma_rt_vfloor(const PrecCtx& ctx, long b, int tail_weight)
{
    if (tail_weight == 0)
        return b == 0 ? 0 : kInfFloor; // bare e_1 / exact zeros
    long m2 = std::max<long>(0, b - 2);
    return tail_weight + m2 - 2 * flog(ctx.p, m2 + tail_weight + 3) - 2;
}

namespace {

Rat sigma_rt_d1_partial(const PrecCtx& ctx, const GSystem& g, long m, int s)
{
    if (m == 0)
        return 0;
    BTable& bt = global_btable();
    auto floor_fn = [&](long l) { return g.vfloor(s + static_cast<int>(l)) - flog(ctx.p, l + 1) - 1; };
    long L = scan_cutoff(floor_fn, ctx.prec);
    Rat acc = 0;
    for (long l = std::max<long>(0, m - 1); l < std::max(L, m); ++l) {
        Rat bb = bt.b_coeff(m, {static_cast<int>(l)});
        if (bb == 0)
            continue;
        acc += binomial(-static_cast<long>(s), l) * bb * g.value({s + static_cast<int>(l)});
    }
    return acc;
}

// Coefficient of n^m in P_lambda(n) = sum_{0<j<n} j^lambda.
Rat chain_psc(long lambda, long m)
{
    Rat c = power_sum_coeff(static_cast<unsigned>(lambda), static_cast<unsigned>(m));
    if (lambda == 0 && m == 0)
        c -= 1;
    return c;
}

// Depth-2 Sigma^RT coefficient a[e_0^m e_1 e_0^{s2-1} e_1 e_0^{s1-1} e_1],
// obtained by matching the displayed depth-2 action expansion against the
// divisibility-case decomposition, coefficientwise in the independent
// h-monomials and powers of n:
//   a[m] = sum_{l1,l2} binom(-s1,l1) binom(-s2,l2)
//            [ J2c_m(l1,l2) g(s1+l1) g(s2+l2) + B~_m^{l1+l2} g(s1+l1, s2+l2) ]
//        - sum_l binom(-s2,l) g(s2+l) sum_{b'>=s1} B~_{b'}^l PC_m(b'-s1)
//        + sum_l binom(-s1,l) g(s1+l) sum_{b'>=s2} B~_{b'}^l PC_m(b'-s2)
// with J2c_m(l1,l2) = sum_{b'>=1} B~_{b'}^{l1} B~_m^{l2+b'} (the coefficient
// of n^m in sum_{0<=j1<j2<n} j1^{l1} j2^{l2}).
Rat sigma_rt_d2_partial(const PrecCtx& ctx, const GSystem& g, long m, int s1, int s2)
{
    Rat acc = 0;
    // coprime-pair family
    {
        auto floor_fn = [&](long t) {
            long prod = g.vfloor(s1) + g.vfloor(s2) + t - 2 * flog(ctx.p, t + 3) - 2;
            long pair = g.vfloor(s1 + s2 + static_cast<int>(t)) - flog(ctx.p, t + 1) - 1;
            return std::min(prod, pair);
        };
        long T = scan_cutoff(floor_fn, ctx.prec);
        for (long l1 = 0; l1 < T; ++l1) {
            for (long l2 = 0; l1 + l2 < T; ++l2) {
                Rat j2c = 0;
                for (long bp = 1; bp <= l1 + 1; ++bp) {
                    Rat c1 = action_b(bp, l1);
                    if (c1 != 0)
                        c1 *= action_b(m, l2 + bp);
                    j2c += c1;
                }
                Rat term = 0;
                if (j2c != 0)
                    term += j2c * g.value({s1 + static_cast<int>(l1)}) *
                            g.value({s2 + static_cast<int>(l2)});
                Rat bsum = action_b(m, l1 + l2);
                if (bsum != 0)
                    term += bsum * g.value({s1 + static_cast<int>(l1), s2 + static_cast<int>(l2)});
                if (term != 0)
                    acc += binomial(-static_cast<long>(s1), l1) *
                           binomial(-static_cast<long>(s2), l2) * term;
            }
        }
    }
    // localized boundary families (inner-divisible and outer-divisible)
    {
        auto floor2 = [&](long l) {
            return g.vfloor(s2 + static_cast<int>(l)) - 2 * flog(ctx.p, l + s1 + 3) - 2;
        };
        long L2 = scan_cutoff(floor2, ctx.prec);
        for (long l = 0; l < L2; ++l) {
            Rat gv = g.value({s2 + static_cast<int>(l)});
            if (gv == 0)
                continue;
            Rat inner = 0;
            for (long bp = s1; bp <= l + 1; ++bp)
                inner += action_b(bp, l) * chain_psc(bp - s1, m);
            acc -= binomial(-static_cast<long>(s2), l) * gv * inner;
        }
        auto floor1 = [&](long l) {
            return g.vfloor(s1 + static_cast<int>(l)) - 2 * flog(ctx.p, l + s2 + 3) - 2;
        };
        long L1 = scan_cutoff(floor1, ctx.prec);
        for (long l = 0; l < L1; ++l) {
            Rat gv = g.value({s1 + static_cast<int>(l)});
            if (gv == 0)
                continue;
            Rat inner = 0;
            for (long bp = s2; bp <= l + 1; ++bp)
                inner += action_b(bp, l) * chain_psc(bp - s2, m);
            acc += binomial(-static_cast<long>(s1), l) * gv * inner;
        }
    }
    return acc;
}

} // namespace

AdjointCoeffs<PAdicNum> sigma_rt(const PrecCtx& ctx, const GSystem& g, int max_b, int max_weight)
{
    AdjointCoeffs<PAdicNum> a;
    a.max_b = max_b;
    a.max_weight = max_weight + 1; // tail e_1 w has word weight (harmonic weight) + ...
    a.finite_b_support = false;
    a.target_prec = ctx.prec;
    PrecCtx c = ctx;
    a.vfloor = [c](long b, int tw) { return sigma_rt_vfloor(c, b, tw); };
    a.lift = [c](const Rat& x) { return embed_abs(x, c.p, c.prec); };

    // bare e_1 and the depth-0 tail: a[e_1] = 1, a[e_0^b e_1] = 0 (b >= 1)
    a.set(WordKey(1, '\1'), embed_abs(Rat(1), ctx.p, ctx.prec + max_b));
    for (int b = 1; b <= max_b; ++b)
        a.set(WordKey(b, '\0') + '\1', PAdicNum::zero(ctx.p));

    for (int m = 0; m <= max_b; ++m) {
        // depth 1 tails e_0^{s-1} e_1, s <= max_weight
        for (int s = 1; s <= max_weight; ++s) {
            WordKey word = WordKey(m, '\0') + '\1' + WordKey(s - 1, '\0') + '\1';
            a.set(word, embed_abs(sigma_rt_d1_partial(ctx, g, m, s), ctx.p, ctx.prec));
        }
        // depth 2 tails
        for (int s1 = 1; s1 <= max_weight - 1; ++s1) {
            for (int s2 = 1; s1 + s2 <= max_weight; ++s2) {
                WordKey word = WordKey(m, '\0') + '\1' + WordKey(s2 - 1, '\0') + '\1' +
                               WordKey(s1 - 1, '\0') + '\1';
                a.set(word, embed_abs(sigma_rt_d2_partial(ctx, g, m, s1, s2), ctx.p, ctx.prec));
            }
        }
    }
    return a;
}

// ---- trailing-e_0 completion and coefficient lookup ----

namespace {

template <class S>
S adjoint_coeff_impl(AdjointCoeffs<S>& a, const WordKey& word, const S& zero_sample)
{
    if (const S* v = a.find(word))
        return *v;
    // words without e_1 vanish for genuine adjoints
    if (word.find('\1') == WordKey::npos)
        return zero_sample;
    size_t k = 0;
    while (k < word.size() && word[word.size() - 1 - k] == '\0')
        ++k;
    if (k == 0) {
        // absent e_1-ending coefficient: exact zero with finite support,
        // certified-small otherwise
        if (a.finite_b_support)
            return zero_sample;
        size_t b = 0;
        while (b < word.size() && word[b] == '\0')
            ++b;
        int tail_weight = static_cast<int>(word.size() - b - 1);
        if constexpr (std::is_same_v<S, PAdicNum>) {
            long fl = a.vfloor ? a.vfloor(static_cast<long>(b), tail_weight) : 0;
            if (fl >= kInfFloor / 2)
                return zero_sample;
            return PAdicNum::inexact_zero(zero_sample.prime(), fl);
        } else {
            return zero_sample;
        }
    }
    // a[v e_0^k] = -(1/k) sum over insertions of e_0 strictly inside v of
    // a[insert(v) e_0^{k-1}] (from a[v e_0^{k-1} sh e_0] = 0)
    WordKey v = word.substr(0, word.size() - k);
    std::optional<S> acc;
    for (size_t i = 0; i < v.size(); ++i) {
        WordKey ins = v.substr(0, i) + '\0' + v.substr(i) + WordKey(k - 1, '\0');
        S term = adjoint_coeff_impl(a, ins, zero_sample);
        if (acc)
            *acc += term;
        else
            acc = term;
    }
    S result = scalar_div_int(-*acc, static_cast<long>(k));
    a.set(word, result);
    return result;
}

} // namespace

Rat adjoint_coeff(AdjointCoeffs<Rat>& a, const WordKey& word)
{
    return adjoint_coeff_impl(a, word, Rat(0));
}

PAdicNum adjoint_coeff(AdjointCoeffs<PAdicNum>& a, const WordKey& word)
{
    unsigned long p = 5;
    if (!a.terms.empty())
        p = a.terms.begin()->second.prime();
    return adjoint_coeff_impl(a, word, PAdicNum::zero(p));
}

AdjointCoeffs<Rat> adjoint_from_series(const NCSeries<Rat>& a_series)
{
    if (a_series.n_roots() != 1)
        throw std::invalid_argument("adjoint_from_series: N = 1 only");
    AdjointCoeffs<Rat> a;
    a.max_b = a_series.max_weight();
    a.max_weight = a_series.max_weight();
    a.finite_b_support = true;
    a.target_prec = kInfFloor;
    a.lift = [](const Rat& x) { return x; };
    for (auto& [w, v] : a_series.terms())
        a.set(w, v);
    return a;
}

// ---- Sigma^DR_inv and the DR-RT action ----

namespace {

template <class S>
long drrt_b_cutoff(const AdjointCoeffs<S>& a, int tail_weight, long target, long slack)
{
    if (a.finite_b_support)
        return a.max_b;
    long b = 0;
    while (b <= kHardCut) {
        if (a.vfloor(b, tail_weight) - slack >= target)
            return b;
        ++b;
    }
    throw std::runtime_error("ihara: adjoint b-tail certification failure");
}

template <class S>
S tail_marker(const AdjointCoeffs<S>& a, long target)
{
    if constexpr (std::is_same_v<S, PAdicNum>) {
        unsigned long p = a.terms.empty() ? 5 : a.terms.begin()->second.prime();
        if (a.finite_b_support)
            return PAdicNum::zero(p);
        return PAdicNum::inexact_zero(p, target);
    } else {
        (void)a;
        (void)target;
        return S(0);
    }
}

} // namespace

template <class S>
std::map<HarmonicWord, S> sigma_dr_inv(AdjointCoeffs<S>& a, int max_weight, int max_depth)
{
    std::map<HarmonicWord, S> out;
    long target = a.target_prec;
    for (const auto& h : all_harmonic_words(1, max_weight, max_depth)) {
        WordKey tail = key_from_word(from_harmonic(h));
        long bc = drrt_b_cutoff(a, h.weight(), target, 0);
        std::optional<S> acc;
        for (long b = 0; b <= bc; ++b) {
            S term = adjoint_coeff(a, WordKey(b, '\0') + '\1' + tail);
            if (acc)
                *acc += term;
            else
                acc = term;
        }
        *acc += tail_marker(a, target);
        out.emplace(h, *acc);
    }
    return out;
}

template <class S>
std::map<HarmonicWord, std::vector<S>> sigma_dr_inv_lambda(AdjointCoeffs<S>& a, int max_weight,
                                                           int max_depth)
{
    std::map<HarmonicWord, std::vector<S>> out;
    for (const auto& h : all_harmonic_words(1, max_weight, max_depth)) {
        WordKey tail = key_from_word(from_harmonic(h));
        std::vector<S> layers;
        for (long b = 0; b <= a.max_b; ++b)
            layers.push_back(adjoint_coeff(a, WordKey(b, '\0') + '\1' + tail));
        out.emplace(h, std::move(layers));
    }
    return out;
}

template <class S>
S act_drrt(AdjointCoeffs<S>& a, const HarmonicSeq& h, long n, const HarmonicWord& w)
{
    if (w.n_roots != 1)
        throw std::invalid_argument("act_drrt: N = 1 only");
    long target = a.target_prec;
    auto lift_rat = [&](const Rat& x) { return a.lift(x); };
    auto lift_h = [&](const HarmonicWord& hw) { return a.lift(rat_of(h(n, widen_loc(hw)))); };
    int d = w.depth();
    if (d == 0)
        return lift_rat(Rat(1));
    if (d == 1) {
        int s = w.s[0];
        WordKey tail = WordKey(s - 1, '\0') + '\1';
        long bc = drrt_b_cutoff(a, s, target, 0);
        S acc = lift_h(w);
        for (long b = 0; b <= bc; ++b)
            acc += lift_rat(rat_pow(Rat(n), s + b)) *
                   adjoint_coeff(a, WordKey(b, '\0') + '\1' + tail);
        acc += tail_marker(a, target);
        return acc;
    }
    if (d == 2) {
        int s1 = w.s[0], s2 = w.s[1];
        WordKey tail2 = WordKey(s2 - 1, '\0') + '\1' + WordKey(s1 - 1, '\0') + '\1';
        S acc = lift_h(w);
        long bc = drrt_b_cutoff(a, s1 + s2, target, 0);
        for (long b = 0; b <= bc; ++b)
            acc += lift_rat(rat_pow(Rat(n), b + s2 + s1)) *
                   adjoint_coeff(a, WordKey(b, '\0') + '\1' + tail2);
        acc += tail_marker(a, target);
        // r2 family: finite, no b-sum
        for (int r2 = 0; r2 < s2; ++r2) {
            WordKey word = WordKey(r2, '\0') + '\1' + WordKey(s1 - 1, '\0') + '\1';
            acc += lift_h(HarmonicWord::plain({s2 - r2})) * lift_rat(rat_pow(Rat(n), r2 + s1)) *
                   adjoint_coeff(a, word);
        }
        // r1 family: trailing-e_0 words
        for (int r1 = 0; r1 < s1; ++r1) {
            long slack = 0;
            if constexpr (std::is_same_v<S, PAdicNum>) {
                unsigned long p = a.terms.empty() ? 5 : a.terms.begin()->second.prime();
                for (int k = 1; k <= r1; ++k)
                    slack += flog(p, k);
            }
            long bc1 = drrt_b_cutoff(a, s2 + r1, target, slack);
            std::optional<S> inner;
            for (long b = 0; b <= bc1; ++b) {
                WordKey word =
                    WordKey(b, '\0') + '\1' + WordKey(s2 - 1, '\0') + '\1' + WordKey(r1, '\0');
                S term = lift_rat(rat_pow(Rat(n), b + s2 + r1)) * adjoint_coeff(a, word);
                if (inner)
                    *inner += term;
                else
                    inner = term;
            }
            *inner += tail_marker(a, target);
            acc += lift_h(HarmonicWord::plain({s1 - r1})) * *inner;
        }
        return acc;
    }
    throw std::invalid_argument("act_drrt: harmonic depth <= 2 only");
}

template std::map<HarmonicWord, Rat> sigma_dr_inv(AdjointCoeffs<Rat>&, int, int);
template std::map<HarmonicWord, PAdicNum> sigma_dr_inv(AdjointCoeffs<PAdicNum>&, int, int);
template std::map<HarmonicWord, std::vector<Rat>> sigma_dr_inv_lambda(AdjointCoeffs<Rat>&, int,
                                                                      int);
template std::map<HarmonicWord, std::vector<PAdicNum>>
sigma_dr_inv_lambda(AdjointCoeffs<PAdicNum>&, int, int);
template Rat act_drrt(AdjointCoeffs<Rat>&, const HarmonicSeq&, long, const HarmonicWord&);
template PAdicNum act_drrt(AdjointCoeffs<PAdicNum>&, const HarmonicSeq&, long,
                           const HarmonicWord&);

// ---- Phi recovery ----

template <class S>
NCSeries<S> recover_phi(const NCSeries<S>& a, int max_weight,
                        const std::function<bool(const WordKey&)>& known,
                        bool allow_underdetermined)
{
    if (a.max_weight() < max_weight + 1)
        throw std::invalid_argument(
            "recover_phi: adjoint data must extend one weight beyond the target truncation");
    auto is_known = [&](const WordKey& w) { return known ? known(w) : true; };
    const S* a1 = a.get(WordKey(1, '\1'));
    if (!a1)
        throw std::invalid_argument("recover_phi: input lacks the e_1 coefficient");
    S one = scalar_one_like(*a1);
    S zero = scalar_exact_zero_like(*a1);

    NCSeries<S> phi(1, max_weight);
    phi.set(WordKey{}, one);
    auto aval = [&](const WordKey& w) -> S {
        const S* v = a.get(w);
        return v ? *v : zero;
    };

    for (int k = 1; k <= max_weight; ++k) {
        std::vector<WordKey> unknowns;
        for (const auto& w : all_word_keys(1, k))
            if (key_weight(w) == k)
                unknowns.push_back(w);
        std::map<WordKey, size_t> index;
        for (size_t i = 0; i < unknowns.size(); ++i)
            index[unknowns[i]] = i;

        std::vector<std::vector<S>> rows;
        std::vector<S> rhs;
        // conjugation equations from words u of weight k+1:
        // [u = e_1 u'] phi[u'] = sum_{u = v w, w nonempty} phi[v] a[w];
        // the cut at |v| = k carries the weight-k unknown phi[v] a[last].
        for (const auto& u : all_word_keys(1, k + 1)) {
            if (key_weight(u) != k + 1)
                continue;
            bool usable = true;
            for (size_t cut = 0; cut + 1 <= u.size(); ++cut)
                if (!is_known(u.substr(cut))) {
                    usable = false;
                    break;
                }
            if (!usable)
                continue;
            std::vector<S> row(unknowns.size(), zero);
            S r = zero;
            if (u.front() == '\1')
                row[index.at(u.substr(1))] += one;
            for (size_t cut = 0; cut + 1 <= u.size(); ++cut) {
                WordKey v = u.substr(0, cut);
                WordKey w = u.substr(cut);
                if (cut == static_cast<size_t>(k)) {
                    row[index.at(v)] -= aval(w); // |w| = 1
                } else {
                    const S* pv = phi.get(v);
                    if (pv)
                        r += *pv * aval(w);
                }
            }
            rows.push_back(std::move(row));
            rhs.push_back(r);
        }
        // shuffle constraints at weight k
        for (const auto& u : all_word_keys(1, k - 1)) {
            if (u.empty())
                continue;
            for (const auto& v : all_word_keys(1, k - key_weight(u))) {
                if (v.empty() || v < u || key_weight(u) + key_weight(v) != k)
                    continue;
                std::vector<S> row(unknowns.size(), zero);
                for (auto& [w, m] : shuffle_words(u, v))
                    row[index.at(w)] += scalar_int_like(one, m);
                const S* pu = phi.get(u);
                const S* pv = phi.get(v);
                S r = (pu && pv) ? *pu * *pv : zero;
                rows.push_back(std::move(row));
                rhs.push_back(r);
            }
        }
        if (k == 1) {
            for (const auto& w : unknowns) {
                std::vector<S> row(unknowns.size(), zero);
                row[index.at(w)] = one;
                rows.push_back(std::move(row));
                rhs.push_back(zero); // phi[e_0] = phi[e_1] = 0
            }
        }

        DenseMatrix<S> m(rows.size(), unknowns.size(), zero);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < unknowns.size(); ++j)
                m.at(i, j) = rows[i][j];
        SolveStatus st;
        auto x = solve_linear(m, rhs, zero, &st);
        if (!x || !st.consistent)
            throw std::runtime_error(
                "recover_phi: inconsistent system at weight " + std::to_string(k) +
                " (input is not the adjoint of a group-like series)");
        if (!st.unique && !allow_underdetermined)
            throw std::runtime_error("recover_phi: underdetermined system at weight " +
                                     std::to_string(k));
        for (size_t j = 0; j < unknowns.size(); ++j)
            phi.set(unknowns[j], (*x)[j]);
    }
    return phi;
}

template NCSeries<Rat> recover_phi(const NCSeries<Rat>&, int,
                                   const std::function<bool(const WordKey&)>&, bool);
template NCSeries<PAdicNum> recover_phi(const NCSeries<PAdicNum>&, int,
                                        const std::function<bool(const WordKey&)>&, bool);

// ---- condition report ----

namespace {

template <class S>
SigmaConditionReport report_impl(const NCSeries<S>& f, const std::function<long(const S&)>& val,
                                 const std::function<long(int, int)>& phi)
{
    SigmaConditionReport rep;
    rep.pi_tilde_ok = true;
    for (unsigned c = 0; c <= f.n_roots(); ++c) {
        const S* v = f.get(WordKey(1, static_cast<char>(c)));
        if (v && !scalar_is_zero(*v))
            rep.pi_tilde_ok = false;
    }
    rep.sigma_ok = true;
    for (auto& [w, v] : f.terms()) {
        if (w.empty() || scalar_is_zero(v))
            continue;
        long req = phi(key_weight(w), key_depth(w));
        long actual = val(v);
        if (actual < req) {
            rep.sigma_ok = false;
            rep.violations.push_back({format_word_key(w, f.n_roots()), req, actual});
        }
    }
    return rep;
}

} // namespace

SigmaConditionReport sigma_condition_report(const NCSeries<PAdicNum>& f,
                                            const std::function<long(int, int)>& phi)
{
    return report_impl<PAdicNum>(
        f, [](const PAdicNum& v) { return v.valuation(); }, phi);
}

SigmaConditionReport sigma_condition_report(const NCSeries<Rat>& f, unsigned long p,
                                            const std::function<long(int, int)>& phi)
{
    return report_impl<Rat>(
        f, [p](const Rat& v) { return padic_valuation(v, p); }, phi);
}

} // namespace cmzv
