// Acceptance suite: one test per criterion, each printing a pass/fail line
// with its runtime. All tolerances are pinned here, in code.

#include "cmzv/io.hpp"
#include "cmzv/pmzv.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <iostream>

using namespace cmzv;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool failed = false;

    Criterion(int id_, std::string label_) : id(id_), label(std::move(label_)) {}
    void finish()
    {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "[criterion " << id << "] " << (failed ? "FAIL" : "PASS") << " (" << secs
                  << " s) " << label << "\n";
    }
};

#define CRIT_EXPECT(crit, cond, msg)                                                            \
    do {                                                                                        \
        if (!(cond)) {                                                                          \
            (crit).failed = true;                                                               \
            ADD_FAILURE() << msg;                                                               \
        }                                                                                       \
    } while (0)

// Fused reversal word of the hyperlogarithm product (innermost-first):
// (s_1,0), ..., (s_{d-1},0), (s_d, t_{d'}), (0, t_{d'-1}), ..., (0, t_1).
HarmonicWordWR fuse_reversal(const HarmonicWord& w1, const HarmonicWord& w2)
{
    std::vector<std::pair<int, int>> e;
    for (size_t i = 0; i + 1 < w1.s.size(); ++i)
        e.emplace_back(w1.s[i], 0);
    e.emplace_back(w1.s.back(), w2.s.back());
    for (size_t i = w2.s.size() - 1; i-- > 0;)
        e.emplace_back(0, w2.s[i]);
    return HarmonicWordWR::plain(std::move(e));
}

} // namespace

TEST(Acceptance, C01_StuffleOracle)
{
    Criterion crit(1, "stuffle oracle: frak_h_n(w) frak_h_n(w') = frak_h_n(w * w') exactly, "
                      "n <= 40, combined depth <= 3 / weight <= 6, N in {1,2,4}");
    const long n_max = 40;
    const int max_weight = 6, max_depth = 3;
    for (unsigned N : {1u, 2u, 4u}) {
        auto tables = frak_h_tables_upto(n_max, N, max_weight, max_depth);
        auto words = all_harmonic_words(N, max_weight - 1, max_depth - 1);
        for (const auto& w1 : words) {
            for (const auto& w2 : words) {
                if (w2 < w1)
                    continue;
                if (w1.weight() + w2.weight() > max_weight ||
                    w1.depth() + w2.depth() > max_depth)
                    continue;
                auto prod = quasi_shuffle(w1, w2);
                for (long n = 1; n <= n_max; ++n) {
                    const auto& tab = tables[n];
                    CycRat lhs = tab.at(w1) * tab.at(w2);
                    CycRat rhs(N);
                    for (auto& [w, m] : prod)
                        rhs += tab.at(w) * CycRat(N, Rat(m));
                    if (lhs != rhs) {
                        CRIT_EXPECT(crit, false,
                                    "stuffle fails at N=" << N << " n=" << n << " w="
                                                          << format_harmonic(w1) << " w'="
                                                          << format_harmonic(w2));
                        n = n_max;
                    }
                }
            }
        }
    }
    crit.finish();
}

TEST(Acceptance, C02_LiReversalBridge)
{
    Criterion crit(2, "hyperlogarithm product coefficients equal reversal sums exactly, "
                      "weights <= 4, n <= 30");
    const long n_max = 30;
    auto words = all_harmonic_words(1, 4, 4);
    std::map<HarmonicWord, Word> as_word;
    for (const auto& h : words)
        as_word[h] = from_harmonic(h);
    for (const auto& w1 : words) {
        for (const auto& w2 : words) {
            HarmonicWordWR fused = fuse_reversal(w1, w2);
            for (long n = 1; n <= n_max; ++n) {
                Rat lhs = 0;
                for (long m = 0; m <= n; ++m)
                    lhs += li_coeff(as_word[w1], m).rational_part() *
                           li_coeff(as_word[w2], n - m).rational_part();
                Rat rhs = frak_h(n, fused).rational_part();
                if (lhs != rhs) {
                    CRIT_EXPECT(crit, false,
                                "bridge fails at n=" << n << " w1=" << format_harmonic(w1)
                                                     << " w2=" << format_harmonic(w2));
                    n = n_max;
                }
            }
        }
    }
    crit.finish();
}

TEST(Acceptance, C03_ReversalReduction)
{
    Criterion crit(3, "reversal reduction at prime powers: binomial series equals the exact "
                      "value mod p^6, p in {5,7}, alpha in {1,2}, weight <= 4");
    for (unsigned long p : {5ul, 7ul}) {
        for (int alpha : {1, 2}) {
            PrecCtx ctx{p, alpha, 6};
            long q = ctx.p_pow_alpha();
            std::vector<HarmonicWordWR> words;
            for (int s = 0; s <= 4; ++s)
                for (int sp = (s == 0 ? 1 : 0); s + sp <= 4; ++sp)
                    words.push_back(HarmonicWordWR::plain({{s, sp}}));
            for (int s1 = 0; s1 <= 4; ++s1)
                for (int sp1 = (s1 == 0 ? 1 : 0); s1 + sp1 <= 4; ++sp1)
                    for (int s2 = 0; s1 + sp1 + s2 <= 4; ++s2)
                        for (int sp2 = (s2 == 0 ? 1 : 0); s1 + sp1 + s2 + sp2 <= 4; ++sp2)
                            words.push_back(HarmonicWordWR::plain({{s1, sp1}, {s2, sp2}}));
            for (const auto& w : words) {
                PAdicNum lhs = embed_abs(har(q, w).rational_part(), p, 6);
                PAdicNum rhs = prop314_reduce(ctx, widen(w));
                CRIT_EXPECT(crit, (lhs - rhs).is_zero(),
                            "p=" << p << " alpha=" << alpha << " w=" << format_harmonic(w));
            }
        }
    }
    crit.finish();
}

TEST(Acceptance, C04_RtActionReproducesExactValues)
{
    Criterion crit(4, "RT action reproduces exact har_{p^alpha n} mod p^6: depth <= 2, "
                      "weight <= 5, n <= 20, p in {5,7}, alpha in {1,2}; reversal words "
                      "to weight 4");
    HarmonicSeq h = HarmonicSeq::har_seq();
    auto plain_words = all_harmonic_words(1, 5, 2);
    std::vector<HarmonicWordWR> wr_words;
    for (int s = 0; s <= 4; ++s)
        for (int sp = (s == 0 ? 1 : 0); s + sp <= 4; ++sp)
            if (sp > 0)
                wr_words.push_back(HarmonicWordWR::plain({{s, sp}}));
    wr_words.push_back(HarmonicWordWR::plain({{1, 1}, {1, 0}}));
    wr_words.push_back(HarmonicWordWR::plain({{1, 0}, {0, 2}}));
    wr_words.push_back(HarmonicWordWR::plain({{0, 1}, {1, 1}}));
    for (unsigned long p : {5ul, 7ul}) {
        for (int alpha : {1, 2}) {
            PrecCtx ctx{p, alpha, 6};
            GSystem g = g_har(ctx);
            long q = ctx.p_pow_alpha();
            for (long n = 1; n <= 20 && !crit.failed; ++n) {
                for (const auto& w : plain_words) {
                    PAdicNum lhs = act_rt(ctx, g, h, n, w);
                    PAdicNum rhs = embed_abs(har(q * n, w).rational_part(), p, 6);
                    CRIT_EXPECT(crit, (lhs - rhs).is_zero(),
                                "plain p=" << p << " alpha=" << alpha << " n=" << n
                                           << " w=" << format_harmonic(w));
                    if (crit.failed)
                        break;
                }
                for (const auto& w : wr_words) {
                    PAdicNum lhs = act_rt_wr(ctx, g, h, n, w);
                    PAdicNum rhs = embed_abs(har(q * n, w).rational_part(), p, 6);
                    CRIT_EXPECT(crit, (lhs - rhs).is_zero(),
                                "wr p=" << p << " alpha=" << alpha << " n=" << n
                                        << " w=" << format_harmonic(w));
                    if (crit.failed)
                        break;
                }
            }
        }
    }
    crit.finish();
}

TEST(Acceptance, C05_ComparisonMapCoherence)
{
    Criterion crit(5, "Sigma^DR_inv . Sigma^RT = id on har_{p^alpha} and the action "
                      "factorization, depth <= 2 mod p^6");
    HarmonicSeq h = HarmonicSeq::har_seq();
    for (unsigned long p : {5ul, 7ul}) {
        for (int alpha : {1, 2}) {
            PrecCtx ctx{p, alpha, 6};
            GSystem g = g_har(ctx);
            auto a = sigma_rt(ctx, g, 18, 5);
            long q = ctx.p_pow_alpha();
            auto back = sigma_dr_inv(a, 4, 2);
            for (auto& [w, v] : back) {
                PAdicNum exact = embed_abs(har(q, w).rational_part(), p, v.abs_precision());
                CRIT_EXPECT(crit, (v - exact).is_zero(),
                            "round trip p=" << p << " alpha=" << alpha
                                            << " w=" << format_harmonic(w));
            }
            if (alpha == 1) {
                for (long n : {1L, 2L, 3L, 5L, 7L}) {
                    for (const auto& w : all_harmonic_words(1, 4, 2)) {
                        PAdicNum lhs = act_drrt(a, h, n, w);
                        PAdicNum rhs = act_rt(ctx, g, h, n, w);
                        CRIT_EXPECT(crit, (lhs - rhs).is_zero(),
                                    "factorization p=" << p << " n=" << n
                                                       << " w=" << format_harmonic(w));
                    }
                }
            }
        }
    }
    crit.finish();
}

TEST(Acceptance, C06_BQuasiShuffle)
{
    Criterion crit(6, "B-coefficient quasi-shuffle, 0 <= l1,l2 <= 6, all admissible b "
                      "(b = 0 terms included); decomposition oracle to n <= 30");
    BTable& bt = global_btable();
    for (int l1 = 0; l1 <= 6; ++l1) {
        for (int l2 = 0; l2 <= 6; ++l2) {
            for (int b = 0; b <= l1 + l2 + 2; ++b) {
                Rat lhs =
                    bt.b_coeff(b, {l1 + l2}) + bt.b_coeff(b, {l1, l2}) + bt.b_coeff(b, {l2, l1});
                Rat rhs = 0;
                for (int bp = 0; bp <= b; ++bp)
                    rhs += bt.b_coeff(bp, {l1}) * bt.b_coeff(b - bp, {l2});
                CRIT_EXPECT(crit, lhs == rhs, "b=" << b << " l1=" << l1 << " l2=" << l2);
            }
        }
    }
    std::vector<std::vector<int>> tuples{{0},    {3},     {6},     {1, 2},    {2, -1},
                                         {-2, 4}, {0, 0},  {4, -3}, {1, 1, 1}, {-1, 0, 2}};
    for (const auto& lam : tuples)
        for (long n = 1; n <= 30; ++n)
            CRIT_EXPECT(crit, bt.evaluate(n, lam) == BTable::direct_sum(n, lam),
                        "decomposition oracle at n=" << n);
    crit.finish();
}

TEST(Acceptance, C07_AdjointQuasiShuffle)
{
    Criterion crit(7, "adjoint quasi-shuffle for Sigma^RT(har_5): s1+s2+b <= 6, mod 5^5");
    PrecCtx ctx{5, 1, 5};
    auto a = sigma_rt(ctx, g_har(ctx), 6 + 8, 6);
    RelationReport rep = check_adjoint_quasi_shuffle(a, 6, false, "p=5 alpha=1");
    CRIT_EXPECT(crit, rep.ok(), rep.witness);
    crit.finish();
}

TEST(Acceptance, C08_TheoremATriple)
{
    Criterion crit(8, "triple stuffle report: h, acted h (mod 5^5), and the adjoint side "
                      "for g = Sigma^RT(har_5)");
    PrecCtx ctx{5, 1, 5};
    GSystem g = g_har(ctx);
    auto a = sigma_rt(ctx, g, 14, 6);
    HarmonicSeq h = HarmonicSeq::har_seq();
    for (long n = 2; n <= 6; ++n) {
        auto eval_h = [&](const HarmonicWord& w) { return h(n, w); };
        RelationReport r1 = check_quasi_shuffle<CycRat>(eval_h, 1, 4, 2, true);
        CRIT_EXPECT(crit, r1.ok(), "h stuffle at n=" << n << ": " << r1.witness);
        auto eval_acted = [&](const HarmonicWord& w) { return act_drrt(a, h, n, w); };
        RelationReport r2 = check_quasi_shuffle<PAdicNum>(eval_acted, 1, 4, 2, false);
        CRIT_EXPECT(crit, r2.ok(), "acted stuffle at n=" << n << ": " << r2.witness);
    }
    RelationReport r3 = check_adjoint_quasi_shuffle(a, 6, false);
    CRIT_EXPECT(crit, r3.ok(), "adjoint stuffle: " << r3.witness);
    crit.finish();
}

TEST(Acceptance, C09_Section7Suite)
{
    Criterion crit(9, "commutant kernel at W <= 5; three-way equivalence and depth-(1,1) "
                      "equivalence on 50 randomized group-likes at W <= 5");
    for (int W = 2; W <= 5; ++W) {
        RelationReport rep = check_commutant(W);
        CRIT_EXPECT(crit, rep.ok(), "commutant W=" << W << ": " << rep.witness);
    }
    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 50; ++i) {
        bool perturbed = i % 4 == 3;
        NCSeries<Rat> f = random_group_like(5, rng, true);
        if (perturbed)
            f.add(WordKey("\0\1\0", 3), Rat(i + 1, 2)); // off the group
        Prop73Report r = check_prop73(f);
        CRIT_EXPECT(crit, r.agree(),
                    "prop73 disagreement at instance "
                        << i << ": " << r.a_group_like << "/" << r.b_adjoint_primitive << "/"
                        << r.cprime_harmonic_system);
        CRIT_EXPECT(crit, r.a_group_like != perturbed, "unexpected verdict at " << i);
        if (!perturbed) { // the depth-(1,1) statement assumes a point of Pi
            Depth11Report d = check_depth11_equivalence(f);
            CRIT_EXPECT(crit, d.agree(), "depth-(1,1) disagreement at instance " << i);
        }
    }
    crit.finish();
}

TEST(Acceptance, C10_Section8Suite)
{
    Criterion crit(10, "overconvergent series at p=5, alpha=1, W=4, z-degree 40: group-like "
                       "per z-degree / convolution shuffle mod 5^4");
    FrobeniusConfig cfg;
    cfg.p = 5;
    cfg.alpha = 1;
    cfg.prec = 4;
    cfg.max_weight = 4;
    cfg.z_degree = 40;
    ZSeries li = compute_li_dagger(cfg);
    RelationReport rep = check_li_dagger_shuffle(li, 4, 40);
    CRIT_EXPECT(crit, rep.ok(), rep.witness);
    crit.finish();
}

TEST(Acceptance, C11_IndependenceShadow)
{
    Criterion crit(11, "full column rank for depth <= 2, weight <= 4 words with polynomial "
                       "coefficients of degree <= 2 over n <= 60, exact arithmetic");
    auto words = all_harmonic_words(1, 4, 2);
    RelationReport rep = rank_independence(words, 60, 2);
    CRIT_EXPECT(crit, rep.ok(), rep.witness);
    crit.finish();
}
