#include "cmzv/relations.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmzv;

namespace {

NCSeries<Rat> unit(int W)
{
    NCSeries<Rat> f(1, W);
    f.set(WordKey{}, Rat(1));
    return f;
}

NCSeries<Rat> letter(int W, char x, Rat c = Rat(1))
{
    NCSeries<Rat> f(1, W);
    f.set(WordKey(1, x), c);
    return f;
}

} // namespace

TEST(Relations, CheckShuffle)
{
    // exp(c e_0 + c' e_1) is group-like
    NCSeries<Rat> f = exp_concat(letter(4, '\0', Rat(1, 2)) + letter(4, '\1', Rat(-2, 3)));
    EXPECT_TRUE(check_shuffle(f).ok());
    EXPECT_TRUE(check_shuffle(unit(4)).ok());
    // 1 + e_0 e_1 fails with witness (e_0, e_1)
    NCSeries<Rat> bad = unit(4);
    bad.set(WordKey("\0\1", 2), Rat(1));
    RelationReport rep = check_shuffle(bad);
    EXPECT_FALSE(rep.ok());
    EXPECT_NE(rep.witness.find("0"), std::string::npos);
    EXPECT_NE(rep.to_json().find("fails"), std::string::npos);
}

TEST(Relations, CheckQuasiShuffleExact)
{
    // har-backed coefficients satisfy the stuffle exactly
    for (long n : {2L, 9L, 40L}) {
        auto eval = [n](const HarmonicWord& w) { return frak_h(n, w); };
        EXPECT_TRUE(check_quasi_shuffle<CycRat>(eval, 1, 5, 3, true).ok()) << n;
    }
    // zero map on nonempty words holds trivially
    auto zero_eval = [](const HarmonicWord& w) {
        return w.depth() == 0 ? CycRat(Rat(1)) : CycRat(Rat(0));
    };
    EXPECT_TRUE(check_quasi_shuffle<CycRat>(zero_eval, 1, 4, 2, true).ok());
    // a broken map fails with witness
    auto broken = [](const HarmonicWord& w) { return CycRat(Rat(w.weight() + 1)); };
    RelationReport rep = check_quasi_shuffle<CycRat>(broken, 1, 4, 2, true);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.witness.empty());
}

TEST(Relations, CheckQuasiShufflePadicEmbedded)
{
    long n = 9;
    auto eval = [n](const HarmonicWord& w) {
        return embed_abs(frak_h(n, w).rational_part(), 7, 6);
    };
    EXPECT_TRUE(check_quasi_shuffle<PAdicNum>(eval, 1, 5, 3, false).ok());
    // N = 2 through the Teichmueller embedding (2 | 5 - 1, xi_2 -> omega(4) = -1)
    auto eval2 = [](const HarmonicWord& w) { return embed(frak_h(25, w), 5, 6, 4); };
    EXPECT_TRUE(check_quasi_shuffle<PAdicNum>(eval2, 2, 4, 2, false).ok());
}

TEST(Relations, AdjointQuasiShuffleSynthetic)
{
    // a = e_1 only: both sides vanish for b >= 1
    NCSeries<Rat> aser(1, 6);
    aser.set(WordKey(1, '\1'), Rat(1));
    auto a = adjoint_from_series(aser);
    EXPECT_TRUE(check_adjoint_quasi_shuffle(a, 6, true).ok());
}

TEST(Relations, CommutantKernel)
{
    RelationReport rep2 = check_commutant(2);
    EXPECT_TRUE(rep2.ok());
    EXPECT_NE(rep2.witness.find("kernel-dim=6"), std::string::npos);
    EXPECT_TRUE(check_commutant(3).ok());
    // e_0 tensor 1 is not in the commutant: the equation at the pair
    // (e_1 e_0, empty) evaluates to 1 on that unit vector
    // (checked implicitly by the full-kernel verdict above)
}

TEST(Relations, Prop73Agreement)
{
    // f = exp(e_0): group-like, all three hold
    NCSeries<Rat> f = exp_concat(letter(4, '\0'));
    Prop73Report r = check_prop73(f);
    EXPECT_TRUE(r.a_group_like);
    EXPECT_TRUE(r.b_adjoint_primitive);
    EXPECT_TRUE(r.cprime_harmonic_system);

    // f = 1: all hold
    Prop73Report r1 = check_prop73(unit(4));
    EXPECT_TRUE(r1.agree() && r1.a_group_like);

    // perturbed at weight 3: all three fail together
    std::mt19937_64 rng(73);
    NCSeries<Rat> g = random_group_like(4, rng, true);
    g.add(WordKey("\0\0\1", 3), Rat(1, 7));
    Prop73Report r2 = check_prop73(g);
    EXPECT_FALSE(r2.a_group_like);
    EXPECT_FALSE(r2.b_adjoint_primitive);
    EXPECT_FALSE(r2.cprime_harmonic_system);

    // precondition enforced
    EXPECT_THROW(check_prop73(exp_concat(letter(4, '\1'))), std::invalid_argument);
}

TEST(Relations, Prop73RandomizedAgreement)
{
    std::mt19937_64 rng(79);
    for (int i = 0; i < 12; ++i) {
        NCSeries<Rat> f = random_group_like(5, rng, true);
        if (i % 3 == 1)
            f.add(WordKey("\0\1\0", 3), Rat(i + 1, 3));
        Prop73Report r = check_prop73(f);
        EXPECT_TRUE(r.agree()) << "instance " << i << ": " << r.a_group_like << "/"
                               << r.b_adjoint_primitive << "/" << r.cprime_harmonic_system;
    }
}

TEST(Relations, Depth11Equivalence)
{
    std::mt19937_64 rng(83);
    // group-likes: both sides hold (the f-side with the zeta-sign reading)
    for (int i = 0; i < 8; ++i) {
        NCSeries<Rat> f = random_group_like(5, rng, i % 2 == 0);
        Depth11Report r = check_depth11_equivalence(f);
        EXPECT_TRUE(r.agree()) << i;
    }
    // f = 1 and exp of a primitive
    EXPECT_TRUE(check_depth11_equivalence(unit(4)).agree());
    Depth11Report re = check_depth11_equivalence(exp_concat(letter(4, '\1', Rat(2))));
    EXPECT_TRUE(re.agree());
    EXPECT_TRUE(re.f_side);
}

TEST(Relations, PrimeHarmonicDuality)
{
    // the identity solution satisfies the source equation and the duality
    DualityReport r1 = check_prime_harmonic_duality(unit(4));
    EXPECT_TRUE(r1.source_holds);
    EXPECT_TRUE(r1.duality_holds);

    std::mt19937_64 rng(89);
    for (int i = 0; i < 3; ++i) {
        NCSeries<Rat> f = random_duality_source(4, rng);
        EXPECT_TRUE(is_group_like(f)) << i;
        DualityReport r = check_prime_harmonic_duality(f);
        EXPECT_TRUE(r.source_holds) << i;
        EXPECT_TRUE(r.duality_holds) << i;
    }
    // a random group-like does not satisfy the source equation, and the
    // duality detects it
    NCSeries<Rat> g = random_group_like(4, rng, true);
    DualityReport rg = check_prime_harmonic_duality(g);
    EXPECT_TRUE(rg.agree());
}

TEST(Relations, RankIndependence)
{
    // {y_1}, degree 1, n <= 10: full rank (H_{n-1} is not a polynomial)
    RelationReport r1 = rank_independence({HarmonicWord::plain({1})}, 10, 1);
    EXPECT_TRUE(r1.ok());
    // {empty}, degree 0 -> rank 1
    RelationReport r2 = rank_independence({HarmonicWord{}}, 5, 0);
    EXPECT_TRUE(r2.ok());
    EXPECT_NE(r2.witness.find("rank=1/1"), std::string::npos);
    // underdetermined is an error, not a guess
    EXPECT_THROW(rank_independence(all_harmonic_words(1, 4, 2), 5, 2), std::invalid_argument);
}
