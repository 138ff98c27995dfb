#include "cmzv/stuffle.hpp"
#include "cmzv/words.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmzv;

TEST(Words, ParseBasics)
{
    WordWR w = parse_word("0 z1", 1);
    ASSERT_EQ(w.letters.size(), 2u);
    EXPECT_EQ(w.letters[0], (Letter{0, false}));
    EXPECT_EQ(w.letters[1], (Letter{1, false}));
    EXPECT_EQ(weight(w), 2);
    EXPECT_EQ(depth(w), 1);

    WordWR r = parse_word("z1r 0", 1);
    EXPECT_EQ(r.letters[0], (Letter{1, true}));
    EXPECT_EQ(r.letters[1], (Letter{0, false}));
}

TEST(Words, CanonicalFormE0Run)
{
    // e_0^rev e_0 = e_0 e_0^rev, plain first
    WordWR w = parse_word("0r 0 z1", 1);
    ASSERT_EQ(w.letters.size(), 3u);
    EXPECT_EQ(w.letters[0], (Letter{0, false}));
    EXPECT_EQ(w.letters[1], (Letter{0, true}));
    EXPECT_EQ(w.letters[2], (Letter{1, false}));
    EXPECT_EQ(w, parse_word("0 0r z1", 1));
    // idempotent
    EXPECT_EQ(canonicalize(w), w);
}

TEST(Words, ParseErrors)
{
    EXPECT_THROW(parse_word("z3", 2), std::invalid_argument);
    EXPECT_THROW(parse_word("q", 1), std::invalid_argument);
    EXPECT_THROW(parse_word("0^-2", 1), std::invalid_argument); // needs localized grammar
    WordLoc loc = parse_word_loc("0^-2 z1", 1);
    EXPECT_EQ(loc.e0_blocks[0].first, -2);
}

TEST(Words, GrammarShorthands)
{
    // N = 1 shorthand: `1` = z1, `1r` = reversed; exponent blocks expand
    EXPECT_EQ(parse_word("1", 1), parse_word("z1", 1));
    EXPECT_EQ(parse_word("1r", 1), parse_word("z1r", 1));
    EXPECT_EQ(parse_word("0^3 1", 1), parse_word("0 0 0 z1", 1));
    WordLoc loc = parse_word_loc("0^2 0r^-1 z2r 0^1", 2);
    EXPECT_EQ(loc.e0_blocks[0], (std::pair<long, long>{2, -1}));
    EXPECT_EQ(loc.ez[0], (Letter{2, true}));
    EXPECT_EQ(loc.e0_blocks[1], (std::pair<long, long>{1, 0}));
    // format round trips through the grammar
    EXPECT_EQ(parse_word_loc(format_word(loc, 2), 2), loc);
}

TEST(Words, WeightDepthAdditive)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> z(0, 2);
    for (int iter = 0; iter < 50; ++iter) {
        WordWR a, b;
        for (int i = len(rng); i > 0; --i)
            a.letters.push_back(Letter{static_cast<uint8_t>(z(rng)), z(rng) == 0});
        for (int i = len(rng); i > 0; --i)
            b.letters.push_back(Letter{static_cast<uint8_t>(z(rng)), z(rng) == 0});
        a = canonicalize(a);
        b = canonicalize(b);
        WordWR ab = concat(a, b);
        EXPECT_EQ(weight(ab), weight(a) + weight(b));
        EXPECT_EQ(depth(ab), depth(a) + depth(b));
    }
}

TEST(Words, ToHarmonicExamples)
{
    HarmonicWord h = to_harmonic(to_plain(parse_word("0 z1", 1)), 1, 1);
    EXPECT_EQ(h.s, (std::vector<int>{2}));
    EXPECT_EQ(h.depth(), 1);
    EXPECT_EQ(h.weight(), 2);

    HarmonicWord h2 = to_harmonic(to_plain(parse_word("z1 z1", 1)), 1, 1);
    EXPECT_EQ(h2.s, (std::vector<int>{1, 1}));

    EXPECT_THROW(to_harmonic(to_plain(parse_word("z1 0", 1)), 1, 1), std::invalid_argument);
}

TEST(Words, ToHarmonicRoundTripProperty)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> wt(1, 12);
    std::uniform_int_distribution<int> z(1, 4);
    std::uniform_int_distribution<int> zeros(0, 3);
    for (int iter = 0; iter < 100; ++iter) {
        // build a word not ending with e_0
        Word w;
        int target = wt(rng);
        while (weight(w) < target) {
            for (int k = zeros(rng); k > 0 && weight(w) < target - 1; --k)
                w.letters.push_back(Letter{0, false});
            w.letters.push_back(Letter{static_cast<uint8_t>(z(rng)), false});
        }
        int j_outer = z(rng);
        HarmonicWord h = to_harmonic(w, j_outer, 4);
        EXPECT_EQ(from_harmonic(h), w);
        EXPECT_EQ(h.weight(), weight(w));
        EXPECT_EQ(h.depth(), depth(w));
    }
}

TEST(Words, ToHarmonicWrExamples)
{
    // e_0 e_0^rev e_{z_1} -> entry (2, 1)
    HarmonicWordWR h = to_harmonic_wr(parse_word("0 0r z1", 1), 1, 1);
    ASSERT_EQ(h.e.size(), 1u);
    EXPECT_EQ(h.e[0], (std::pair<int, int>{2, 1}));

    // single reversed letter -> (0, 1)
    HarmonicWordWR h2 = to_harmonic_wr(parse_word("z1r", 1), 1, 1);
    EXPECT_EQ(h2.e[0], (std::pair<int, int>{0, 1}));

    // localized e_0^{-2} e_{z_1} -> (-1, 0)
    HarmonicWordLoc h3 = to_harmonic_loc(parse_word_loc("0^-2 z1", 1), 1, 1);
    EXPECT_EQ(h3.e[0], (std::pair<int, int>{-1, 0}));

    EXPECT_THROW(to_harmonic_wr(parse_word("z1 0r", 1), 1, 1), std::invalid_argument);
}

TEST(Words, EtaEncoding)
{
    // N = 1: all eta are 0
    HarmonicWord h1 = HarmonicWord::plain({2, 1});
    EtaWord e1 = eta_encode(h1);
    EXPECT_EQ(e1.eta, (std::vector<int>{0, 0}));

    // N = 4, j = (1, 3): eta_1 = 2
    HarmonicWord h2(4, {1}, {1, 3});
    EtaWord e2 = eta_encode(h2);
    EXPECT_EQ(e2.eta, (std::vector<int>{2}));

    // round trip given j_1
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(1, 3);
    std::uniform_int_distribution<int> j(1, 6);
    for (int iter = 0; iter < 60; ++iter) {
        int depth = d(rng);
        std::vector<int> s, jj;
        for (int i = 0; i < depth; ++i)
            s.push_back(d(rng));
        for (int i = 0; i <= depth; ++i)
            jj.push_back(j(rng));
        HarmonicWord h(6, s, jj);
        EXPECT_EQ(eta_decode(eta_encode(h), h.j.front()), h);
    }
}

TEST(Words, HarmonicGrammar)
{
    HarmonicWordLoc h = parse_harmonic("h[1;2]", 1);
    EXPECT_TRUE(is_plain(h));
    EXPECT_EQ(narrow_plain(h).s, (std::vector<int>{2}));

    HarmonicWordLoc wr = parse_harmonic("h[1,1;1~1]", 1);
    EXPECT_EQ(wr.e[0], (std::pair<int, int>{1, 1}));

    HarmonicWordLoc loc = parse_harmonic("h[1,1,1;-2,3~-1]", 1);
    // outermost-first input: entries stored innermost-first
    EXPECT_EQ(loc.e[0], (std::pair<int, int>{3, -1}));
    EXPECT_EQ(loc.e[1], (std::pair<int, int>{-2, 0}));

    HarmonicWordLoc n4 = parse_harmonic("h[2,3,1;1,1]", 4);
    EXPECT_EQ(n4.j, (std::vector<int>{1, 3, 2}));
    EXPECT_THROW(parse_harmonic("h[1;1,1]", 4), std::invalid_argument);

    // format round trip
    EXPECT_EQ(parse_harmonic(format_harmonic(loc), 1), loc);
}

TEST(Stuffle, DepthOneByOne)
{
    // y_s * y_t = y_s y_t + y_t y_s + y_{s+t}
    HarmonicWord ys = HarmonicWord::plain({2});
    HarmonicWord yt = HarmonicWord::plain({3});
    auto prod = quasi_shuffle(ys, yt);
    EXPECT_EQ(prod.size(), 3u);
    EXPECT_EQ(prod[HarmonicWord::plain({2, 3})], 1);
    EXPECT_EQ(prod[HarmonicWord::plain({3, 2})], 1);
    EXPECT_EQ(prod[HarmonicWord::plain({5})], 1);

    // multiplicity: y_1 * y_1 = 2 y_1 y_1 + y_2
    auto sq = quasi_shuffle(HarmonicWord::plain({1}), HarmonicWord::plain({1}));
    EXPECT_EQ(sq[HarmonicWord::plain({1, 1})], 2);
    EXPECT_EQ(sq[HarmonicWord::plain({2})], 1);
}

TEST(Stuffle, EmptyIsUnit)
{
    HarmonicWord w = HarmonicWord::plain({2, 1});
    auto prod = quasi_shuffle(HarmonicWord{}, w);
    ASSERT_EQ(prod.size(), 1u);
    EXPECT_EQ(prod[w], 1);
}

TEST(Stuffle, WeightGrading)
{
    // every stuffle term has weight = weight(u) + weight(v) and
    // depth <= depth(u) + depth(v)
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> d(1, 3);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<int> s1, s2;
        for (int i = d(rng); i > 0; --i)
            s1.push_back(d(rng));
        for (int i = d(rng); i > 0; --i)
            s2.push_back(d(rng));
        HarmonicWord u = HarmonicWord::plain(s1), v = HarmonicWord::plain(s2);
        for (auto& [w, m] : quasi_shuffle(u, v)) {
            EXPECT_EQ(w.weight(), u.weight() + v.weight());
            EXPECT_LE(w.depth(), u.depth() + v.depth());
            EXPECT_GT(m, 0);
        }
    }
}
