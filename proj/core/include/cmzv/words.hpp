#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cmzv {

/// Letter of the doubled alphabet: z = 0 is e_0, z = j in 1..N is e_{z_j};
/// rev marks the reversed copy.
struct Letter {
    uint8_t z = 0;
    bool rev = false;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Plain word over e_Z (no reversed letters).
struct Word {
    std::vector<Letter> letters;

    friend auto operator<=>(const Word&, const Word&) = default;
};

/// Word with reversals, kept in canonical form: inside every maximal run of
/// e_0-letters the plain ones precede the reversed ones (the relation
/// e_0 e_0^rev = e_0^rev e_0, left-normalized).
struct WordWR {
    std::vector<Letter> letters;

    friend auto operator<=>(const WordWR&, const WordWR&) = default;
};

/// Localized word: alternating e_0-exponent pairs (u plain, u' reversed) and
/// e_Z-letters; e0_blocks.size() == ez.size() + 1, blocks and letters read
/// left to right (outermost first).
struct WordLoc {
    std::vector<std::pair<long, long>> e0_blocks;
    std::vector<Letter> ez;

    friend auto operator<=>(const WordLoc&, const WordLoc&) = default;
};

WordWR canonicalize(WordWR w);
WordWR concat(const WordWR& a, const WordWR& b);

int weight(const Word& w);
int depth(const Word& w);
int weight(const WordWR& w);
int depth(const WordWR& w);

bool is_plain(const WordWR& w);
Word to_plain(const WordWR& w);
WordWR from_plain(const Word& w);

/// Harmonic word (z_{j_{d+1}}, ..., z_{j_1}; s_d, ..., s_1), stored
/// innermost-first: s[0] = s_1 and j[0] = j_1, with j of length d+1.
/// The empty word has s empty and j = {N} (the trivial root).
struct HarmonicWord {
    unsigned n_roots = 1;
    std::vector<int> s;
    std::vector<int> j;

    HarmonicWord() : j{1} {}
    HarmonicWord(unsigned n, std::vector<int> s_, std::vector<int> j_)
        : n_roots(n), s(std::move(s_)), j(std::move(j_)) {}
    /// N = 1 convenience: exponents only, innermost-first.
    static HarmonicWord plain(std::vector<int> s_);

    int depth() const { return static_cast<int>(s.size()); }
    int weight() const;

    friend auto operator<=>(const HarmonicWord&, const HarmonicWord&) = default;
};

/// Harmonic word with reversals: entries (s_i, s'_i) of non-negative
/// integers, (0,0) excluded; weight is the sum of all entries.
struct HarmonicWordWR {
    unsigned n_roots = 1;
    std::vector<std::pair<int, int>> e;
    std::vector<int> j;

    HarmonicWordWR() : j{1} {}
    HarmonicWordWR(unsigned n, std::vector<std::pair<int, int>> e_, std::vector<int> j_)
        : n_roots(n), e(std::move(e_)), j(std::move(j_)) {}
    static HarmonicWordWR plain(std::vector<std::pair<int, int>> e_);

    int depth() const { return static_cast<int>(e.size()); }
    int weight() const;

    friend auto operator<=>(const HarmonicWordWR&, const HarmonicWordWR&) = default;
};

/// Localized harmonic word with reversals: entries are arbitrary integer
/// pairs; weight may be negative; depth stays positional.
struct HarmonicWordLoc {
    unsigned n_roots = 1;
    std::vector<std::pair<int, int>> e;
    std::vector<int> j;

    HarmonicWordLoc() : j{1} {}
    HarmonicWordLoc(unsigned n, std::vector<std::pair<int, int>> e_, std::vector<int> j_)
        : n_roots(n), e(std::move(e_)), j(std::move(j_)) {}
    static HarmonicWordLoc plain(std::vector<std::pair<int, int>> e_);

    int depth() const { return static_cast<int>(e.size()); }
    int weight() const;

    friend auto operator<=>(const HarmonicWordLoc&, const HarmonicWordLoc&) = default;
};

HarmonicWordWR widen(const HarmonicWord& h);
HarmonicWordLoc widen(const HarmonicWordWR& h);
HarmonicWordLoc widen_loc(const HarmonicWord& h);

/// True when every entry is (s, 0) with s >= 1.
bool is_plain(const HarmonicWordWR& h);
bool is_plain(const HarmonicWordLoc& h);
bool is_wr(const HarmonicWordLoc& h);
HarmonicWord narrow_plain(const HarmonicWordLoc& h);
HarmonicWordWR narrow_wr(const HarmonicWordLoc& h);

/// Ratio form of a harmonic word: entries (s_i, eta_i) with
/// eta_i = j_{i+1} - j_i (mod N), innermost-first; j_1 is not stored.
struct EtaWord {
    unsigned n_roots = 1;
    std::vector<int> s;
    std::vector<int> eta;

    int depth() const { return static_cast<int>(s.size()); }
    int weight() const;

    friend auto operator<=>(const EtaWord&, const EtaWord&) = default;
};

EtaWord eta_encode(const HarmonicWord& h);
HarmonicWord eta_decode(const EtaWord& e, int j1);

/// e_0^{s_d-1} e_{z_{j_d}} ... e_0^{s_1-1} e_{z_{j_1}}  <->  (s; j) with
/// j_{d+1} supplied by the caller. Words ending in e_0 are rejected.
HarmonicWord to_harmonic(const Word& w, int j_outer, unsigned n_roots = 1);
Word from_harmonic(const HarmonicWord& h);

HarmonicWordWR to_harmonic_wr(const WordWR& w, int j_outer, unsigned n_roots = 1);
WordWR from_harmonic_wr(const HarmonicWordWR& h);

HarmonicWordLoc to_harmonic_loc(const WordLoc& w, int j_outer, unsigned n_roots = 1);

/// Word grammar (whitespace-separated letters): `0`, `0r`, `z<j>`, `z<j>r`,
/// exponent blocks `0^<int>` / `0r^<int>`; for N = 1 the shorthand `1` (and
/// `1r`) is accepted for `z1`. Errors carry the offending position.
WordWR parse_word(const std::string& text, unsigned n_roots);
WordLoc parse_word_loc(const std::string& text, unsigned n_roots);

std::string format_word(const Word& w, unsigned n_roots = 1);
std::string format_word(const WordWR& w, unsigned n_roots = 1);
std::string format_word(const WordLoc& w, unsigned n_roots = 1);

/// Harmonic grammar: `h[j_{d+1},...,j_1 ; s_d,...,s_1]` with reversal
/// entries `s~s'` and (for the localized form) negative entries. For
/// N = 1 the j-list may be shortened or omitted (`h[;2,1]`, `h[1;2]`).
HarmonicWordLoc parse_harmonic(const std::string& text, unsigned n_roots);

std::string format_harmonic(const HarmonicWord& h);
std::string format_harmonic(const HarmonicWordWR& h);
std::string format_harmonic(const HarmonicWordLoc& h);

} // namespace cmzv
