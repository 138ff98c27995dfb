#include "cmzv/words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmzv {

namespace {

int mod_root(long x, unsigned n)
{
    long m = static_cast<long>(n);
    long r = ((x % m) + m) % m; // 0..N-1
    return static_cast<int>(r == 0 ? m : r); // 1..N
}

[[noreturn]] void parse_fail(const std::string& what, size_t pos)
{
    std::ostringstream os;
    os << "parse error at position " << pos << ": " << what;
    throw std::invalid_argument(os.str());
}

} // namespace

WordWR canonicalize(WordWR w)
{
    auto& ls = w.letters;
    size_t i = 0;
    while (i < ls.size()) {
        if (ls[i].z != 0) {
            ++i;
            continue;
        }
        size_t jend = i;
        size_t plain = 0;
        while (jend < ls.size() && ls[jend].z == 0) {
            if (!ls[jend].rev)
                ++plain;
            ++jend;
        }
        for (size_t k = i; k < jend; ++k)
            ls[k] = Letter{0, k - i >= plain};
        i = jend;
    }
    return w;
}

WordWR concat(const WordWR& a, const WordWR& b)
{
    WordWR r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return canonicalize(std::move(r));
}

int weight(const Word& w) { return static_cast<int>(w.letters.size()); }

int depth(const Word& w)
{
    return static_cast<int>(std::count_if(w.letters.begin(), w.letters.end(),
                                          [](const Letter& l) { return l.z != 0; }));
}

int weight(const WordWR& w) { return static_cast<int>(w.letters.size()); }

int depth(const WordWR& w)
{
    return static_cast<int>(std::count_if(w.letters.begin(), w.letters.end(),
                                          [](const Letter& l) { return l.z != 0; }));
}

bool is_plain(const WordWR& w)
{
    return std::none_of(w.letters.begin(), w.letters.end(),
                        [](const Letter& l) { return l.rev; });
}

Word to_plain(const WordWR& w)
{
    if (!is_plain(w))
        throw std::invalid_argument("to_plain: word contains reversed letters");
    return Word{w.letters};
}

WordWR from_plain(const Word& w) { return WordWR{w.letters}; }

HarmonicWord HarmonicWord::plain(std::vector<int> s_)
{
    HarmonicWord h;
    h.s = std::move(s_);
    h.j.assign(h.s.size() + 1, 1);
    return h;
}

int HarmonicWord::weight() const
{
    int w = 0;
    for (int x : s)
        w += x;
    return w;
}

HarmonicWordWR HarmonicWordWR::plain(std::vector<std::pair<int, int>> e_)
{
    HarmonicWordWR h;
    h.e = std::move(e_);
    h.j.assign(h.e.size() + 1, 1);
    return h;
}

int HarmonicWordWR::weight() const
{
    int w = 0;
    for (auto [a, b] : e)
        w += a + b;
    return w;
}

HarmonicWordLoc HarmonicWordLoc::plain(std::vector<std::pair<int, int>> e_)
{
    HarmonicWordLoc h;
    h.e = std::move(e_);
    h.j.assign(h.e.size() + 1, 1);
    return h;
}

int HarmonicWordLoc::weight() const
{
    int w = 0;
    for (auto [a, b] : e)
        w += a + b;
    return w;
}

HarmonicWordWR widen(const HarmonicWord& h)
{
    HarmonicWordWR r;
    r.n_roots = h.n_roots;
    r.j = h.j;
    r.e.reserve(h.s.size());
    for (int x : h.s)
        r.e.emplace_back(x, 0);
    return r;
}

HarmonicWordLoc widen(const HarmonicWordWR& h)
{
    HarmonicWordLoc r;
    r.n_roots = h.n_roots;
    r.j = h.j;
    r.e = h.e;
    return r;
}

HarmonicWordLoc widen_loc(const HarmonicWord& h) { return widen(widen(h)); }

bool is_plain(const HarmonicWordWR& h)
{
    return std::all_of(h.e.begin(), h.e.end(),
                       [](auto p) { return p.first >= 1 && p.second == 0; });
}

bool is_plain(const HarmonicWordLoc& h)
{
    return std::all_of(h.e.begin(), h.e.end(),
                       [](auto p) { return p.first >= 1 && p.second == 0; });
}

bool is_wr(const HarmonicWordLoc& h)
{
    return std::all_of(h.e.begin(), h.e.end(), [](auto p) {
        return p.first >= 0 && p.second >= 0 && (p.first != 0 || p.second != 0);
    });
}

HarmonicWord narrow_plain(const HarmonicWordLoc& h)
{
    if (!is_plain(h))
        throw std::invalid_argument("narrow_plain: word is not plain");
    HarmonicWord r;
    r.n_roots = h.n_roots;
    r.j = h.j;
    r.s.reserve(h.e.size());
    for (auto [a, b] : h.e) {
        (void)b;
        r.s.push_back(a);
    }
    return r;
}

HarmonicWordWR narrow_wr(const HarmonicWordLoc& h)
{
    if (!is_wr(h))
        throw std::invalid_argument("narrow_wr: word has negative entries");
    HarmonicWordWR r;
    r.n_roots = h.n_roots;
    r.j = h.j;
    r.e = h.e;
    return r;
}

int EtaWord::weight() const
{
    int w = 0;
    for (int x : s)
        w += x;
    return w;
}

EtaWord eta_encode(const HarmonicWord& h)
{
    EtaWord e;
    e.n_roots = h.n_roots;
    e.s = h.s;
    e.eta.reserve(h.s.size());
    for (size_t i = 0; i < h.s.size(); ++i) {
        int d = (h.j[i + 1] - h.j[i]) % static_cast<int>(h.n_roots);
        if (d < 0)
            d += static_cast<int>(h.n_roots);
        e.eta.push_back(d);
    }
    return e;
}

HarmonicWord eta_decode(const EtaWord& e, int j1)
{
    HarmonicWord h;
    h.n_roots = e.n_roots;
    h.s = e.s;
    h.j.clear();
    if (e.s.empty()) {
        h.j = {static_cast<int>(e.n_roots)};
        return h;
    }
    h.j.push_back(mod_root(j1, e.n_roots));
    for (size_t i = 0; i < e.s.size(); ++i)
        h.j.push_back(mod_root(h.j.back() + e.eta[i], e.n_roots));
    return h;
}

HarmonicWord to_harmonic(const Word& w, int j_outer, unsigned n_roots)
{
    if (w.letters.empty())
        throw std::invalid_argument("to_harmonic: empty word");
    if (w.letters.back().z == 0)
        throw std::invalid_argument("to_harmonic: word ends with e_0 (no harmonic reading)");
    // groups left to right are positions d, d-1, ..., 1
    std::vector<int> s_rev, j_rev;
    int zeros = 0;
    for (const Letter& l : w.letters) {
        if (l.z == 0) {
            ++zeros;
        } else {
            s_rev.push_back(zeros + 1);
            j_rev.push_back(l.z);
            zeros = 0;
        }
    }
    HarmonicWord h;
    h.n_roots = n_roots;
    h.s.assign(s_rev.rbegin(), s_rev.rend());
    h.j.assign(j_rev.rbegin(), j_rev.rend());
    h.j.push_back(mod_root(j_outer, n_roots));
    return h;
}

Word from_harmonic(const HarmonicWord& h)
{
    Word w;
    for (int i = h.depth() - 1; i >= 0; --i) {
        for (int k = 0; k < h.s[i] - 1; ++k)
            w.letters.push_back(Letter{0, false});
        w.letters.push_back(Letter{static_cast<uint8_t>(h.j[i]), false});
    }
    return w;
}

HarmonicWordWR to_harmonic_wr(const WordWR& w, int j_outer, unsigned n_roots)
{
    if (w.letters.empty())
        throw std::invalid_argument("to_harmonic_wr: empty word");
    if (w.letters.back().z == 0)
        throw std::invalid_argument("to_harmonic_wr: word ends with an e_0-letter");
    std::vector<std::pair<int, int>> e_rev;
    std::vector<int> j_rev;
    int u = 0, ur = 0;
    for (const Letter& l : w.letters) {
        if (l.z == 0) {
            (l.rev ? ur : u) += 1;
        } else {
            e_rev.emplace_back(u + (l.rev ? 0 : 1), ur + (l.rev ? 1 : 0));
            j_rev.push_back(l.z);
            u = ur = 0;
        }
    }
    HarmonicWordWR h;
    h.n_roots = n_roots;
    h.e.assign(e_rev.rbegin(), e_rev.rend());
    h.j.assign(j_rev.rbegin(), j_rev.rend());
    h.j.push_back(mod_root(j_outer, n_roots));
    return h;
}

WordWR from_harmonic_wr(const HarmonicWordWR& h)
{
    WordWR w;
    for (int i = h.depth() - 1; i >= 0; --i) {
        auto [a, b] = h.e[i];
        bool rev_letter;
        int u, ur;
        if (a >= 1) {
            rev_letter = false;
            u = a - 1;
            ur = b;
        } else {
            rev_letter = true;
            u = a;
            ur = b - 1;
        }
        for (int k = 0; k < u; ++k)
            w.letters.push_back(Letter{0, false});
        for (int k = 0; k < ur; ++k)
            w.letters.push_back(Letter{0, true});
        w.letters.push_back(Letter{static_cast<uint8_t>(h.j[i]), rev_letter});
    }
    return canonicalize(std::move(w));
}

HarmonicWordLoc to_harmonic_loc(const WordLoc& w, int j_outer, unsigned n_roots)
{
    if (w.ez.empty())
        throw std::invalid_argument("to_harmonic_loc: no e_Z letter");
    if (w.e0_blocks.back() != std::pair<long, long>{0, 0})
        throw std::invalid_argument("to_harmonic_loc: word ends with an e_0-block");
    HarmonicWordLoc h;
    h.n_roots = n_roots;
    size_t d = w.ez.size();
    for (size_t k = 0; k < d; ++k) {
        // block k precedes letter k; letters left to right are positions d..1
        const Letter& l = w.ez[k];
        auto [u, ur] = w.e0_blocks[k];
        h.e.emplace_back(static_cast<int>(u) + (l.rev ? 0 : 1),
                         static_cast<int>(ur) + (l.rev ? 1 : 0));
        h.j.push_back(l.z);
    }
    std::reverse(h.e.begin(), h.e.end());
    std::reverse(h.j.begin(), h.j.end());
    h.j.push_back(mod_root(j_outer, n_roots));
    return h;
}

namespace {

Letter parse_letter(const std::string& tok, unsigned n_roots, size_t pos)
{
    std::string t = tok;
    bool rev = false;
    if (t.size() >= 2 && t.back() == 'r') {
        rev = true;
        t.pop_back();
    }
    if (t == "0")
        return Letter{0, rev};
    if (n_roots == 1 && t == "1")
        return Letter{1, rev};
    if (t.size() >= 2 && t[0] == 'z') {
        long j = 0;
        try {
            j = std::stol(t.substr(1));
        } catch (...) {
            parse_fail("bad root index in '" + tok + "'", pos);
        }
        if (j < 1 || j > static_cast<long>(n_roots))
            parse_fail("root index " + std::to_string(j) + " outside 1.." +
                           std::to_string(n_roots),
                       pos);
        return Letter{static_cast<uint8_t>(j), rev};
    }
    parse_fail("unknown letter '" + tok + "'", pos);
}

std::vector<std::pair<std::string, size_t>> tokenize(const std::string& text)
{
    std::vector<std::pair<std::string, size_t>> toks;
    size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        toks.emplace_back(text.substr(start, i - start), start);
    }
    return toks;
}

} // namespace

WordWR parse_word(const std::string& text, unsigned n_roots)
{
    WordWR w;
    for (auto& [tok, pos] : tokenize(text)) {
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            std::string base = tok.substr(0, caret);
            long e = 0;
            try {
                e = std::stol(tok.substr(caret + 1));
            } catch (...) {
                parse_fail("bad exponent in '" + tok + "'", pos);
            }
            if (e < 0)
                parse_fail("negative exponent '" + tok + "' needs the localized grammar", pos);
            Letter l = parse_letter(base, n_roots, pos);
            if (l.z != 0)
                parse_fail("exponent blocks only apply to e_0", pos);
            for (long k = 0; k < e; ++k)
                w.letters.push_back(l);
            continue;
        }
        w.letters.push_back(parse_letter(tok, n_roots, pos));
    }
    return canonicalize(std::move(w));
}

WordLoc parse_word_loc(const std::string& text, unsigned n_roots)
{
    WordLoc w;
    std::pair<long, long> block{0, 0};
    for (auto& [tok, pos] : tokenize(text)) {
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            std::string base = tok.substr(0, caret);
            long e = 0;
            try {
                e = std::stol(tok.substr(caret + 1));
            } catch (...) {
                parse_fail("bad exponent in '" + tok + "'", pos);
            }
            Letter l = parse_letter(base, n_roots, pos);
            if (l.z != 0)
                parse_fail("exponent blocks only apply to e_0", pos);
            (l.rev ? block.second : block.first) += e;
            continue;
        }
        Letter l = parse_letter(tok, n_roots, pos);
        if (l.z == 0) {
            (l.rev ? block.second : block.first) += 1;
        } else {
            w.e0_blocks.push_back(block);
            w.ez.push_back(l);
            block = {0, 0};
        }
    }
    w.e0_blocks.push_back(block);
    return w;
}

std::string format_word(const Word& w, unsigned n_roots)
{
    return format_word(WordWR{w.letters}, n_roots);
}

std::string format_word(const WordWR& w, unsigned n_roots)
{
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : w.letters) {
        if (!first)
            os << ' ';
        if (l.z == 0)
            os << '0';
        else if (n_roots == 1)
            os << '1';
        else
            os << 'z' << static_cast<int>(l.z);
        if (l.rev)
            os << 'r';
        first = false;
    }
    return os.str();
}

std::string format_word(const WordLoc& w, unsigned n_roots)
{
    std::ostringstream os;
    bool first = true;
    auto emit_block = [&](std::pair<long, long> b) {
        if (b.first != 0) {
            if (!first)
                os << ' ';
            os << "0^" << b.first;
            first = false;
        }
        if (b.second != 0) {
            if (!first)
                os << ' ';
            os << "0r^" << b.second;
            first = false;
        }
    };
    for (size_t k = 0; k < w.ez.size(); ++k) {
        emit_block(w.e0_blocks[k]);
        if (!first)
            os << ' ';
        const Letter& l = w.ez[k];
        if (n_roots == 1)
            os << '1';
        else
            os << 'z' << static_cast<int>(l.z);
        if (l.rev)
            os << 'r';
        first = false;
    }
    emit_block(w.e0_blocks.back());
    return os.str();
}

HarmonicWordLoc parse_harmonic(const std::string& text, unsigned n_roots)
{
    auto open = text.find('[');
    auto close = text.rfind(']');
    if (text.substr(0, open) != "h" || open == std::string::npos || close == std::string::npos ||
        close < open)
        throw std::invalid_argument("parse_harmonic: expected h[...;...] in '" + text + "'");
    std::string inner = text.substr(open + 1, close - open - 1);
    auto semi = inner.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("parse_harmonic: missing ';' in '" + text + "'");
    auto split_list = [](const std::string& s) {
        std::vector<std::string> items;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                items.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur.push_back(c);
            }
        }
        if (!cur.empty())
            items.push_back(cur);
        return items;
    };
    auto jlist = split_list(inner.substr(0, semi));
    auto slist = split_list(inner.substr(semi + 1));

    HarmonicWordLoc h;
    h.n_roots = n_roots;
    // s-entries arrive outermost-first; store innermost-first
    for (auto it = slist.rbegin(); it != slist.rend(); ++it) {
        const std::string& entry = *it;
        auto tilde = entry.find('~');
        try {
            if (tilde == std::string::npos)
                h.e.emplace_back(std::stoi(entry), 0);
            else
                h.e.emplace_back(std::stoi(entry.substr(0, tilde)),
                                 std::stoi(entry.substr(tilde + 1)));
        } catch (...) {
            throw std::invalid_argument("parse_harmonic: bad entry '" + entry + "'");
        }
    }
    size_t d = h.e.size();
    if (jlist.size() == d + 1) {
        h.j.clear();
        for (auto it = jlist.rbegin(); it != jlist.rend(); ++it)
            h.j.push_back(std::stoi(*it));
    } else if (n_roots == 1) {
        h.j.assign(d + 1, 1);
    } else {
        throw std::invalid_argument("parse_harmonic: expected " + std::to_string(d + 1) +
                                    " root indices for N = " + std::to_string(n_roots));
    }
    for (int j : h.j)
        if (j < 1 || j > static_cast<int>(n_roots))
            throw std::invalid_argument("parse_harmonic: root index outside 1..N");
    return h;
}

namespace {

template <class H, class EntryFmt>
std::string format_harmonic_impl(const H& h, EntryFmt entry)
{
    std::ostringstream os;
    os << "h[";
    for (size_t i = h.j.size(); i-- > 0;) {
        os << h.j[i];
        if (i > 0)
            os << ',';
    }
    os << ';';
    for (size_t i = h.depth(); i-- > 0;) {
        entry(os, i);
        if (i > 0)
            os << ',';
    }
    os << ']';
    return os.str();
}

} // namespace

std::string format_harmonic(const HarmonicWord& h)
{
    return format_harmonic_impl(h, [&](std::ostringstream& os, size_t i) { os << h.s[i]; });
}

std::string format_harmonic(const HarmonicWordWR& h)
{
    return format_harmonic_impl(h, [&](std::ostringstream& os, size_t i) {
        os << h.e[i].first;
        if (h.e[i].second != 0)
            os << '~' << h.e[i].second;
    });
}

std::string format_harmonic(const HarmonicWordLoc& h)
{
    return format_harmonic_impl(h, [&](std::ostringstream& os, size_t i) {
        os << h.e[i].first;
        if (h.e[i].second != 0)
            os << '~' << h.e[i].second;
    });
}

} // namespace cmzv
