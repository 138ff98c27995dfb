#pragma once

#include "cmzv/scalar.hpp"
#include "cmzv/words.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmzv {

/// Plain word over e_Z as a byte string: 0 for e_0, j in 1..N for e_{z_j}.
using WordKey = std::string;

inline int key_weight(const WordKey& w) { return static_cast<int>(w.size()); }
inline int key_depth(const WordKey& w)
{
    int d = 0;
    for (char c : w)
        d += c != 0;
    return d;
}

inline WordKey key_from_word(const Word& w)
{
    WordKey k;
    k.reserve(w.letters.size());
    for (const Letter& l : w.letters)
        k.push_back(static_cast<char>(l.z));
    return k;
}

inline Word word_from_key(const WordKey& k)
{
    Word w;
    for (char c : k)
        w.letters.push_back(Letter{static_cast<uint8_t>(c), false});
    return w;
}

WordKey parse_word_key(const std::string& text, unsigned n_roots);
std::string format_word_key(const WordKey& w, unsigned n_roots);

/// All plain words over {e_0, e_{z_1..z_N}} of weight <= max_weight,
/// ordered by weight then lexicographically.
std::vector<WordKey> all_word_keys(unsigned n_roots, int max_weight);

/// Integer combination of words.
using WordCombination = std::map<WordKey, long>;

/// Shuffle of two words as an integer combination (cached).
const WordCombination& shuffle_words(const WordKey& u, const WordKey& v);

/// Truncated non-commutative formal power series over e_Z. Absent
/// coefficients are exact zeros. Binary operations require identical
/// (n_roots, max_weight, max_depth).
template <class S>
class NCSeries {
public:
    NCSeries() = default;
    NCSeries(unsigned n_roots, int max_weight, int max_depth = -1)
        : n_roots_(n_roots), max_weight_(max_weight), max_depth_(max_depth) {}

    unsigned n_roots() const { return n_roots_; }
    int max_weight() const { return max_weight_; }
    int max_depth() const { return max_depth_; }
    const std::map<WordKey, S>& terms() const { return terms_; }

    bool in_range(const WordKey& w) const
    {
        return key_weight(w) <= max_weight_ &&
               (max_depth_ < 0 || key_depth(w) <= max_depth_);
    }

    void set(const WordKey& w, S v)
    {
        if (!in_range(w))
            return;
        if (scalar_is_exact_zero(v))
            terms_.erase(w);
        else
            terms_.insert_or_assign(w, std::move(v));
    }

    void add(const WordKey& w, const S& v)
    {
        if (!in_range(w) || scalar_is_exact_zero(v))
            return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, v);
        } else {
            it->second += v;
            if (scalar_is_exact_zero(it->second))
                terms_.erase(it);
        }
    }

    /// Coefficient lookup; nullptr encodes the exact zero.
    const S* get(const WordKey& w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? nullptr : &it->second;
    }

    bool is_zero() const
    {
        for (auto& [w, v] : terms_)
            if (!scalar_is_zero(v))
                return false;
        return true;
    }

    NCSeries operator-() const
    {
        NCSeries r(n_roots_, max_weight_, max_depth_);
        for (auto& [w, v] : terms_)
            r.set(w, -v);
        return r;
    }

    NCSeries& operator+=(const NCSeries& o)
    {
        require_compatible(o);
        for (auto& [w, v] : o.terms_)
            add(w, v);
        return *this;
    }

    NCSeries& operator-=(const NCSeries& o)
    {
        require_compatible(o);
        for (auto& [w, v] : o.terms_)
            add(w, -v);
        return *this;
    }

    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }

    NCSeries scaled(const S& c) const
    {
        NCSeries r(n_roots_, max_weight_, max_depth_);
        for (auto& [w, v] : terms_)
            r.set(w, v * c);
        return r;
    }

    void require_compatible(const NCSeries& o) const
    {
        if (n_roots_ != o.n_roots_ || max_weight_ != o.max_weight_ || max_depth_ != o.max_depth_)
            throw std::invalid_argument("NCSeries: truncation or alphabet mismatch");
    }

private:
    unsigned n_roots_ = 1;
    int max_weight_ = 0;
    int max_depth_ = -1;
    std::map<WordKey, S> terms_;
};

template <class S>
NCSeries<S> concat_mul(const NCSeries<S>& f, const NCSeries<S>& g)
{
    f.require_compatible(g);
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [u, a] : f.terms()) {
        for (auto& [v, b] : g.terms()) {
            if (key_weight(u) + key_weight(v) > f.max_weight())
                continue;
            r.add(u + v, a * b);
        }
    }
    return r;
}

template <class S>
NCSeries<S> shuffle_mul(const NCSeries<S>& f, const NCSeries<S>& g)
{
    f.require_compatible(g);
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [u, a] : f.terms()) {
        for (auto& [v, b] : g.terms()) {
            if (key_weight(u) + key_weight(v) > f.max_weight())
                continue;
            S ab = a * b;
            for (auto& [w, m] : shuffle_words(u, v))
                r.add(w, ab * scalar_int_like(ab, m));
        }
    }
    return r;
}

/// (tau(lambda) f)[w] = lambda^{weight(w)} f[w].
template <class S>
NCSeries<S> tau(const S& lambda, const NCSeries<S>& f)
{
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [w, v] : f.terms()) {
        S c = v;
        for (int i = 0; i < key_weight(w); ++i)
            c = c * lambda;
        r.set(w, c);
    }
    return r;
}

/// Multiplicative inverse: requires invertible constant term.
template <class S>
NCSeries<S> inverse(const NCSeries<S>& f)
{
    const S* f0 = f.get(WordKey{});
    if (!f0 || scalar_is_zero(*f0))
        throw std::domain_error("NCSeries inverse: constant term not invertible");
    S inv0 = scalar_inv(*f0);
    NCSeries<S> g(f.n_roots(), f.max_weight(), f.max_depth());
    g.set(WordKey{}, inv0);
    // g[w] = -f0^{-1} sum_{w = uv, u != empty} f[u] g[v], by weight induction
    for (int k = 1; k <= f.max_weight(); ++k) {
        for (const auto& w : all_word_keys(f.n_roots(), k)) {
            if (key_weight(w) != k || !g.in_range(w))
                continue;
            std::optional<S> acc;
            for (int cut = 1; cut <= k; ++cut) {
                const S* fu = f.get(w.substr(0, cut));
                if (!fu)
                    continue;
                const S* gv = g.get(w.substr(cut));
                if (!gv)
                    continue;
                S term = *fu * *gv;
                if (acc)
                    *acc += term;
                else
                    acc = term;
            }
            if (acc)
                g.set(w, -(inv0 * *acc));
        }
    }
    return g;
}

/// g^{-1} x g for a letter or series x.
template <class S>
NCSeries<S> adjoint(const NCSeries<S>& g, const NCSeries<S>& x)
{
    return concat_mul(concat_mul(inverse(g), x), g);
}

/// Continuous algebra endomorphism from letter images. Every image must have
/// zero constant term (or be a single letter) so truncation stays exact.
template <class S>
NCSeries<S> substitute(const NCSeries<S>& f, const std::vector<NCSeries<S>>& images)
{
    if (images.size() != f.n_roots() + 1)
        throw std::invalid_argument("substitute: need an image per letter (e_0, e_{z_1}, ...)");
    for (const auto& img : images) {
        f.require_compatible(img);
        if (img.get(WordKey{}))
            throw std::invalid_argument("substitute: image with nonzero constant term");
    }
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [w, c] : f.terms()) {
        // product of letter images, term by term
        std::map<WordKey, S> acc;
        acc.emplace(WordKey{}, c);
        for (char letter : w) {
            std::map<WordKey, S> next;
            const auto& img = images[static_cast<unsigned char>(letter)];
            for (auto& [u, a] : acc) {
                for (auto& [v, b] : img.terms()) {
                    if (key_weight(u) + key_weight(v) > f.max_weight())
                        continue;
                    WordKey uv = u + v;
                    S ab = a * b;
                    auto it = next.find(uv);
                    if (it == next.end())
                        next.emplace(std::move(uv), std::move(ab));
                    else
                        it->second += ab;
                }
            }
            acc = std::move(next);
            if (acc.empty())
                break;
        }
        for (auto& [u, a] : acc)
            r.add(u, a);
    }
    return r;
}

template <class S>
NCSeries<S> letter_series(const NCSeries<S>& like, const WordKey& w, const S& c)
{
    NCSeries<S> r(like.n_roots(), like.max_weight(), like.max_depth());
    r.set(w, c);
    return r;
}

/// Relabel e_{z_j} -> e_{z_{i+j mod N}} (the mu_N rotation; fixes e_0).
template <class S>
NCSeries<S> rotate_roots(const NCSeries<S>& f, int i)
{
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    int n = static_cast<int>(f.n_roots());
    for (auto& [w, v] : f.terms()) {
        WordKey u = w;
        for (char& c : u) {
            if (c != 0) {
                int j = (static_cast<int>(c) + i) % n;
                c = static_cast<char>(j == 0 ? n : j);
            }
        }
        r.add(u, v);
    }
    return r;
}

/// Ihara product g o f = g . f(e_0, g_{z_1}^{-1} e_{z_1} g_{z_1}, ...) with
/// g_{z_i} the mu_N-rotated copy of g; for N = 1 this is
/// g . f(e_0, g^{-1} e_1 g).
template <class S>
NCSeries<S> ihara_mul(const NCSeries<S>& g, const NCSeries<S>& f)
{
    g.require_compatible(f);
    std::vector<NCSeries<S>> images;
    images.push_back(letter_series(g, WordKey(1, '\0'), scalar_one_like(g.terms().begin()->second)));
    for (unsigned i = 1; i <= g.n_roots(); ++i) {
        NCSeries<S> gi = g.n_roots() == 1 ? g : rotate_roots(g, static_cast<int>(i));
        WordKey ez(1, static_cast<char>(i));
        S one = scalar_one_like(g.terms().begin()->second);
        images.push_back(adjoint(gi, letter_series(g, ez, one)));
    }
    return concat_mul(g, substitute(f, images));
}

/// Left/right boundary-letter strippers: (d_left_x f)[w] = f[x w] and
/// (d_right_x f)[w] = f[w x].
template <class S>
NCSeries<S> d_left(const NCSeries<S>& f, uint8_t letter)
{
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [w, v] : f.terms())
        if (!w.empty() && w.front() == static_cast<char>(letter))
            r.set(w.substr(1), v);
    return r;
}

template <class S>
NCSeries<S> d_right(const NCSeries<S>& f, uint8_t letter)
{
    NCSeries<S> r(f.n_roots(), f.max_weight(), f.max_depth());
    for (auto& [w, v] : f.terms())
        if (!w.empty() && w.back() == static_cast<char>(letter))
            r.set(w.substr(0, w.size() - 1), v);
    return r;
}

/// Group-like test: f[empty] = 1 and f[u]f[v] = f[u sh v] within truncation.
/// Returns the first failing pair as a witness.
template <class S>
std::optional<std::pair<WordKey, WordKey>> group_like_witness(const NCSeries<S>& f)
{
    const S* f0 = f.get(WordKey{});
    S one = f0 ? scalar_one_like(*f0)
               : scalar_one_like(f.terms().empty() ? S{} : f.terms().begin()->second);
    if (!f0 || !scalar_is_zero(*f0 - one))
        return std::make_pair(WordKey{}, WordKey{});
    auto words = all_word_keys(f.n_roots(), f.max_weight() - 1);
    for (const auto& u : words) {
        if (u.empty())
            continue;
        for (const auto& v : words) {
            if (v.empty() || key_weight(u) + key_weight(v) > f.max_weight())
                continue;
            const S* fu = f.get(u);
            const S* fv = f.get(v);
            std::optional<S> lhs;
            if (fu && fv)
                lhs = *fu * *fv;
            std::optional<S> rhs;
            for (auto& [w, m] : shuffle_words(u, v)) {
                const S* fw = f.get(w);
                if (!fw)
                    continue;
                S term = *fw * scalar_int_like(*fw, m);
                if (rhs)
                    *rhs += term;
                else
                    rhs = term;
            }
            if (!lhs && !rhs)
                continue;
            S diff = lhs && rhs ? *lhs - *rhs : (lhs ? *lhs : -*rhs);
            if (!scalar_is_zero(diff))
                return std::make_pair(u, v);
        }
    }
    return std::nullopt;
}

template <class S>
bool is_group_like(const NCSeries<S>& f)
{
    return !group_like_witness(f).has_value();
}

/// Primitive test: f[empty] = 0 and f[u sh v] = 0 for nonempty u, v.
template <class S>
bool is_primitive(const NCSeries<S>& f)
{
    const S* f0 = f.get(WordKey{});
    if (f0 && !scalar_is_zero(*f0))
        return false;
    auto words = all_word_keys(f.n_roots(), f.max_weight() - 1);
    for (const auto& u : words) {
        if (u.empty())
            continue;
        for (const auto& v : words) {
            if (v.empty() || key_weight(u) + key_weight(v) > f.max_weight())
                continue;
            std::optional<S> rhs;
            for (auto& [w, m] : shuffle_words(u, v)) {
                const S* fw = f.get(w);
                if (!fw)
                    continue;
                S term = *fw * scalar_int_like(*fw, m);
                if (rhs)
                    *rhs += term;
                else
                    rhs = term;
            }
            if (rhs && !scalar_is_zero(*rhs))
                return false;
        }
    }
    return true;
}

/// Tensor square with total-weight truncation; concatenation product on each
/// leg. Carrier for shuffle coproducts.
template <class S>
class TensorSeries {
public:
    TensorSeries() = default;
    TensorSeries(unsigned n_roots, int max_weight) : n_roots_(n_roots), max_weight_(max_weight) {}

    unsigned n_roots() const { return n_roots_; }
    int max_weight() const { return max_weight_; }
    const std::map<std::pair<WordKey, WordKey>, S>& terms() const { return terms_; }

    void add(const WordKey& u, const WordKey& v, const S& c)
    {
        if (key_weight(u) + key_weight(v) > max_weight_ || scalar_is_exact_zero(c))
            return;
        auto key = std::make_pair(u, v);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), c);
        } else {
            it->second += c;
            if (scalar_is_exact_zero(it->second))
                terms_.erase(it);
        }
    }

    const S* get(const WordKey& u, const WordKey& v) const
    {
        auto it = terms_.find(std::make_pair(u, v));
        return it == terms_.end() ? nullptr : &it->second;
    }

    TensorSeries& operator-=(const TensorSeries& o)
    {
        for (auto& [k, v] : o.terms_)
            add(k.first, k.second, -v);
        return *this;
    }

    bool is_zero() const
    {
        for (auto& [k, v] : terms_)
            if (!scalar_is_zero(v))
                return false;
        return true;
    }

    friend TensorSeries mul(const TensorSeries& a, const TensorSeries& b)
    {
        TensorSeries r(a.n_roots_, a.max_weight_);
        for (auto& [ka, va] : a.terms_)
            for (auto& [kb, vb] : b.terms_)
                r.add(ka.first + kb.first, ka.second + kb.second, va * vb);
        return r;
    }

private:
    unsigned n_roots_ = 1;
    int max_weight_ = 0;
    std::map<std::pair<WordKey, WordKey>, S> terms_;
};

/// Shuffle coproduct: Delta_sh(w) = sum over position subsets of
/// (subword) tensor (complement).
template <class S>
TensorSeries<S> coproduct_sh(const NCSeries<S>& f)
{
    TensorSeries<S> r(f.n_roots(), f.max_weight());
    for (auto& [w, c] : f.terms()) {
        int n = key_weight(w);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            WordKey u, v;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1 ? u : v).push_back(w[i]);
            r.add(u, v, c);
        }
    }
    return r;
}

/// Concatenation exponential (test helper); requires zero constant term.
template <class S>
NCSeries<S> exp_concat(const NCSeries<S>& x)
{
    if (x.get(WordKey{}))
        throw std::invalid_argument("exp_concat: nonzero constant term");
    NCSeries<S> r(x.n_roots(), x.max_weight(), x.max_depth());
    S one = scalar_one_like(x.terms().empty() ? S{} : x.terms().begin()->second);
    r.set(WordKey{}, one);
    NCSeries<S> pow = r;
    for (long k = 1; k <= x.max_weight(); ++k) {
        pow = concat_mul(pow, x);
        if (pow.terms().empty())
            break;
        long fact = 1;
        for (long i = 2; i <= k; ++i)
            fact *= i;
        for (auto& [w, v] : pow.terms())
            r.add(w, scalar_div_int(v, fact));
    }
    return r;
}

/// Stabilized limit of l -> f[e_0^l w]: for every harmonic word w in range
/// the coefficients must be constant over the last admissible window.
/// Returns the stable restriction; throws with the offending word otherwise.
template <class S>
std::map<HarmonicWord, S> lim_map(const NCSeries<S>& f, int window, int j_outer = 1)
{
    std::map<HarmonicWord, S> out;
    for (const auto& w : all_word_keys(f.n_roots(), f.max_weight())) {
        if (w.empty() || w.front() == 0 || w.back() == 0)
            continue;
        int lmax = f.max_weight() - key_weight(w);
        int l0 = std::max(0, lmax - window + 1);
        if (lmax < l0)
            continue;
        const S* first = nullptr;
        bool stable = true;
        std::ostringstream tail;
        for (int l = l0; l <= lmax; ++l) {
            WordKey full = WordKey(l, '\0') + w;
            const S* v = f.get(full);
            if (l > l0) {
                bool both_zero = (!v || scalar_is_zero(*v)) && (!first || scalar_is_zero(*first));
                bool equal = both_zero || (v && first && scalar_is_zero(*v - *first));
                if (!equal)
                    stable = false;
            }
            if (v)
                tail << (l > l0 ? ", " : "") << scalar_to_string(*v);
            else
                tail << (l > l0 ? ", " : "") << "0";
            if (l == l0)
                first = v;
        }
        if (!stable)
            throw std::runtime_error("lim_map: coefficient not stabilized at word '" +
                                     format_word_key(w, f.n_roots()) + "', tail [" + tail.str() +
                                     "]");
        if (first && !scalar_is_zero(*first))
            out.emplace(to_harmonic(word_from_key(w), j_outer, f.n_roots()), *first);
    }
    return out;
}

} // namespace cmzv
