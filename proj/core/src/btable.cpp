#include "cmzv/btable.hpp"

#include "cmzv/mhs.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cmzv {

namespace {

// P_l(x) = sum_{0<j<x} j^l, lowest degree first.
std::vector<Rat> chain_power_sum(unsigned l)
{
    std::vector<Rat> p = power_sum_poly(l);
    if (l == 0)
        p[0] -= 1; // exclude j = 0
    return p;
}

void add_scaled(BDecomposition& into, const BDecomposition& from, const Rat& c)
{
    if (c == 0)
        return;
    for (const auto& [word, poly] : from.terms) {
        auto& dst = into.terms[word];
        if (dst.size() < poly.size())
            dst.resize(poly.size(), Rat(0));
        for (size_t i = 0; i < poly.size(); ++i)
            dst[i] += c * poly[i];
    }
}

void add_polymul(BDecomposition& into, const BDecomposition& from, const std::vector<Rat>& mul)
{
    for (const auto& [word, poly] : from.terms) {
        auto& dst = into.terms[word];
        if (dst.size() < poly.size() + mul.size())
            dst.resize(poly.size() + mul.size(), Rat(0));
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < mul.size(); ++j)
                dst[i + j] += poly[i] * mul[j];
    }
}

void prune(BDecomposition& d)
{
    for (auto it = d.terms.begin(); it != d.terms.end();) {
        auto& poly = it->second;
        while (!poly.empty() && poly.back() == 0)
            poly.pop_back();
        if (poly.empty())
            it = d.terms.erase(it);
        else
            ++it;
    }
}

std::mutex& btable_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

const BDecomposition& BTable::decompose(const std::vector<int>& lambda)
{
    std::lock_guard<std::mutex> lock(btable_mutex());
    auto it = cache_.find(lambda);
    if (it != cache_.end())
        return it->second;

    // worklist recursion without re-locking
    std::vector<std::vector<int>> stack{lambda};
    while (!stack.empty()) {
        std::vector<int> lam = stack.back();
        if (cache_.count(lam)) {
            stack.pop_back();
            continue;
        }
        for (int v : lam)
            if (v > max_entry_ || v < -max_entry_)
                throw std::out_of_range("BTable: exponent outside configured bound");

        size_t d = lam.size();
        size_t k = 0;
        while (k < d && lam[k] <= -1)
            ++k;
        if (k == d) {
            // pure denominator tuple: an ordinary MHS word
            BDecomposition dec;
            std::vector<int> word(d);
            for (size_t i = 0; i < d; ++i)
                word[i] = -lam[i];
            dec.terms[word] = {Rat(1)};
            cache_[lam] = std::move(dec);
            stack.pop_back();
            continue;
        }

        unsigned l = static_cast<unsigned>(lam[k]);
        std::vector<Rat> P = chain_power_sum(l);

        // children needed by this reduction step
        auto without_k = [&](int fold_into, long add) {
            std::vector<int> lam2;
            lam2.reserve(d - 1);
            for (size_t i = 0; i < d; ++i) {
                if (i == k)
                    continue;
                int v = lam[i];
                if (static_cast<long>(i) == fold_into)
                    v += static_cast<int>(add);
                lam2.push_back(v);
            }
            return lam2;
        };

        std::vector<std::vector<int>> deps;
        bool outer = k + 1 == d;
        if (!outer) {
            for (size_t b = 0; b < P.size(); ++b)
                if (P[b] != 0)
                    deps.push_back(without_k(static_cast<int>(k) + 1, static_cast<long>(b)));
        } else {
            deps.push_back(without_k(-1, 0));
        }
        if (k > 0) {
            for (size_t b = 0; b < P.size(); ++b)
                if (P[b] != 0)
                    deps.push_back(without_k(static_cast<int>(k) - 1, static_cast<long>(b)));
            deps.push_back(without_k(static_cast<int>(k) - 1, l));
        }
        bool ready = true;
        for (auto& dep : deps) {
            if (!cache_.count(dep)) {
                stack.push_back(dep);
                ready = false;
            }
        }
        if (!ready)
            continue;

        BDecomposition dec;
        // sum over the removed variable: P_l(next) - P_l(prev) - prev^l
        if (!outer) {
            for (size_t b = 0; b < P.size(); ++b)
                if (P[b] != 0)
                    add_scaled(dec, cache_.at(without_k(static_cast<int>(k) + 1, b)), P[b]);
        } else {
            add_polymul(dec, cache_.at(without_k(-1, 0)), P);
        }
        if (k > 0) {
            for (size_t b = 0; b < P.size(); ++b)
                if (P[b] != 0)
                    add_scaled(dec, cache_.at(without_k(static_cast<int>(k) - 1, b)), -P[b]);
            add_scaled(dec, cache_.at(without_k(static_cast<int>(k) - 1, l)), Rat(-1));
        }
        prune(dec);
        cache_[lam] = std::move(dec);
        stack.pop_back();
    }
    return cache_.at(lambda);
}

Rat BTable::b_coeff(long b, const std::vector<int>& lambda)
{
    if (b < 0)
        return 0;
    const BDecomposition& dec = decompose(lambda);
    auto it = dec.terms.find({});
    if (it == dec.terms.end() || static_cast<size_t>(b) >= it->second.size())
        return 0;
    return it->second[b];
}

Rat BTable::evaluate(long n, const std::vector<int>& lambda)
{
    const BDecomposition& dec = decompose(lambda);
    Rat acc = 0;
    for (const auto& [word, poly] : dec.terms) {
        Rat hval = 1;
        if (!word.empty()) {
            HarmonicWord h = HarmonicWord::plain(word);
            CycRat c = frak_h(n, h);
            hval = c.rational_part();
        }
        acc += poly_eval(poly, Rat(n)) * hval;
    }
    return acc;
}

Rat BTable::direct_sum(long n, const std::vector<int>& lambda)
{
    size_t d = lambda.size();
    if (d == 0)
        return 1;
    std::vector<Rat> prefix(n, Rat(0)); // prefix[m] = sum_{m'<=m} layer[m']
    std::vector<Rat> layer(n, Rat(0));
    for (size_t i = 0; i < d; ++i) {
        for (long m = 1; m < n; ++m) {
            Rat inner = i == 0 ? Rat(1) : prefix[m - 1];
            layer[m] = inner * rat_pow(Rat(m), lambda[i]);
        }
        Rat acc = 0;
        prefix[0] = 0;
        for (long m = 1; m < n; ++m) {
            acc += layer[m];
            prefix[m] = acc;
        }
    }
    return prefix[n - 1];
}

BTable& global_btable()
{
    static BTable table;
    return table;
}

Rat action_b(long b, long l)
{
    if (b < 1)
        return 0;
    return power_sum_coeff(static_cast<unsigned>(l), static_cast<unsigned>(b));
}

} // namespace cmzv
