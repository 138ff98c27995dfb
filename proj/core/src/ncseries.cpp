#include "cmzv/ncseries.hpp"

#include <mutex>

namespace cmzv {

WordKey parse_word_key(const std::string& text, unsigned n_roots)
{
    WordWR w = parse_word(text, n_roots);
    return key_from_word(to_plain(w));
}

std::string format_word_key(const WordKey& w, unsigned n_roots)
{
    return format_word(word_from_key(w), n_roots);
}

std::vector<WordKey> all_word_keys(unsigned n_roots, int max_weight)
{
    std::vector<WordKey> out{WordKey{}};
    size_t begin = 0;
    for (int k = 1; k <= max_weight; ++k) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (unsigned c = 0; c <= n_roots; ++c)
                out.push_back(out[i] + static_cast<char>(c));
        begin = end;
    }
    return out;
}

namespace {

std::map<std::pair<WordKey, WordKey>, WordCombination>& shuffle_cache()
{
    static std::map<std::pair<WordKey, WordKey>, WordCombination> cache;
    return cache;
}

std::mutex& shuffle_mutex()
{
    static std::mutex m;
    return m;
}

// Plain recursion on the last letters; no cache access.
void shuffle_rec(const WordKey& u, size_t nu, const WordKey& v, size_t nv, WordKey& acc,
                 WordCombination& out)
{
    if (nu == 0 && nv == 0) {
        WordKey w(acc.rbegin(), acc.rend());
        out[w] += 1;
        return;
    }
    if (nu > 0) {
        acc.push_back(u[nu - 1]);
        shuffle_rec(u, nu - 1, v, nv, acc, out);
        acc.pop_back();
    }
    if (nv > 0) {
        acc.push_back(v[nv - 1]);
        shuffle_rec(u, nu, v, nv - 1, acc, out);
        acc.pop_back();
    }
}

} // namespace

const WordCombination& shuffle_words(const WordKey& u, const WordKey& v)
{
    std::lock_guard<std::mutex> lock(shuffle_mutex());
    auto key = u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
    auto it = shuffle_cache().find(key);
    if (it != shuffle_cache().end())
        return it->second;
    WordCombination r;
    WordKey acc;
    shuffle_rec(key.first, key.first.size(), key.second, key.second.size(), acc, r);
    return shuffle_cache().emplace(std::move(key), std::move(r)).first->second;
}

} // namespace cmzv
