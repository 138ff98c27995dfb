#include "cmzv/stuffle.hpp"

#include <stdexcept>

namespace cmzv {

namespace {

// Entries innermost-first; the recursion peels the outermost (back) letter.
void stuffle_rec(const EtaWord& a, size_t na, const EtaWord& b, size_t nb,
                 std::vector<std::pair<int, int>>& acc, EtaCombination& out)
{
    if (na == 0 && nb == 0) {
        EtaWord w;
        w.n_roots = a.n_roots;
        for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
            w.s.push_back(it->first);
            w.eta.push_back(it->second);
        }
        out[w] += 1;
        return;
    }
    if (na > 0) {
        acc.emplace_back(a.s[na - 1], a.eta[na - 1]);
        stuffle_rec(a, na - 1, b, nb, acc, out);
        acc.pop_back();
    }
    if (nb > 0) {
        acc.emplace_back(b.s[nb - 1], b.eta[nb - 1]);
        stuffle_rec(a, na, b, nb - 1, acc, out);
        acc.pop_back();
    }
    if (na > 0 && nb > 0) {
        int n = static_cast<int>(a.n_roots);
        acc.emplace_back(a.s[na - 1] + b.s[nb - 1], (a.eta[na - 1] + b.eta[nb - 1]) % n);
        stuffle_rec(a, na - 1, b, nb - 1, acc, out);
        acc.pop_back();
    }
}

} // namespace

EtaCombination quasi_shuffle(const EtaWord& a, const EtaWord& b)
{
    if (a.n_roots != b.n_roots)
        throw std::invalid_argument("quasi_shuffle: mismatched root orders");
    EtaCombination out;
    std::vector<std::pair<int, int>> acc;
    stuffle_rec(a, a.s.size(), b, b.s.size(), acc, out);
    return out;
}

HarmonicCombination quasi_shuffle(const HarmonicWord& a, const HarmonicWord& b)
{
    if (a.n_roots != b.n_roots)
        throw std::invalid_argument("quasi_shuffle: mismatched root orders");
    EtaCombination terms = quasi_shuffle(eta_encode(a), eta_encode(b));
    int j1 = a.j.front() + b.j.front();
    HarmonicCombination out;
    for (const auto& [w, c] : terms)
        out[eta_decode(w, j1)] += c;
    return out;
}

} // namespace cmzv
