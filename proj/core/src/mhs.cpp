#include "cmzv/mhs.hpp"

#include "cmzv/rational.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace cmzv {

namespace {

CycRat frak_h_direct(long n, const HarmonicWordLoc& w)
{
    unsigned N = w.n_roots;
    int d = w.depth();
    if (d == 0)
        return CycRat(N, Rat(1));
    if (n == 1)
        return CycRat(N, Rat(0));
    // eta twists: xi^{eta_i * n_i} per position, xi^{-j_{d+1} * n} trailing
    std::vector<int> eta(d);
    for (int i = 0; i < d; ++i)
        eta[i] = (w.j[i + 1] - w.j[i]) % static_cast<int>(N);
    // layer DP over the chain variable
    std::vector<CycRat> prev(n, CycRat(N, Rat(0))); // prefix sums of previous layer
    // layer 1..d: V_i[m] = factor_i(m) * sum_{m' < m} V_{i-1}[m']
    std::vector<CycRat> layer(n, CycRat(N, Rat(0)));
    for (int i = 0; i < d; ++i) {
        auto [u, ur] = w.e[i];
        for (long m = 1; m < n; ++m) {
            CycRat inner = i == 0 ? CycRat(N, Rat(1)) : prev[m - 1];
            if (inner.is_zero()) {
                layer[m] = CycRat(N, Rat(0));
                continue;
            }
            Rat denom = rat_pow(Rat(m), u) * rat_pow(Rat(n - m), ur);
            CycRat factor = CycRat(N, Rat(1) / denom);
            if (N > 1 && eta[i] != 0)
                factor *= CycRat::root_power(N, static_cast<long>(eta[i]) * m);
            layer[m] = factor * inner;
        }
        // prefix sums for the next layer
        prev[0] = CycRat(N, Rat(0));
        CycRat acc(N, Rat(0));
        for (long m = 1; m < n; ++m) {
            acc += layer[m];
            prev[m] = acc;
        }
    }
    CycRat total = prev[n - 1];
    if (N > 1)
        total *= CycRat::root_power(N, -static_cast<long>(w.j.back()) * n);
    return total;
}

std::map<std::pair<long, HarmonicWordLoc>, CycRat>& frak_memo()
{
    static std::map<std::pair<long, HarmonicWordLoc>, CycRat> memo;
    return memo;
}

std::mutex& frak_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

CycRat frak_h(long n, const HarmonicWordLoc& w)
{
    if (n <= 0)
        throw std::domain_error("frak_h: index n must be positive");
    {
        std::lock_guard<std::mutex> lock(frak_mutex());
        auto it = frak_memo().find({n, w});
        if (it != frak_memo().end())
            return it->second;
    }
    CycRat v = frak_h_direct(n, w);
    std::lock_guard<std::mutex> lock(frak_mutex());
    return frak_memo().emplace(std::make_pair(n, w), std::move(v)).first->second;
}

CycRat frak_h(long n, const HarmonicWordWR& w) { return frak_h(n, widen(w)); }
CycRat frak_h(long n, const HarmonicWord& w) { return frak_h(n, widen_loc(w)); }

CycRat har(long n, const HarmonicWordLoc& w)
{
    CycRat base = frak_h(n, w);
    return base * CycRat(w.n_roots, rat_pow(Rat(n), w.weight()));
}

CycRat har(long n, const HarmonicWordWR& w) { return har(n, widen(w)); }
CycRat har(long n, const HarmonicWord& w) { return har(n, widen_loc(w)); }

CycRat li_coeff(const Word& w, long n, unsigned n_roots)
{
    if (n < 0)
        throw std::domain_error("li_coeff: negative degree");
    unsigned N = n_roots;
    // Coefficients of the canonical solution live in Q(xi)[[z]][log z]:
    // track c[m][k] = coefficient of z^m (log z)^k, peel letters from the
    // right (innermost first), and return the log-free part at the end.
    // Integration rules, term by term:
    //   int z^{m-1} L^k dz = z^m sum_{j<=k} (-1)^{k-j} (k!/j!) L^j / m^{k-j+1}
    //   int L^k dz/z = L^{k+1} / (k+1)
    size_t maxk = 1;
    for (const Letter& l : w.letters)
        maxk += l.z == 0;
    auto zero_row = [&]() { return std::vector<CycRat>(maxk + 1, CycRat(N, Rat(0))); };
    std::vector<std::vector<CycRat>> c(n + 1, zero_row());
    c[0][0] = CycRat(N, Rat(1));
    // falling factorials k!/j!
    auto fall = [](long k, long j) {
        Rat r = 1;
        for (long i = j + 1; i <= k; ++i)
            r *= i;
        return r;
    };
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const Letter& l = *it;
        if (l.rev)
            throw std::invalid_argument("li_coeff: plain words only");
        std::vector<std::vector<CycRat>> next(n + 1, zero_row());
        if (l.z == 0) {
            for (size_t k = 0; k + 1 <= maxk; ++k)
                if (!c[0][k].is_zero())
                    next[0][k + 1] = c[0][k] * CycRat(N, Rat(1, k + 1));
            for (long m = 1; m <= n; ++m)
                for (size_t k = 0; k <= maxk; ++k) {
                    if (c[m][k].is_zero())
                        continue;
                    for (size_t j = 0; j <= k; ++j) {
                        Rat coef = fall(k, j) / rat_pow(Rat(m), static_cast<long>(k - j) + 1);
                        if ((k - j) % 2 == 1)
                            coef = -coef;
                        next[m][j] += c[m][k] * CycRat(N, coef);
                    }
                }
        } else {
            // form expansion sum_{r>=1} kappa^r z^{r-1} dz with kappa = xi^{-j};
            // per (k, j): next[Nd][j] += (-1)^{k-j} (k!/j!) kappa^{Nd} / Nd^{k-j+1}
            //             * sum_{m < Nd} kappa^{-m} c[m][k]
            CycRat kappa = CycRat::root_power(N, -static_cast<long>(l.z));
            CycRat kappa_inv = CycRat::root_power(N, static_cast<long>(l.z));
            std::vector<CycRat> prefix(maxk + 1, CycRat(N, Rat(0)));
            CycRat kappa_inv_pow(N, Rat(1));
            CycRat kappa_pow(N, Rat(1));
            for (long m = 1; m <= n; ++m) {
                for (size_t k = 0; k <= maxk; ++k)
                    if (!c[m - 1][k].is_zero())
                        prefix[k] += c[m - 1][k] * kappa_inv_pow;
                kappa_inv_pow *= kappa_inv;
                kappa_pow *= kappa;
                for (size_t k = 0; k <= maxk; ++k) {
                    if (prefix[k].is_zero())
                        continue;
                    for (size_t j = 0; j <= k; ++j) {
                        Rat coef = fall(k, j) / rat_pow(Rat(m), static_cast<long>(k - j) + 1);
                        if ((k - j) % 2 == 1)
                            coef = -coef;
                        next[m][j] += prefix[k] * kappa_pow * CycRat(N, coef);
                    }
                }
            }
        }
        c = std::move(next);
    }
    return c[n][0];
}

HarmonicCoeffs<CycRat> har_coeffs(long n, unsigned n_roots, int max_weight, int max_depth)
{
    HarmonicCoeffs<CycRat> out(max_weight, max_depth);
    for (const auto& w : all_harmonic_words(n_roots, max_weight, max_depth))
        out.set(widen_loc(w), har(n, w));
    HarmonicWordLoc empty;
    empty.n_roots = n_roots;
    empty.j = {static_cast<int>(n_roots)};
    out.set(empty, CycRat(n_roots, Rat(1)));
    return out;
}

HarmonicSeq HarmonicSeq::har_seq(IndexSet index)
{
    return HarmonicSeq(std::move(index),
                       [](long n, const HarmonicWordLoc& w) { return har(n, w); });
}

HarmonicSeq HarmonicSeq::constant_one(IndexSet index)
{
    return HarmonicSeq(std::move(index), [](long, const HarmonicWordLoc& w) {
        return w.depth() == 0 ? CycRat(w.n_roots, Rat(1)) : CycRat(w.n_roots, Rat(0));
    });
}

std::vector<HarmonicWord> all_harmonic_words(unsigned n_roots, int max_weight, int max_depth)
{
    std::vector<HarmonicWord> out;
    // compositions (s_1..s_d) with sum <= max_weight, then all root choices
    std::vector<int> s;
    std::vector<int> j;
    std::function<void(int)> roots = [&](int pos) {
        if (pos == static_cast<int>(s.size()) + 1) {
            out.emplace_back(n_roots, s, j);
            return;
        }
        for (unsigned r = 1; r <= n_roots; ++r) {
            j.push_back(static_cast<int>(r));
            roots(pos + 1);
            j.pop_back();
        }
    };
    std::function<void(int)> comps = [&](int rem) {
        if (!s.empty() && static_cast<int>(s.size()) <= max_depth) {
            j.clear();
            roots(0);
        }
        if (static_cast<int>(s.size()) == max_depth)
            return;
        for (int v = 1; v <= rem; ++v) {
            s.push_back(v);
            comps(rem - v);
            s.pop_back();
        }
    };
    comps(max_weight);
    return out;
}

std::vector<std::map<HarmonicWord, CycRat>> frak_h_tables_upto(long n_max, unsigned n_roots,
                                                               int max_weight, int max_depth)
{
    // One DP over the untwisted eta-form: G_m(e) = sum over chains < m of
    // prod xi^{eta_i n_i} / n_i^{s_i}; then frak_h_n = xi^{-j_{d+1} n} G_n.
    struct Node {
        EtaWord word;
        CycRat acc;        // G_m accumulated so far
        const Node* child; // word minus outermost entry
    };
    unsigned N = n_roots;
    std::map<EtaWord, Node> nodes;
    EtaWord empty;
    empty.n_roots = N;
    nodes[empty] = Node{empty, CycRat(N, Rat(1)), nullptr};
    // enumerate eta-words by extending with one outer entry at a time
    std::vector<EtaWord> frontier{empty};
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<EtaWord> next;
        for (const auto& base : frontier) {
            int wt = base.weight();
            for (int snew = 1; snew + wt <= max_weight; ++snew) {
                for (unsigned eta = 0; eta < N; ++eta) {
                    EtaWord w = base;
                    w.s.push_back(snew);
                    w.eta.push_back(static_cast<int>(eta));
                    next.push_back(w);
                }
            }
        }
        for (auto& w : next)
            nodes[w] = Node{w, CycRat(N, Rat(0)), nullptr};
        frontier = std::move(next);
    }
    // wire children; process deepest first per m-step so the step reads
    // G_m (not G_{m+1}) of the child
    std::vector<Node*> ordered;
    for (auto& [w, node] : nodes) {
        if (w.depth() > 0) {
            EtaWord child = w;
            child.s.pop_back();
            child.eta.pop_back();
            node.child = &nodes.at(child);
        }
        ordered.push_back(&node);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const Node* a, const Node* b) { return a->word.depth() > b->word.depth(); });

    std::vector<std::map<HarmonicWord, CycRat>> out(n_max + 1);
    auto snapshot = [&](long n) {
        for (auto& [w, node] : nodes) {
            for (int j1 = 1; j1 <= static_cast<int>(N); ++j1) {
                HarmonicWord h = eta_decode(w, j1);
                CycRat v = node.acc;
                if (N > 1)
                    v *= CycRat::root_power(N, -static_cast<long>(h.j.back()) * n);
                out[n][h] = v;
                if (w.depth() == 0)
                    break; // single empty word
            }
        }
    };
    if (n_max >= 1)
        snapshot(1);
    for (long m = 1; m < n_max; ++m) {
        // G_{m+1}(w) = G_m(w) + xi^{eta_d m}/m^{s_d} * G_m(w minus last)
        for (Node* node : ordered) {
            if (node->word.depth() == 0)
                continue;
            const CycRat& inner = node->child->acc;
            if (inner.is_zero())
                continue;
            int sd = node->word.s.back();
            int ed = node->word.eta.back();
            CycRat factor(N, Rat(1) / rat_pow(Rat(m), sd));
            if (N > 1 && ed != 0)
                factor *= CycRat::root_power(N, static_cast<long>(ed) * m);
            node->acc += factor * inner;
        }
        snapshot(m + 1);
    }
    return out;
}

} // namespace cmzv
