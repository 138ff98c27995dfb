#include "cmzv/relations.hpp"

#include "cmzv/linalg.hpp"

#include "json.hpp"

#include <sstream>

namespace cmzv {

std::string RelationReport::verdict_string() const
{
    switch (verdict) {
    case Verdict::HoldsExact:
        return "holds-exact";
    case Verdict::HoldsModP:
        return "holds-mod-p^M";
    default:
        return "fails";
    }
}

std::string RelationReport::to_json() const
{
    nlohmann::json j;
    j["relation"] = relation;
    j["instance"] = instance;
    j["verdict"] = verdict_string();
    if (!witness.empty())
        j["witness"] = witness;
    return j.dump();
}

template <class S>
RelationReport check_shuffle(const NCSeries<S>& f, bool exact_backend)
{
    RelationReport rep;
    rep.relation = "shuffle";
    std::ostringstream inst;
    inst << "W=" << f.max_weight();
    rep.instance = inst.str();
    auto witness = group_like_witness(f);
    if (!witness) {
        rep.verdict = exact_backend ? RelationReport::Verdict::HoldsExact
                                    : RelationReport::Verdict::HoldsModP;
        return rep;
    }
    rep.verdict = RelationReport::Verdict::Fails;
    auto [u, v] = *witness;
    std::ostringstream os;
    os << "u='" << format_word_key(u, f.n_roots()) << "' v='" << format_word_key(v, f.n_roots())
       << "'";
    const S* fu = f.get(u);
    const S* fv = f.get(v);
    if (fu && fv)
        os << " lhs=" << scalar_to_string(*fu * *fv);
    else
        os << " lhs=0";
    rep.witness = os.str();
    return rep;
}

template RelationReport check_shuffle(const NCSeries<Rat>&, bool);
template RelationReport check_shuffle(const NCSeries<CycRat>&, bool);
template RelationReport check_shuffle(const NCSeries<PAdicNum>&, bool);

template <class S>
RelationReport check_quasi_shuffle(const std::function<S(const HarmonicWord&)>& eval,
                                   unsigned n_roots, int max_weight, int max_depth,
                                   bool exact_backend, const std::string& instance)
{
    RelationReport rep;
    rep.relation = "quasi-shuffle";
    rep.instance = instance;
    rep.verdict = exact_backend ? RelationReport::Verdict::HoldsExact
                                : RelationReport::Verdict::HoldsModP;
    auto words = all_harmonic_words(n_roots, max_weight - 1, max_depth - 1);
    for (const auto& w1 : words) {
        for (const auto& w2 : words) {
            if (w2 < w1)
                continue;
            if (w1.weight() + w2.weight() > max_weight || w1.depth() + w2.depth() > max_depth)
                continue;
            S lhs = eval(w1) * eval(w2);
            std::optional<S> rhs;
            for (auto& [w, m] : quasi_shuffle(w1, w2)) {
                S term = eval(w);
                term = term * scalar_int_like(term, m);
                if (rhs)
                    *rhs += term;
                else
                    rhs = term;
            }
            if (!rhs)
                continue;
            if (!scalar_is_zero(lhs - *rhs)) {
                rep.verdict = RelationReport::Verdict::Fails;
                std::ostringstream os;
                os << "w=" << format_harmonic(w1) << " w'=" << format_harmonic(w2)
                   << " lhs=" << scalar_to_string(lhs) << " rhs=" << scalar_to_string(*rhs);
                rep.witness = os.str();
                return rep;
            }
        }
    }
    return rep;
}

template RelationReport check_quasi_shuffle(const std::function<Rat(const HarmonicWord&)>&,
                                            unsigned, int, int, bool, const std::string&);
template RelationReport check_quasi_shuffle(const std::function<CycRat(const HarmonicWord&)>&,
                                            unsigned, int, int, bool, const std::string&);
template RelationReport check_quasi_shuffle(const std::function<PAdicNum(const HarmonicWord&)>&,
                                            unsigned, int, int, bool, const std::string&);

namespace {

WordKey adjoint_word(int b, std::initializer_list<int> s_outer_first)
{
    // word e_0^b e_1 e_0^{s_k - 1} e_1 ... (s values outermost-first)
    WordKey w(b, '\0');
    w += '\1';
    for (int s : s_outer_first) {
        w += WordKey(s - 1, '\0');
        w += '\1';
    }
    return w;
}

} // namespace

template <class S>
RelationReport check_adjoint_quasi_shuffle(AdjointCoeffs<S>& a, int max_total, bool exact_backend,
                                           const std::string& instance)
{
    RelationReport rep;
    rep.relation = "adjoint-quasi-shuffle";
    rep.instance = instance;
    rep.verdict = exact_backend ? RelationReport::Verdict::HoldsExact
                                : RelationReport::Verdict::HoldsModP;
    for (int b = 0; b + 2 <= max_total; ++b) {
        for (int s1 = 1; b + s1 + 1 <= max_total; ++s1) {
            for (int s2 = s1; b + s1 + s2 <= max_total; ++s2) {
                S lhs = adjoint_coeff(a, adjoint_word(b, {s2, s1}));
                lhs += adjoint_coeff(a, adjoint_word(b, {s1, s2}));
                lhs += adjoint_coeff(a, adjoint_word(b, {s1 + s2}));
                std::optional<S> rhs;
                for (int bp = 0; bp <= b; ++bp) {
                    S term = adjoint_coeff(a, adjoint_word(bp, {s1})) *
                             adjoint_coeff(a, adjoint_word(b - bp, {s2}));
                    if (rhs)
                        *rhs += term;
                    else
                        rhs = term;
                }
                if (!scalar_is_zero(lhs - *rhs)) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    std::ostringstream os;
                    os << "b=" << b << " s1=" << s1 << " s2=" << s2
                       << " lhs=" << scalar_to_string(lhs) << " rhs=" << scalar_to_string(*rhs);
                    rep.witness = os.str();
                    return rep;
                }
            }
        }
    }
    return rep;
}

template RelationReport check_adjoint_quasi_shuffle(AdjointCoeffs<Rat>&, int, bool,
                                                    const std::string&);
template RelationReport check_adjoint_quasi_shuffle(AdjointCoeffs<PAdicNum>&, int, bool,
                                                    const std::string&);

RelationReport check_commutant(int max_weight)
{
    RelationReport rep;
    rep.relation = "commutant";
    rep.instance = "W=" + std::to_string(max_weight);

    // unknowns: pairs of words with total weight <= W
    std::vector<std::pair<WordKey, WordKey>> pairs;
    auto words = all_word_keys(1, max_weight);
    for (const auto& u : words)
        for (const auto& v : words)
            if (key_weight(u) + key_weight(v) <= max_weight)
                pairs.emplace_back(u, v);
    std::map<std::pair<WordKey, WordKey>, size_t> index;
    for (size_t i = 0; i < pairs.size(); ++i)
        index[pairs[i]] = i;

    auto strip_front = [](const WordKey& w) -> std::optional<WordKey> {
        if (!w.empty() && w.front() == '\1')
            return w.substr(1);
        return std::nullopt;
    };
    auto strip_back = [](const WordKey& w) -> std::optional<WordKey> {
        if (!w.empty() && w.back() == '\1')
            return w.substr(0, w.size() - 1);
        return std::nullopt;
    };

    // equations from pairs of total weight 1..W+1
    std::vector<std::vector<Rat>> rows;
    auto words1 = all_word_keys(1, max_weight + 1);
    for (const auto& x : words1) {
        for (const auto& y : words1) {
            int tw = key_weight(x) + key_weight(y);
            if (tw < 1 || tw > max_weight + 1)
                continue;
            std::vector<Rat> row(pairs.size(), Rat(0));
            bool nonzero = false;
            auto add = [&](const std::optional<WordKey>& u, const WordKey& v, int sign) {
                if (!u)
                    return;
                row[index.at({*u, v})] += sign;
                nonzero = true;
            };
            auto add2 = [&](const WordKey& u, const std::optional<WordKey>& v, int sign) {
                if (!v)
                    return;
                row[index.at({u, *v})] += sign;
                nonzero = true;
            };
            add(strip_front(x), y, +1);
            add2(x, strip_front(y), +1);
            add(strip_back(x), y, -1);
            add2(x, strip_back(y), -1);
            if (nonzero)
                rows.push_back(std::move(row));
        }
    }
    DenseMatrix<Rat> m(rows.size(), pairs.size(), Rat(0));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j)
            m.at(i, j) = rows[i][j];
    size_t rank = matrix_rank(m);
    size_t kernel_dim = pairs.size() - rank;
    size_t expected = 0;
    for (int aexp = 0; aexp <= max_weight; ++aexp)
        for (int bexp = 0; aexp + bexp <= max_weight; ++bexp)
            ++expected;
    // membership of every e_1^a tensor e_1^b: the unit vector at that pair
    // satisfies each equation iff the row entry vanishes there
    bool member_ok = true;
    for (int aexp = 0; aexp <= max_weight && member_ok; ++aexp) {
        for (int bexp = 0; aexp + bexp <= max_weight && member_ok; ++bexp) {
            size_t col = index.at({WordKey(aexp, '\1'), WordKey(bexp, '\1')});
            for (const auto& row : rows) {
                if (row[col] != 0) {
                    member_ok = false;
                    break;
                }
            }
        }
    }
    std::ostringstream os;
    os << "kernel-dim=" << kernel_dim << " expected=" << expected
       << " e1-pairs-in-kernel=" << (member_ok ? "yes" : "no");
    rep.witness = os.str();
    rep.verdict = (kernel_dim == expected && member_ok) ? RelationReport::Verdict::HoldsExact
                                                        : RelationReport::Verdict::Fails;
    return rep;
}

namespace {

// a[combination of words], exact.
Rat apply_combination(const NCSeries<Rat>& a, const WordCombination& comb)
{
    Rat acc = 0;
    for (auto& [w, m] : comb) {
        const Rat* v = a.get(w);
        if (v)
            acc += *v * m;
    }
    return acc;
}

bool e1_powers_vanish(const NCSeries<Rat>& f)
{
    for (int s = 1; s <= f.max_weight(); ++s) {
        const Rat* v = f.get(WordKey(s, '\1'));
        if (v && *v != 0)
            return false;
    }
    return true;
}

// c') system: for all s >= 1, l >= 0 and words w, w' not ending with e_0,
// a[ sum_{s'=0}^{s-1} (-1)^{s-s'} binom(l+s-s'-1, l)
//        (e_0^{s'} e_1 w) sh (e_0^{s+l-1-s'} e_1 w') ] = 0,
// plus a[v sh e_0] = 0 for all words v.
bool cprime_system_holds(const NCSeries<Rat>& a)
{
    int W = a.max_weight();
    WordKey e0(1, '\0');
    for (const auto& v : all_word_keys(1, W - 1)) {
        WordCombination comb;
        for (auto& [w, m] : shuffle_words(v, e0))
            comb[w] += m;
        if (apply_combination(a, comb) != 0)
            return false;
    }
    auto yw = [](const WordKey& w) { return w.empty() || w.back() == '\1'; };
    auto words = all_word_keys(1, W);
    for (const auto& w : words) {
        if (!yw(w))
            continue;
        for (const auto& wp : words) {
            if (!yw(wp))
                continue;
            for (int s = 1; s + key_weight(w) + key_weight(wp) + 2 <= W; ++s) {
                for (int l = 0; s + l + key_weight(w) + key_weight(wp) + 2 <= W; ++l) {
                    WordCombination comb;
                    for (int sp = 0; sp <= s - 1; ++sp) {
                        long sign = ((s - sp) % 2 == 0) ? 1 : -1;
                        Rat coeff = binomial(static_cast<long>(l + s - sp - 1), l) * sign;
                        if (coeff == 0)
                            continue;
                        WordKey u1 = WordKey(sp, '\0') + '\1' + w;
                        WordKey u2 = WordKey(s + l - 1 - sp, '\0') + '\1' + wp;
                        long c = mpz_get_si(coeff.get_num().get_mpz_t());
                        for (auto& [ww, m] : shuffle_words(u1, u2))
                            comb[ww] += c * m;
                    }
                    if (apply_combination(a, comb) != 0)
                        return false;
                }
            }
        }
    }
    return true;
}

} // namespace

Prop73Report check_prop73(const NCSeries<Rat>& f)
{
    if (!e1_powers_vanish(f))
        throw std::invalid_argument("check_prop73: requires f[e_1^s] = 0");
    Prop73Report rep;
    rep.a_group_like = is_group_like(f);
    NCSeries<Rat> a = adjoint(f, letter_series(f, WordKey(1, '\1'), Rat(1)));
    rep.b_adjoint_primitive = is_primitive(a);
    rep.cprime_harmonic_system = cprime_system_holds(a);
    return rep;
}

Depth11Report check_depth11_equivalence(const NCSeries<Rat>& f)
{
    Depth11Report rep;
    int W = f.max_weight();
    auto coeff = [&](const WordKey& w) {
        const Rat* v = f.get(w);
        return v ? *v : Rat(0);
    };
    rep.f_side = true;
    for (int s = 1; s + 1 <= W; ++s) {
        for (int t = s; s + t <= W; ++t) {
            WordKey ws = WordKey(s - 1, '\0') + '\1';
            WordKey wt = WordKey(t - 1, '\0') + '\1';
            Rat lhs = coeff(ws) * coeff(wt);
            Rat rhs = coeff(WordKey(t - 1, '\0') + '\1' + ws) +
                      coeff(WordKey(s - 1, '\0') + '\1' + wt) -
                      coeff(WordKey(s + t - 1, '\0') + '\1');
            if (lhs != rhs) {
                rep.f_side = false;
                break;
            }
        }
        if (!rep.f_side)
            break;
    }
    NCSeries<Rat> aser = adjoint(f, letter_series(f, WordKey(1, '\1'), Rat(1)));
    auto a = adjoint_from_series(aser);
    rep.adjoint_side = true;
    for (int b = 0; b + 3 <= W; ++b) {
        for (int s1 = 1; b + s1 + 2 <= W; ++s1) {
            for (int s2 = s1; b + s1 + s2 + 1 <= W; ++s2) {
                Rat lhs = adjoint_coeff(a, adjoint_word(b, {s2, s1})) +
                          adjoint_coeff(a, adjoint_word(b, {s1, s2})) +
                          adjoint_coeff(a, adjoint_word(b, {s1 + s2}));
                Rat rhs = 0;
                for (int bp = 0; bp <= b; ++bp)
                    rhs += adjoint_coeff(a, adjoint_word(bp, {s1})) *
                           adjoint_coeff(a, adjoint_word(b - bp, {s2}));
                if (lhs != rhs) {
                    rep.adjoint_side = false;
                    break;
                }
            }
            if (!rep.adjoint_side)
                break;
        }
        if (!rep.adjoint_side)
            break;
    }
    return rep;
}

namespace {

// Lambda^m-layer of the twisted functional: (-1)^{depth v} a[e_0^m e_1 v].
Rat h_layer(const NCSeries<Rat>& a, const WordKey& v, int m)
{
    if (m < 0 || m + 1 + key_weight(v) > a.max_weight())
        return 0;
    const Rat* c = a.get(WordKey(m, '\0') + '\1' + v);
    if (!c)
        return 0;
    return (key_depth(v) % 2 == 0) ? *c : -*c;
}

} // namespace

DualityReport check_prime_harmonic_duality(const NCSeries<Rat>& f)
{
    DualityReport rep;
    int W = f.max_weight();
    NCSeries<Rat> e1 = letter_series(f, WordKey(1, '\1'), Rat(1));
    NCSeries<Rat> a = adjoint(f, e1);

    // source: e_0 + a(e_0, e_1) + a(e_0, -e_0 - e_1) = 0
    NCSeries<Rat> e0 = letter_series(f, WordKey(1, '\0'), Rat(1));
    std::vector<NCSeries<Rat>> images{e0, -e0 - e1};
    NCSeries<Rat> source = e0 + a + substitute(a, images);
    rep.source_holds = source.is_zero();

    // duality, as it falls out of the source equation applied inside the
    // geometric kernel (unfolding the last-e_1 split of (1 - L(e_0-e_1))^{-1}
    // and conjugating by the depth sign):
    //   h(w(e_0+e_1, -e_1)) = h(w) + sum_{z nonempty, ending e_1}
    //                                L^{weight z} h(z w)
    // checked per Lambda-layer within the truncation.
    rep.duality_holds = true;
    std::vector<NCSeries<Rat>> dual_images{e0 + e1, -e1};
    for (const auto& w : all_word_keys(1, W - 1)) {
        NCSeries<Rat> subw = substitute(letter_series(f, w, Rat(1)), dual_images);
        for (int k = 0; k + 1 + key_weight(w) <= W; ++k) {
            Rat lhs = 0;
            for (auto& [v, c] : subw.terms())
                lhs += c * h_layer(a, v, k);
            Rat rhs = h_layer(a, w, k);
            for (const auto& z : all_word_keys(1, k)) {
                if (z.empty() || z.back() != '\1')
                    continue;
                rhs += h_layer(a, z + w, k - key_weight(z));
            }
            if (lhs != rhs) {
                rep.duality_holds = false;
                break;
            }
        }
        if (!rep.duality_holds)
            break;
    }
    return rep;
}

RelationReport rank_independence(const std::vector<HarmonicWord>& words, long n_max,
                                 int poly_degree)
{
    RelationReport rep;
    rep.relation = "rank-independence";
    std::vector<HarmonicWord> cols_words;
    bool has_empty = false;
    for (const auto& w : words) {
        if (w.depth() == 0)
            has_empty = true;
        cols_words.push_back(w);
    }
    if (!has_empty)
        cols_words.insert(cols_words.begin(), HarmonicWord{});
    size_t cols = cols_words.size() * (poly_degree + 1);
    size_t rows = n_max >= 2 ? static_cast<size_t>(n_max - 1) : 0;
    std::ostringstream inst;
    inst << "words=" << cols_words.size() << " degree<=" << poly_degree << " n<=" << n_max;
    rep.instance = inst.str();
    if (rows < cols)
        throw std::invalid_argument(
            "rank_independence: underdetermined (n_max too small for the column count)");
    DenseMatrix<Rat> m(rows, cols, Rat(0));
    for (long n = 2; n <= n_max; ++n) {
        size_t c = 0;
        for (const auto& w : cols_words) {
            Rat base = frak_h(n, w).rational_part();
            for (int k = 0; k <= poly_degree; ++k)
                m.at(n - 2, c++) = base * rat_pow(Rat(n), k);
        }
    }
    size_t rank = matrix_rank(m);
    std::ostringstream os;
    os << "rank=" << rank << "/" << cols;
    rep.witness = os.str();
    rep.verdict =
        rank == cols ? RelationReport::Verdict::HoldsExact : RelationReport::Verdict::Fails;
    return rep;
}

NCSeries<Rat> random_group_like(int max_weight, std::mt19937_64& rng, bool zero_e1_powers)
{
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> letter(0, 1);
    std::uniform_int_distribution<int> count(3, 5);
    NCSeries<Rat> f(1, max_weight);
    f.set(WordKey{}, Rat(1));
    Rat total[2] = {Rat(0), Rat(0)};
    int factors = count(rng);
    for (int i = 0; i < factors; ++i) {
        Rat c(num(rng), den(rng));
        c.canonicalize();
        if (c == 0)
            c = Rat(1, 2);
        char x = static_cast<char>(letter(rng));
        total[static_cast<int>(x)] += c;
        NCSeries<Rat> arg(1, max_weight);
        arg.set(WordKey(1, x), c);
        f = concat_mul(f, exp_concat(arg));
    }
    if (zero_e1_powers) {
        // cancel the letter totals, so f[e_0^k] = f[e_1^k] = 0 for all k >= 1
        for (char x : {'\0', '\1'}) {
            if (total[static_cast<int>(x)] == 0)
                continue;
            NCSeries<Rat> arg(1, max_weight);
            arg.set(WordKey(1, x), -total[static_cast<int>(x)]);
            f = concat_mul(f, exp_concat(arg));
        }
    }
    return f;
}

NCSeries<Rat> random_duality_source(int max_weight, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pick(-2, 2);
    NCSeries<Rat> f(1, max_weight);
    f.set(WordKey{}, Rat(1));

    auto source_of = [&](const NCSeries<Rat>& g) {
        NCSeries<Rat> e0 = letter_series(g, WordKey(1, '\0'), Rat(1));
        NCSeries<Rat> e1 = letter_series(g, WordKey(1, '\1'), Rat(1));
        NCSeries<Rat> a = adjoint(g, e1);
        std::vector<NCSeries<Rat>> images{e0, -e0 - e1};
        return e0 + a + substitute(a, images);
    };

    // weight-by-weight affine solve; weight 1 stays zero (the identity
    // solution), randomness enters from weight 2 on through the kernel
    for (int k = 2; k <= max_weight; ++k) {
        std::vector<WordKey> unknowns;
        for (const auto& w : all_word_keys(1, k))
            if (key_weight(w) == k)
                unknowns.push_back(w);
        // rows: shuffle constraints at weight k and source coefficients at
        // weight k+1 (affine in the weight-k perturbation for k >= 2)
        NCSeries<Rat> base_src = source_of(f);
        std::vector<std::pair<WordKey, Rat>> base_coeffs;
        auto src_rows = [&](const NCSeries<Rat>& src) {
            std::vector<Rat> vals;
            for (const auto& u : all_word_keys(1, k + 1)) {
                if (key_weight(u) != k + 1)
                    continue;
                const Rat* v = src.get(u);
                vals.push_back(v ? *v : Rat(0));
            }
            return vals;
        };
        std::vector<Rat> base_vals = src_rows(base_src);

        size_t n_src = base_vals.size();
        std::vector<std::pair<WordKey, WordKey>> shuffle_pairs;
        for (const auto& u : all_word_keys(1, k - 1)) {
            if (u.empty())
                continue;
            for (const auto& v : all_word_keys(1, k - key_weight(u))) {
                if (v.empty() || v < u || key_weight(u) + key_weight(v) != k)
                    continue;
                shuffle_pairs.emplace_back(u, v);
            }
        }
        size_t n_rows = n_src + shuffle_pairs.size();
        DenseMatrix<Rat> m(n_rows, unknowns.size(), Rat(0));
        std::vector<Rat> rhs(n_rows, Rat(0));
        for (size_t j = 0; j < unknowns.size(); ++j) {
            NCSeries<Rat> probe = f;
            probe.add(unknowns[j], Rat(1));
            std::vector<Rat> vals = src_rows(source_of(probe));
            for (size_t i = 0; i < n_src; ++i)
                m.at(i, j) = vals[i] - base_vals[i];
        }
        for (size_t i = 0; i < n_src; ++i)
            rhs[i] = -base_vals[i];
        for (size_t i = 0; i < shuffle_pairs.size(); ++i) {
            auto& [u, v] = shuffle_pairs[i];
            for (auto& [w, mult] : shuffle_words(u, v)) {
                auto it = std::find(unknowns.begin(), unknowns.end(), w);
                m.at(n_src + i, static_cast<size_t>(it - unknowns.begin())) += mult;
            }
            const Rat* fu = f.get(u);
            const Rat* fv = f.get(v);
            rhs[n_src + i] = (fu && fv) ? *fu * *fv : Rat(0);
        }
        // particular solution plus a random kernel combination
        DenseMatrix<Rat> mk = m;
        auto x = solve_linear(m, rhs, Rat(0));
        if (!x)
            throw std::runtime_error("random_duality_source: inconsistent system at weight " +
                                     std::to_string(k));
        auto kernel = kernel_basis(mk, Rat(1), Rat(0));
        for (auto& kv : kernel) {
            Rat c(pick(rng));
            if (c == 0)
                continue;
            for (size_t j = 0; j < unknowns.size(); ++j)
                (*x)[j] += c * kv[j];
        }
        for (size_t j = 0; j < unknowns.size(); ++j)
            if ((*x)[j] != 0)
                f.add(unknowns[j], (*x)[j]);
    }
    return f;
}

} // namespace cmzv
