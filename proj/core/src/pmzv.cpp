#include "cmzv/pmzv.hpp"

#include <sstream>
#include <stdexcept>

namespace cmzv {

namespace {

int e1_count(const WordKey& w)
{
    int c = 0;
    for (char x : w)
        c += x == '\1';
    return c;
}

} // namespace

ZSeries zs_mul(const ZSeries& a, const ZSeries& b)
{
    int deg = std::min(a.degree(), b.degree());
    ZSeries r;
    r.coeffs.reserve(deg + 1);
    for (int n = 0; n <= deg; ++n) {
        NCSeries<PAdicNum> acc(a.coeffs[0].n_roots(), a.coeffs[0].max_weight(),
                               a.coeffs[0].max_depth());
        for (int m = 0; m <= n; ++m)
            acc += concat_mul(a.coeffs[m], b.coeffs[n - m]);
        r.coeffs.push_back(std::move(acc));
    }
    return r;
}

ZSeries zs_inverse(const ZSeries& a)
{
    const NCSeries<PAdicNum>& a0 = a.coeffs.at(0);
    NCSeries<PAdicNum> c0 = inverse(a0);
    ZSeries r;
    r.coeffs.push_back(c0);
    for (int n = 1; n <= a.degree(); ++n) {
        NCSeries<PAdicNum> acc(a0.n_roots(), a0.max_weight(), a0.max_depth());
        for (int m = 0; m < n; ++m)
            acc += concat_mul(r.coeffs[m], a.coeffs[n - m]);
        r.coeffs.push_back(concat_mul(-acc, c0));
    }
    return r;
}

AdjointCoeffs<PAdicNum> compute_adjoint_mzv(const FrobeniusConfig& cfg)
{
    if (cfg.n_roots != 1)
        throw std::invalid_argument("compute_adjoint_mzv: N = 1 (depth <= 2 comparison maps)");
    PrecCtx ctx = cfg.prec_ctx();
    int max_b = std::max(cfg.max_b, cfg.max_weight + 1);
    return sigma_rt(ctx, g_har(ctx), max_b, std::max(cfg.max_weight, 2));
}

std::map<HarmonicWord, PAdicNum> zeta_ad_view(AdjointCoeffs<PAdicNum>& a, int max_weight,
                                              int max_depth)
{
    std::map<HarmonicWord, PAdicNum> out;
    for (const auto& h : all_harmonic_words(1, max_weight, std::min(max_depth, 3))) {
        WordKey w = key_from_word(from_harmonic(h));
        PAdicNum v = adjoint_coeff(a, w);
        out.emplace(h, h.depth() % 2 == 0 ? v : -v);
    }
    return out;
}

NCSeries<PAdicNum> compute_phi(const FrobeniusConfig& cfg, AdjointCoeffs<PAdicNum>& a)
{
    int W = cfg.max_weight;
    NCSeries<PAdicNum> a_series(1, W + 1);
    for (const auto& w : all_word_keys(1, W + 1)) {
        int c = e1_count(w);
        if (c == 0 || c > 3)
            continue;
        a_series.set(w, adjoint_coeff(a, w));
    }
    auto known = [](const WordKey& w) {
        int c = 0;
        for (char x : w)
            c += x == '\1';
        return c <= 3;
    };
    // with depth-bounded adjoint data the high-depth Lie directions of Phi
    // are not determined; take the section with those coordinates zero
    return recover_phi(a_series, W, known, true);
}

NCSeries<PAdicNum> compute_phi(const FrobeniusConfig& cfg)
{
    auto a = compute_adjoint_mzv(cfg);
    return compute_phi(cfg, a);
}

namespace {

// LiKZ(z)(lambda e_0, lambda e_1) truncated: coefficient of z^k is
// sum_w li_coeff(w, k) lambda^{weight(w)} w.
ZSeries li_kz_scaled(const FrobeniusConfig& cfg, long working_prec)
{
    int W = cfg.max_weight;
    long scale = cfg.prec_ctx().p_pow_alpha();
    ZSeries r;
    auto words = all_word_keys(1, W);
    for (int k = 0; k <= cfg.z_degree; ++k) {
        NCSeries<PAdicNum> layer(1, W, cfg.max_depth);
        for (const auto& w : words) {
            Rat c = li_coeff(word_from_key(w), k).rational_part();
            if (c == 0)
                continue;
            c *= rat_pow(Rat(scale), key_weight(w));
            layer.set(w, PAdicNum::from_rational(c, cfg.p, working_prec));
        }
        r.coeffs.push_back(std::move(layer));
    }
    return r;
}

// LiKZ(z^{p^a})(e_0, Phi^{-1} e_1 Phi) truncated.
ZSeries li_kz_twisted(const FrobeniusConfig& cfg, const NCSeries<PAdicNum>& phi,
                      long working_prec)
{
    int W = cfg.max_weight;
    long q = cfg.prec_ctx().p_pow_alpha();
    NCSeries<PAdicNum> phiW(1, W, cfg.max_depth);
    for (auto& [w, v] : phi.terms())
        phiW.set(w, v);
    PAdicNum one = PAdicNum::from_rational(Rat(1), cfg.p, working_prec);
    NCSeries<PAdicNum> e1 = letter_series(phiW, WordKey(1, '\1'), one);
    NCSeries<PAdicNum> ad = adjoint(phiW, e1);
    std::vector<NCSeries<PAdicNum>> images{letter_series(phiW, WordKey(1, '\0'), one), ad};

    ZSeries r;
    auto words = all_word_keys(1, W);
    for (int k = 0; k <= cfg.z_degree; ++k) {
        NCSeries<PAdicNum> layer(1, W, cfg.max_depth);
        if (k % q == 0) {
            int kk = static_cast<int>(k / q);
            for (const auto& w : words) {
                Rat c = li_coeff(word_from_key(w), kk).rational_part();
                if (c == 0)
                    continue;
                NCSeries<PAdicNum> img =
                    substitute(letter_series(phiW, w, PAdicNum::from_rational(c, cfg.p,
                                                                              working_prec)),
                               images);
                layer += img;
            }
        }
        r.coeffs.push_back(std::move(layer));
    }
    return r;
}

} // namespace

ZSeries compute_li_dagger(const FrobeniusConfig& cfg, const NCSeries<PAdicNum>& phi)
{
    long working_prec = cfg.prec + 4 * cfg.max_weight + 8;
    ZSeries a = li_kz_scaled(cfg, working_prec);
    ZSeries b = li_kz_twisted(cfg, phi, working_prec);
    return zs_mul(a, zs_inverse(b));
}

ZSeries compute_li_dagger(const FrobeniusConfig& cfg)
{
    return compute_li_dagger(cfg, compute_phi(cfg));
}

PAdicNum har_dagger(const ZSeries& li, long n, const Word& w)
{
    if (n < 0 || n > li.degree())
        throw std::out_of_range("har_dagger: z-degree out of the computed range");
    WordKey k = key_from_word(w);
    const NCSeries<PAdicNum>& layer = li.coeffs[n];
    const PAdicNum* v = layer.get(k);
    unsigned long p = 5;
    for (auto& [ww, vv] : layer.terms()) {
        p = vv.prime();
        break;
    }
    PAdicNum base = v ? *v : PAdicNum::zero(p);
    Rat npow = rat_pow(Rat(n), key_weight(k));
    return base * PAdicNum::from_rational(npow, p, std::max<long>(base.rel_precision(), 1));
}

RelationReport check_li_dagger_shuffle(const ZSeries& li, int max_pair_weight, long n_max)
{
    RelationReport rep;
    rep.relation = "li-dagger-shuffle";
    {
        std::ostringstream os;
        os << "pair-weight<=" << max_pair_weight << " n<=" << n_max;
        rep.instance = os.str();
    }
    rep.verdict = RelationReport::Verdict::HoldsModP;
    long nm = std::min<long>(n_max, li.degree());
    auto words = all_word_keys(1, max_pair_weight - 1);
    for (const auto& u : words) {
        if (u.empty())
            continue;
        for (const auto& v : words) {
            if (v.empty() || v < u || key_weight(u) + key_weight(v) > max_pair_weight)
                continue;
            if (key_weight(u) + key_weight(v) > li.coeffs[0].max_weight())
                continue;
            for (long n = 1; n <= nm; ++n) {
                std::optional<PAdicNum> lhs;
                for (long m = 0; m <= n; ++m) {
                    const PAdicNum* a = li.coeffs[m].get(u);
                    const PAdicNum* b = li.coeffs[n - m].get(v);
                    if (!a || !b)
                        continue;
                    PAdicNum term = *a * *b;
                    if (lhs)
                        *lhs += term;
                    else
                        lhs = term;
                }
                std::optional<PAdicNum> rhs;
                for (auto& [w, mult] : shuffle_words(u, v)) {
                    const PAdicNum* c = li.coeffs[n].get(w);
                    if (!c)
                        continue;
                    PAdicNum term = *c * scalar_int_like(*c, mult);
                    if (rhs)
                        *rhs += term;
                    else
                        rhs = term;
                }
                bool zero;
                if (lhs && rhs)
                    zero = scalar_is_zero(*lhs - *rhs);
                else if (lhs)
                    zero = scalar_is_zero(*lhs);
                else if (rhs)
                    zero = scalar_is_zero(*rhs);
                else
                    zero = true;
                if (!zero) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    std::ostringstream os;
                    os << "u='" << format_word_key(u, 1) << "' v='" << format_word_key(v, 1)
                       << "' n=" << n;
                    if (lhs)
                        os << " lhs=" << lhs->to_string();
                    if (rhs)
                        os << " rhs=" << rhs->to_string();
                    rep.witness = os.str();
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace cmzv
