// cmzv: computation, verification and export for cyclotomic multiple
// harmonic sums, harmonic Ihara actions and adjoint p-adic multiple zeta
// values. Machine-readable output goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 all requested computations/verifications succeeded,
// 1 verification failure (witness on stdout), 2 usage error, 3 internal
// precision/certification failure.

#include "cmzv/io.hpp"
#include "cmzv/pmzv.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <future>
#include <iostream>

using namespace cmzv;

namespace {

struct CommonOpts {
    std::string format = "pretty";
    unsigned jobs = 1;
    unsigned long seed = 1;
};

void add_common(CLI::App* app, CommonOpts& c)
{
    app->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app->add_option("--jobs", c.jobs, "Worker threads for batch verification")
        ->check(CLI::Range(1u, 64u));
    app->add_option("--seed", c.seed, "Seed for randomized property suites");
}

int emit_reports(const std::vector<RelationReport>& reports, const CommonOpts& c)
{
    bool all_ok = true;
    for (const auto& r : reports) {
        all_ok = all_ok && r.ok();
        if (c.format == "pretty") {
            std::cout << r.relation << " [" << r.instance << "] " << r.verdict_string();
            if (!r.witness.empty())
                std::cout << "  witness: " << r.witness;
            std::cout << "\n";
        } else if (c.format == "csv") {
            std::cout << r.relation << "," << r.instance << "," << r.verdict_string() << ",\""
                      << r.witness << "\"\n";
        } else {
            std::cout << r.to_json() << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

void emit_value(const std::string& label, const std::string& value, const CommonOpts& c)
{
    if (c.format == "json") {
        nlohmann::json j;
        j["query"] = label;
        j["value"] = value;
        std::cout << j.dump() << "\n";
    } else if (c.format == "csv") {
        std::cout << "\"" << label << "\"," << value << "\n";
    } else {
        std::cout << value << "\n";
    }
}

// Deterministic parallel map: results collected in input order.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& inputs, unsigned jobs, Fn fn)
    -> std::vector<decltype(fn(inputs.front()))>
{
    using Out = decltype(fn(inputs.front()));
    std::vector<Out> out(inputs.size());
    if (jobs <= 1 || inputs.size() <= 1) {
        for (size_t i = 0; i < inputs.size(); ++i)
            out[i] = fn(inputs[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= inputs.size())
                return;
            out[i] = fn(inputs[i]);
        }
    };
    std::vector<std::future<void>> futs;
    for (unsigned t = 0; t < jobs; ++t)
        futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs)
        f.get();
    return out;
}

std::vector<int> parse_tuple(const std::string& text)
{
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty())
                out.push_back(std::stoi(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cyclotomic multiple harmonic sums, harmonic Ihara actions and "
                 "adjoint p-adic multiple zeta values"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config");
    CommonOpts common;
    add_common(&app, common);

    int exit_code = 0;
    std::vector<std::function<void()>> actions;

    // ---- mhs ----
    auto* mhs_cmd = app.add_subcommand("mhs", "Multiple harmonic sums");
    mhs_cmd->require_subcommand(1);
    {
        auto* eval = mhs_cmd->add_subcommand("eval", "Evaluate one harmonic sum");
        auto n = std::make_shared<long>(1);
        auto word = std::make_shared<std::string>();
        auto n_roots = std::make_shared<unsigned>(1);
        auto weighted = std::make_shared<bool>(false);
        eval->add_option("--n", *n, "Upper index")->required();
        eval->add_option("--word", *word, "Harmonic word h[j...;s...]")->required();
        eval->add_option("--n-roots", *n_roots, "Root order N");
        eval->add_flag("--weighted", *weighted, "Weighted sum har_n = n^weight frak_h_n");
        eval->callback([=, &common]() {
            HarmonicWordLoc w = parse_harmonic(*word, *n_roots);
            CycRat v = *weighted ? har(*n, w) : frak_h(*n, w);
            emit_value("frak_h(" + std::to_string(*n) + ", " + *word + ")", v.to_string(),
                       common);
        });
    }
    {
        auto* table = mhs_cmd->add_subcommand("table", "Survey table of harmonic sums");
        auto n_max = std::make_shared<long>(10);
        auto max_weight = std::make_shared<int>(3);
        auto max_depth = std::make_shared<int>(2);
        auto n_roots = std::make_shared<unsigned>(1);
        auto weighted = std::make_shared<bool>(false);
        table->add_option("--n-max", *n_max);
        table->add_option("--max-weight", *max_weight);
        table->add_option("--max-depth", *max_depth);
        table->add_option("--n-roots", *n_roots);
        table->add_flag("--weighted", *weighted);
        table->callback([=, &common]() {
            auto tables = frak_h_tables_upto(*n_max, *n_roots, *max_weight, *max_depth);
            if (common.format == "json") {
                nlohmann::json rows = nlohmann::json::array();
                for (long n = 1; n <= *n_max; ++n)
                    for (auto& [w, v] : tables[n]) {
                        CycRat val = *weighted
                                         ? v * CycRat(w.n_roots, rat_pow(Rat(n), w.weight()))
                                         : v;
                        rows.push_back({{"n", n},
                                        {"word", format_harmonic(w)},
                                        {"value", val.to_string()}});
                    }
                std::cout << rows.dump() << "\n";
            } else {
                std::cout << "n,word,value\n";
                for (long n = 1; n <= *n_max; ++n)
                    for (auto& [w, v] : tables[n]) {
                        CycRat val = *weighted
                                         ? v * CycRat(w.n_roots, rat_pow(Rat(n), w.weight()))
                                         : v;
                        std::cout << mhs_csv_row(n, format_harmonic(w), val.to_string()) << "\n";
                    }
            }
        });
    }

    // ---- bcoef ----
    {
        auto* bc = app.add_subcommand("bcoef", "Localized-MHS polynomial coefficients");
        auto b = std::make_shared<long>(1);
        auto tuple = std::make_shared<std::string>();
        auto decompose = std::make_shared<bool>(false);
        bc->add_option("--b", *b, "Power of n");
        bc->add_option("--tuple", *tuple, "Exponent tuple l_1,...,l_d (innermost first)")
            ->required();
        bc->add_flag("--decompose", *decompose, "Print the full decomposition");
        bc->callback([=, &common]() {
            std::vector<int> lam = parse_tuple(*tuple);
            if (*decompose) {
                emit_value("decompose(" + *tuple + ")",
                           bdecomposition_to_json(global_btable().decompose(lam)), common);
            } else {
                emit_value("B(" + std::to_string(*b) + "; " + *tuple + ")",
                           global_btable().b_coeff(*b, lam).get_str(), common);
            }
        });
    }

    // ---- li ----
    auto* li_cmd = app.add_subcommand("li", "Hyperlogarithm series coefficients");
    li_cmd->require_subcommand(1);
    {
        auto* co = li_cmd->add_subcommand("coeff", "Coefficient of z^n in Li[w](z)");
        auto word = std::make_shared<std::string>();
        auto n = std::make_shared<long>(1);
        auto n_roots = std::make_shared<unsigned>(1);
        co->add_option("--word", *word, "Plain word, e.g. '0 1'")->required();
        co->add_option("--n", *n, "z-degree")->required();
        co->add_option("--n-roots", *n_roots);
        co->callback([=, &common]() {
            Word w = to_plain(parse_word(*word, *n_roots));
            emit_value("li[" + *word + "][z^" + std::to_string(*n) + "]",
                       li_coeff(w, *n, *n_roots).to_string(), common);
        });
    }

    // ---- ihara ----
    auto* ih = app.add_subcommand("ihara", "Harmonic Ihara actions and comparison maps");
    ih->require_subcommand(1);
    auto p = std::make_shared<unsigned long>(5);
    auto alpha = std::make_shared<int>(1);
    auto prec = std::make_shared<long>(5);
    for (auto* sub : {ih}) {
        sub->add_option("--p", *p, "Prime");
        sub->add_option("--alpha", *alpha, "Frobenius iterate");
        sub->add_option("--prec", *prec, "Certified precision M (mod p^M)");
    }
    {
        auto* act = ih->add_subcommand("act-rt", "RT harmonic Ihara action at (n, word)");
        auto n = std::make_shared<long>(2);
        auto word = std::make_shared<std::string>("h[1,1;1]");
        act->add_option("--n", *n)->required();
        act->add_option("--word", *word)->required();
        act->callback([=, &common]() {
            PrecCtx ctx{*p, *alpha, *prec};
            HarmonicWordLoc w = parse_harmonic(*word, 1);
            GSystem g = g_har(ctx);
            HarmonicSeq h = HarmonicSeq::har_seq();
            PAdicNum v = is_plain(w) ? act_rt(ctx, g, h, *n, narrow_plain(w))
                                     : act_rt_wr(ctx, g, h, *n, narrow_wr(w));
            emit_value("act-rt", common.format == "json" ? padic_to_json(v) : v.to_string(),
                       common);
        });
    }
    {
        auto* act = ih->add_subcommand("act-drrt", "DR-RT harmonic Ihara action at (n, word)");
        auto n = std::make_shared<long>(2);
        auto word = std::make_shared<std::string>("h[1,1;1]");
        auto max_b = std::make_shared<int>(14);
        act->add_option("--n", *n)->required();
        act->add_option("--word", *word)->required();
        act->add_option("--max-b", *max_b);
        act->callback([=, &common]() {
            PrecCtx ctx{*p, *alpha, *prec};
            HarmonicWord w = narrow_plain(parse_harmonic(*word, 1));
            auto a = sigma_rt(ctx, g_har(ctx), *max_b, std::max(w.weight() + 2, 4));
            HarmonicSeq h = HarmonicSeq::har_seq();
            PAdicNum v = act_drrt(a, h, *n, w);
            emit_value("act-drrt", common.format == "json" ? padic_to_json(v) : v.to_string(),
                       common);
        });
    }
    {
        auto* sg = ih->add_subcommand("sigma-rt", "Comparison map Sigma^RT of har_{p^alpha}");
        auto max_b = std::make_shared<int>(8);
        auto max_weight = std::make_shared<int>(4);
        sg->add_option("--max-b", *max_b);
        sg->add_option("--max-weight", *max_weight);
        sg->callback([=, &common]() {
            PrecCtx ctx{*p, *alpha, *prec};
            auto a = sigma_rt(ctx, g_har(ctx), *max_b, *max_weight);
            emit_value("sigma-rt", adjoint_to_json(a), common);
        });
    }
    {
        auto* sg = ih->add_subcommand("sigma-drinv",
                                      "Sigma^DR_inv of the Sigma^RT family (round trip)");
        auto max_weight = std::make_shared<int>(4);
        auto max_depth = std::make_shared<int>(2);
        sg->add_option("--max-weight", *max_weight);
        sg->add_option("--max-depth", *max_depth);
        sg->callback([=, &common]() {
            PrecCtx ctx{*p, *alpha, *prec};
            auto a = sigma_rt(ctx, g_har(ctx), 14, *max_weight + 1);
            auto back = sigma_dr_inv(a, *max_weight, *max_depth);
            nlohmann::json rows = nlohmann::json::array();
            for (auto& [w, v] : back)
                rows.push_back({{"word", format_harmonic(w)},
                                {"value", nlohmann::json::parse(padic_to_json(v))}});
            emit_value("sigma-drinv", rows.dump(), common);
        });
    }
    {
        auto* rp = ih->add_subcommand("recover-phi", "Recover Phi from its adjoint family");
        auto max_weight = std::make_shared<int>(4);
        rp->add_option("--max-weight", *max_weight);
        rp->callback([=, &common]() {
            FrobeniusConfig cfg;
            cfg.p = *p;
            cfg.alpha = *alpha;
            cfg.prec = *prec;
            cfg.max_weight = *max_weight;
            NCSeries<PAdicNum> phi = compute_phi(cfg);
            emit_value("phi", ncseries_to_json(phi), common);
        });
    }

    // ---- pmzv ----
    auto* pz = app.add_subcommand("pmzv", "Adjoint p-adic MZV pipeline");
    pz->require_subcommand(1);
    auto cfg = std::make_shared<FrobeniusConfig>();
    pz->add_option("--p", cfg->p, "Prime");
    pz->add_option("--alpha", cfg->alpha, "Frobenius iterate");
    pz->add_option("--prec", cfg->prec, "Certified precision M");
    pz->add_option("--max-weight", cfg->max_weight, "Truncation weight W");
    pz->add_option("--z-degree", cfg->z_degree, "z-degree bound for the section-8 series");
    pz->add_option("--max-b", cfg->max_b, "Adjoint b-range");
    {
        auto* sub = pz->add_subcommand("adjoint", "Adjoint p-adic MZV table");
        sub->callback([=, &common]() {
            auto a = compute_adjoint_mzv(*cfg);
            auto view = zeta_ad_view(a, cfg->max_weight + 1, 3);
            nlohmann::json rows = nlohmann::json::array();
            for (auto& [w, v] : view)
                rows.push_back({{"word", format_harmonic(w)},
                                {"zeta_ad", nlohmann::json::parse(padic_to_json(v))}});
            emit_value("zeta-ad", rows.dump(), common);
        });
    }
    {
        auto* sub = pz->add_subcommand("phi", "p-adic MZV generating series");
        sub->callback([=, &common]() { emit_value("phi", ncseries_to_json(compute_phi(*cfg)), common); });
    }
    {
        auto* sub = pz->add_subcommand("li-dagger", "Overconvergent hyperlogarithm coefficients");
        sub->callback([=, &common]() {
            ZSeries li = compute_li_dagger(*cfg);
            nlohmann::json rows = nlohmann::json::array();
            for (int k = 0; k <= li.degree(); ++k)
                for (auto& [w, v] : li.coeffs[k].terms())
                    rows.push_back({{"z_degree", k},
                                    {"word", format_word_key(w, 1)},
                                    {"value", nlohmann::json::parse(padic_to_json(v))}});
            emit_value("li-dagger", rows.dump(), common);
        });
    }
    {
        auto* sub = pz->add_subcommand("har-dagger", "Frobenius-regularized harmonic sums");
        auto n = std::make_shared<long>(1);
        auto word = std::make_shared<std::string>("1");
        sub->add_option("--n", *n)->required();
        sub->add_option("--word", *word)->required();
        sub->callback([=, &common]() {
            FrobeniusConfig c2 = *cfg;
            c2.z_degree = std::max<int>(c2.z_degree, static_cast<int>(*n));
            ZSeries li = compute_li_dagger(c2);
            Word w = to_plain(parse_word(*word, 1));
            emit_value("har-dagger", padic_to_json(har_dagger(li, *n, w)), common);
        });
    }

    // ---- verify ----
    auto* vf = app.add_subcommand("verify", "Relation checkers (exit 0 iff all hold)");
    vf->require_subcommand(1);
    std::vector<RelationReport> reports;
    {
        auto* sub = vf->add_subcommand("quasi-shuffle", "Stuffle of exact MHS");
        auto n_max = std::make_shared<long>(40);
        auto max_weight = std::make_shared<int>(6);
        auto max_depth = std::make_shared<int>(3);
        auto n_roots_list = std::make_shared<std::vector<unsigned>>(std::vector<unsigned>{1});
        sub->add_option("--n-max", *n_max);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--depth", *max_depth);
        sub->add_option("--n-roots", *n_roots_list, "Root orders to test");
        sub->callback([=, &reports, &common]() {
            auto run = [&](unsigned N) {
                auto tables = frak_h_tables_upto(*n_max, N, *max_weight, *max_depth);
                RelationReport last;
                for (long n = 1; n <= *n_max; ++n) {
                    auto& tab = tables[n];
                    auto eval = [&](const HarmonicWord& w) { return tab.at(w); };
                    last = check_quasi_shuffle<CycRat>(eval, N, *max_weight, *max_depth, true,
                                                       "N=" + std::to_string(N) +
                                                           " n=" + std::to_string(n));
                    if (!last.ok())
                        return last;
                }
                last.instance = "N=" + std::to_string(N) + " n<=" + std::to_string(*n_max);
                return last;
            };
            auto rs = parallel_map(*n_roots_list, common.jobs, run);
            reports.insert(reports.end(), rs.begin(), rs.end());
        });
    }
    {
        auto* sub = vf->add_subcommand("adjoint-quasi-shuffle",
                                       "Adjoint stuffle of Sigma^RT(har_{p^alpha})");
        auto max_weight = std::make_shared<int>(6);
        sub->add_option("--max-weight", *max_weight, "Bound on s1+s2+b");
        sub->callback([=, &reports]() {
            PrecCtx ctx{*p, *alpha, *prec};
            auto a = sigma_rt(ctx, g_har(ctx), *max_weight + 4, *max_weight);
            reports.push_back(check_adjoint_quasi_shuffle(
                a, *max_weight, false,
                "p=" + std::to_string(*p) + " alpha=" + std::to_string(*alpha) + " mod p^" +
                    std::to_string(*prec)));
        });
    }
    {
        auto* sub = vf->add_subcommand("b-quasi-shuffle", "Quasi-shuffle of the B-coefficients");
        auto l_max = std::make_shared<int>(6);
        sub->add_option("--l-max", *l_max);
        sub->callback([=, &reports]() {
            RelationReport rep;
            rep.relation = "b-quasi-shuffle";
            rep.instance = "l1,l2<=" + std::to_string(*l_max);
            rep.verdict = RelationReport::Verdict::HoldsExact;
            BTable& bt = global_btable();
            for (int l1 = 0; l1 <= *l_max && rep.ok(); ++l1) {
                for (int l2 = l1; l2 <= *l_max && rep.ok(); ++l2) {
                    for (int b = 0; b <= l1 + l2 + 2; ++b) {
                        Rat lhs = bt.b_coeff(b, {l1 + l2}) + bt.b_coeff(b, {l1, l2}) +
                                  bt.b_coeff(b, {l2, l1});
                        Rat rhs = 0;
                        for (int bp = 0; bp <= b; ++bp)
                            rhs += bt.b_coeff(bp, {l1}) * bt.b_coeff(b - bp, {l2});
                        if (lhs != rhs) {
                            rep.verdict = RelationReport::Verdict::Fails;
                            rep.witness = "b=" + std::to_string(b) + " l1=" + std::to_string(l1) +
                                          " l2=" + std::to_string(l2) + " lhs=" + lhs.get_str() +
                                          " rhs=" + rhs.get_str();
                            break;
                        }
                    }
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("reversal-reduction",
                                       "Prime-power reduction of reversal sums");
        auto max_weight = std::make_shared<int>(4);
        sub->add_option("--max-weight", *max_weight);
        sub->callback([=, &reports]() {
            PrecCtx ctx{*p, *alpha, *prec};
            RelationReport rep;
            rep.relation = "reversal-reduction";
            rep.instance = "p=" + std::to_string(*p) + " alpha=" + std::to_string(*alpha) +
                           " weight<=" + std::to_string(*max_weight);
            rep.verdict = RelationReport::Verdict::HoldsModP;
            long q = ctx.p_pow_alpha();
            for (int d = 1; d <= 2 && rep.ok(); ++d) {
                std::vector<std::vector<std::pair<int, int>>> words;
                if (d == 1) {
                    for (int s = 0; s <= *max_weight; ++s)
                        for (int sp = s == 0 ? 1 : 0; s + sp <= *max_weight; ++sp)
                            words.push_back({{s, sp}});
                } else {
                    for (int s1 = 0; s1 <= *max_weight; ++s1)
                        for (int sp1 = s1 == 0 ? 1 : 0; s1 + sp1 <= *max_weight; ++sp1)
                            for (int s2 = 0; s1 + sp1 + s2 <= *max_weight; ++s2)
                                for (int sp2 = s2 == 0 ? 1 : 0;
                                     s1 + sp1 + s2 + sp2 <= *max_weight; ++sp2)
                                    words.push_back({{s1, sp1}, {s2, sp2}});
                }
                for (auto& e : words) {
                    HarmonicWordLoc w = widen(HarmonicWordWR::plain(e));
                    PAdicNum lhs = embed_abs(har(q, w).rational_part(), ctx.p, ctx.prec);
                    PAdicNum rhs = prop314_reduce(ctx, w);
                    if (!(lhs - rhs).is_zero()) {
                        rep.verdict = RelationReport::Verdict::Fails;
                        rep.witness = "word=" + format_harmonic(w) + " lhs=" + lhs.to_string() +
                                      " rhs=" + rhs.to_string();
                        break;
                    }
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("act-rt", "RT action against exact har_{p^alpha n}");
        auto n_max = std::make_shared<long>(20);
        auto max_weight = std::make_shared<int>(5);
        auto wr_weight = std::make_shared<int>(4);
        sub->add_option("--n-max", *n_max);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--wr-weight", *wr_weight, "Reversal-word weight bound (0 = skip)");
        sub->callback([=, &reports, &common]() {
            PrecCtx ctx{*p, *alpha, *prec};
            GSystem g = g_har(ctx);
            HarmonicSeq h = HarmonicSeq::har_seq();
            long q = ctx.p_pow_alpha();
            std::vector<long> ns;
            for (long n = 1; n <= *n_max; ++n)
                ns.push_back(n);
            auto run = [&](long n) {
                RelationReport rep;
                rep.relation = "act-rt-exact";
                rep.instance = "p=" + std::to_string(*p) + " alpha=" + std::to_string(*alpha) +
                               " n=" + std::to_string(n);
                rep.verdict = RelationReport::Verdict::HoldsModP;
                for (const auto& w : all_harmonic_words(1, *max_weight, 2)) {
                    PAdicNum lhs = act_rt(ctx, g, h, n, w);
                    PAdicNum rhs = embed_abs(har(q * n, w).rational_part(), ctx.p, ctx.prec);
                    if (!(lhs - rhs).is_zero()) {
                        rep.verdict = RelationReport::Verdict::Fails;
                        rep.witness = "word=" + format_harmonic(w) + " got=" + lhs.to_string() +
                                      " want=" + rhs.to_string();
                        return rep;
                    }
                }
                for (int s = 0; *wr_weight > 0 && s <= *wr_weight; ++s) {
                    for (int sp = s == 0 ? 1 : 0; s + sp <= *wr_weight; ++sp) {
                        HarmonicWordWR w = HarmonicWordWR::plain({{s, sp}});
                        PAdicNum lhs = act_rt_wr(ctx, g, h, n, w);
                        PAdicNum rhs =
                            embed_abs(har(q * n, w).rational_part(), ctx.p, ctx.prec);
                        if (!(lhs - rhs).is_zero()) {
                            rep.verdict = RelationReport::Verdict::Fails;
                            rep.witness = "wr-word=" + format_harmonic(w) +
                                          " got=" + lhs.to_string() + " want=" + rhs.to_string();
                            return rep;
                        }
                    }
                }
                return rep;
            };
            auto rs = parallel_map(ns, common.jobs, run);
            for (auto& r : rs)
                if (!r.ok()) {
                    reports.push_back(r);
                    return;
                }
            RelationReport rep = rs.back();
            rep.instance = "p=" + std::to_string(*p) + " n<=" + std::to_string(*n_max);
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand(
            "comparison-maps", "Sigma^DR_inv . Sigma^RT = id and the action factorization");
        auto max_weight = std::make_shared<int>(4);
        auto n_max = std::make_shared<long>(4);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--n-max", *n_max);
        sub->callback([=, &reports]() {
            PrecCtx ctx{*p, *alpha, *prec};
            GSystem g = g_har(ctx);
            auto a = sigma_rt(ctx, g, 16, *max_weight + 1);
            RelationReport rep;
            rep.relation = "comparison-maps";
            rep.instance = "p=" + std::to_string(*p) + " alpha=" + std::to_string(*alpha);
            rep.verdict = RelationReport::Verdict::HoldsModP;
            long q = ctx.p_pow_alpha();
            auto back = sigma_dr_inv(a, *max_weight, 2);
            for (auto& [w, v] : back) {
                PAdicNum exact =
                    embed_abs(har(q, w).rational_part(), ctx.p, v.abs_precision());
                if (!(v - exact).is_zero()) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    rep.witness = "roundtrip word=" + format_harmonic(w) +
                                  " got=" + v.to_string() + " want=" + exact.to_string();
                    break;
                }
            }
            HarmonicSeq h = HarmonicSeq::har_seq();
            for (long n = 1; rep.ok() && n <= *n_max; ++n) {
                for (const auto& w : all_harmonic_words(1, *max_weight, 2)) {
                    PAdicNum lhs = act_drrt(a, h, n, w);
                    PAdicNum rhs = act_rt(ctx, g, h, n, w);
                    if (!(lhs - rhs).is_zero()) {
                        rep.verdict = RelationReport::Verdict::Fails;
                        rep.witness = "factorization n=" + std::to_string(n) +
                                      " word=" + format_harmonic(w) + " drrt=" + lhs.to_string() +
                                      " rt=" + rhs.to_string();
                        break;
                    }
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("commutant", "Tensor-square commutant of Delta_sh(e_1)");
        auto max_weight = std::make_shared<int>(5);
        sub->add_option("--max-weight", *max_weight);
        sub->callback([=, &reports]() { reports.push_back(check_commutant(*max_weight)); });
    }
    {
        auto* sub = vf->add_subcommand("prop73", "Three-way equivalence on random group-likes");
        auto count = std::make_shared<int>(50);
        auto max_weight = std::make_shared<int>(5);
        sub->add_option("--count", *count);
        sub->add_option("--max-weight", *max_weight);
        sub->callback([=, &reports, &common]() {
            std::mt19937_64 rng(common.seed);
            RelationReport rep;
            rep.relation = "prop73";
            rep.instance = "count=" + std::to_string(*count) + " W=" + std::to_string(*max_weight);
            rep.verdict = RelationReport::Verdict::HoldsExact;
            for (int i = 0; i < *count; ++i) {
                NCSeries<Rat> f = random_group_like(*max_weight, rng, true);
                if (i % 3 == 2) // perturb off the group
                    f.add(WordKey("\0\1\0", 3), Rat(1, 3));
                Prop73Report r = check_prop73(f);
                if (!r.agree()) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    rep.witness = "instance " + std::to_string(i) +
                                  ": a=" + std::to_string(r.a_group_like) +
                                  " b=" + std::to_string(r.b_adjoint_primitive) +
                                  " c'=" + std::to_string(r.cprime_harmonic_system);
                    break;
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("depth11", "Depth-(1,1) stuffle equivalence");
        auto count = std::make_shared<int>(50);
        auto max_weight = std::make_shared<int>(5);
        sub->add_option("--count", *count);
        sub->add_option("--max-weight", *max_weight);
        sub->callback([=, &reports, &common]() {
            std::mt19937_64 rng(common.seed + 1);
            RelationReport rep;
            rep.relation = "depth11-equivalence";
            rep.instance = "count=" + std::to_string(*count) + " W=" + std::to_string(*max_weight);
            rep.verdict = RelationReport::Verdict::HoldsExact;
            for (int i = 0; i < *count; ++i) {
                NCSeries<Rat> f = random_group_like(*max_weight, rng, i % 2 == 0);
                Depth11Report r = check_depth11_equivalence(f);
                if (!r.agree()) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    rep.witness = "instance " + std::to_string(i) +
                                  ": f-side=" + std::to_string(r.f_side) +
                                  " adjoint-side=" + std::to_string(r.adjoint_side);
                    break;
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("duality", "Prime harmonic duality transfer");
        auto max_weight = std::make_shared<int>(4);
        auto count = std::make_shared<int>(3);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--count", *count);
        sub->callback([=, &reports, &common]() {
            std::mt19937_64 rng(common.seed + 2);
            RelationReport rep;
            rep.relation = "prime-harmonic-duality";
            rep.instance = "count=" + std::to_string(*count) + " W=" + std::to_string(*max_weight);
            rep.verdict = RelationReport::Verdict::HoldsExact;
            for (int i = 0; i < *count; ++i) {
                NCSeries<Rat> f = random_duality_source(*max_weight, rng);
                DualityReport r = check_prime_harmonic_duality(f);
                if (!r.source_holds || !r.duality_holds) {
                    rep.verdict = RelationReport::Verdict::Fails;
                    rep.witness = "instance " + std::to_string(i) +
                                  ": source=" + std::to_string(r.source_holds) +
                                  " duality=" + std::to_string(r.duality_holds);
                    break;
                }
            }
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("shuffle", "Shuffle relation of the pipeline Phi");
        auto max_weight = std::make_shared<int>(4);
        sub->add_option("--max-weight", *max_weight);
        sub->callback([=, &reports]() {
            FrobeniusConfig c2;
            c2.p = *p;
            c2.alpha = *alpha;
            c2.prec = *prec;
            c2.max_weight = *max_weight;
            NCSeries<PAdicNum> phi = compute_phi(c2);
            RelationReport rep = check_shuffle(phi, false);
            rep.instance = "phi(p=" + std::to_string(*p) + ",alpha=" + std::to_string(*alpha) +
                           ") " + rep.instance;
            reports.push_back(rep);
        });
    }
    {
        auto* sub = vf->add_subcommand("li-dagger-shuffle",
                                       "Convolution shuffle of the overconvergent series");
        auto max_weight = std::make_shared<int>(4);
        auto z_degree = std::make_shared<int>(40);
        auto n_max = std::make_shared<long>(40);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--z-degree", *z_degree);
        sub->add_option("--n-max", *n_max);
        sub->callback([=, &reports]() {
            FrobeniusConfig c2;
            c2.p = *p;
            c2.alpha = *alpha;
            c2.prec = *prec;
            c2.max_weight = *max_weight;
            c2.z_degree = *z_degree;
            ZSeries li = compute_li_dagger(c2);
            reports.push_back(check_li_dagger_shuffle(li, *max_weight, *n_max));
        });
    }
    {
        auto* sub = vf->add_subcommand("theorem-a", "Triple stuffle report (orbit instance)");
        auto n_max = std::make_shared<long>(6);
        auto max_total = std::make_shared<int>(6);
        sub->add_option("--n-max", *n_max);
        sub->add_option("--max-total", *max_total, "Bound on s1+s2+b for the adjoint side");
        sub->callback([=, &reports]() {
            PrecCtx ctx{*p, *alpha, *prec};
            GSystem g = g_har(ctx);
            auto a = sigma_rt(ctx, g, *max_total + 6, *max_total);
            HarmonicSeq h = HarmonicSeq::har_seq();
            // h itself satisfies the stuffle (exact)
            for (long n = 2; n <= *n_max; ++n) {
                auto eval = [&](const HarmonicWord& w) { return h(n, w); };
                RelationReport r = check_quasi_shuffle<CycRat>(eval, 1, 4, 2, true,
                                                               "h at n=" + std::to_string(n));
                r.relation = "theorem-a/h-stuffle";
                reports.push_back(r);
                if (!r.ok())
                    return;
            }
            // the acted sequence satisfies the stuffle mod p^M
            for (long n = 2; n <= *n_max; ++n) {
                auto eval = [&](const HarmonicWord& w) { return act_drrt(a, h, n, w); };
                RelationReport r = check_quasi_shuffle<PAdicNum>(
                    eval, 1, 4, 2, false, "acted h at n=" + std::to_string(n));
                r.relation = "theorem-a/acted-stuffle";
                reports.push_back(r);
                if (!r.ok())
                    return;
            }
            // g satisfies the adjoint stuffle mod p^M
            RelationReport r = check_adjoint_quasi_shuffle(a, *max_total, false,
                                                           "g = Sigma^RT(har_" +
                                                               std::to_string(*p) + ")");
            r.relation = "theorem-a/adjoint-stuffle";
            reports.push_back(r);
        });
    }
    vf->add_option("--p", *p, "Prime");
    vf->add_option("--alpha", *alpha, "Frobenius iterate");
    vf->add_option("--prec", *prec, "Certified precision M");

    // ---- independence ----
    auto* in = app.add_subcommand("independence", "Finite-rank independence experiments");
    in->require_subcommand(1);
    {
        auto* sub = in->add_subcommand("rank", "Full-rank check of MHS columns");
        auto n_max = std::make_shared<long>(60);
        auto max_weight = std::make_shared<int>(4);
        auto max_depth = std::make_shared<int>(2);
        auto degree = std::make_shared<int>(2);
        sub->add_option("--n-max", *n_max);
        sub->add_option("--max-weight", *max_weight);
        sub->add_option("--max-depth", *max_depth);
        sub->add_option("--degree", *degree);
        sub->callback([=, &reports]() {
            auto words = all_harmonic_words(1, *max_weight, *max_depth);
            reports.push_back(rank_independence(words, *n_max, *degree));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (!reports.empty())
            exit_code = emit_reports(reports, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
