#pragma once

#include "cmzv/cyclotomic.hpp"
#include "cmzv/scalar.hpp"
#include "cmzv/words.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace cmzv {

/// Multiple harmonic sum frak_h_n(w): the nested sum over
/// 0 < n_1 < ... < n_d < n with denominators n_i^{u_i} (n - n_i)^{u'_i} and
/// the ratio twists of the harmonic index. Exact cyclotomic-rational value;
/// memoized on (n, word).
CycRat frak_h(long n, const HarmonicWordLoc& w);
CycRat frak_h(long n, const HarmonicWordWR& w);
CycRat frak_h(long n, const HarmonicWord& w);

/// Weighted variant har_n(w) = n^{weight(w)} frak_h_n(w): weight may be
/// negative for localized words (exact rational power).
CycRat har(long n, const HarmonicWordLoc& w);
CycRat har(long n, const HarmonicWordWR& w);
CycRat har(long n, const HarmonicWord& w);

/// Coefficient of z^n in the hyperlogarithm Li[w](z) under the
/// positive-coefficient normalization: Li[e_1](z) = sum_{n>=1} z^n / n.
/// Recursion: c_n(e_0 w) = c_n(w)/n, c_n(e_{z_j} w) = (1/n) sum_{m<n}
/// kappa_j^{n-m} c_m(w) with kappa_j = xi^{-j}.
CycRat li_coeff(const Word& w, long n, unsigned n_roots = 1);

/// Bounded-support map from harmonic words to scalars; plain, reversal and
/// localized keys uniformly; missing = 0.
template <class S>
class HarmonicCoeffs {
public:
    HarmonicCoeffs() = default;
    HarmonicCoeffs(int max_weight, int max_depth) : max_weight_(max_weight), max_depth_(max_depth) {}

    int max_weight() const { return max_weight_; }
    int max_depth() const { return max_depth_; }
    const std::map<HarmonicWordLoc, S>& values() const { return values_; }

    void set(const HarmonicWordLoc& w, S v)
    {
        if (scalar_is_exact_zero(v))
            values_.erase(w);
        else
            values_.insert_or_assign(w, std::move(v));
    }

    const S* get(const HarmonicWordLoc& w) const
    {
        auto it = values_.find(w);
        return it == values_.end() ? nullptr : &it->second;
    }

private:
    int max_weight_ = 0;
    int max_depth_ = 0;
    std::map<HarmonicWordLoc, S> values_;
};

/// Index set descriptor: an explicit list or an arithmetic progression.
struct IndexSet {
    std::optional<std::vector<long>> list;
    long start = 1;
    long step = 1;

    bool contains(long n) const
    {
        if (list)
            return std::find(list->begin(), list->end(), n) != list->end();
        return n >= start && (n - start) % step == 0;
    }

    static IndexSet naturals() { return IndexSet{}; }
    static IndexSet explicit_list(std::vector<long> v) { return IndexSet{std::move(v), 1, 1}; }
};

/// Indexed family of harmonic coefficient systems n -> (w -> value), with a
/// pure memoized evaluator. The exact har-backed instance is the default.
class HarmonicSeq {
public:
    using Evaluator = std::function<CycRat(long, const HarmonicWordLoc&)>;

    HarmonicSeq(IndexSet index, Evaluator eval)
        : index_(std::move(index)), eval_(std::move(eval)) {}

    /// The sequence n -> har_n, i.e. the exact weighted MHS system.
    static HarmonicSeq har_seq(IndexSet index = IndexSet::naturals());
    /// Constant system: 1 on the empty word, 0 in depth >= 1.
    static HarmonicSeq constant_one(IndexSet index = IndexSet::naturals());

    const IndexSet& index() const { return index_; }

    CycRat operator()(long n, const HarmonicWordLoc& w) const { return eval_(n, w); }
    CycRat operator()(long n, const HarmonicWord& w) const { return eval_(n, widen_loc(w)); }

private:
    IndexSet index_;
    Evaluator eval_;
};

/// Evaluate frak_h_n on every harmonic word of the given bounds, for every
/// n <= n_max at once (one shared chain DP); used by the stuffle oracle.
/// Result is indexed by n (entries 1..n_max; index 0 unused).
std::vector<std::map<HarmonicWord, CycRat>> frak_h_tables_upto(long n_max, unsigned n_roots,
                                                               int max_weight, int max_depth);

/// Weighted coefficient system har_n on all plain harmonic words within the
/// bounds.
HarmonicCoeffs<CycRat> har_coeffs(long n, unsigned n_roots, int max_weight, int max_depth);

/// All plain harmonic words with the given bounds (depth >= 1).
std::vector<HarmonicWord> all_harmonic_words(unsigned n_roots, int max_weight, int max_depth);

} // namespace cmzv
