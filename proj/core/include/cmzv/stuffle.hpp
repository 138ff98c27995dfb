#pragma once

#include "cmzv/words.hpp"

#include <map>

namespace cmzv {

/// Integer combination of eta-words (resp. harmonic words).
using EtaCombination = std::map<EtaWord, long>;
using HarmonicCombination = std::map<HarmonicWord, long>;

/// Quasi-shuffle of two eta-words: interleavings plus merge terms, the merge
/// adding both the exponent and the ratio parameter of the fused letters.
EtaCombination quasi_shuffle(const EtaWord& a, const EtaWord& b);

/// Quasi-shuffle of harmonic words. The result's bottom root index is
/// j_1 + j'_1 (mod N) and the outer datum multiplies accordingly, so that
/// frak_h_n(w) * frak_h_n(w') = sum over the returned combination, exactly.
HarmonicCombination quasi_shuffle(const HarmonicWord& a, const HarmonicWord& b);

} // namespace cmzv
