#pragma once

#include "cmzv/btable.hpp"
#include "cmzv/ihara.hpp"
#include "cmzv/ncseries.hpp"
#include "cmzv/pmzv.hpp"

#include <string>

namespace cmzv {

/// {"p":5,"val":v,"digits":[d0,...],"prec":M}: p^v sum d_i p^i known mod
/// p^{v+M}.
std::string padic_to_json(const PAdicNum& x);

/// Rational coefficient vector against the power basis of Q(xi_N).
std::string cycrat_to_json(const CycRat& x);

/// {"W":..., "D":..., "terms":[{"word":"0 1 1","value":...}]}.
template <class S>
std::string ncseries_to_json(const NCSeries<S>& f);

/// {"terms":[{"b":2,"word":"0 1","value":...}]}.
template <class S>
std::string adjoint_to_json(const AdjointCoeffs<S>& a);

/// Decomposition with polynomial coefficient vectors.
std::string bdecomposition_to_json(const BDecomposition& dec);

/// CSV rows (n, word, value) for survey runs.
std::string mhs_csv_row(long n, const std::string& word, const std::string& value);

} // namespace cmzv
