#include "cmzv/io.hpp"

#include "json.hpp"

#include <sstream>

namespace cmzv {

std::string padic_to_json(const PAdicNum& x)
{
    nlohmann::json j;
    j["p"] = x.prime();
    if (x.is_exact_zero()) {
        j["val"] = nullptr;
        j["digits"] = nlohmann::json::array();
        j["prec"] = nullptr;
        return j.dump();
    }
    if (x.is_zero()) {
        j["val"] = x.abs_precision();
        j["digits"] = nlohmann::json::array();
        j["prec"] = 0;
        return j.dump();
    }
    j["val"] = x.valuation();
    j["digits"] = x.digits();
    j["prec"] = x.rel_precision();
    return j.dump();
}

std::string cycrat_to_json(const CycRat& x)
{
    nlohmann::json j;
    j["N"] = x.order();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : x.coeffs())
        coeffs.push_back(c.get_str());
    j["coeffs"] = coeffs;
    return j.dump();
}

namespace {

template <class S>
nlohmann::json scalar_json(const S& v)
{
    return scalar_to_string(v);
}

template <>
nlohmann::json scalar_json(const PAdicNum& v)
{
    return nlohmann::json::parse(padic_to_json(v));
}

} // namespace

template <class S>
std::string ncseries_to_json(const NCSeries<S>& f)
{
    nlohmann::json j;
    j["W"] = f.max_weight();
    if (f.max_depth() >= 0)
        j["D"] = f.max_depth();
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [w, v] : f.terms()) {
        nlohmann::json t;
        t["word"] = format_word_key(w, f.n_roots());
        t["value"] = scalar_json(v);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

template std::string ncseries_to_json(const NCSeries<Rat>&);
template std::string ncseries_to_json(const NCSeries<CycRat>&);
template std::string ncseries_to_json(const NCSeries<PAdicNum>&);

template <class S>
std::string adjoint_to_json(const AdjointCoeffs<S>& a)
{
    nlohmann::json j;
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [w, v] : a.terms) {
        size_t b = 0;
        while (b < w.size() && w[b] == '\0')
            ++b;
        nlohmann::json t;
        t["b"] = b;
        t["word"] = format_word_key(w.substr(b + 1), 1);
        t["value"] = scalar_json(v);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

template std::string adjoint_to_json(const AdjointCoeffs<Rat>&);
template std::string adjoint_to_json(const AdjointCoeffs<PAdicNum>&);

std::string bdecomposition_to_json(const BDecomposition& dec)
{
    nlohmann::json j;
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [word, poly] : dec.terms) {
        nlohmann::json t;
        t["word"] = word;
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : poly)
            coeffs.push_back(c.get_str());
        t["poly"] = std::move(coeffs);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

std::string mhs_csv_row(long n, const std::string& word, const std::string& value)
{
    std::ostringstream os;
    os << n << ",\"" << word << "\"," << value;
    return os.str();
}

} // namespace cmzv
