#pragma once

#include "tqk/verifier.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace tqk {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Tolerances with their defaults; each can be overridden by TQK_TOL_<NAME>.
struct Tolerances {
    std::map<std::string, double> values;
    std::map<std::string, std::string> overridden;  // name -> raw env text

    double at(const std::string& name) const { return values.at(name); }
    static Tolerances defaults();
    // Reads the environment; InvalidArgument on an unparsable value.
    static Tolerances from_env();
};

json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j);

// Convention metadata: orientation, j matrix, xi sign, mu_k choice and the
// sign conventions used downstream.
json conventions_json(cd tau = cd(0, 1));
// Standard header embedded in every output: version, conventions, config echo.
json meta_json(const json& config, const Tolerances& tol);

// Shortest round-trip text of a double, identical across runs.
std::string fmt_double(double x);

// CSV body preceded by '#' lines carrying the compact meta object.
std::string csv_with_meta(const json& meta, const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows);

std::string statevec_csv(const StateVec& v, const json& meta);
json statevec_json(const StateVec& v);

std::vector<std::string> gamma_header();
std::vector<std::vector<std::string>> gamma_rows(const GammaTable& t);
json gamma_json(const GammaTable& t);

json charvar_json(const TorusKnot& K);

std::vector<std::string> report_header();
std::vector<std::vector<std::string>> report_rows(const DecayReport& r);
json report_summary(const DecayReport& r);
json jones_asym_json(const JonesAsymReport& r);

}  // namespace tqk
