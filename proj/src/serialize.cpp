#include "tqk/serialize.hpp"

#include "tqk/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace tqk {

Tolerances Tolerances::defaults() {
    Tolerances t;
    t.values = {
        {"INHOMOGENEOUS", 1e-10},  // relative residual of the state equation
        {"RECURRENCE", 1e-8},      // gamma invariants, relative to max|gamma|
        {"FLOOR", 1e-10},          // double-precision rounding floor for decay fits
        {"MARGIN", 0.02},          // probe distance to the characteristic set
        {"AMBIGUITY", 0.3},        // phase calibration residual threshold
    };
    return t;
}

Tolerances Tolerances::from_env() {
    Tolerances t = defaults();
    for (auto& [name, value] : t.values) {
        const std::string var = "TQK_TOL_" + name;
        const char* raw = std::getenv(var.c_str());
        if (!raw) continue;
        char* end = nullptr;
        const double v = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(v > 0))
            throw Error(ErrorKind::InvalidArgument, var + " must be a positive number");
        value = v;
        t.overridden[name] = raw;
    }
    return t;
}

json laurent_to_json(const LaurentPoly& p) {
    json j = json::object();
    for (const auto& [e, c] : p.coeffs()) j[std::to_string(e)] = c.get_str();
    return j;
}

LaurentPoly laurent_from_json(const json& j) {
    LaurentPoly::Map m;
    for (const auto& [key, val] : j.items()) {
        i64 e = 0;
        const auto res = std::from_chars(key.data(), key.data() + key.size(), e);
        if (res.ec != std::errc() || res.ptr != key.data() + key.size())
            throw Error(ErrorKind::InvalidArgument, "bad exponent key '" + key + "'");
        mpz_class c;
        if (!val.is_string() || c.set_str(val.get<std::string>(), 10) != 0)
            throw Error(ErrorKind::InvalidArgument, "coefficient of t^" + key + " is not a decimal string");
        m[e] = c;
    }
    return LaurentPoly::from_map(m);
}

std::string fmt_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json conventions_json(cd tau) {
    const Frame f{tau};
    const auto jm = f.j_matrix();
    json c;
    c["orientation"] = select_orientation().chosen;
    c["tau"] = {tau.real(), tau.imag()};
    c["j_matrix"] = {{jm[0], jm[2]}, {jm[1], jm[3]}};
    c["xi_sign"] = -1;
    c["mu_k"] = mu_name(MuConvention::Alpha);
    c["beta_sign"] = "corrected";
    c["torsion_sign"] = "(-1)^(alpha+1)";
    c["branch_constant"] = 1;
    c["windows"] = "E+ = [-ab+a+b+1, 2k-ab-a-b), E- = [-2k-ab+a+b+1, -ab-a-b)";
    return c;
}

json meta_json(const json& config, const Tolerances& tol) {
    json m;
    m["tool"] = "tqk";
    m["version"] = kVersion;
    m["conventions"] = conventions_json();
    m["config"] = config;
    json t = json::object();
    for (const auto& [name, v] : tol.values) t[name] = v;
    m["tolerances"] = t;
    json o = json::object();
    for (const auto& [name, raw] : tol.overridden) o["TQK_TOL_" + name] = raw;
    m["env_overrides"] = o;
    return m;
}

std::string csv_with_meta(const json& meta, const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    os << "# " << meta.dump() << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

std::string statevec_csv(const StateVec& v, const json& meta) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < v.c.size(); ++i)
        rows.push_back({std::to_string(i), fmt_double(v.c[i].real()), fmt_double(v.c[i].imag())});
    return csv_with_meta(meta, {"index", "re", "im"}, rows);
}

json statevec_json(const StateVec& v) {
    json j;
    j["k"] = v.k;
    j["D"] = v.D;
    j["basis"] = v.basis == Basis::Xi ? "xi" : "psi";
    json re = json::array(), im = json::array();
    for (const auto& z : v.c) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

std::vector<std::string> gamma_header() {
    return {"ell",           "re_beta",        "im_beta",        "re_gamma_plus",
            "im_gamma_plus", "re_gamma_minus", "im_gamma_minus", "recurrence_residual"};
}

std::vector<std::vector<std::string>> gamma_rows(const GammaTable& t) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t l = 0; l < t.gamma_plus.size(); ++l) {
        const double rr = l < t.recurrence_per_ell.size() ? t.recurrence_per_ell[l] : 0.0;
        rows.push_back({std::to_string(l), fmt_double(t.beta[l].real()), fmt_double(t.beta[l].imag()),
                        fmt_double(t.gamma_plus[l].real()), fmt_double(t.gamma_plus[l].imag()),
                        fmt_double(t.gamma_minus[l].real()), fmt_double(t.gamma_minus[l].imag()), fmt_double(rr)});
    }
    return rows;
}

json gamma_json(const GammaTable& t) {
    json j;
    j["k"] = t.k;
    j["alpha"] = {t.alpha.real(), t.alpha.imag()};
    j["max_gamma"] = t.max_gamma;
    j["residuals"] = {{"gamma_m1", t.res_gamma_m1},
                      {"gamma_0", t.res_gamma_0},
                      {"recurrence", t.res_recurrence},
                      {"symmetry", t.res_symmetry},
                      {"periodicity", t.res_periodicity},
                      {"recurrence_literal_beta", t.res_recurrence_literal},
                      {"window_plus", t.window_residual_plus},
                      {"window_minus", t.window_residual_minus},
                      {"offset_deviation", t.offset_deviation}};
    json rows = json::array();
    for (const auto& r : gamma_rows(t)) {
        json row;
        const auto h = gamma_header();
        row[h[0]] = std::stoll(r[0]);
        for (std::size_t i = 1; i < h.size(); ++i) row[h[i]] = std::stod(r[i]);
        rows.push_back(row);
    }
    j["table"] = rows;
    return j;
}

json charvar_json(const TorusKnot& K) {
    json j;
    j["knot"] = {{"a", K.a}, {"b", K.b}, {"D", K.D}, {"bezout", {{"m", K.m}, {"n", K.n}}}};
    json comps = json::array();
    for (const auto& c : p_set(K)) {
        const TorsionRoot tr = torsion_sqrt(K, c);
        comps.push_back({{"alpha", c.alpha},
                         {"beta", c.beta},
                         {"k_minus", c.k_minus},
                         {"k_plus", c.k_plus},
                         {"sqrt_torsion_coefficient", tr.coefficient},
                         {"torsion_magnitude", tr.expected_square}});
    }
    j["components"] = comps;
    json table = json::array();
    const i64 ab = K.a * K.b;
    for (i64 l = -1; l <= ab - 1; ++l) {
        json members = json::array();
        for (const auto& c : p_ell(K, l)) members.push_back({c.alpha, c.beta});
        table.push_back({{"ell", l}, {"components", members}});
    }
    j["p_ell"] = table;
    const BijectionReport br = check_bijection(K);
    j["bijection"] = {{"injective", br.injective}, {"image_ok", br.image_ok}, {"image", br.image}};
    return j;
}

std::vector<std::string> report_header() {
    return {"probe_id", "kind", "k", "measured_re", "measured_im", "predicted_re", "predicted_im", "abs_residual"};
}

std::vector<std::vector<std::string>> report_rows(const DecayReport& r) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.levels.size(); ++i)
        rows.push_back({r.probe_id, r.kind, std::to_string(r.levels[i]), fmt_double(r.measured[i].real()),
                        fmt_double(r.measured[i].imag()), fmt_double(r.predicted[i].real()),
                        fmt_double(r.predicted[i].imag()), fmt_double(r.residual[i])});
    return rows;
}

json report_summary(const DecayReport& r) {
    return {{"probe_id", r.probe_id}, {"kind", r.kind},   {"p", r.p},         {"q", r.q},
            {"model", r.model},       {"rate", r.rate},   {"intercept", r.intercept},
            {"r2", r.r2},             {"pass", r.pass},   {"note", r.note}};
}

json jones_asym_json(const JonesAsymReport& r) {
    json comps = json::array();
    for (const auto& c : r.comps) comps.push_back({c.alpha, c.beta, c.k_minus, c.k_plus});
    return {{"kind", "jones-asym"},
            {"interval", r.interval},
            {"margin", r.margin},
            {"normalization", r.norm == JonesNormalization::Stated ? "stated" : "corrected"},
            {"components", comps},
            {"k_cal", r.k_cal},
            {"phases", r.phases},
            {"calibration_residual", r.cal_residual},
            {"ambiguous", r.ambiguous},
            {"levels", r.levels},
            {"sup_residual", r.sup_residual},
            {"scaled", r.scaled},
            {"growth_slope", r.growth_slope},
            {"k_pre", r.k_pre},
            {"magnitude_precheck", r.magnitude_precheck},
            {"bounded", r.bounded},
            {"pass", r.pass},
            {"note", r.note}};
}

}  // namespace tqk
