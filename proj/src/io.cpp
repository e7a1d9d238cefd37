#include "awrep/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace awrep::io {

namespace {

double parse_real(std::string_view s, const std::string& whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("bad complex number: " + whole);
    return v;
}

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

Scalar parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
    s.pop_back();
    // split at the last sign that does not belong to an exponent
    std::size_t cut = 0;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    if (cut == 0) return {0.0, parse_real(s, text)};
    return {parse_real(std::string_view(s).substr(0, cut), text),
            parse_real(std::string_view(s).substr(cut), text)};
}

std::string format_complex(Scalar z) {
    std::string im = shortest(z.imag());
    if (im.front() != '-') im = "+" + im;
    return shortest(z.real()) + im + "i";
}

json scalar_json(Scalar z) { return json::array({z.real(), z.imag()}); }
Scalar scalar_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from(const json& j) {
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto c = n ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Matrix m(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(j.at(i).size()) != c) throw DimensionMismatch("ragged matrix rows");
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = scalar_from(j.at(i).at(k));
    }
    return m;
}

json artifact(Scalar q12) {
    json j;
    j["schema"] = kSchema;
    j["q12"] = scalar_json(q12);
    return j;
}

namespace {

json ap_json(const repbuild::AlgebraParams& ap) {
    return json{{"A1", scalar_json(ap.A1)}, {"A2", scalar_json(ap.A2)}, {"A3", scalar_json(ap.A3)}};
}

json scalars_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (auto z : v) a.push_back(scalar_json(z));
    return a;
}

repbuild::Basis basis_from(const std::string& s) {
    if (s == "V") return repbuild::Basis::V;
    if (s == "X") return repbuild::Basis::X;
    if (s == "Y") return repbuild::Basis::Y;
    throw std::invalid_argument("unknown basis " + s);
}

}  // namespace

json rep_json(const repbuild::Rep& rep) {
    json j = artifact(rep.q12);
    j["n"] = rep.dim();
    j["basis"] = repbuild::to_string(rep.basis);
    j["matrices"] = json{{"I1", matrix_json(rep.I1)}, {"I2", matrix_json(rep.I2)}, {"I3", matrix_json(rep.I3)}};
    j["algebra"] = ap_json(rep.ap);
    json meta;
    meta["variant"] = rep.meta.variant;
    meta["qmu"] = scalar_json(rep.meta.qmu);
    meta["qnu"] = rep.meta.qnu ? scalar_json(*rep.meta.qnu) : json(nullptr);
    meta["spectrum"] = scalars_json(rep.meta.spectrum);
    meta["casimir_value"] = scalar_json(rep.meta.casimir_value);
    j["meta"] = std::move(meta);
    return j;
}

repbuild::Rep rep_from_json(const json& j) {
    if (j.value("schema", std::string()) != kSchema) throw std::invalid_argument("not an awrep/1 artifact");
    repbuild::Rep r;
    r.q12 = scalar_from(j.at("q12"));
    r.basis = basis_from(j.at("basis").get<std::string>());
    const auto& m = j.at("matrices");
    r.I1 = matrix_from(m.at("I1"));
    r.I2 = matrix_from(m.at("I2"));
    r.I3 = matrix_from(m.at("I3"));
    if (r.I2.rows() != r.I1.rows() || r.I3.rows() != r.I1.rows() || r.I1.rows() != r.I1.cols())
        throw DimensionMismatch("matrices of unequal size");
    const auto& a = j.at("algebra");
    r.ap = {scalar_from(a.at("A1")), scalar_from(a.at("A2")), scalar_from(a.at("A3"))};
    const auto& meta = j.at("meta");
    r.meta.variant = meta.value("variant", std::string());
    r.meta.qmu = scalar_from(meta.at("qmu"));
    if (meta.contains("qnu") && !meta["qnu"].is_null()) r.meta.qnu = scalar_from(meta["qnu"]);
    for (const auto& z : meta.at("spectrum")) r.meta.spectrum.push_back(scalar_from(z));
    r.meta.casimir_value = scalar_from(meta.at("casimir_value"));
    return r;
}

json verify_json(const repverify::VerifyReport& r) {
    json j;
    j["residuals"] = r.residuals;
    j["scale"] = r.scale;
    j["max_relative_residual"] = r.max_residual() / r.scale;
    j["casimir_value"] = scalar_json(r.casimir_value);
    j["casimir_expected"] = scalar_json(r.casimir_expected);
    j["casimir_deviation"] = r.casimir_deviation;
    j["spectrum"] = scalars_json(r.spectrum);
    j["commutant_dim"] = r.commutant_dim;
    j["trace_class"] = scalar_json(r.trace_class);
    j["trace_expected"] = scalar_json(r.trace_expected);
    j["flags"] = json{{"irreducible", r.flags.irreducible},
                      {"spectrum_distinct", r.flags.spectrum_distinct},
                      {"trace_matches", r.flags.trace_matches},
                      {"casimir_matches", r.flags.casimir_matches}};
    return j;
}

json racah_params_json(const leonard::RacahParams& rp) {
    return json{{"alpha", scalar_json(rp.alpha)},
                {"beta", scalar_json(rp.beta)},
                {"gamma", scalar_json(rp.gamma)},
                {"delta", scalar_json(rp.delta)},
                {"N", rp.N}};
}

json leonard_json(const leonard::LeonardPairData& d) {
    json j;
    j["qnu"] = scalar_json(d.qnu);
    j["racah"] = racah_params_json(d.rp);
    j["A_X"] = matrix_json(d.A_X);
    j["B_X"] = matrix_json(d.B_X);
    j["A_Y"] = matrix_json(d.A_Y);
    j["B_Y"] = matrix_json(d.B_Y);
    j["P"] = matrix_json(d.P);
    return j;
}

json transition_json(const leonard::TransitionReport& t) {
    json j;
    j["P"] = matrix_json(t.P);
    j["r"] = scalars_json(t.r);
    j["residual_A"] = t.residual_A;
    j["residual_B"] = t.residual_B;
    j["intertwiner_deviation"] = t.intertwiner_deviation ? json(*t.intertwiner_deviation) : json(nullptr);
    return j;
}

json conditions_json(const leonard::ConditionReport& c) {
    json j;
    j["passes"] = c.passes();
    j["classical"] = c.classical();
    json list = json::array();
    for (const auto& r : c.conditions)
        list.push_back(json{{"name", r.name}, {"pass", r.pass}, {"witness", r.witness ? json(*r.witness) : json(nullptr)}});
    j["conditions"] = std::move(list);
    json border = json::array();
    for (const auto& [what, l] : c.border) border.push_back(json{{"value", what}, {"l", l}});
    j["border"] = std::move(border);
    return j;
}

json point_json(const sweep::PointResult& p) {
    json j;
    j["index"] = p.index;
    j["pass"] = p.pass;
    j["exit_code"] = p.exit_code;
    j["error"] = p.error.empty() ? json(nullptr) : json(p.error);
    j["residual"] = p.residual;
    j["casimir_deviation"] = p.casimir_deviation;
    j["commutant_dim"] = p.commutant_dim;
    j["trace_class"] = scalar_json(p.trace_class);
    return j;
}

json aggregate_json(const sweep::Aggregate& a) {
    json j;
    j["points"] = a.points.size();
    j["passed"] = a.passed;
    j["failed"] = a.failed;
    j["max_residual"] = a.max_residual;
    j["mean_residual"] = a.mean_residual;
    j["max_casimir_deviation"] = a.max_casimir_deviation;
    json pts = json::array();
    for (const auto& p : a.points) pts.push_back(point_json(p));
    j["results"] = std::move(pts);
    return j;
}

std::string racah_csv(const Matrix& table) {
    std::ostringstream os;
    os << "n\\x";
    for (Eigen::Index x = 0; x < table.cols(); ++x) os << ',' << x;
    os << '\n';
    for (Eigen::Index n = 0; n < table.rows(); ++n) {
        os << n;
        for (Eigen::Index x = 0; x < table.cols(); ++x) os << ',' << format_complex(table(n, x));
        os << '\n';
    }
    return os.str();
}

}  // namespace awrep::io
