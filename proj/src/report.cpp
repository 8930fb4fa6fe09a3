#include "densitymod/report.hpp"

#include <charconv>
#include <sstream>

namespace densitymod {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string complex_text(Complex z) {
    if (z.imag() == 0) return shortest(z.real());
    return shortest(z.real()) + (z.imag() < 0 ? "-" : "+") + shortest(std::abs(z.imag())) + "i";
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const DegreeSet& s, int n) {
    return {{"labels", s.labels}, {"describe", s.describe(n)}, {"truncated", s.truncated}, {"simple", s.simple}};
}

json to_json(const FormResult& f) {
    json w = json::object();
    for (const auto& [m, d] : f.weights) w[std::to_string(m)] = to_string(d);
    return {{"verdict", f.verdict}, {"exists", f.exists},       {"hermitian", f.hermitian},
            {"family_dim", f.family_dim}, {"unitary", f.unitary}, {"weights", w}};
}

json to_json(const ClassificationVerdict& v) {
    json sets = json::array(), unitarity = json::array(), disc = json::array();
    for (const auto& s : v.invariant_sets) sets.push_back(to_json(s, v.n));
    for (const auto& f : v.factors) {
        json j = to_json(f.set, v.n);
        j["role"] = f.role;
        j["form"] = to_json(f.form);
        unitarity.push_back(j);
    }
    json exp_factors = json::array(), exp_simple = json::array();
    for (const auto& f : v.expected.factors) {
        json j = to_json(f.set, v.n);
        j["role"] = f.role;
        j["finite"] = f.finite;
        j["unitary"] = f.unitary;
        exp_factors.push_back(j);
    }
    for (const auto& s : v.expected.simple_submodules) exp_simple.push_back(to_json(s, v.n));
    for (const auto& d : v.discrepancies)
        disc.push_back({{"kind", "paper-discrepancy"},
                        {"topic", d.topic},
                        {"computed", d.computed},
                        {"reading_a", d.reading_a},
                        {"reading_b", d.reading_b}});
    json flags = json::array();
    if (v.agreement && !v.discrepancies.empty()) flags.push_back("discrepancy-documented");
    return {{"n", v.n},
            {"lambda", to_string(v.lambda)},
            {"D", v.D},
            {"simple", v.simple},
            {"invariant_sets", sets},
            {"unitarity", unitarity},
            {"expected", {{"simple", v.expected.simple}, {"factors", exp_factors}, {"simple_submodules", exp_simple}}},
            {"agreement", v.agreement},
            {"disagreements", v.disagreements},
            {"paper_discrepancies", disc},
            {"flags", flags}};
}

json to_json(const Theorem1Report& r) {
    json gens = json::array();
    for (const auto& g : r.generators)
        gens.push_back({{"generator", g.generator},
                        {"matched", g.matched},
                        {"equivariance", g.equivariance},
                        {"intertwining", g.intertwining},
                        {"control", g.control}});
    const auto& c = r.config;
    return {{"n", c.n},
            {"lambda", complex_json(c.lambda)},
            {"nu", complex_json(r.nu)},
            {"points", c.points},
            {"probes", c.probes},
            {"seed", c.seed},
            {"force_nu_offset", complex_json(c.force_nu_offset)},
            {"control_nu", complex_json(double(c.n) * c.lambda + c.control_offset)},
            {"tolerance", c.tolerance},
            {"threshold", c.threshold},
            {"generators", gens},
            {"max_equivariance", r.max_equivariance},
            {"max_intertwining", r.max_intertwining},
            {"max_control", r.max_control},
            {"residuals_ok", r.residuals_ok},
            {"control_ok", r.control_ok},
            {"pass", r.pass}};
}

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const IwasawaFactors& f) {
    std::vector<double> a(f.a.data(), f.a.data() + f.a.size());
    return {{"n", int(f.a.size())}, {"k", to_json(f.k)}, {"t", f.t}, {"a", a}, {"residual", f.residual}};
}

std::string classification_text(const ClassificationVerdict& v) {
    std::ostringstream os;
    os << "n = " << v.n << ", lambda = " << to_string(v.lambda) << ", D = " << v.D << "\n";
    os << (v.simple ? "simple" : "not simple") << " (expected " << (v.expected.simple ? "simple" : "not simple")
       << ")\n";
    for (const auto& s : v.invariant_sets)
        if (s.simple) os << "  simple submodule: " << s.describe(v.n) << "\n";
    for (const auto& f : v.factors)
        os << "  " << f.role << " " << f.set.describe(v.n) << ": " << f.form.verdict << "\n";
    for (const auto& d : v.disagreements) os << "  disagreement: " << d << "\n";
    for (const auto& d : v.discrepancies)
        os << "  paper-discrepancy: " << d.topic << "\n    computed: " << d.computed << "\n    reading a: "
           << d.reading_a << "\n    reading b: " << d.reading_b << "\n";
    os << "agreement: " << (v.agreement ? "true" : "false");
    if (v.agreement && !v.discrepancies.empty()) os << " (discrepancy-documented)";
    os << "\n";
    return os.str();
}

std::string theorem1_text(const Theorem1Report& r) {
    std::ostringstream os;
    os << "n = " << r.config.n << ", lambda = " << complex_text(r.config.lambda) << ", nu = " << complex_text(r.nu)
       << ", " << r.config.points << " points x " << r.config.probes << " probes\n";
    for (const auto& g : r.generators)
        os << "  " << g.generator << " ~ " << g.matched << ": equivariance " << g.equivariance << ", intertwining "
           << g.intertwining << ", control " << g.control << "\n";
    os << "residuals " << (r.residuals_ok ? "ok" : "FAILED") << " (tolerance " << r.config.tolerance << ")\n";
    os << "negative control " << (r.control_ok ? "ok" : "FAILED") << " (threshold " << r.config.threshold << ")\n";
    os << (r.pass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string iwasawa_text(const IwasawaFactors& f) {
    std::ostringstream os;
    os.precision(17);
    os << "t = " << f.t << "\na =";
    for (int i = 0; i < f.a.size(); ++i) os << " " << f.a[i];
    os << "\nk =\n" << f.k << "\nresidual = " << f.residual << "\n";
    return os.str();
}

Eigen::MatrixXd read_csv_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            std::string c = trim(cell);
            double v = 0;
            auto r = std::from_chars(c.data(), c.data() + c.size(), v);
            if (c.empty() || r.ec != std::errc() || r.ptr != c.data() + c.size())
                throw ParseError("csv line " + std::to_string(lineno) + ": bad number '" + c + "'");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows[0].size())
            throw ParseError("csv line " + std::to_string(lineno) + ": ragged row");
        rows.push_back(row);
    }
    if (rows.empty()) throw ParseError("csv: empty matrix");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::string write_csv(const Eigen::MatrixXd& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) s += (j ? "," : "") + shortest(m(i, j));
        s += "\n";
    }
    return s;
}

}  // namespace densitymod
