#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "densitymod/selftest.hpp"

using namespace densitymod;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInvalid = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int n = 2;
    std::string lambda = "1/3";
    int D = 8;
    int grid = 200;
    unsigned seed = 1;
    std::string format = "json";
    std::optional<double> tolerance;
    bool quick = false;
    std::string nu_offset = "0";
    std::string matrix_file;
};

GaussianRational parse_lambda(const std::string& s, const char* what) {
    try {
        return parse_gaussian(s);
    } catch (const std::exception& e) {
        throw UsageError(std::string("invalid ") + what + " '" + s + "': " + e.what());
    }
}

void check_n(int n) {
    if (n < 1 || n > 4) throw UsageError("--n must be in 1..4");
}

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

void no_csv(const Options& o, const char* cmd) {
    if (o.format == "csv") throw UsageError(std::string("csv output is only available for iwasawa, not ") + cmd);
}

int cmd_classify(const Options& o) {
    no_csv(o, "classify");
    check_n(o.n);
    if (o.D < 1) throw UsageError("--max-degree must be positive");
    auto lam = parse_lambda(o.lambda, "lambda");
    auto v = classify(o.n, lam, o.D);
    emit(o, to_json(v), classification_text(v));
    return v.agreement ? kOk : kFail;
}

int cmd_verify(const Options& o) {
    no_csv(o, "verify-theorem1");
    check_n(o.n);
    if (o.grid < 1) throw UsageError("--grid must be positive");
    Theorem1Config cfg;
    cfg.n = o.n;
    cfg.lambda = parse_lambda(o.lambda, "lambda").to_complex();
    cfg.force_nu_offset = parse_lambda(o.nu_offset, "nu offset").to_complex();
    cfg.points = o.quick ? std::min(o.grid, 50) : o.grid;
    cfg.seed = o.seed;
    if (o.tolerance) cfg.tolerance = *o.tolerance;
    auto rep = verify_theorem1(cfg);
    emit(o, to_json(rep), theorem1_text(rep));
    return rep.pass ? kOk : kFail;
}

int cmd_iwasawa(const Options& o, bool n_given) {
    std::ifstream in(o.matrix_file);
    if (!in) throw ValidationError("cannot read " + o.matrix_file);
    std::stringstream buf;
    buf << in.rdbuf();
    Eigen::MatrixXd g;
    try {
        g = read_csv_matrix(buf.str());
    } catch (const ParseError& e) {
        throw ValidationError(e.what());
    }
    if (g.rows() != g.cols() || g.rows() < 3 || g.rows() > 6)
        throw ValidationError("expected an (n+2)x(n+2) matrix with n in 1..4, got " + std::to_string(g.rows()) + "x" +
                              std::to_string(g.cols()));
    if (n_given && g.rows() != o.n + 2) throw ValidationError("matrix size does not match --n");
    auto f = iwasawa(g);
    double tol = o.tolerance.value_or(1e-9);
    if (o.format == "csv") {
        // k, then t, then a, one row each after the matrix
        std::cout << write_csv(f.k) << write_csv(Eigen::MatrixXd::Constant(1, 1, f.t))
                  << write_csv(f.a.transpose());
    } else {
        json j = to_json(f);
        j["tolerance"] = tol;
        j["pass"] = f.residual <= tol;
        emit(o, j, iwasawa_text(f));
    }
    return f.residual <= tol ? kOk : kFail;
}

int cmd_selftest(const Options& o) {
    no_csv(o, "selftest");
    SelftestOptions so;
    so.seed = o.seed;
    so.quick = o.quick;
    so.D = o.D;
    so.points = o.grid;
    if (o.tolerance) so.tolerance = *o.tolerance;
    if (so.D < 2) throw UsageError("--max-degree must be at least 2");
    auto res = run_selftest(so, [&](const CriterionResult& c) {
        std::cerr << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.summary << "\n";
    });
    json j = selftest_json(so, res);
    std::ostringstream text;
    for (const auto& c : res) text << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << c.summary << "\n";
    emit(o, j, text.str());
    return j["pass"].get<bool>() ? kOk : kFail;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--n", o.n, "sphere dimension (1..4)");
    sub->add_option("--lambda", o.lambda, "density degree, e.g. 1/3 or 1/2+1/1*i");
    sub->add_option("--max-degree", o.D, "degree cap D");
    sub->add_option("--grid", o.grid, "number of sample points");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--tolerance", o.tolerance, "residual tolerance override");
    sub->add_flag("--quick", o.quick, "reduced sample counts");
    sub->add_option("--force-nu-offset", o.nu_offset, "evaluate at nu = n lambda + offset");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor densities on spheres as (g,K)-modules: classification and verification"};
    app.require_subcommand(1);
    Options o;
    auto* classify_cmd = app.add_subcommand("classify", "submodules and unitarity for one (n, lambda)");
    auto* verify_cmd = app.add_subcommand("verify-theorem1", "equivalence with the principal series at nu = n lambda");
    auto* iwasawa_cmd = app.add_subcommand("iwasawa", "KAN factors of a Lorentz matrix read from CSV");
    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance checks");
    for (auto* s : {classify_cmd, verify_cmd, iwasawa_cmd, selftest_cmd}) add_common(s, o);
    iwasawa_cmd->add_option("matrix", o.matrix_file, "row-major CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*iwasawa_cmd) return cmd_iwasawa(o, iwasawa_cmd->count("--n") > 0);
        return cmd_selftest(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
