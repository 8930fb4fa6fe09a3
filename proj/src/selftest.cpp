#include "densitymod/selftest.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace densitymod {

namespace {

using Clock = std::chrono::steady_clock;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GaussianRational q(long a, long b = 1) { return GaussianRational(a, b); }
GaussianRational half_plus_i() { return GaussianRational(Rational(1, 2), Rational(1)); }

// Each criterion draws from its own stream so results do not depend on the order they run in.
std::mt19937 stream(unsigned seed, int id) {
    std::seed_seq s{seed, unsigned(id)};
    return std::mt19937(s);
}

double uniform(std::mt19937& r, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(r); }

MatrixXd rotation(std::mt19937& r, int m) {
    std::normal_distribution<double> g;
    MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = g(r);
    Eigen::HouseholderQR<MatrixXd> qr(a);
    MatrixXd Q = qr.householderQ();
    if (Q.determinant() < 0) Q.col(0) *= -1;
    return Q;
}

VectorXd vec(std::mt19937& r, int n, double span) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(r, -span, span);
    return v;
}

Angles angles(std::mt19937& r, int n, double margin) {
    Angles th(n);
    th[0] = uniform(r, 0, 2 * M_PI);
    for (int j = 1; j < n; ++j) th[j] = uniform(r, margin, M_PI - margin);
    return th;
}

TestFunction probe(std::mt19937& r, int n) {
    std::uniform_int_distribution<int> coef(-4, 4), den(1, 3), deg(0, 4), var(0, n);
    for (;;) {
        std::vector<MultiPoly::Term> terms;
        for (int k = 0; k < 5; ++k) {
            std::vector<int> e(n + 1, 0);
            for (int d = deg(r); d > 0; --d) ++e[var(r)];
            terms.push_back({mono::pack(e), GaussianRational(Rational(coef(r), den(r)), Rational(coef(r), den(r)))});
        }
        MultiPoly p = MultiPoly::from_terms(n + 1, std::move(terms));
        if (p.degree() >= 2) return TestFunction(p);
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int m = lo; m <= hi; ++m) v.push_back(m);
    return v;
}

}  // namespace

bool CriterionResult::within_budget() const {
    if (budget_seconds <= 0) return true;
    return (max_case_seconds > 0 ? max_case_seconds : seconds) <= budget_seconds;
}

std::vector<GridPoint> classification_grid() {
    std::vector<GridPoint> g;
    for (auto l : {q(-2), q(-1), q(0), q(1), q(2), q(1, 3), half_plus_i()}) g.push_back({1, l});
    for (auto l : {q(-1), q(-1, 2), q(0), q(1, 2), q(1, 4), q(1, 3), q(2, 3), q(1), q(3, 2), q(2), q(1, 5),
                   half_plus_i()})
        g.push_back({2, l});
    for (auto l : {q(-1, 3), q(0), q(1, 3), q(2, 3), q(1), q(4, 3), half_plus_i()}) g.push_back({3, l});
    return g;
}

CriterionResult criterion_theorem1(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 1;
    r.title = "equivalence with the spherical principal series at nu = n lambda";
    r.budget_seconds = 60;
    auto t0 = Clock::now();
    std::vector<int> ns = o.quick ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3};
    std::vector<Complex> lambdas{1.0 / 3, -0.5, 2.0, Complex(0.5, 1)};
    if (o.quick) lambdas = {1.0 / 3, Complex(0.5, 1)};
    r.pass = true;
    r.details = json::array();
    double worst = 0, weakest_control = INFINITY;
    for (int n : ns)
        for (Complex lam : lambdas) {
            Theorem1Config cfg;
            cfg.n = n;
            cfg.lambda = lam;
            cfg.points = o.quick ? std::min(o.points, 50) : o.points;
            cfg.probes = 5;
            cfg.seed = o.seed;
            cfg.tolerance = o.tolerance;
            auto tc = Clock::now();
            auto rep = verify_theorem1(cfg);
            r.max_case_seconds = std::max(r.max_case_seconds, since(tc));
            r.pass = r.pass && rep.pass;
            worst = std::max({worst, rep.max_equivariance, rep.max_intertwining});
            weakest_control = std::min(weakest_control, rep.max_control);
            r.details.push_back({{"n", n},
                                 {"lambda", complex_json(lam)},
                                 {"max_equivariance", rep.max_equivariance},
                                 {"max_intertwining", rep.max_intertwining},
                                 {"max_control", rep.max_control},
                                 {"pass", rep.pass}});
        }
    r.summary = std::to_string(r.details.size()) + " cases, worst residual " + fmt(worst) +
                ", weakest control " + fmt(weakest_control);
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_coboundary(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 2;
    r.title = "coboundary system solvable exactly at alpha = n";
    auto t0 = Clock::now();
    auto rng = stream(o.seed, r.id);
    const double margin = 0.05;
    r.pass = true;
    r.details = json::array();
    double worst_zero = 0, weakest_fraction = 1;
    for (int n = 1; n <= 4; ++n) {
        std::vector<Angles> pts;
        while (int(pts.size()) < o.points) {
            Angles th = angles(rng, n, margin);
            // the stereographic pole is outside the chart
            if (n == 1 && std::abs(std::remainder(th[0], 2 * M_PI)) < margin) continue;
            pts.push_back(th);
        }
        auto gens = noncompact_generators(n);
        double at_n = 0;
        for (const auto& g : gens)
            for (const auto& th : pts) at_n = std::max(at_n, std::abs(coboundary_residual(n, g, th)));
        json off = json::array();
        bool ok = at_n <= o.tolerance;
        for (double alpha : {n - 1.0, n + 1.0, n + 0.5}) {
            double best = 0;
            std::string best_gen;
            for (const auto& g : gens) {
                int hit = 0;
                for (const auto& th : pts) hit += std::abs(coboundary_residual(alpha, g, th)) >= 1e-2;
                double frac = double(hit) / pts.size();
                if (frac > best) best = frac, best_gen = to_string(g);
            }
            ok = ok && best >= 0.9;
            weakest_fraction = std::min(weakest_fraction, best);
            off.push_back({{"alpha", alpha}, {"generator", best_gen}, {"fraction_nonzero", best}});
        }
        worst_zero = std::max(worst_zero, at_n);
        r.pass = r.pass && ok;
        r.details.push_back({{"n", n}, {"max_residual_at_alpha_n", at_n}, {"off_alpha", off}, {"pass", ok}});
    }
    r.summary = "max residual at alpha = n " + fmt(worst_zero) + ", smallest nonzero fraction elsewhere " +
                fmt(weakest_fraction);
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_classification(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 3;
    r.title = "classification agrees with the expected table";
    r.budget_seconds = 300;
    auto t0 = Clock::now();
    r.pass = true;
    json grid = json::array();
    int agreed = 0, total = 0;
    if (!o.quick)
        for (const auto& p : classification_grid()) {
            auto v = classify(p.n, p.lambda, o.D);
            ++total;
            agreed += v.agreement;
            r.pass = r.pass && v.agreement;
            grid.push_back({{"n", p.n},
                            {"lambda", to_string(p.lambda)},
                            {"simple", v.simple},
                            {"agreement", v.agreement},
                            {"disagreements", v.disagreements},
                            {"paper_discrepancies", int(v.discrepancies.size())}});
        }

    json checks = json::array();
    auto check = [&](const std::string& name, bool ok) {
        r.pass = r.pass && ok;
        checks.push_back({{"checkpoint", name}, {"pass", ok}});
    };
    {
        auto v = classify(2, q(-1, 2), o.D);
        std::vector<DegreeSet> minimal;
        for (const auto& s : v.invariant_sets)
            if (s.simple) minimal.push_back(s);
        long dim = 0;
        bool finite = minimal.size() == 1 && !minimal[0].truncated;
        if (finite)
            for (int m : minimal[0].labels) dim += harmonic_dimension(3, m);
        check("n=2 lambda=-1/2: finite submodule of dimension 4", v.agreement && finite && dim == 4);
    }
    {
        auto v = classify(1, q(2), o.D);
        int subs = 0;
        bool unitary = true;
        for (const auto& f : v.factors)
            if (f.role == "submodule" && f.set.truncated) {
                ++subs;
                unitary = unitary && f.form.verdict == "unitary";
            }
        check("n=1 lambda=2: two infinite unitary submodules", v.agreement && subs == 2 && unitary);
    }
    {
        auto v = classify(2, q(1, 3), o.D);
        check("n=2 lambda=1/3: simple", v.agreement && v.simple);
    }
    r.details = {{"D", o.D}, {"grid", grid}, {"checkpoints", checks}};
    r.summary = (o.quick ? std::string("grid skipped (quick)") :
                           std::to_string(agreed) + "/" + std::to_string(total) + " grid points agree") +
                ", " + std::to_string(checks.size()) + " checkpoints";
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_unitarity(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 4;
    r.title = "invariant Hermitian forms at n = 2";
    auto t0 = Clock::now();
    auto form = [&](const GaussianRational& lam) {
        GradedBasis b(2, o.D + 1, lam);
        return invariant_form(b, all_action_matrices(b), range(0, o.D));
    };
    r.pass = true;
    r.details = json::array();
    auto record = [&](const GaussianRational& lam, const FormResult& f, const std::string& want, bool ok) {
        r.pass = r.pass && ok;
        json j = to_json(f);
        j["lambda"] = to_string(lam);
        j["requirement"] = want;
        j["pass"] = ok;
        r.details.push_back(j);
    };
    for (auto lam : {q(1, 4), q(3, 4)}) {
        auto f = form(lam);
        bool ok = f.verdict == "unitary" && int(f.weights.size()) == o.D + 1;
        for (const auto& [m, w] : f.weights) ok = ok && w.is_real() && sgn(w.re) > 0;
        record(lam, f, "all weights positive", ok);
    }
    {
        auto f = form(half_plus_i());
        bool ok = f.verdict == "unitary" && int(f.weights.size()) == o.D + 1;
        for (const auto& [m, w] : f.weights) ok = ok && w == f.weights.begin()->second;
        record(half_plus_i(), f, "equal weights", ok);
    }
    {
        auto f = form(q(3, 2));
        bool mixed = false, pos = false;
        for (const auto& [m, w] : f.weights) {
            mixed |= w.is_real() && sgn(w.re) < 0;
            pos |= w.is_real() && sgn(w.re) > 0;
        }
        record(q(3, 2), f, "none or sign-mixed weights", f.verdict == "none" || (mixed && pos));
    }
    r.summary = "lambda = 1/4, 3/4, 1/2+i, 3/2 up to degree " + std::to_string(o.D);
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_structure(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 5;
    r.title = "exact commutators, band property, compact subalgebra";
    auto t0 = Clock::now();
    r.pass = true;
    r.details = json::array();
    int checked = 0;
    for (const auto& p : classification_grid()) {
        if (o.quick && p.n == 3) continue;
        GradedBasis b(p.n, o.D + 1, p.lambda);
        auto ops = all_action_matrices(b);
        auto comm = commutator_check(b, ops);
        bool band = true;
        for (const auto& op : ops) band = band && op.band_ok();
        auto compact = compact_subalgebra_check(b);
        bool ok = comm.nonzero_entries == 0 && band && compact.ok;
        r.pass = r.pass && ok;
        ++checked;
        r.details.push_back({{"n", p.n},
                             {"lambda", to_string(p.lambda)},
                             {"commutator_pairs", comm.pairs},
                             {"commutator_defect_entries", comm.nonzero_entries},
                             {"band", band},
                             {"compact", compact.ok},
                             {"pass", ok}});
    }
    for (int n = 1; n <= (o.quick ? 2 : 3); ++n) {
        auto rot = rotation_lambda_independence(n, o.D, q(1, 3), half_plus_i());
        r.pass = r.pass && rot.ok;
        r.details.push_back({{"n", n}, {"rotation_lambda_independent", rot.ok}, {"detail", rot.detail}});
    }
    r.summary = std::to_string(checked) + " grid points, commutator sources up to degree " + std::to_string(o.D - 1);
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_group(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 6;
    r.title = "Iwasawa round trip, homomorphism, finite-difference order";
    auto t0 = Clock::now();
    auto rng = stream(o.seed, r.id);
    const int kan = o.quick ? 20 : 100, pairs = o.quick ? 10 : 50, fd_probes = o.quick ? 2 : 5;
    const Complex nu(0.7, -0.4);
    r.pass = true;
    r.details = json::array();
    double worst_trip = 0, worst_hom = 0, min_order = INFINITY;
    for (int n = 1; n <= 3; ++n) {
        double trip = 0;
        for (int k = 0; k < kan; ++k) {
            MatrixXd R = rotation(rng, n + 1);
            double t = uniform(rng, -2, 2);
            VectorXd a = vec(rng, n, 1.5);
            auto f = iwasawa(k_embed(R) * h_matrix(n, t) * n_matrix(a));
            trip = std::max({trip, f.residual, std::abs(f.t - t), (f.a - a).cwiseAbs().maxCoeff(),
                             (f.k - R).cwiseAbs().maxCoeff()});
        }
        double hom = 0;
        int done = 0, skipped = 0;
        while (done < pairs) {
            auto kan_elem = [&] {
                MatrixXd R = rotation(rng, n + 1);
                double t = uniform(rng, -0.6, 0.6);
                return MatrixXd(k_embed(R) * h_matrix(n, t) * n_matrix(vec(rng, n, 0.6)));
            };
            MatrixXd g1 = kan_elem(), g2 = kan_elem();
            TestFunction f = probe(rng, n);
            Angles th = angles(rng, n, 0.2);
            try {
                Complex lhs = induced_general(nu, g1 * g2, f, th);
                SphereFunction inner = [&](const Angles& x) { return induced_general(nu, g2, f, x); };
                Complex rhs = induced_general(nu, g1, inner, th);
                hom = std::max(hom, std::abs(lhs - rhs) / (1 + std::abs(lhs)));
                ++done;
            } catch (const std::domain_error&) {
                // an intermediate point landed within the angle guard
                ++skipped;
            }
        }
        std::vector<AlgebraTag> tags{AlgebraTag::h()};
        for (int i = 1; i <= n; ++i) tags.push_back(AlgebraTag::ni(i));
        json orders = json::object();
        double order_n = INFINITY;
        for (const auto& tag : tags) {
            double lowest = INFINITY;
            for (int p = 0; p < fd_probes; ++p) {
                TestFunction f = probe(rng, n);
                Angles th = angles(rng, n, 0.3);
                std::vector<double> steps{1e-3, 5e-4, 2.5e-4}, res;
                for (double s : steps) res.push_back(fd_consistency(nu, tag, f, th, s));
                lowest = std::min(lowest, fitted_order(steps, res));
            }
            orders[to_string(tag)] = lowest;
            order_n = std::min(order_n, lowest);
        }
        bool ok = trip <= 1e-9 && hom <= 1e-8 && order_n >= 1.9;
        r.pass = r.pass && ok;
        worst_trip = std::max(worst_trip, trip);
        worst_hom = std::max(worst_hom, hom);
        min_order = std::min(min_order, order_n);
        r.details.push_back({{"n", n},
                             {"kan_samples", kan},
                             {"max_round_trip", trip},
                             {"homomorphism_pairs", pairs},
                             {"guard_skips", skipped},
                             {"max_homomorphism_defect", hom},
                             {"fd_orders", orders},
                             {"pass", ok}});
    }
    r.summary = "round trip " + fmt(worst_trip) + ", homomorphism " + fmt(worst_hom) + ", min fd order " +
                fmt(min_order);
    r.seconds = since(t0);
    return r;
}

CriterionResult criterion_discrepancies(const SelftestOptions& o) {
    CriterionResult r;
    r.id = 7;
    r.title = "documented discrepancies are recorded, not failed";
    auto t0 = Clock::now();
    std::vector<GridPoint> cases;
    for (int n = 1; n <= 3; ++n)
        if (!o.quick || n == 2) cases.push_back({n, q(1, 2)});
    // lambda = 1 + l/n in the classification grid
    for (const auto& p : classification_grid()) {
        if (p.n == 1 || (o.quick && p.n == 3) || !p.lambda.is_real()) continue;
        Rational l = (p.lambda.re - 1) * p.n;
        if (l.get_den() == 1 && sgn(l) >= 0) cases.push_back(p);
    }
    r.pass = true;
    r.details = json::array();
    int records = 0;
    for (const auto& p : cases) {
        auto v = classify(p.n, p.lambda, o.D);
        bool ok = v.agreement && !v.discrepancies.empty();
        for (const auto& d : v.discrepancies)
            ok = ok && !d.computed.empty() && !d.reading_a.empty() && !d.reading_b.empty();
        records += int(v.discrepancies.size());
        r.pass = r.pass && ok;
        json recs = json::array();
        for (const auto& d : v.discrepancies) recs.push_back({{"topic", d.topic}, {"computed", d.computed}});
        r.details.push_back(
            {{"n", p.n}, {"lambda", to_string(p.lambda)}, {"agreement", v.agreement}, {"records", recs}, {"pass", ok}});
    }
    r.summary = std::to_string(cases.size()) + " cases, " + std::to_string(records) + " paper-discrepancy records";
    r.seconds = since(t0);
    return r;
}

std::vector<CriterionResult> run_selftest(const SelftestOptions& o,
                                          const std::function<void(const CriterionResult&)>& on_done) {
    std::vector<CriterionResult> out;
    for (auto* fn : {criterion_theorem1, criterion_coboundary, criterion_classification, criterion_unitarity,
                     criterion_structure, criterion_group, criterion_discrepancies}) {
        out.push_back(fn(o));
        if (on_done) on_done(out.back());
    }
    return out;
}

json selftest_json(const SelftestOptions& o, const std::vector<CriterionResult>& results) {
    json crit = json::array();
    bool all = true;
    for (const auto& c : results) {
        all = all && c.pass;
        crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary}, {"details", c.details}});
    }
    return {{"seed", o.seed},
            {"quick", o.quick},
            {"D", o.D},
            {"points", o.points},
            {"tolerance", o.tolerance},
            {"criteria", crit},
            {"pass", all}};
}

}  // namespace densitymod
