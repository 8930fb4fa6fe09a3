#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "densitymod/gk.hpp"
#include "gen.hpp"

using namespace densitymod;

namespace {

GaussianRational q(long a, long b = 1) { return GaussianRational(a, b); }

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int m = lo; m <= hi; ++m) v.push_back(m);
    return v;
}

// Closed-form edge rule: raising m -> m+1 vanishes iff m + n lambda = 0,
// lowering m+1 -> m vanishes iff m + n - n lambda = 0 (for n = 1 the same
// with |m| on each half line).
std::set<std::pair<int, int>> expected_edges(int n, const GaussianRational& lam, int cap) {
    std::set<std::pair<int, int>> e;
    GaussianRational nl = q(n) * lam;
    for (int m = 0; m < cap; ++m) {
        bool up = !(q(m) + nl).is_zero();
        bool down = !(q(m + n) - nl).is_zero();
        if (n == 1) {
            if (up) e.insert({m, m + 1}), e.insert({-m, -m - 1});
            if (down) e.insert({m + 1, m}), e.insert({-m - 1, -m});
        } else {
            if (up) e.insert({m, m + 1});
            if (down) e.insert({m + 1, m});
        }
    }
    return e;
}

GaussianRational random_lambda() {
    switch (gen::uniform(0, 3)) {
        case 0: return q(gen::uniform(-6, 6), gen::uniform(1, 3));
        case 1: return gen::small_gaussian();
        default: return q(gen::uniform(-4, 8), 4);
    }
}

}  // namespace

TEST_CASE("layout indexes every basis element once") {
    GradedBasis b(2, 4, q(1, 3));
    Layout l = Layout::of(b);
    CHECK(l.total == b.total_dimension());
    CHECK(l.total == 1 + 3 + 5 + 7 + 9);
    CHECK(l.offset.at(3) == 1 + 3 + 5);
    CHECK(l.label_at[l.offset.at(4)] == 4);
    Layout l1 = Layout::of(GradedBasis(1, 3, 0));
    CHECK(l1.total == 7);
    CHECK(l1.degree(-3) == 3);
}

TEST_CASE("band property") {
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 2; ++trial) {
            GradedBasis b(n, n == 3 ? 4 : 6, random_lambda());
            for (const auto& op : all_action_matrices(b)) {
                CHECK(op.band_ok());
                for (const auto& [t, s] : op.nonzero_blocks()) CHECK(b.degree_of(s) <= b.cap() - 1);
            }
        }
}

TEST_CASE("cached action equals direct action") {
    for (int n = 1; n <= 3; ++n) {
        GaussianRational lam = gen::small_gaussian();
        GradedBasis b(n, 3, lam);
        for (const auto& t : all_generators(n)) CHECK(action_matrix(t, b).mat == action_matrix_cached(t, b).mat);
    }
}

TEST_CASE("compact subalgebra preserves degrees and rotations ignore lambda") {
    for (int n = 1; n <= 3; ++n) {
        for (auto lam : {q(1, 3), GaussianRational(Rational(1, 2), Rational(1)), q(-2)}) {
            auto r = compact_subalgebra_check(GradedBasis(n, n == 3 ? 4 : 6, lam));
            CHECK_MESSAGE(r.ok, r.detail);
        }
        CHECK(rotation_lambda_independence(n, 4, q(1, 3), q(-5, 2)).ok);
    }
    // dilation is not compact and does mix degrees
    GradedBasis b(2, 4, q(1, 3));
    CHECK_FALSE(action_matrix_cached(GeneratorTag::dil(), b).diagonal());
}

TEST_CASE("commutator defect is exactly zero") {
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 2; ++trial) {
            GradedBasis b(n, n == 3 ? 5 : 7, random_lambda());
            auto r = commutator_check(b);
            CHECK(r.pairs == int(all_generators(n).size() * (all_generators(n).size() + 1) / 2));
            CHECK_MESSAGE(r.nonzero_entries == 0, r.worst);
        }
}

TEST_CASE("commutator check detects a corrupted operator") {
    GradedBasis b(1, 5, q(1, 3));
    auto ops = all_action_matrices(b);
    ops[0].mat = ops[0].mat * q(2);
    CHECK(commutator_check(b, ops).nonzero_entries > 0);
}

TEST_CASE("reachability matches the closed-form edge rule") {
    for (int n = 1; n <= 3; ++n) {
        int cap = n == 3 ? 5 : 7;
        std::vector<GaussianRational> lams{q(0), q(1), q(-1, n), q(n + 1, n), q(1, 2), q(1, 3)};
        for (int trial = 0; trial < 4; ++trial) lams.push_back(random_lambda());
        for (const auto& lam : lams) {
            GradedBasis b(n, cap + 1, lam);
            Graph g = reachability(all_action_matrices(b), cap);
            CHECK_MESSAGE(g.edges == expected_edges(n, lam, cap), to_string(lam));
        }
    }
}

TEST_CASE("reachability is unchanged by rescaling basis vectors") {
    for (int n = 1; n <= 2; ++n) {
        GradedBasis b(n, 6, q(-1));
        auto ops = all_action_matrices(b);
        Graph g = reachability(ops, 5);
        const Layout& l = *ops.front().layout;
        // D^-1 A D with a random nonzero rational diagonal D
        std::vector<GaussianRational> d(l.total);
        for (auto& v : d) {
            do v = gen::small_gaussian(false);
            while (v.is_zero());
        }
        for (auto& op : ops) {
            SparseMatrix m(l.total, l.total);
            for (int j = 0; j < l.total; ++j) {
                std::vector<SparseMatrix::Entry> col;
                for (const auto& [i, v] : op.mat.column(j)) col.push_back({i, v * d[j] / d[i]});
                m.set_column(j, col);
            }
            op.mat = m;
        }
        Graph h = reachability(ops, 5);
        CHECK(h.edges == g.edges);
        CHECK(h.nodes == g.nodes);
    }
}

TEST_CASE("reachability rejects a node cap above the source cap") {
    GradedBasis b(1, 4, q(1));
    CHECK_THROWS_AS(reachability(all_action_matrices(b), 4), std::invalid_argument);
    CHECK_THROWS_AS(reachability({}, 2), std::invalid_argument);
}

TEST_CASE("submodule scan and factors on hand-built graphs") {
    Graph g;
    g.n = 2;
    g.node_cap = 4;
    g.nodes = range(0, 4);
    // chain 0 <-> 1 <-> 2, 2 -> 3 only, 3 <-> 4
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 4}, {4, 3}})
        g.edges.insert({a, b});
    auto scan = submodule_scan(g);
    REQUIRE(scan.size() == 1);
    CHECK(scan[0].labels == range(3, 4));
    CHECK(scan[0].simple);
    CHECK(scan[0].truncated);
    auto f = composition_factors(g);
    REQUIRE(f.size() == 2);
    CHECK(f[0].labels == range(0, 2));
    CHECK(f[1].labels == range(3, 4));
    CHECK(f[0].describe(2) == "m <= 2");
    CHECK(f[1].describe(2) == "m >= 3 (up to truncation)");
}

TEST_CASE("invariant form weights follow the ratio rule") {
    // d_{m+1}/d_m = (m + n - n lambda)/(m + n lambda) in the L2 normalization
    for (int n = 2; n <= 3; ++n)
        for (auto lam : {q(1, 4), q(3, 4), q(2, 3), q(1, 5)}) {
            GradedBasis b(n, 7, lam);
            auto ops = all_action_matrices(b);
            auto f = invariant_form(b, ops, range(0, 6));
            REQUIRE(f.verdict == "unitary");
            CHECK(f.family_dim == 1);
            GaussianRational nl = q(n) * lam, d = 1;
            for (int m = 0; m <= 6; ++m) {
                CHECK(f.weights.at(m) == d);
                d = d * (q(m + n) - nl) / (q(m) + nl);
            }
        }
}

TEST_CASE("invariant form examples at n = 2") {
    auto form = [](GaussianRational lam) {
        GradedBasis b(2, 9, lam);
        return invariant_form(b, all_action_matrices(b), range(0, 8));
    };
    auto pr = form(GaussianRational(Rational(1, 2), Rational(1)));
    CHECK(pr.verdict == "unitary");
    for (auto& [m, w] : pr.weights) CHECK(w == q(1));
    auto bad = form(q(3, 2));
    CHECK(bad.verdict != "unitary");
    bool mixed = false;
    for (auto& [m, w] : bad.weights) mixed |= w.is_real() && sgn(w.re) < 0;
    CHECK((bad.verdict == "none" || mixed));
    // off the real and critical lines nothing Hermitian survives
    CHECK(form(GaussianRational(Rational(1, 3), Rational(1))).verdict == "none");
}

TEST_CASE("invariant form input errors") {
    GradedBasis b(1, 3, q(1, 3));
    auto ops = all_action_matrices(b);
    CHECK_THROWS_AS(invariant_form(b, ops, {}), std::invalid_argument);
    CHECK_THROWS_AS(invariant_form(b, ops, {7}), std::out_of_range);
    CHECK_THROWS_AS(invariant_form(b, ops, {3}), std::out_of_range);
}

TEST_CASE("expected table shapes") {
    auto e = expected_table(2, q(-1, 2), 8);
    CHECK_FALSE(e.simple);
    REQUIRE(e.simple_submodules.size() == 1);
    CHECK(e.simple_submodules[0].labels == range(0, 1));
    auto p = expected_table(1, q(2), 8);
    CHECK(p.simple_submodules.size() == 2);
    CHECK(expected_table(3, q(2, 3), 8).simple);
    CHECK(expected_table(2, q(1, 5), 8).factors[0].unitary);
    CHECK_FALSE(expected_table(2, q(6, 5), 8).factors[0].unitary);
}

TEST_CASE("classify checkpoints") {
    auto a = classify(2, q(-1, 2), 8);
    CHECK(a.agreement);
    CHECK_FALSE(a.simple);
    std::vector<DegreeSet> minimal;
    for (auto& s : a.invariant_sets)
        if (s.simple) minimal.push_back(s);
    REQUIRE(minimal.size() == 1);
    CHECK(minimal[0].labels == range(0, 1));
    CHECK_FALSE(minimal[0].truncated);
    int dim = 0;
    for (int m : minimal[0].labels) dim += harmonic_dimension(3, m);
    CHECK(dim == 4);

    auto b = classify(1, q(2), 8);
    CHECK(b.agreement);
    int infinite_subs = 0;
    for (auto& f : b.factors)
        if (f.role == "submodule" && f.set.truncated) {
            ++infinite_subs;
            CHECK(f.form.verdict == "unitary");
        }
    CHECK(infinite_subs == 2);

    auto c = classify(3, q(1, 3), 8);
    CHECK(c.simple);
    CHECK(c.agreement);
    CHECK(classify(2, q(1, 3), 8).simple);
}

TEST_CASE("documented discrepancies are reported, not failed") {
    auto half = classify(2, q(1, 2), 8);
    CHECK(half.agreement);
    REQUIRE(half.discrepancies.size() == 1);
    CHECK(half.discrepancies[0].computed == "unitary");
    CHECK_FALSE(half.discrepancies[0].reading_a.empty());
    CHECK_FALSE(half.discrepancies[0].reading_b.empty());
    auto big = classify(2, q(3, 2), 8);
    CHECK(big.agreement);
    REQUIRE(big.discrepancies.size() == 1);
    CHECK(classify(2, q(1, 4), 8).discrepancies.empty());
}

TEST_CASE("classify input errors") {
    CHECK_THROWS_AS(classify(0, q(1), 4), DimensionError);
    CHECK_THROWS_AS(classify(5, q(1), 4), DimensionError);
    CHECK_THROWS_AS(classify(1, q(1), 0), std::out_of_range);
}
