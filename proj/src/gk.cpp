#include "densitymod/gk.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <tuple>

#include "densitymod/parallel.hpp"

namespace densitymod {

Layout Layout::of(const GradedBasis& b) {
    Layout l;
    l.n = b.n();
    l.cap = b.cap();
    l.labels = b.labels();
    for (int label : l.labels) {
        l.offset[label] = l.total;
        l.dim[label] = b.dim(label);
        for (int s = 0; s < b.dim(label); ++s) l.label_at.push_back(label);
        l.total += b.dim(label);
    }
    return l;
}

Matrix GradedOperator::block(int target, int source) const {
    int rt = layout->offset.at(target), rs = layout->offset.at(source);
    int dt = layout->dim.at(target), ds = layout->dim.at(source);
    Matrix m = zeros(dt, ds);
    for (int j = 0; j < ds; ++j)
        for (const auto& [i, v] : mat.column(rs + j))
            if (i >= rt && i < rt + dt) m[i - rt][j] = v;
    return m;
}

std::set<std::pair<int, int>> GradedOperator::nonzero_blocks() const {
    std::set<std::pair<int, int>> out;
    for (int j = 0; j < mat.cols(); ++j)
        for (const auto& e : mat.column(j)) out.insert({layout->label_at[e.first], layout->label_at[j]});
    return out;
}

bool GradedOperator::band_ok() const {
    for (const auto& [t, s] : nonzero_blocks())
        if (std::abs(layout->degree(t) - layout->degree(s)) > 1) return false;
    return true;
}

bool GradedOperator::diagonal() const {
    for (const auto& [t, s] : nonzero_blocks())
        if (t != s) return false;
    return true;
}

namespace {

std::shared_ptr<const Layout> shared_layout(const GradedBasis& b) { return std::make_shared<Layout>(Layout::of(b)); }

// Columns of the action of tag on every source of degree < cap, with the
// density degree of the basis images replaced by lambda.
SparseMatrix build_columns(const GeneratorTag& tag, const GradedBasis& basis, const Layout& layout,
                           const GaussianRational& lambda) {
    SparseMatrix m(layout.total, layout.total);
    for (int label : layout.labels) {
        if (layout.degree(label) >= basis.cap()) continue;
        const auto& elems = basis.at(label);
        for (size_t s = 0; s < elems.size(); ++s) {
            ChartDensity d = elems[s].image;
            d.lambda = lambda;
            ChartDensity img = lie_derivative(tag, d);
            Coefficients co;
            try {
                co = chart_decompose(img, basis);
            } catch (const NotInSpan& e) {
                throw std::logic_error("band violation for " + to_string(tag) + " on degree " +
                                       std::to_string(layout.degree(label)) + ": " + e.what());
            }
            std::vector<SparseMatrix::Entry> col;
            for (auto& [l, v] : co)
                for (size_t t = 0; t < v.size(); ++t)
                    if (!v[t].is_zero()) col.push_back({layout.offset.at(l) + int(t), v[t]});
            m.set_column(layout.offset.at(label) + int(s), std::move(col));
        }
    }
    return m;
}

struct AffinePair {
    SparseMatrix a0, a1;
};

std::mutex cache_mu;
std::map<std::tuple<int, int, GeneratorTag>, std::shared_ptr<const AffinePair>> action_cache;

std::shared_ptr<const AffinePair> affine_pair(const GeneratorTag& tag, const GradedBasis& basis, const Layout& layout) {
    auto key = std::make_tuple(basis.n(), basis.cap(), tag);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = action_cache.find(key);
        if (it != action_cache.end()) return it->second;
    }
    auto p = std::make_shared<AffinePair>();
    p->a0 = build_columns(tag, basis, layout, 0);
    p->a1 = build_columns(tag, basis, layout, 1) - p->a0;
    std::lock_guard<std::mutex> lock(cache_mu);
    return action_cache.emplace(key, p).first->second;
}

}  // namespace

GradedOperator action_matrix(const GeneratorTag& tag, const GradedBasis& basis) {
    auto layout = shared_layout(basis);
    return {tag, layout, build_columns(tag, basis, *layout, basis.lambda()), basis.cap() - 1};
}

GradedOperator action_matrix_cached(const GeneratorTag& tag, const GradedBasis& basis) {
    auto layout = shared_layout(basis);
    auto p = affine_pair(tag, basis, *layout);
    SparseMatrix m = p->a0 + p->a1 * basis.lambda();
    return {tag, layout, std::move(m), basis.cap() - 1};
}

std::vector<GradedOperator> all_action_matrices(const GradedBasis& basis) {
    auto gens = all_generators(basis.n());
    auto layout = shared_layout(basis);
    std::vector<std::shared_ptr<const AffinePair>> pairs(gens.size());
    parallel_for(gens.size(), [&](size_t i) { pairs[i] = affine_pair(gens[i], basis, *layout); });
    std::vector<GradedOperator> ops;
    for (size_t i = 0; i < gens.size(); ++i)
        ops.push_back({gens[i], layout, pairs[i]->a0 + pairs[i]->a1 * basis.lambda(), basis.cap() - 1});
    return ops;
}

void clear_action_cache() {
    std::lock_guard<std::mutex> lock(cache_mu);
    action_cache.clear();
}

CheckReport compact_subalgebra_check(const GradedBasis& basis) {
    CheckReport r;
    int n = basis.n();
    std::ostringstream os;
    for (const auto& t : all_generators(n)) {
        if (t.kind != GeneratorTag::Rot) continue;
        if (!action_matrix_cached(t, basis).diagonal()) {
            r.ok = false;
            os << to_string(t) << " mixes degrees; ";
        }
    }
    for (int i = 1; i <= n; ++i) {
        auto tr = action_matrix_cached(GeneratorTag::trans(i), basis);
        auto sc = action_matrix_cached(GeneratorTag::sconf(i), basis);
        GradedOperator w{tr.tag, tr.layout, (tr.mat - sc.mat) * GaussianRational(1, 2), tr.source_cap};
        if (!w.diagonal()) {
            r.ok = false;
            os << "W" << i << " mixes degrees; ";
        }
    }
    r.detail = r.ok ? "all compact generators preserve every degree" : os.str();
    return r;
}

CheckReport rotation_lambda_independence(int n, int D, const GaussianRational& l1, const GaussianRational& l2) {
    GradedBasis b1(n, D, l1), b2(n, D, l2);
    CheckReport r;
    std::ostringstream os;
    for (const auto& t : all_generators(n)) {
        if (t.kind != GeneratorTag::Rot) continue;
        if (action_matrix(t, b1).mat != action_matrix(t, b2).mat) {
            r.ok = false;
            os << to_string(t) << " depends on lambda; ";
        }
    }
    if (n < 2) os << "no rotations for n = 1";
    r.detail = r.ok ? (os.str().empty() ? "rotation blocks coincide" : os.str()) : os.str();
    return r;
}

CommutatorReport commutator_check(const GradedBasis& basis) {
    return commutator_check(basis, all_action_matrices(basis));
}

CommutatorReport commutator_check(const GradedBasis& basis, const std::vector<GradedOperator>& ops) {
    CommutatorReport rep;
    int n = basis.n();
    auto gens = all_generators(n);
    if (ops.size() != gens.size()) throw DimensionError("commutator_check: one operator per generator expected");
    const Layout& layout = *ops.front().layout;
    std::vector<bool> keep(layout.total);
    for (int j = 0; j < layout.total; ++j) keep[j] = layout.degree(layout.label_at[j]) <= basis.cap() - 2;
    auto index_of = [&](const GeneratorTag& t) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == t) return i;
        throw std::logic_error("unknown generator");
    };
    int worst = -1;
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a; b < gens.size(); ++b) {
            ++rep.pairs;
            const SparseMatrix& A = ops[a].mat;
            const SparseMatrix& B = ops[b].mat;
            SparseMatrix lhs = A * B.masked_columns(keep) - B * A.masked_columns(keep);
            auto combo = express_in_generators(field_bracket(gens[a], gens[b], n));
            if (!combo) throw std::logic_error("bracket left the generator span");
            SparseMatrix rhs(layout.total, layout.total);
            for (const auto& [t, c] : *combo) rhs = rhs + ops[index_of(t)].mat.masked_columns(keep) * c;
            int nz = int((lhs - rhs).nonzeros());
            rep.nonzero_entries += nz;
            if (nz > worst && nz > 0) {
                worst = nz;
                rep.worst = "[" + to_string(gens[a]) + ", " + to_string(gens[b]) + "]: " + std::to_string(nz) +
                            " nonzero entries";
            }
        }
    return rep;
}

Graph reachability(const std::vector<GradedOperator>& ops, int node_cap) {
    if (ops.empty()) throw std::invalid_argument("reachability: no operators");
    const Layout& layout = *ops.front().layout;
    if (node_cap > ops.front().source_cap) throw std::invalid_argument("reachability: node cap above source cap");
    Graph g;
    g.n = layout.n;
    g.node_cap = node_cap;
    for (int l : layout.labels)
        if (layout.degree(l) <= node_cap) g.nodes.push_back(l);
    for (const auto& op : ops)
        for (const auto& [t, s] : op.nonzero_blocks()) {
            if (t == s || layout.degree(s) > node_cap) continue;
            if (layout.degree(t) > node_cap)
                g.leaks.insert(s);
            else
                g.edges.insert({s, t});
        }
    return g;
}

namespace {

std::set<int> closure(const Graph& g, int v) {
    std::set<int> seen{v};
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (auto it = g.edges.lower_bound({a, INT32_MIN}); it != g.edges.end() && it->first == a; ++it)
            if (seen.insert(it->second).second) stack.push_back(it->second);
    }
    return seen;
}

bool touches_cap(const std::vector<int>& labels, int cap) {
    for (int l : labels)
        if ((l < 0 ? -l : l) >= cap) return true;
    return false;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

}  // namespace

std::string DegreeSet::describe(int n) const {
    if (labels.empty()) return "{}";
    int lo = labels.front(), hi = labels.back();
    std::string s;
    if (int(labels.size()) != hi - lo + 1) {
        s = join(labels);
    } else {
        int bottom = n == 1 ? -cap : 0;
        bool low_open = truncated && lo == bottom && bottom < 0;
        bool high_open = truncated && hi == cap;
        if ((lo == bottom) && high_open)
            s = "all";
        else if (low_open)
            s = "m <= " + std::to_string(hi);
        else if (high_open)
            s = "m >= " + std::to_string(lo);
        else if (lo == hi)
            s = "m = " + std::to_string(lo);
        else if (n == 1 && lo == -hi)
            s = "|m| <= " + std::to_string(hi);
        else if (n > 1 && lo == 0)
            s = "m <= " + std::to_string(hi);
        else
            s = std::to_string(lo) + " <= m <= " + std::to_string(hi);
    }
    if (truncated) s += " (up to truncation)";
    return s;
}

std::vector<DegreeSet> submodule_scan(const Graph& g) {
    std::map<int, std::set<int>> cl;
    for (int v : g.nodes) cl[v] = closure(g, v);
    std::set<std::vector<int>> seen;
    std::vector<DegreeSet> out;
    for (int v : g.nodes) {
        const auto& c = cl[v];
        if (c.size() == g.nodes.size()) continue;
        std::vector<int> labels(c.begin(), c.end());
        if (!seen.insert(labels).second) continue;
        DegreeSet d;
        d.labels = labels;
        d.truncated = touches_cap(labels, g.node_cap);
        d.cap = g.node_cap;
        d.simple = true;
        for (int u : c)
            if (cl[u] != c) d.simple = false;
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const DegreeSet& a, const DegreeSet& b) { return a.labels < b.labels; });
    return out;
}

std::vector<DegreeSet> composition_factors(const Graph& g) {
    std::map<int, std::set<int>> cl;
    for (int v : g.nodes) cl[v] = closure(g, v);
    std::set<int> assigned;
    std::vector<DegreeSet> out;
    for (int v : g.nodes) {
        if (assigned.count(v)) continue;
        DegreeSet d;
        for (int u : cl[v])
            if (cl[u].count(v)) {
                d.labels.push_back(u);
                assigned.insert(u);
            }
        d.truncated = touches_cap(d.labels, g.node_cap);
        d.cap = g.node_cap;
        d.simple = true;
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const DegreeSet& a, const DegreeSet& b) { return a.labels < b.labels; });
    return out;
}

namespace {

std::mutex gram_mu;
std::map<std::tuple<int, int, int>, Matrix> gram_cache;

const Matrix& cached_gram(const GradedBasis& basis, int label) {
    auto key = std::make_tuple(basis.n(), basis.cap(), label);
    std::lock_guard<std::mutex> lock(gram_mu);
    auto it = gram_cache.find(key);
    if (it == gram_cache.end()) it = gram_cache.emplace(key, gram_matrix(label, basis)).first;
    return it->second;
}

// Entries of m with both indices inside the mask.
SparseMatrix restrict_to(const SparseMatrix& m, const std::vector<bool>& mask) {
    SparseMatrix r(m.rows(), m.cols());
    for (int j = 0; j < m.cols(); ++j) {
        if (!mask[j]) continue;
        std::vector<SparseMatrix::Entry> col;
        for (const auto& e : m.column(j))
            if (mask[e.first]) col.push_back(e);
        r.set_column(j, std::move(col));
    }
    return r;
}

}  // namespace

FormResult invariant_form(const GradedBasis& basis, const std::vector<GradedOperator>& ops,
                          const std::vector<int>& labels) {
    FormResult res;
    if (ops.empty() || labels.empty()) throw std::invalid_argument("invariant_form: empty input");
    const Layout& layout = *ops.front().layout;
    std::map<int, int> unknown;
    for (int l : labels) {
        if (!layout.offset.count(l)) throw std::out_of_range("invariant_form: label outside the basis");
        if (layout.degree(l) > ops.front().source_cap)
            throw std::out_of_range("invariant_form: label above the source cap");
        int idx = int(unknown.size());
        unknown[l] = idx;
    }
    std::vector<bool> mask(layout.total, false);
    SparseMatrix G(layout.total, layout.total);
    for (int l : labels) {
        int off = layout.offset.at(l);
        const Matrix& g = cached_gram(basis, l);
        for (size_t j = 0; j < g.size(); ++j) {
            mask[off + j] = true;
            std::vector<SparseMatrix::Entry> col;
            for (size_t i = 0; i < g.size(); ++i)
                if (!g[i][j].is_zero()) col.push_back({off + int(i), g[i][j]});
            G.set_column(off + int(j), std::move(col));
        }
    }
    // Each (j,k) gives d_{lab k} P[j][k] + d_{lab j} Q[j][k] = 0 with
    // P = X^T G and Q = G conj(X), for every real generator X.
    std::set<std::tuple<int, int, std::string>> seen;
    Matrix eqs;
    const size_t nu = unknown.size();
    for (const auto& op : ops) {
        SparseMatrix X = restrict_to(op.mat, mask);
        SparseMatrix P = X.transpose() * G;
        SparseMatrix Q = G * X.conj();
        for (int k = 0; k < layout.total; ++k) {
            if (!mask[k]) continue;
            std::map<int, std::pair<GaussianRational, GaussianRational>> rows;
            for (const auto& [j, v] : P.column(k)) rows[j].first = v;
            for (const auto& [j, v] : Q.column(k)) rows[j].second = v;
            for (auto& [j, pq] : rows) {
                Vector row(nu, GaussianRational(0));
                row[unknown.at(layout.label_at[k])] += pq.first;
                row[unknown.at(layout.label_at[j])] += pq.second;
                int first = -1;
                for (size_t u = 0; u < nu; ++u)
                    if (!row[u].is_zero()) {
                        first = int(u);
                        break;
                    }
                if (first < 0) continue;
                GaussianRational inv = GaussianRational(1) / row[first];
                int second = -1;
                std::string ratio;
                for (size_t u = first + 1; u < nu; ++u)
                    if (!row[u].is_zero()) {
                        second = int(u);
                        ratio = to_string(row[u] * inv);
                    }
                if (!seen.insert({first, second, ratio}).second) continue;
                for (auto& c : row) c *= inv;
                eqs.push_back(std::move(row));
            }
        }
    }
    auto sol = nullspace(eqs, nu);
    res.family_dim = int(sol.size());
    if (sol.empty()) {
        res.verdict = "none";
        return res;
    }
    res.exists = true;
    if (sol.size() > 1) {
        res.verdict = "undetermined";
        return res;
    }
    Vector v = sol.front();
    // normalize at the lowest degree carrying a nonzero weight
    std::vector<int> order(labels);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = layout.degree(a), db = layout.degree(b);
        return da != db ? da < db : a > b;
    });
    GaussianRational pivot = 0;
    for (int l : order)
        if (!v[unknown.at(l)].is_zero()) {
            pivot = v[unknown.at(l)];
            break;
        }
    res.hermitian = true;
    res.unitary = true;
    for (int l : labels) {
        GaussianRational w = v[unknown.at(l)] / pivot;
        if (!w.is_real()) res.hermitian = false;
        if (!w.is_real() || sgn(w.re) <= 0) res.unitary = false;
        res.weights[l] = w;
    }
    if (!res.hermitian) {
        res.unitary = false;
        res.verdict = "none";
    } else {
        res.verdict = res.unitary ? "unitary" : "not unitary";
    }
    return res;
}

namespace {

DegreeSet make_set(int n, int D, const std::function<bool(int)>& pred) {
    DegreeSet d;
    int lo = n == 1 ? -D : 0;
    for (int m = lo; m <= D; ++m)
        if (pred(m)) d.labels.push_back(m);
    d.truncated = touches_cap(d.labels, D);
    d.cap = D;
    d.simple = true;
    return d;
}

// nu lambda as an integer when lambda is real with n lambda in Z
std::optional<long> integral_weight(int n, const GaussianRational& lambda) {
    if (!lambda.is_real()) return std::nullopt;
    Rational v = lambda.re * n;
    v.canonicalize();
    if (v.get_den() != 1) return std::nullopt;
    return v.get_num().get_si();
}

bool is_half(const GaussianRational& lambda) { return lambda == GaussianRational(1, 2); }

}  // namespace

ExpectedClassification expected_table(int n, const GaussianRational& lambda, int D) {
    ExpectedClassification e;
    auto N = integral_weight(n, lambda);
    auto add = [&](DegreeSet s, const std::string& role, bool finite, bool unitary) {
        if (s.labels.empty()) return;
        e.factors.push_back({std::move(s), role, finite, unitary});
    };
    bool reducible = N && (n == 1 || *N <= 0 || *N >= n);
    if (!reducible) {
        // unitary: principal series (Re lambda = 1/2) or complementary series (0 < lambda < 1)
        bool unitary = lambda.re == Rational(1, 2) || (lambda.is_real() && sgn(lambda.re) > 0 && lambda.re < 1);
        add(make_set(n, D, [](int) { return true; }), "full", false, unitary);
        e.simple = true;
        return e;
    }
    e.simple = false;
    long Nv = *N;
    if (n == 1) {
        if (Nv <= 0) {
            long l = -Nv;
            add(make_set(n, D, [l](int m) { return std::abs(m) <= l; }), "submodule", true, l == 0);
            add(make_set(n, D, [l](int m) { return m >= l + 1; }), "quotient", false, true);
            add(make_set(n, D, [l](int m) { return m <= -l - 1; }), "quotient", false, true);
            e.simple_submodules.push_back(e.factors[0].set);
        } else {
            long l = Nv;
            add(make_set(n, D, [l](int m) { return std::abs(m) <= l - 1; }), "quotient", true, l == 1);
            add(make_set(n, D, [l](int m) { return m >= l; }), "submodule", false, true);
            add(make_set(n, D, [l](int m) { return m <= -l; }), "submodule", false, true);
            e.simple_submodules.push_back(e.factors[1].set);
            e.simple_submodules.push_back(e.factors[2].set);
        }
    } else if (Nv <= 0) {
        long l = -Nv;
        add(make_set(n, D, [l](int m) { return m <= l; }), "submodule", true, l == 0);
        add(make_set(n, D, [l](int m) { return m >= l + 1; }), "quotient", false, false);
        e.simple_submodules.push_back(e.factors[0].set);
    } else {
        long l = Nv - n;
        add(make_set(n, D, [l](int m) { return m <= l; }), "quotient", true, l == 0);
        add(make_set(n, D, [l](int m) { return m >= l + 1; }), "submodule", false, false);
        e.simple_submodules.push_back(e.factors[1].set);
    }
    std::sort(e.factors.begin(), e.factors.end(),
              [](const ExpectedFactor& a, const ExpectedFactor& b) { return a.set.labels < b.set.labels; });
    return e;
}

ClassificationVerdict classify(int n, const GaussianRational& lambda, int D) {
    if (n < 1 || n > 4) throw DimensionError("classify: n must be in 1..4");
    if (D < 1) throw std::out_of_range("classify: degree cap must be positive");
    ClassificationVerdict v;
    v.n = n;
    v.lambda = lambda;
    v.D = D;
    // one extra degree so that every node up to D has all of its outgoing edges
    GradedBasis basis(n, D + 1, lambda);
    auto ops = all_action_matrices(basis);
    Graph g = reachability(ops, D);
    v.invariant_sets = submodule_scan(g);
    auto factors = composition_factors(g);
    v.simple = factors.size() == 1;
    for (auto& f : factors) {
        std::set<int> in(f.labels.begin(), f.labels.end());
        bool out_edges = false, in_edges = false;
        for (const auto& [a, b] : g.edges) {
            if (in.count(a) && !in.count(b)) out_edges = true;
            if (!in.count(a) && in.count(b)) in_edges = true;
        }
        std::string role = factors.size() == 1 ? "full"
                           : !out_edges        ? "submodule"
                           : !in_edges         ? "quotient"
                                               : "subquotient";
        v.factors.push_back({f, role, invariant_form(basis, ops, f.labels)});
    }

    v.expected = expected_table(n, lambda, D);
    auto& dis = v.disagreements;
    if (v.simple != v.expected.simple)
        dis.push_back(std::string("simple: computed ") + (v.simple ? "true" : "false") + ", expected " +
                      (v.expected.simple ? "true" : "false"));
    std::vector<std::vector<int>> got_min, want_min;
    for (const auto& s : v.invariant_sets)
        if (s.simple) got_min.push_back(s.labels);
    for (const auto& s : v.expected.simple_submodules) want_min.push_back(s.labels);
    std::sort(got_min.begin(), got_min.end());
    std::sort(want_min.begin(), want_min.end());
    if (got_min != want_min) dis.push_back("simple submodules differ from the expected table");
    if (v.factors.size() != v.expected.factors.size()) dis.push_back("number of composition factors differs");

    auto N = integral_weight(n, lambda);
    for (size_t i = 0; i < v.factors.size() && i < v.expected.factors.size(); ++i) {
        const auto& got = v.factors[i];
        const auto& want = v.expected.factors[i];
        std::string name = got.set.describe(n);
        if (got.set.labels != want.set.labels) {
            dis.push_back("factor " + name + " has no counterpart in the expected table");
            continue;
        }
        if (got.role != want.role) dis.push_back("factor " + name + ": role " + got.role + ", expected " + want.role);
        bool documented = false;
        PaperDiscrepancy rec;
        rec.computed = got.form.verdict;
        if (is_half(lambda) && got.role == "full") {
            documented = true;
            rec.topic = "unitarity at lambda = 1/2";
            rec.reading_a = "classification statement: unitary only for lambda = 1/2 + i alpha with alpha nonzero, "
                            "or lambda in ]0,1[ minus {1/2}: not unitary";
            rec.reading_b = "composition-series list: nu = 0 is purely imaginary (unitary principal series): unitary";
        } else if (n > 1 && N && *N >= n && got.role == "submodule" && !want.finite) {
            documented = true;
            rec.topic = "unitarity of the infinite submodule at lambda = 1 + l/n";
            rec.reading_a = "submodule statement: unitary under a lambda = 0 qualifier that never holds on this line; "
                            "without the qualifier: unitary";
            rec.reading_b = "composition-series unitary list: E^x is absent: not unitary";
        } else if (n > 1 && N && *N <= 0 && got.role == "quotient" && !want.finite) {
            documented = true;
            rec.topic = "unitarity of the infinite quotient at lambda = -l/n (dual of the lambda = 1 + l/n case)";
            rec.reading_a = "classification statement: says nothing about quotients; the dual submodule is called unitary";
            rec.reading_b = "composition-series unitary list: E^x is absent: not unitary";
        }
        if (documented) {
            rec.topic += " [" + name + "]";
            v.discrepancies.push_back(rec);
            continue;
        }
        if (got.form.unitary != want.unitary)
            dis.push_back("factor " + name + ": computed " + got.form.verdict + ", expected " +
                          (want.unitary ? "unitary" : "not unitary"));
    }
    v.agreement = dis.empty();
    return v;
}

}  // namespace densitymod
