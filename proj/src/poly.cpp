#include "densitymod/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace densitymod {

namespace mono {

uint64_t pack(const std::vector<int>& exps) {
    if (exps.size() > size_t(kMaxVars)) throw DimensionError("too many variables");
    uint64_t key = 0;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 255) throw std::out_of_range("exponent out of range");
        key |= uint64_t(exps[i]) << (8 * (7 - i));
    }
    return key;
}

std::vector<int> unpack(uint64_t key, int nvars) {
    std::vector<int> e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = int(exp(key, i));
    return e;
}

}  // namespace mono

namespace {

struct DescGrlex {
    bool operator()(const MultiPoly::Term& a, const MultiPoly::Term& b) const {
        return mono::grlex_less(b.key, a.key);
    }
};

void check_nvars(int n) {
    if (n < 0 || n > kMaxVars) throw DimensionError("nvars must be in 0..8");
}

}  // namespace

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) { check_nvars(nvars); }

MultiPoly MultiPoly::constant(int nvars, const GaussianRational& c) {
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({0, c});
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
    MultiPoly p(nvars);
    p.terms_.push_back({mono::unit(i), GaussianRational(1)});
    return p;
}

MultiPoly MultiPoly::monomial(int nvars, const std::vector<int>& exps, const GaussianRational& c) {
    if (int(exps.size()) != nvars) throw DimensionError("exponent vector length != nvars");
    MultiPoly p(nvars);
    if (!c.is_zero()) p.terms_.push_back({mono::pack(exps), c});
    return p;
}

MultiPoly MultiPoly::quadric(int nvars, const GaussianRational& c) {
    std::vector<Term> t;
    for (int i = 0; i < nvars; ++i) t.push_back({2 * mono::unit(i), GaussianRational(1)});
    t.push_back({0, c});
    return from_terms(nvars, std::move(t));
}

MultiPoly MultiPoly::from_terms(int nvars, std::vector<Term> terms) {
    MultiPoly p(nvars);
    std::sort(terms.begin(), terms.end(), DescGrlex());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().key == t.key) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
}

int MultiPoly::degree() const {
    return terms_.empty() ? -1 : int(mono::degree(terms_.front().key));
}

bool MultiPoly::is_homogeneous(int* deg) const {
    int d = degree();
    if (deg) *deg = d;
    return terms_.empty() || int(mono::degree(terms_.back().key)) == d;
}

GaussianRational MultiPoly::coeff(const std::vector<int>& exps) const {
    if (int(exps.size()) != nvars_) throw DimensionError("exponent vector length != nvars");
    return coeff_key(mono::pack(exps));
}

GaussianRational MultiPoly::coeff_key(uint64_t key) const {
    Term probe{key, {}};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, DescGrlex());
    if (it != terms_.end() && it->key == key) return it->coeff;
    return GaussianRational(0);
}

MultiPoly poly_arith_merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    if (a.nvars_ != b.nvars_) throw DimensionError("nvars mismatch");
    MultiPoly r(a.nvars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && mono::grlex_less(j->key, i->key))) {
            r.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || mono::grlex_less(i->key, j->key)) {
            r.terms_.push_back({j->key, subtract ? -j->coeff : j->coeff});
            ++j;
        } else {
            GaussianRational c = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
            if (!c.is_zero()) r.terms_.push_back({i->key, std::move(c)});
            ++i;
            ++j;
        }
    }
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) { return *this = poly_arith_merge(*this, o, false); }
MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this = poly_arith_merge(*this, o, true); }

MultiPoly& MultiPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionError("nvars mismatch");
    if (a.terms_.empty() || b.terms_.empty()) return MultiPoly(a.nvars_);
    if (a.degree() + b.degree() > 255) throw std::out_of_range("degree overflow");
    const MultiPoly& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const MultiPoly& big = &small == &a ? b : a;
    if (small.terms_.size() == 1) return big.shifted(small.terms_[0].key, small.terms_[0].coeff);

    std::unordered_map<uint64_t, GaussianRational> acc;
    acc.reserve(a.terms_.size() * 4 + b.terms_.size() * 4);
    for (const auto& s : small.terms_) {
        for (const auto& t : big.terms_) {
            auto [it, fresh] = acc.try_emplace(s.key + t.key);
            if (fresh)
                it->second = s.coeff * t.coeff;
            else
                it->second += s.coeff * t.coeff;
        }
    }
    std::vector<MultiPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) terms.push_back({k, std::move(c)});
    std::sort(terms.begin(), terms.end(), DescGrlex());
    MultiPoly r(a.nvars_);
    r.terms_ = std::move(terms);
    return r;
}

MultiPoly MultiPoly::shifted(uint64_t key, const GaussianRational& c) const {
    MultiPoly r(nvars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    // adding a fixed monomial preserves graded-lex order
    for (const auto& t : terms_) r.terms_.push_back({t.key + key, t.coeff * c});
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

MultiPoly MultiPoly::conj() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff.conj();
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::complex<double> MultiPoly::eval(const std::vector<std::complex<double>>& x) const {
    if (int(x.size()) != nvars_) throw DimensionError("point dimension != nvars");
    std::complex<double> s = 0;
    for (const auto& t : terms_) {
        std::complex<double> m = t.coeff.to_complex();
        for (int i = 0; i < nvars_; ++i)
            for (unsigned e = mono::exp(t.key, i); e; --e) m *= x[i];
        s += m;
    }
    return s;
}

std::complex<double> MultiPoly::eval(const std::vector<double>& x) const {
    return eval(std::vector<std::complex<double>>(x.begin(), x.end()));
}

std::string MultiPoly::to_string(const std::string& var) const {
    std::string s = "[";
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) s += ", ";
        first = false;
        s += densitymod::to_string(t.coeff);
        for (int i = 0; i < nvars_; ++i) {
            unsigned e = mono::exp(t.key, i);
            if (e == 0) continue;
            s += "*" + var + std::to_string(i);
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s + "]";
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, ArithOp op) {
    switch (op) {
        case ArithOp::Add:
            return p + q;
        case ArithOp::Mul:
            return p * q;
        case ArithOp::Scale:
            if (q.degree() > 0) throw ShapeError("scale expects a constant");
            return p * q.coeff_key(0);
    }
    throw std::logic_error("unknown op");
}

MultiPoly diff(const MultiPoly& p, int i) {
    if (i < 0 || i >= p.nvars()) throw std::out_of_range("diff: variable index out of range");
    std::vector<MultiPoly::Term> t;
    for (const auto& term : p.terms()) {
        unsigned e = mono::exp(term.key, i);
        if (e == 0) continue;
        t.push_back({term.key - mono::unit(i), term.coeff * GaussianRational(long(e))});
    }
    return MultiPoly::from_terms(p.nvars(), std::move(t));
}

MultiPoly laplacian(const MultiPoly& p) {
    std::vector<MultiPoly::Term> t;
    for (const auto& term : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i) {
            unsigned e = mono::exp(term.key, i);
            if (e < 2) continue;
            t.push_back({term.key - 2 * mono::unit(i), term.coeff * GaussianRational(long(e * (e - 1)))});
        }
    }
    return MultiPoly::from_terms(p.nvars(), std::move(t));
}

MultiPoly euler(const MultiPoly& p) {
    std::vector<MultiPoly::Term> t;
    for (const auto& term : p.terms()) {
        unsigned d = mono::degree(term.key);
        if (d) t.push_back({term.key, term.coeff * GaussianRational(long(d))});
    }
    return MultiPoly::from_terms(p.nvars(), std::move(t));
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
    MultiPoly r = MultiPoly::constant(p.nvars(), 1), b = p;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

MultiPoly homogeneous_part(const MultiPoly& p, int d) {
    std::vector<MultiPoly::Term> t;
    for (const auto& term : p.terms())
        if (int(mono::degree(term.key)) == d) t.push_back(term);
    return MultiPoly::from_terms(p.nvars(), std::move(t));
}

namespace {

MultiPoly subst_impl(const MultiPoly& p, const std::vector<MultiPoly>& args, const MultiPoly* denom,
                     int m) {
    if (int(args.size()) != p.nvars()) throw DimensionError("substitution arity != nvars");
    int target = args.empty() ? (denom ? denom->nvars() : 0) : args[0].nvars();
    for (const auto& a : args)
        if (a.nvars() != target) throw DimensionError("substitution arguments disagree on nvars");
    if (denom && denom->nvars() != target) throw DimensionError("denominator nvars mismatch");

    std::vector<std::vector<MultiPoly>> powers(args.size());
    std::vector<unsigned> maxe(args.size(), 0);
    for (const auto& t : p.terms())
        for (size_t i = 0; i < args.size(); ++i) maxe[i] = std::max(maxe[i], mono::exp(t.key, int(i)));
    for (size_t i = 0; i < args.size(); ++i) {
        powers[i].push_back(MultiPoly::constant(target, 1));
        for (unsigned e = 1; e <= maxe[i]; ++e) powers[i].push_back(powers[i].back() * args[i]);
    }
    MultiPoly r(target);
    for (const auto& t : p.terms()) {
        MultiPoly term = MultiPoly::constant(target, t.coeff);
        for (size_t i = 0; i < args.size(); ++i) {
            unsigned e = mono::exp(t.key, int(i));
            if (e) term = term * powers[i][e];
        }
        if (denom) {
            int gap = m - int(mono::degree(t.key));
            if (gap > 0) term = term * pow(*denom, unsigned(gap));
        }
        r += term;
    }
    return r;
}

}  // namespace

MultiPoly homogeneous_subst(const MultiPoly& p, const std::vector<MultiPoly>& numerators,
                            const MultiPoly& denom) {
    int m = 0;
    if (!p.is_homogeneous(&m)) throw ShapeError("homogeneous_subst: polynomial is not homogeneous");
    return subst_impl(p, numerators, &denom, std::max(m, 0));
}

MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& args) {
    return subst_impl(p, args, nullptr, 0);
}

namespace {

// Splits p by the exponent of variable 0: result[k] holds the coefficient of x0^k.
std::vector<MultiPoly> split_first(const MultiPoly& p) {
    int top = 0;
    for (const auto& t : p.terms()) top = std::max(top, int(mono::exp(t.key, 0)));
    std::vector<std::vector<MultiPoly::Term>> parts(top + 1);
    for (const auto& t : p.terms()) {
        unsigned e = mono::exp(t.key, 0);
        parts[e].push_back({t.key - e * mono::unit(0), t.coeff});
    }
    std::vector<MultiPoly> out;
    for (auto& v : parts) out.push_back(MultiPoly::from_terms(p.nvars(), std::move(v)));
    return out;
}

}  // namespace

std::optional<MultiPoly> divide_by_quadric(const MultiPoly& p, const GaussianRational& c) {
    int n = p.nvars();
    if (n == 0) throw DimensionError("divide_by_quadric needs at least one variable");
    if (p.is_zero()) return MultiPoly(n);
    // q = x0^2 + r with r free of x0; solve p_k = h_{k-2} + r h_k from the top down.
    MultiPoly r = MultiPoly::constant(n, c);
    for (int i = 1; i < n; ++i) r += MultiPoly::variable(n, i) * MultiPoly::variable(n, i);
    std::vector<MultiPoly> pk = split_first(p);
    int K = int(pk.size()) - 1;
    // any nonzero multiple of q has x0-degree >= 2
    if (K < 2) return std::nullopt;
    std::vector<MultiPoly> h(K - 1, MultiPoly(n));
    for (int k = K; k >= 2; --k) {
        MultiPoly v = pk[k];
        if (k <= K - 2) v -= r * h[k];
        h[k - 2] = std::move(v);
    }
    for (int k = 1; k >= 0; --k) {
        MultiPoly rest = pk[k];
        if (k <= K - 2) rest -= r * h[k];
        if (!rest.is_zero()) return std::nullopt;
    }
    std::vector<MultiPoly::Term> terms;
    for (int k = 0; k <= K - 2; ++k)
        for (const auto& t : h[k].terms()) terms.push_back({t.key + k * mono::unit(0), t.coeff});
    return MultiPoly::from_terms(n, std::move(terms));
}

MultiPoly embed(const MultiPoly& p, int nvars, int offset) {
    if (offset < 0 || p.nvars() + offset > nvars) throw DimensionError("embed: does not fit");
    std::vector<MultiPoly::Term> t;
    for (const auto& term : p.terms()) {
        uint64_t key = 0;
        for (int i = 0; i < p.nvars(); ++i) key += uint64_t(mono::exp(term.key, i)) * mono::unit(i + offset);
        t.push_back({key, term.coeff});
    }
    return MultiPoly::from_terms(nvars, std::move(t));
}

}  // namespace densitymod
