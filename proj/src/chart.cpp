#include "densitymod/chart.hpp"

#include <tuple>

namespace densitymod {

std::string to_string(const GeneratorTag& t) {
    switch (t.kind) {
        case GeneratorTag::Trans:
            return "Trans(" + std::to_string(t.i) + ")";
        case GeneratorTag::Rot:
            return "Rot(" + std::to_string(t.i) + "," + std::to_string(t.j) + ")";
        case GeneratorTag::Dil:
            return "Dil";
        case GeneratorTag::Sconf:
            return "Sconf(" + std::to_string(t.i) + ")";
    }
    return "?";
}

std::vector<GeneratorTag> all_generators(int n) {
    std::vector<GeneratorTag> g;
    for (int i = 1; i <= n; ++i) g.push_back(GeneratorTag::trans(i));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.push_back(GeneratorTag::rot(i, j));
    g.push_back(GeneratorTag::dil());
    for (int i = 1; i <= n; ++i) g.push_back(GeneratorTag::sconf(i));
    return g;
}

bool VectorField::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

VectorField VectorField::operator+(const VectorField& o) const {
    if (n != o.n) throw DimensionError("vector field dimension mismatch");
    VectorField r = *this;
    for (int i = 0; i < n; ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

VectorField VectorField::operator*(const GaussianRational& c) const {
    VectorField r = *this;
    for (auto& p : r.coeffs) p *= c;
    return r;
}

MultiPoly VectorField::apply(const MultiPoly& f) const {
    MultiPoly r(n);
    for (int i = 0; i < n; ++i)
        if (!coeffs[i].is_zero()) r += coeffs[i] * diff(f, i);
    return r;
}

VectorField generator_field(const GeneratorTag& tag, int n) {
    if (n < 1 || n >= kMaxVars) throw std::out_of_range("dimension out of range");
    auto s = [n](int i) { return MultiPoly::variable(n, i - 1); };
    auto check = [n](int i) {
        if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
    };
    VectorField f{n, std::vector<MultiPoly>(n, MultiPoly(n))};
    switch (tag.kind) {
        case GeneratorTag::Trans:
            check(tag.i);
            f.coeffs[tag.i - 1] = MultiPoly::constant(n, 1);
            break;
        case GeneratorTag::Rot:
            check(tag.i);
            check(tag.j);
            if (tag.i >= tag.j) throw std::out_of_range("rotation needs i < j");
            // s_i d/ds_j - s_j d/ds_i
            f.coeffs[tag.j - 1] = s(tag.i);
            f.coeffs[tag.i - 1] = -s(tag.j);
            break;
        case GeneratorTag::Dil:
            for (int l = 1; l <= n; ++l) f.coeffs[l - 1] = s(l);
            break;
        case GeneratorTag::Sconf: {
            check(tag.i);
            // sum_j (s_j^2 d/ds_i - 2 s_i s_j d/ds_j), j = i included
            int i = tag.i;
            for (int j = 1; j <= n; ++j) {
                f.coeffs[i - 1] += s(j) * s(j);
                f.coeffs[j - 1] -= GaussianRational(2) * (s(i) * s(j));
            }
            break;
        }
    }
    return f;
}

MultiPoly divergence(const VectorField& f) {
    MultiPoly r(f.n);
    for (int i = 0; i < f.n; ++i) r += diff(f.coeffs[i], i);
    return r;
}

VectorField field_bracket(const VectorField& x, const VectorField& y) {
    if (x.n != y.n) throw DimensionError("vector field dimension mismatch");
    VectorField r{x.n, std::vector<MultiPoly>(x.n, MultiPoly(x.n))};
    for (int i = 0; i < x.n; ++i) r.coeffs[i] = x.apply(y.coeffs[i]) - y.apply(x.coeffs[i]);
    return r;
}

VectorField field_bracket(const GeneratorTag& a, const GeneratorTag& b, int n) {
    return field_bracket(generator_field(a, n), generator_field(b, n));
}

std::optional<std::vector<std::pair<GeneratorTag, GaussianRational>>> express_in_generators(
    const VectorField& f) {
    int n = f.n;
    std::vector<std::pair<GeneratorTag, GaussianRational>> out;
    auto key = [n](std::vector<int> e) { return mono::pack(e); };
    auto lin = [&](int comp, int var) {
        std::vector<int> e(n, 0);
        e[var - 1] = 1;
        return f.coeffs[comp - 1].coeff_key(key(e));
    };
    for (int i = 1; i <= n; ++i) {
        GaussianRational c = f.coeffs[i - 1].coeff_key(0);
        if (!c.is_zero()) out.push_back({GeneratorTag::trans(i), c});
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            GaussianRational c = lin(j, i);
            if (!c.is_zero()) out.push_back({GeneratorTag::rot(i, j), c});
        }
    GaussianRational a = lin(1, 1);
    if (!a.is_zero()) out.push_back({GeneratorTag::dil(), a});
    for (int j = 1; j <= n; ++j) {
        std::vector<int> e(n, 0);
        e[j - 1] = 2;
        GaussianRational b = -f.coeffs[j - 1].coeff_key(key(e));
        if (!b.is_zero()) out.push_back({GeneratorTag::sconf(j), b});
    }
    VectorField rebuilt{n, std::vector<MultiPoly>(n, MultiPoly(n))};
    for (const auto& [t, c] : out) rebuilt = rebuilt + generator_field(t, n) * c;
    if (!(rebuilt == f)) return std::nullopt;
    return out;
}

MultiPoly chart_weight(int n) { return MultiPoly::quadric(n, 1); }

ChartDensity normalize(const ChartDensity& d) {
    if (d.R.nvars() != d.n) throw DimensionError("density numerator has wrong nvars");
    if (d.R.is_zero()) return ChartDensity(d.n, d.lambda, MultiPoly(d.n), 0);
    ChartDensity r = d;
    while (true) {
        auto q = divide_by_quadric(r.R, 1);
        if (!q) break;
        r.R = std::move(*q);
        --r.k;
    }
    return r;
}

namespace {

MultiPoly raise(const ChartDensity& d, int k) {
    if (k == d.k) return d.R;
    return d.R * pow(chart_weight(d.n), unsigned(k - d.k));
}

void check_compatible(const ChartDensity& a, const ChartDensity& b) {
    if (a.n != b.n) throw DimensionError("density dimension mismatch");
    if (a.lambda != b.lambda) throw DimensionError("density degree mismatch");
}

}  // namespace

bool same_density(const ChartDensity& a, const ChartDensity& b) {
    check_compatible(a, b);
    int k = std::max(a.k, b.k);
    return raise(a, k) == raise(b, k);
}

ChartDensity add(const ChartDensity& a, const ChartDensity& b) {
    check_compatible(a, b);
    int k = std::max(a.k, b.k);
    return normalize(ChartDensity(a.n, a.lambda, raise(a, k) + raise(b, k), k));
}

ChartDensity scale(const ChartDensity& a, const GaussianRational& c) {
    return normalize(ChartDensity(a.n, a.lambda, a.R * c, a.k));
}

ChartDensity lie_derivative(const VectorField& x, const ChartDensity& d) {
    if (x.n != d.n) throw DimensionError("field and density dimensions differ");
    if (d.R.is_zero()) return normalize(d);
    // On R w^(-k-n lambda): [w X(R) + lambda Div(X) w R - (k + n lambda) X(w) R] / w^(k+1)
    const int n = d.n;
    MultiPoly w = chart_weight(n);
    MultiPoly xr = x.apply(d.R);
    MultiPoly xw = x.apply(w);
    MultiPoly div = divergence(x);
    MultiPoly num = w * (xr + (div * d.R) * d.lambda);
    GaussianRational expo = GaussianRational(long(d.k)) + GaussianRational(long(n)) * d.lambda;
    num -= (xw * d.R) * expo;
    return normalize(ChartDensity(n, d.lambda, std::move(num), d.k + 1));
}

ChartDensity lie_derivative(const GeneratorTag& tag, const ChartDensity& d) {
    return lie_derivative(generator_field(tag, d.n), d);
}

}  // namespace densitymod
