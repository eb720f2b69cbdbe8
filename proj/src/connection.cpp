#include "tw/connection.hpp"

#include <algorithm>

namespace tw {

namespace {

std::vector<int> basis_in_degree(const GradedSpace& s, int k) {
    std::vector<int> out;
    for (int i = 0; i < s.dim(); ++i)
        if (s.degrees[i] == k) out.push_back(i);
    return out;
}

std::vector<Q> coords(const std::vector<int>& basis, const Vec& v) {
    std::vector<Q> out(basis.size());
    for (const auto& [w, c] : v) {
        auto it = std::find(basis.begin(), basis.end(), w.at(0));
        if (it == basis.end()) throw Error("element is not homogeneous");
        out[it - basis.begin()] += c;
    }
    return out;
}

Vec from_coords(const std::vector<int>& basis, const std::vector<Q>& x) {
    Vec out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.add(Word{basis[i]}, x[i]);
    return out;
}

Matrix columns(const std::vector<int>& rows, const std::vector<Vec>& cols) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto x = coords(rows, cols[c]);
        for (std::size_t r = 0; r < rows.size(); ++r) m(static_cast<int>(r), static_cast<int>(c)) = x[r];
    }
    return m;
}

}  // namespace

int CDGAModel::degree(const Vec& v) const {
    if (v.empty()) throw Error("degree of the zero element");
    return space.degrees.at(v.begin()->first.at(0));
}

Vec CDGAModel::mul(const Vec& u, const Vec& v) const {
    Vec out;
    for (const auto& [a, c1] : u)
        for (const auto& [b, c2] : v) {
            const int i = a.at(0), j = b.at(0);
            if (i == unit) {
                out.add(b, c1 * c2);
            } else if (j == unit) {
                out.add(a, c1 * c2);
            } else {
                auto it = product.find({i, j});
                if (it != product.end()) out.add(it->second, c1 * c2);
            }
        }
    return out;
}

Vec CDGAModel::d(const Vec& v) const {
    Vec out;
    for (const auto& [w, c] : v) out.add(differential.at(w.at(0)), c);
    return out;
}

std::string CDGAModel::validate() const {
    const int n = space.dim();
    const auto& deg = space.degrees;
    auto el = [](int i) { return Vec(Word{i}); };
    auto homogeneous = [&](const Vec& v, int k) {
        for (const auto& [w, c] : v)
            if (w.size() != 1 || w[0] < 0 || w[0] >= n || deg[w[0]] != k) return false;
        return true;
    };
    if (unit < 0 || unit >= n || deg[unit] != 0) return "the unit must be a basis element of degree 0";
    if (static_cast<int>(differential.size()) != n) return "the differential must be given on every basis element";
    for (int i = 0; i < n; ++i) {
        if (deg[i] < 0) return "basis element " + space.names[i] + " has negative degree";
        if (!homogeneous(differential[i], deg[i] + 1)) return "d(" + space.names[i] + ") has the wrong degree";
        if (!d(differential[i]).empty()) return "d^2(" + space.names[i] + ") is not zero";
    }
    for (const auto& [ij, v] : product) {
        const auto [i, j] = ij;
        if (i < 0 || i >= n || j < 0 || j >= n) return "product table refers to an unknown element";
        if (!homogeneous(v, deg[i] + deg[j]))
            return "product " + space.names[i] + "*" + space.names[j] + " has the wrong degree";
        if ((i == unit && v != el(j)) || (j == unit && v != el(i))) return "product table disagrees with the unit";
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Vec xy = mul(el(i), el(j)), yx = mul(el(j), el(i));
            if (xy != yx * sign_of(static_cast<long long>(deg[i]) * deg[j]))
                return "product is not graded commutative on " + space.names[i] + ", " + space.names[j];
            const Vec leib = d(xy) - mul(differential[i], el(j)) - mul(el(i), differential[j]) * sign_of(deg[i]);
            if (!leib.empty()) return "Leibniz rule fails on " + space.names[i] + ", " + space.names[j];
            for (int k = 0; k < n; ++k)
                if (mul(xy, el(k)) != mul(el(i), mul(el(j), el(k))))
                    return "product is not associative on " + space.names[i] + ", " + space.names[j] + ", " +
                           space.names[k];
        }
    if (class_names.size() != representatives.size()) return "every representative needs a class name";
    if (!generator_names.empty() && generator_names.size() != representatives.size())
        return "generator names must match the representatives";
    int top = 0;
    for (int d0 : deg) top = std::max(top, d0);
    for (std::size_t r = 0; r < representatives.size(); ++r) {
        const Vec& w = representatives[r];
        if (w.empty()) return "representative of " + class_names[r] + " is zero";
        const int k = degree(w);
        if (!homogeneous(w, k)) return "representative of " + class_names[r] + " is not homogeneous";
        if (!d(w).empty()) return "representative of " + class_names[r] + " is not closed";
        if (k <= 0) return "representative of " + class_names[r] + " must have positive degree";
    }
    for (int k = 0; k <= top; ++k) {
        const auto bk = basis_in_degree(space, k), bk1 = basis_in_degree(space, k + 1), bm = basis_in_degree(space, k - 1);
        std::vector<Vec> dk, dm, reps;
        for (int i : bk) dk.push_back(differential[i]);
        for (int i : bm) dm.push_back(differential[i]);
        for (const Vec& w : representatives)
            if (degree(w) == k) reps.push_back(w);
        const int z = static_cast<int>(bk.size()) - rank(columns(bk1, dk));
        const int b = rank(columns(bk, dm));
        const int h = z - b;
        if (k == 0) {
            if (h != 1) return "the model must be connected (one-dimensional in degree 0)";
            continue;
        }
        if (k == 1 && h != 0) return "degree-1 cohomology is present; the space must be simply connected";
        if (static_cast<int>(reps.size()) != h)
            return "degree " + std::to_string(k) + " has " + std::to_string(h) + " cohomology classes but " +
                   std::to_string(reps.size()) + " representatives";
        std::vector<Vec> all = dm;
        all.insert(all.end(), reps.begin(), reps.end());
        if (rank(columns(bk, all)) != b + h)
            return "representatives in degree " + std::to_string(k) + " are not independent in cohomology";
    }
    for (const auto& [y, hy] : contraction)
        if (d(hy) != y) return "contraction pair does not satisfy d h(y) = y";
    return "";
}

std::pair<std::vector<Q>, Vec> CDGAModel::decompose(const Vec& e) const {
    std::vector<Q> c(representatives.size());
    if (e.empty()) return {c, Vec{}};
    const int k = degree(e);
    const auto bk = basis_in_degree(space, k);
    std::vector<Vec> cols;
    std::vector<int> rep_index;
    for (std::size_t r = 0; r < representatives.size(); ++r)
        if (degree(representatives[r]) == k) {
            cols.push_back(representatives[r]);
            rep_index.push_back(static_cast<int>(r));
        }
    const std::size_t nr = cols.size();
    for (int i : basis_in_degree(space, k - 1)) cols.push_back(differential[i]);
    const auto sol = solve(columns(bk, cols), coords(bk, e));
    if (!sol) throw Error("element of degree " + std::to_string(k) + " is not closed");
    Vec exact = e;
    for (std::size_t r = 0; r < nr; ++r) {
        c[rep_index[r]] = (*sol)[r];
        exact.add(representatives[rep_index[r]], -(*sol)[r]);
    }
    return {c, exact};
}

Vec CDGAModel::primitive(const Vec& y) const {
    if (y.empty()) return {};
    const int k = degree(y);
    const auto bk = basis_in_degree(space, k);
    if (!contraction.empty()) {
        std::vector<Vec> ys;
        std::vector<const Vec*> hs;
        for (const auto& [a, ha] : contraction)
            if (!a.empty() && degree(a) == k) {
                ys.push_back(a);
                hs.push_back(&ha);
            }
        const auto sol = solve(columns(bk, ys), coords(bk, y));
        if (!sol) throw Error("the contraction does not cover the exact element of degree " + std::to_string(k));
        Vec out;
        for (std::size_t i = 0; i < hs.size(); ++i) out.add(*hs[i], (*sol)[i]);
        return out;
    }
    const auto bm = basis_in_degree(space, k - 1);
    std::vector<Vec> dm;
    for (int i : bm) dm.push_back(differential[i]);
    const auto sol = solve(columns(bk, dm), coords(bk, y));
    if (!sol) throw Error("element of degree " + std::to_string(k) + " is not exact");
    return from_coords(bm, *sol);
}

HopfAlgebra PowerSeriesConnection::lie_model() const {
    return HopfAlgebra::tensor(generator_names, generator_degree, boundary);
}

namespace {

int tdeg(const Word& w, const PowerSeriesConnection& psc) { return word_degree(w, psc.generator_degree); }

ConnectionElement truncate(const ConnectionElement& e, int s) {
    ConnectionElement out;
    for (const auto& [k, c] : e)
        if (static_cast<int>(k.second.size()) <= s) out.add(k, c);
    return out;
}

ConnectionElement tensor_term(const Vec& a, const Vec& x) {
    ConnectionElement out;
    for (const auto& [aw, c1] : a)
        for (const auto& [xw, c2] : x) out.add({aw.at(0), xw}, c1 * c2);
    return out;
}

std::vector<int> letter_degrees(const Word& w, const std::vector<int>& deg) {
    std::vector<int> out;
    for (int x : w) out.push_back(deg[x]);
    return out;
}

ConnectionElement bracket(const ConnectionElement& p, const ConnectionElement& q, const PowerSeriesConnection& psc,
                          const CDGAModel& m, int s) {
    ConnectionElement out;
    for (const auto& [k1, c1] : p)
        for (const auto& [k2, c2] : q) {
            if (static_cast<int>(k1.second.size() + k2.second.size()) > s) continue;
            const Vec ab = m.mul(Vec(Word{k1.first}), Vec(Word{k2.first}));
            if (ab.empty()) continue;
            const int sign = sign_of(static_cast<long long>(tdeg(k1.second, psc)) * m.space.degrees[k2.first]);
            const Vec br = tw::bracket(Vec(k1.second), Vec(k2.second), psc.generator_degree);
            out.add(tensor_term(ab, br), c1 * c2 * sign);
        }
    return out;
}

void run_stages(PowerSeriesConnection& psc, const CDGAModel& m) {
    for (int s = 2; s <= psc.max_length; ++s) {
        const ConnectionElement e = flatness_defect(psc, m, s);
        std::map<Word, Vec> by_word;
        for (const auto& [k, c] : e) {
            if (static_cast<int>(k.second.size()) < s)
                throw Error("stage " + std::to_string(s) + ": defect does not vanish below the current length");
            by_word[k.second].add(Word{k.first}, c);
        }
        for (const auto& [u, coef] : by_word) {
            if (!m.d(coef).empty()) throw Error("stage " + std::to_string(s) + ": defect coefficient is not closed");
            const auto [c, exact] = m.decompose(coef);
            for (std::size_t i = 0; i < c.size(); ++i)
                if (c[i] != 0)
                    psc.boundary[i].add(u, -c[i] * sign_of(m.degree(m.representatives[i])));
            if (!exact.empty()) {
                const Vec beta = m.primitive(exact);
                psc.primitives_used.emplace_back(exact, beta);
                psc.omega.add(tensor_term(beta, Vec(u)), -1);
            }
        }
        if (!flatness_defect(psc, m, s).empty())
            throw Error("stage " + std::to_string(s) + ": flatness defect survives the update");
        for (const Vec& v : boundary_square(psc, s))
            if (!v.empty()) throw Error("stage " + std::to_string(s) + ": the differential does not square to zero");
    }
}

}  // namespace

ConnectionElement flatness_defect(const PowerSeriesConnection& psc, const CDGAModel& m, int s) {
    ConnectionElement e;
    ConnectionElement j;
    for (const auto& [k, c] : psc.omega) {
        const int wdeg = m.space.degrees[k.first];
        const Vec dx = extend_derivation(Vec(k.second), -1, [&](int x) { return psc.boundary[x]; },
                                         psc.generator_degree);
        e.add(tensor_term(Vec(Word{k.first}), dx), c * sign_of(wdeg));
        e.add(tensor_term(m.differential[k.first], Vec(k.second)), c);
        j.add(k, c * sign_of(wdeg));
    }
    e.add(bracket(j, psc.omega, psc, m, s), Q(-1, 2));
    return truncate(e, s);
}

std::vector<Vec> boundary_square(const PowerSeriesConnection& psc, int s) {
    std::vector<Vec> out;
    for (const Vec& b : psc.boundary) {
        Vec dd = extend_derivation(b, -1, [&](int x) { return psc.boundary[x]; }, psc.generator_degree);
        Vec kept;
        for (const auto& [w, c] : dd)
            if (static_cast<int>(w.size()) <= s) kept.add(w, c);
        out.push_back(kept);
    }
    return out;
}

PowerSeriesConnection build_power_series_connection(const CDGAModel& m, int max_length) {
    if (max_length < 1) throw Error("power series connection: length cutoff must be at least 1");
    const std::string bad = m.validate();
    if (!bad.empty()) throw Error("CDGA model: " + bad);
    PowerSeriesConnection psc;
    psc.max_length = max_length;
    for (std::size_t i = 0; i < m.representatives.size(); ++i) {
        psc.generator_degree.push_back(m.degree(m.representatives[i]) - 1);
        psc.generator_names.push_back(m.generator_names.empty() ? "s" + m.class_names[i] : m.generator_names[i]);
        psc.omega.add(tensor_term(m.representatives[i], Vec(Word{static_cast<int>(i)})), 1);
    }
    psc.boundary.assign(m.representatives.size(), Vec{});
    run_stages(psc, m);
    return psc;
}

PowerSeriesConnection rerun_connection(const PowerSeriesConnection& psc, const CDGAModel& m) {
    PowerSeriesConnection again = psc;
    run_stages(again, m);
    return again;
}

std::string format_connection(const ConnectionElement& e, const PowerSeriesConnection& psc, const CDGAModel& m) {
    if (e.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : e) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += "(" + format_rational(c) + ") ";
        s += m.space.names[k.first] + "⊗";
        if (k.second.empty()) s += "1";
        for (std::size_t i = 0; i < k.second.size(); ++i) s += (i ? "*" : "") + psc.generator_names[k.second[i]];
    }
    return s;
}

ExtractedStructures extract_structures(const PowerSeriesConnection& psc, const CDGAModel& m,
                                       const std::string& unit_name) {
    const int r = static_cast<int>(psc.generator_degree.size());
    std::vector<std::pair<std::string, int>> basis{{unit_name, 0}};
    for (int i = 0; i < r; ++i) basis.emplace_back(m.class_names[i], psc.generator_degree[i] + 1);
    GradedSpace space("H", basis);

    std::vector<Vec> conjugated(r);
    for (int i = 0; i < r; ++i)
        for (const auto& [w, c] : psc.boundary[i]) conjugated[i].add(w, c * sign_of(static_cast<long long>(w.size()) - 1));
    HopfAlgebra lie = HopfAlgebra::tensor(psc.generator_names, psc.generator_degree, conjugated);

    std::map<int, GradedMap> maps;
    auto map_of = [&](int n) -> GradedMap& {
        auto it = maps.find(n);
        if (it == maps.end()) it = maps.emplace(n, GradedMap(space.degrees, space.degrees, 1, n, n - 2)).first;
        return it->second;
    };
    map_of(2).set({0}, Vec(Word{0, 0}));
    for (int i = 0; i < r; ++i) {
        std::map<int, Vec> out;
        out[2].add(Word{i + 1, 0}, 1);
        out[2].add(Word{0, i + 1}, 1);
        for (const auto& [w, c] : conjugated[i]) {
            Word hw;
            for (int x : w) hw.push_back(x + 1);
            out[static_cast<int>(w.size())].add(hw, -c * suspension_sign(letter_degrees(w, psc.generator_degree), 1));
        }
        for (const auto& [n, v] : out) map_of(n).set({i + 1}, v);
    }
    ExtractedStructures x{FiniteCoalgebra(space, maps, StructureKind::cinf_coalgebra), lie, {}};
    std::vector<Vec> values(r + 1);
    for (int i = 0; i < r; ++i) values[i + 1] = Vec(Word{i});
    x.tau = make_twisting_cochain(x.coalgebra, lie, values, TargetKind::lie);
    int top = 0;
    for (int d0 : space.degrees) top = std::max(top, d0);
    const auto mc = check_maurer_cartan(x.coalgebra, lie, x.tau, TruncationPolicy(top, std::max(1, psc.max_length)));
    if (!mc.pass) throw Error("extracted twisting cochain fails the Maurer-Cartan equation: " + mc.describe(x.coalgebra, lie));
    return x;
}

}  // namespace tw
