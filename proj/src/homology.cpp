#include "tw/homology.hpp"

#include <algorithm>

namespace tw {

int ChainComplex::dim(int k) const {
    auto it = names.find(k);
    return it == names.end() ? 0 : static_cast<int>(it->second.size());
}

Matrix ChainComplex::d(int k) const {
    auto it = boundary.find(k);
    if (it != boundary.end()) return it->second;
    return Matrix(dim(k - 1), dim(k));
}

bool ChainComplex::squares_to_zero() const {
    for (int k = lo + 2; k <= hi; ++k)
        if (!(d(k - 1) * d(k)).is_zero()) return false;
    return true;
}

long long ChainComplex::euler_characteristic() const {
    long long chi = 0;
    for (int k = lo; k <= hi; ++k) chi += (k % 2 == 0 ? 1 : -1) * dim(k);
    return chi;
}

std::vector<Q> ChainComplex::coordinates(int k, const Vec& v) const {
    const auto& ls = letters.at(k);
    std::vector<Q> out(ls.size());
    for (const auto& [w, c] : v) {
        auto it = std::find(ls.begin(), ls.end(), w.at(0));
        if (w.size() != 1 || it == ls.end()) throw Error("element is not in degree " + std::to_string(k) + " of the complex");
        out[it - ls.begin()] += c;
    }
    return out;
}

Vec ChainComplex::to_vec(int k, const std::vector<Q>& coords) const {
    const auto& ls = letters.at(k);
    Vec out;
    for (std::size_t i = 0; i < coords.size(); ++i) out.add(Word{ls[i]}, coords[i]);
    return out;
}

ChainComplex assemble_complex(const TwistedFamily& f, int max_degree) {
    if (max_degree < 0) throw Error("assemble_complex: degree cutoff must be nonnegative");
    if (f.policy.max_degree < max_degree + 1 || f.policy.max_length < max_degree + 1)
        throw Error("assemble_complex: the family must be built with degree and length cutoffs of at least " +
                    std::to_string(max_degree + 1));
    ChainComplex x;
    x.lo = 0;
    x.hi = max_degree + 1;
    for (int k = x.lo; k <= x.hi; ++k) {
        x.letters[k];
        x.names[k];
    }
    for (int i : f.basis(x.hi, f.policy.max_length)) {
        const int k = f.family.weight[i];
        x.letters[k].push_back(i);
        x.names[k].push_back(f.name(i));
    }
    for (int k = x.lo + 1; k <= x.hi; ++k) {
        Matrix m(x.dim(k - 1), x.dim(k));
        for (int c = 0; c < x.dim(k); ++c) {
            const auto col = x.coordinates(k - 1, f.differential(x.letters[k][c]));
            for (int r = 0; r < m.rows(); ++r) m(r, c) = col[r];
        }
        x.boundary[k] = std::move(m);
    }
    if (!x.squares_to_zero()) throw Error("assemble_complex: the differential does not square to zero");
    return x;
}

HomologyResult homology(const ChainComplex& x) {
    if (!x.squares_to_zero()) throw Error("homology: the boundary maps do not square to zero");
    HomologyResult hr;
    hr.lo = x.lo;
    hr.hi = x.hi;
    hr.exact_through = x.hi - 1;
    for (int k = x.lo; k <= x.hi; ++k) {
        const Matrix dk = x.d(k), dk1 = x.d(k + 1);
        const int n = x.dim(k);
        if (dk.cols() != n || dk1.rows() != n) throw Error("homology: boundary shapes are inconsistent in degree " + std::to_string(k));
        const auto z = kernel(dk);
        const int b = dk1.cols();
        Matrix aug(n, b + static_cast<int>(z.size()));
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < b; ++c) aug(r, c) = dk1(r, c);
            for (std::size_t c = 0; c < z.size(); ++c) aug(r, b + static_cast<int>(c)) = z[c][r];
        }
        std::vector<std::vector<Q>> reps;
        for (int p : rref(aug).pivot_cols)
            if (p >= b) reps.push_back(z[p - b]);
        Matrix proj(n, static_cast<int>(reps.size()) + b);
        for (int r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < reps.size(); ++c) proj(r, static_cast<int>(c)) = reps[c][r];
            for (int c = 0; c < b; ++c) proj(r, static_cast<int>(reps.size()) + c) = dk1(r, c);
        }
        hr.betti[k] = static_cast<int>(reps.size());
        hr.representatives[k] = std::move(reps);
        hr.cycles_plus_boundaries[k] = std::move(proj);
        hr.boundary_in[k] = dk;
    }
    return hr;
}

std::vector<int> HomologyResult::betti_vector() const {
    std::vector<int> out;
    for (int k = lo; k <= exact_through; ++k) out.push_back(betti.at(k));
    return out;
}

std::vector<Q> HomologyResult::project(int k, const std::vector<Q>& cycle) const {
    auto it = cycles_plus_boundaries.find(k);
    if (it == cycles_plus_boundaries.end()) throw Error("project: degree " + std::to_string(k) + " is outside the window");
    if (!(boundary_in.at(k) * cycle == std::vector<Q>(boundary_in.at(k).rows())))
        throw Error("project: element is not a cycle");
    const auto sol = solve(it->second, cycle);
    if (!sol) throw Error("project: cycle is not in the span of the representatives and boundaries");
    const int b = betti.at(k);
    return std::vector<Q>(sol->begin(), sol->begin() + b);
}

const ProductTable::Entry* ProductTable::find(int p, int i, int q, int j) const {
    for (const auto& e : entries)
        if (e.p == p && e.i == i && e.q == q && e.j == j) return &e;
    return nullptr;
}

std::vector<Q> class_product(const HomologyResult& hr, const ChainComplex& x, const TwistedFamily& f, int p,
                             const std::vector<Q>& zp, int q, const std::vector<Q>& zq) {
    const int r = p + q - f.pairing_degree;
    const Vec u = x.to_vec(p, zp), v = x.to_vec(q, zq);
    Vec prod;
    for (const auto& [a, c1] : u)
        for (const auto& [b, c2] : v) prod.add(f.unshifted_product(a.at(0), b.at(0)), c1 * c2);
    if (r < hr.lo || r > hr.exact_through) throw Error("class_product: degree " + std::to_string(r) + " is outside the window");
    const auto coords = x.coordinates(r, prod);
    try {
        return hr.project(r, coords);
    } catch (const Error&) {
        throw Error("class_product: product of cycles is not a cycle; the differential is not a derivation of m_2");
    }
}

ProductTable induced_product(const HomologyResult& hr, const ChainComplex& x, const TwistedFamily& f) {
    if (!f.is_algebra()) throw Error("induced_product: family is not an algebra");
    ProductTable t;
    t.shift = f.pairing_degree;
    for (int p = hr.lo; p <= hr.exact_through; ++p)
        for (int q = hr.lo; q <= hr.exact_through; ++q) {
            const int r = p + q - t.shift;
            if (r < hr.lo || r > hr.exact_through) continue;
            const auto& rp = hr.representatives.at(p);
            const auto& rq = hr.representatives.at(q);
            for (std::size_t i = 0; i < rp.size(); ++i)
                for (std::size_t j = 0; j < rq.size(); ++j)
                    t.entries.push_back({p, static_cast<int>(i), q, static_cast<int>(j), r,
                                         class_product(hr, x, f, p, rp[i], q, rq[j])});
        }
    return t;
}

bool verify_shared_differential(const TwistedFamily& algebra, const TwistedFamily& coalgebra) {
    if (algebra.c->space.names != coalgebra.c->space.names || algebra.c->space.degrees != coalgebra.c->space.degrees ||
        algebra.h->names() != coalgebra.h->names() || algebra.h->deg() != coalgebra.h->deg())
        throw Error("verify_shared_differential: the families live on different spaces");
    for (int i : coalgebra.basis(coalgebra.policy.max_degree, coalgebra.policy.max_length)) {
        const auto& [x, hw] = coalgebra.letter(i);
        const auto j = algebra.find(x, hw);
        if (!j) return false;
        Vec mapped;
        for (const auto& [w, c] : algebra.differential(*j)) {
            const auto& [y, hy] = algebra.letter(w.at(0));
            const auto k = coalgebra.find(y, hy);
            if (!k) return false;
            mapped.add(Word{*k}, c);
        }
        if (mapped != coalgebra.differential(i)) return false;
    }
    return true;
}

}  // namespace tw
