#include <gtest/gtest.h>

#include "support.hpp"

using namespace tw;
using namespace tw::testing;

namespace {

/** Classes in degrees 0, 2, 4, 6 with a coproduct missing e4 (x) e2, so coassociativity fails. */
FiniteCoalgebra lopsided() {
    GradedSpace sp("X", {{"e0", 0}, {"e2", 2}, {"e4", 4}, {"e6", 6}});
    GradedMap c2(sp.degrees, sp.degrees, 1, 2, 0);
    c2.set({0}, Vec(Word{0, 0}));
    c2.set({1}, Vec(Word{1, 0}) + Vec(Word{0, 1}));
    c2.set({2}, Vec(Word{2, 0}) + Vec(Word{0, 2}) + Vec(Word{1, 1}));
    c2.set({3}, Vec(Word{3, 0}) + Vec(Word{0, 3}) + Vec(Word{1, 2}));
    return FiniteCoalgebra(sp, {{2, c2}}, StructureKind::ainf_coalgebra);
}

}  // namespace

TEST(Coalgebra, SpheresAndCp2SatisfyRelations) {
    const TruncationPolicy policy(8, 8);
    for (const FiniteCoalgebra& c : {sphere(2), sphere(3), cp2()}) {
        const StructureFamily s = c.shifted();
        EXPECT_TRUE(check_ainf(s, policy).ok()) << c.space.name << check_ainf(s, policy).summary(s);
        EXPECT_TRUE(check_cinfty(s, policy).ok()) << c.space.name;
    }
}

TEST(Coalgebra, BrokenCoassociativityIsCaught) {
    const FiniteCoalgebra c = lopsided();
    const StructureFamily s = c.shifted();
    const DefectReport r = check_ainf(s, TruncationPolicy(8, 8));
    ASSERT_FALSE(r.ok());
    // the failure is at e6 and in arity 3 (the square of the arity-2 part)
    bool at_top = false;
    for (const auto& d : r.defects) at_top = at_top || (d.input == Word{3} && d.arity == 3);
    EXPECT_TRUE(at_top) << r.summary(s);
    EXPECT_FALSE(check_cinfty(s, TruncationPolicy(8, 8)).ok());
}

TEST(Coalgebra, ShiftedComponentHasDegreeMinusOne) {
    const FiniteCoalgebra c = cp2();
    const GradedMap f = c.shifted_component(2);
    for (const auto& [in, out] : f.entries)
        for (const auto& [w, coef] : out)
            EXPECT_EQ(word_degree(w, f.dst_deg), word_degree(in, f.src_deg) - 1);
}

TEST(Pairing, ValidationAndDuals) {
    Matrix bad(2, 2);
    bad(0, 1) = 1;
    EXPECT_THROW(Pairing({0, 2}, bad), Error);  // not symmetric
    Matrix degenerate(2, 2);
    degenerate(0, 1) = degenerate(1, 0) = 0;
    EXPECT_THROW(Pairing({0, 2}, degenerate), Error);
    const Pairing p = top_pairing(cp2());
    EXPECT_EQ(p.degree, 4);
    for (int i = 0; i < 3; ++i) {
        const Vec d = p.dual(i);
        for (int j = 0; j < 3; ++j) {
            Q value = 0;
            for (const auto& [w, c] : d) value += c * p(j, w[0]);
            EXPECT_EQ(value, i == j ? 1 : 0);
        }
    }
}

TEST(Cyclic, ScaledPairingBreaksInvariance) {
    const FiniteCoalgebra c = cp2();
    EXPECT_TRUE(check_cyclic(c, top_pairing(c)).ok());
    Matrix m(3, 3);
    m(0, 2) = m(2, 0) = 1;
    m(1, 1) = 2;
    EXPECT_FALSE(check_cyclic(c, Pairing(c.space.degrees, m)).ok());
    EXPECT_THROW(pair_to_algebra(c, Pairing(c.space.degrees, m)), Error);
}

TEST(Cyclic, DualAlgebraIsTheCohomologyRing) {
    const FiniteCoalgebra c = cp2();
    const FiniteAlgebra a = pair_to_algebra(c, top_pairing(c));
    // regraded by -4: e4 is the unit in degree 0, e2 in -2, e0 in -4
    EXPECT_EQ(a.space.degrees, (std::vector<int>{-4, -2, 0}));
    const GradedMap m2 = a.component(2);
    for (int y = 0; y < 3; ++y) EXPECT_EQ(m2.apply(Word{2, y}), Vec(Word{y})) << y;
    const Vec square = m2.apply(Word{1, 1});
    ASSERT_EQ(square.size(), 1u);
    EXPECT_EQ(square.begin()->first, Word{0});
    EXPECT_TRUE(m2.apply(Word{1, 0}).empty());
    EXPECT_TRUE(check_ainf(a.shifted(), TruncationPolicy(8, 8)).ok());
    EXPECT_TRUE(check_cinfty(a.shifted(), TruncationPolicy(8, 8)).ok());
}

TEST(Cyclic, OddDimensionalDualHasTwoSidedUnit) {
    for (int n : {3, 5}) {
        const FiniteCoalgebra c = sphere(n);
        const FiniteAlgebra a = pair_to_algebra(c, top_pairing(c));
        const GradedMap m2 = a.component(2);
        // e_n is the unit in degree 0; e0 sits in the odd degree -n
        EXPECT_EQ(m2.apply(Word{1, 0}), Vec(Word{0}));
        EXPECT_EQ(m2.apply(Word{0, 1}), Vec(Word{0}));
        EXPECT_EQ(m2.apply(Word{1, 1}), Vec(Word{1}));
        EXPECT_TRUE(check_ainf(a.shifted(), TruncationPolicy(3 * n, 4)).ok()) << n;
    }
}

TEST(Cyclic, AlgebraRoundTrip) {
    for (const FiniteCoalgebra& c : {sphere(2), sphere(3), cp2()}) {
        const Pairing p = top_pairing(c);
        const FiniteCoalgebra back = algebra_to_coalgebra(pair_to_algebra(c, p), p, c.space);
        for (const auto& [n, f] : c.maps) EXPECT_EQ(back.component(n).entries, f.entries) << c.space.name;
    }
}

TEST(Linf, GradedCommutativeProductHasZeroBracket) {
    const FiniteCoalgebra c = cp2();
    const FiniteAlgebra a = pair_to_algebra(c, top_pairing(c));
    const GradedMap l2 = symmetrize_unshifted(a.component(2));
    EXPECT_TRUE(l2.entries.empty());
    // a noncommutative product: x y = z, y x = 0 on even x, y gives l2(x, y) = z and l2(y, x) = -z
    GradedMap m({2, 2, 4}, {2, 2, 4}, 2, 1, 0);
    m.set({0, 1}, Vec(Word{2}));
    const GradedMap l = symmetrize_unshifted(m);
    EXPECT_EQ(l.apply(Word{0, 1}), Vec(Word{2}));
    EXPECT_EQ(l.apply(Word{1, 0}), Vec(Word{2}, -1));
}

TEST(Linf, SymmetrizationSatisfiesJacobi) {
    // the algebra on C (x) T(a) from S^2: noncommutative H makes the bracket nonzero
    const FiniteCoalgebra c = sphere(2);
    const ManifoldModel m = manifold(c);
    const TruncationPolicy policy(5, 4);
    const TwistedFamily f = build_twisted_algebra(c, m.pairing, m.lie, m.tau, ActionKind::conjugation, policy);
    const StructureFamily l = symmetrize_to_linf(f.family);
    EXPECT_EQ(l.kind, StructureKind::linf_algebra);
    EXPECT_TRUE(check_ainf(l, TruncationPolicy(4, 3)).ok());
}

TEST(Convolution, DifferentialAndProduct) {
    // Hom(C, T(a, b)) for CP2 with d b = -a a
    const FiniteCoalgebra c = cp2();
    const HopfAlgebra h = HopfAlgebra::tensor({"a", "b"}, {1, 3}, {Vec{}, Vec(Word{0, 0}, -1)});
    const HomConvolution conv(c, h, ConvolutionMode::assoc);
    Cochain tau{-1, {Vec{}, Vec(Word{0}), Vec(Word{1})}};
    const Cochain d = conv.m({tau});
    EXPECT_EQ(d.values[2], Vec(Word{0, 0}, -1));
    const Cochain sq = conv.m({tau, tau});
    // c2(e4) contains e2 (x) e2 once; tau (x) tau picks up (-1)^{|tau||e2|} = 1
    EXPECT_EQ(sq.values[2], Vec(Word{0, 0}));
    EXPECT_TRUE((d.values[2] + sq.values[2]).empty());
    const HomConvolution lie(c, h, ConvolutionMode::lie);
    EXPECT_EQ(lie.l({tau, tau}).values[2], sq.values[2] * 2);
}
