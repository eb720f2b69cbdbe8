#include <gtest/gtest.h>

#include "support.hpp"

using namespace tw;
using namespace tw::testing;

namespace {

CDGAModel cp2_cdga() {
    CDGAModel m;
    m.space = GradedSpace("A", {{"1", 0}, {"x", 2}, {"x2", 4}});
    m.unit = 0;
    m.product[{1, 1}] = letter(2);
    m.differential.assign(3, Vec{});
    m.class_names = {"e2", "e4"};
    m.representatives = {letter(1), letter(2)};
    m.generator_names = {"a", "b"};
    return m;
}

CDGAModel s2_cdga() {
    CDGAModel m;
    m.space = GradedSpace("A", {{"1", 0}, {"x", 2}});
    m.unit = 0;
    m.differential.assign(2, Vec{});
    m.class_names = {"e2"};
    m.representatives = {letter(1)};
    m.generator_names = {"a"};
    return m;
}

/**
 * A larger model of S^2: x^2 = z is exact (z = dy), and v, t = dv form an acyclic pair. z has the
 * primitives y and y + t; the contraction picks the second.
 */
CDGAModel padded_s2(bool with_contraction) {
    CDGAModel m;
    m.space = GradedSpace("A", {{"1", 0}, {"x", 2}, {"y", 3}, {"z", 4}, {"v", 2}, {"t", 3}});
    m.unit = 0;
    m.product[{1, 1}] = letter(3);
    m.differential = {Vec{}, Vec{}, letter(3), Vec{}, letter(5), Vec{}};
    m.class_names = {"e2"};
    m.representatives = {letter(1)};
    m.generator_names = {"a"};
    if (with_contraction) m.contraction = {{letter(3), letter(2) + letter(5)}};
    return m;
}

}  // namespace

TEST(CDGA, ValidModelsPass) {
    EXPECT_EQ(cp2_cdga().validate(), "");
    EXPECT_EQ(s2_cdga().validate(), "");
    EXPECT_EQ(padded_s2(true).validate(), "");
}

TEST(CDGA, InvalidModelsAreNamed) {
    CDGAModel odd = s2_cdga();
    odd.space = GradedSpace("A", {{"1", 0}, {"y", 1}});
    odd.class_names = {"e1"};
    EXPECT_NE(odd.validate().find("degree-1"), std::string::npos) << odd.validate();

    CDGAModel sq = padded_s2(false);
    sq.differential[3] = letter(4);  // d z = v: degree is wrong
    EXPECT_NE(sq.validate(), "");

    CDGAModel anti = cp2_cdga();
    anti.space = GradedSpace("A", {{"1", 0}, {"x", 3}, {"x2", 6}});
    EXPECT_NE(anti.validate(), "");  // x x != 0 for odd x

    CDGAModel missing = cp2_cdga();
    missing.representatives = {letter(1), letter(1)};
    EXPECT_NE(missing.validate(), "");
}

TEST(CDGA, DecomposeAndPrimitive) {
    const CDGAModel m = padded_s2(false);
    const auto [coeffs, exact] = m.decompose(letter(1) * 3 + letter(4) * 0);
    EXPECT_EQ(coeffs, std::vector<Q>{3});
    EXPECT_TRUE(exact.empty());
    const Vec z = letter(3);
    EXPECT_EQ(m.d(m.primitive(z)), z);
    const CDGAModel c = padded_s2(true);
    EXPECT_EQ(c.primitive(z), letter(2) + letter(5));
}

TEST(Connection, Cp2BracketAndFlatness) {
    const CDGAModel m = cp2_cdga();
    const PowerSeriesConnection psc = build_power_series_connection(m, 4);
    ASSERT_EQ(psc.boundary.size(), 2u);
    EXPECT_TRUE(psc.boundary[0].empty());
    // d b = lambda [a, a] with lambda != 0
    const Vec aa = Vec(Word{0, 0}) * 2;
    ASSERT_FALSE(psc.boundary[1].empty());
    const Q lambda = psc.boundary[1].coeff(Word{0, 0}) / 2;
    EXPECT_NE(lambda, 0);
    EXPECT_EQ(psc.boundary[1], aa * lambda);
    for (int s = 2; s <= 4; ++s) {
        EXPECT_TRUE(flatness_defect(psc, m, s).empty()) << s;
        for (const Vec& v : boundary_square(psc, s)) EXPECT_TRUE(v.empty());
    }
    EXPECT_EQ(format_connection(psc.omega, psc, m), "x⊗a + x2⊗b");
}

TEST(Connection, S2IsExactlyXTimesA) {
    const CDGAModel m = s2_cdga();
    const PowerSeriesConnection psc = build_power_series_connection(m, 4);
    EXPECT_TRUE(psc.boundary[0].empty());
    ConnectionElement expected;
    expected.add({1, Word{0}}, 1);
    EXPECT_EQ(psc.omega, expected);
    EXPECT_TRUE(psc.primitives_used.empty());
}

TEST(Connection, RerunIsIdempotent) {
    for (const CDGAModel& m : {cp2_cdga(), padded_s2(false), padded_s2(true)}) {
        const PowerSeriesConnection psc = build_power_series_connection(m, 4);
        const PowerSeriesConnection again = rerun_connection(psc, m);
        EXPECT_EQ(again.omega, psc.omega);
        EXPECT_EQ(again.boundary, psc.boundary);
    }
}

TEST(Connection, ContractionChangesOmegaButNotTheBoundary) {
    const PowerSeriesConnection plain = build_power_series_connection(padded_s2(false), 4);
    const PowerSeriesConnection chosen = build_power_series_connection(padded_s2(true), 4);
    ASSERT_FALSE(plain.primitives_used.empty());
    EXPECT_NE(plain.omega, chosen.omega);
    EXPECT_EQ(plain.boundary, chosen.boundary);
    EXPECT_TRUE(flatness_defect(chosen, padded_s2(true), 4).empty());
}

TEST(Extraction, Cp2CoalgebraAndInclusion) {
    const CDGAModel m = cp2_cdga();
    const ExtractedStructures x = extract_structures(build_power_series_connection(m, 4), m);
    EXPECT_EQ(x.coalgebra.space.names, (std::vector<std::string>{"e0", "e2", "e4"}));
    EXPECT_EQ(x.coalgebra.space.degrees, (std::vector<int>{0, 2, 4}));
    EXPECT_NE(x.coalgebra.component(2).apply(Word{2}).coeff(Word{1, 1}), 0);
    const StructureFamily s = x.coalgebra.shifted();
    EXPECT_TRUE(check_ainf(s, TruncationPolicy(8, 8)).ok());
    EXPECT_TRUE(check_cinfty(s, TruncationPolicy(8, 8)).ok());
    EXPECT_TRUE(x.tau.primitive_image);
    EXPECT_TRUE(check_maurer_cartan(x.coalgebra, x.lie_model, x.tau, TruncationPolicy(6, 4)).pass);
    // the pairing <e0,e4> = <e2,e2> = 1 is cyclic on the extracted coalgebra
    EXPECT_TRUE(check_cyclic(x.coalgebra, top_pairing(x.coalgebra)).ok());
}
