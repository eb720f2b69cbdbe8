// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace tw;
using namespace tw::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

std::string join(const std::vector<int>& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return "(" + s.str() + ")";
}

/** Runs the CLI in-process and reads the "betti" line. */
std::vector<int> cli_betti(const std::vector<std::string>& args, Outcome& o) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    if (code != 0) {
        o.fail(args[0] + " exited " + std::to_string(code) + ": " + err.str());
        return {};
    }
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("betti", 0) == 0) {
            std::istringstream nums(line.substr(5));
            std::vector<int> b;
            for (int x; nums >> x;) b.push_back(x);
            return b;
        }
    o.fail("no betti line in output of " + args[0]);
    return {};
}

ManifoldModel fixture_manifold(const std::string& name) { return manifold_of(parse_model_file(fixture(name)), 0); }

BundleModel fixture_bundle(const std::string& name) { return bundle_of(parse_model_file(fixture(name)), 0); }

/** Betti numbers of e0 (x) 1, e0 (x) u, e_n (x) 1, e_n (x) u in degrees 0, k, n, n + k from the rank of d. */
std::vector<int> four_cell_oracle(const ChainComplex& x, int n, int k, Outcome& o) {
    const int top = n + k;
    std::vector<int> betti(top + 1, 0);
    for (int d = 0; d <= top; ++d) {
        const int expected_dim = (d == 0) + (d == k) + (d == n) + (d == top);
        o.expect(x.dim(d) == expected_dim, "unexpected chain dimension in degree " + std::to_string(d));
    }
    if (!o.pass) return betti;
    // the only possible nonzero entry is d(e_n (x) 1) against e0 (x) u, a 1x1 block when n = k + 1
    Matrix total(4, 4);
    if (n == k + 1) total(1, 2) = x.boundary.at(n)(0, 0);
    const int r = rank(total);
    betti[0] = 1;
    betti[top] = 1;
    betti[k] += 1;
    betti[n] += 1;
    betti[k] -= r;
    betti[n] -= r;
    return betti;
}

Outcome hopf_fibration() {
    Outcome o;
    const auto b = cli_betti({"bundle-betti", "--max-degree", "3", fixture("hopf")}, o);
    o.expect(b == std::vector<int>{1, 0, 0, 1}, "cli betti " + join(b));
    const BundleResult r = bundle_model(fixture_bundle("hopf"), 3);
    const auto oracle = four_cell_oracle(r.run.complex, 2, 1, o);
    o.expect(oracle == r.betti, "rank oracle " + join(oracle) + " vs " + join(r.betti));
    return o;
}

Outcome instanton_bundle() {
    Outcome o;
    const auto b = cli_betti({"bundle-betti", "--max-degree", "7", fixture("su2-s4")}, o);
    o.expect(b == std::vector<int>{1, 0, 0, 0, 0, 0, 0, 1}, "cli betti " + join(b));
    // e4 (x) 1 pairs off against e0 (x) u, leaving e0 (x) 1 and e4 (x) u
    const BundleResult r = bundle_model(fixture_bundle("su2-s4"), 7);
    const ChainComplex& x = r.run.complex;
    o.expect(x.dim(4) == 1 && x.dim(3) == 1 && x.boundary.at(4)(0, 0) != 0, "e4 (x) 1 does not hit e0 (x) u");
    const auto oracle = four_cell_oracle(x, 4, 3, o);
    o.expect(oracle == r.betti, "pairing oracle " + join(oracle) + " vs " + join(r.betti));
    return o;
}

Outcome path_space() {
    Outcome o;
    std::vector<int> point(9, 0);
    point[0] = 1;
    for (const std::string name : {"s2", "s3", "cp2"}) {
        const auto b = cli_betti({"path-betti", "--max-degree", "8", fixture(name)}, o);
        o.expect(b == point, name + " " + join(b));
    }
    return o;
}

Outcome free_loops_s2() {
    Outcome o;
    const auto b = cli_betti({"loop-betti", "--max-degree", "8", fixture("s2")}, o);
    o.expect(b == std::vector<int>(9, 1), "twisted " + join(b));
    const auto u = cli_betti({"loop-betti", "--max-degree", "8", "--untwisted", fixture("s2")}, o);
    o.expect(u == std::vector<int>{1, 1, 2, 2, 2, 2, 2, 2, 2}, "untwisted " + join(u));
    o.expect(b != u, "twist is inactive");
    return o;
}

Outcome h_space_s3() {
    Outcome o;
    const ManifoldModel m = fixture_manifold("s3");
    const HomologyRun twisted = free_loop_model(m, 9);
    const HomologyRun plain = free_loop_model(m, 9, ActionKind::conjugation, true);
    o.expect(twisted.family.size() == plain.family.size(), "families differ in size");
    for (int i = 0; o.pass && i < twisted.family.size(); ++i)
        o.expect(twisted.family.family.coproduct(i) == plain.family.family.coproduct(i),
                 "maps differ on " + twisted.family.name(i));
    const auto b = cli_betti({"loop-betti", "--max-degree", "9", fixture("s3")}, o);
    o.expect(b == std::vector<int>{1, 0, 1, 1, 1, 1, 1, 1, 1, 1}, "betti " + join(b));
    return o;
}

Outcome structure_relations() {
    Outcome o;
    const int top = 8;
    const TruncationPolicy policy = window_policy(top, 0);
    auto check = [&](const TwistedFamily& f, const std::string& what) {
        const DefectReport r = check_ainf(f.family, f.policy);
        o.expect(r.ok(), what + ": " + r.summary(f.family));
    };
    for (const std::string name : {"s2", "s3", "cp2"}) {
        const ManifoldModel m = fixture_manifold(name);
        for (ActionKind a : {ActionKind::left_mult, ActionKind::bracket, ActionKind::conjugation}) {
            check(build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, a, policy), name + " coalgebra " + to_string(a));
            // left multiplication does not make the differential a derivation of m2
            if (a != ActionKind::left_mult)
                    check(build_twisted_algebra(m.coalgebra, m.pairing, m.lie, m.tau, a, policy),
                      name + " algebra " + to_string(a));
        }
    }
    for (const std::string name : {"hopf", "su2-s4", "trivial-bundle"}) {
        const BundleModel b = fixture_bundle(name);
        for (ActionKind a : {ActionKind::left_mult, ActionKind::bracket, ActionKind::conjugation})
            check(bundle_model(b, top, BundleVariant::homology, a).run.family, name + " " + to_string(a));
    }
    return o;
}

Outcome brown_reduction() {
    Outcome o;
    for (const std::string name : {"s2", "s3", "cp2"}) {
        const ManifoldModel m = fixture_manifold(name);
        for (ActionKind a : {ActionKind::left_mult, ActionKind::conjugation}) {
            const TwistedFamily f = build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, a, window_policy(8, 0));
            for (int i : f.basis(8, f.policy.max_length))
                o.expect(f.differential(i) == classical_differential(f, i), name + " differs on " + f.name(i));
        }
    }
    const BundleModel b = fixture_bundle("hopf");
    const TwistedFamily f = bundle_model(b, 3).run.family;
    for (int i : f.basis(3, f.policy.max_length)) {
        o.expect(f.differential(i) == classical_differential(f, i), "hopf differs on " + f.name(i));
        Lin<std::pair<int, int>> lhs, rhs;
        for (const auto& [w, c] : f.differential(i))
            for (const auto& [pq, d] : product_coproduct(f, w[0])) lhs.add(pq, c * d);
        for (const auto& [pq, c] : product_coproduct(f, i)) {
            for (const auto& [w, d] : f.differential(pq.first)) rhs.add({w[0], pq.second}, c * d);
            for (const auto& [w, d] : f.differential(pq.second))
                rhs.add({pq.first, w[0]}, c * d * sign_of(f.degree(pq.first)));
        }
        o.expect(lhs == rhs, "not a coderivation on " + f.name(i));
    }
    return o;
}

Outcome conjugation_is_bracket() {
    Outcome o;
    const TruncationPolicy policy(8, 5);
    for (const std::string name : {"s2", "s3", "cp2"}) {
        const ManifoldModel m = fixture_manifold(name);
        std::size_t compared = 0;
        for (const Vec& a : primitive_basis(m.lie, policy))
            for (int d = 0; d <= policy.max_degree; ++d)
                for (const Word& w : m.lie.basis_of_degree(d, 5)) {
                    ++compared;
                    o.expect(hopf_action(m.lie, ActionKind::conjugation, a, Vec(w)) ==
                                 hopf_action(m.lie, ActionKind::bracket, a, Vec(w)),
                             name + ": actions differ");
                }
        o.expect(compared > 0, name + ": nothing compared");
        const TwistedFamily conj = build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, ActionKind::conjugation, policy);
        const TwistedFamily br = build_twisted_coalgebra(m.coalgebra, m.lie, m.tau, ActionKind::bracket, policy);
        for (int i = 0; o.pass && i < conj.size(); ++i)
            o.expect(conj.letter(i) == br.letter(i) && conj.family.coproduct(i) == br.family.coproduct(i),
                     name + ": families differ on " + conj.name(i));
    }
    return o;
}

Outcome loop_product() {
    Outcome o;
    std::mt19937 rng(2024);
    for (const std::string name : {"s2", "cp2"}) {
        const ManifoldModel m = fixture_manifold(name);
        const TruncationPolicy policy = window_policy(8, 0);
        const TwistedFamily f =
            build_twisted_algebra(m.coalgebra, m.pairing, m.lie, m.tau, ActionKind::conjugation, policy);
        o.expect(derivation_defects(f, policy).empty(), name + ": derivation defect");
        const LoopProduct lp = loop_product_table(m, 6);
        const ChainComplex& x = lp.run.complex;
        const HomologyResult& h = lp.run.homology;
        o.expect(!lp.table.entries.empty(), name + ": empty product table");
        for (int trial = 0; trial < 20; ++trial)
            for (const auto& e : lp.table.entries) {
                auto perturb = [&](int deg, std::vector<Q> z) {
                    const Matrix up = x.d(deg + 1);
                    for (int c = 0; c < up.cols(); ++c) {
                        const Q s = static_cast<int>(rng() % 7) - 3;
                        for (int r = 0; r < up.rows(); ++r) z[r] += s * up(r, c);
                    }
                    return z;
                };
                const auto zp = perturb(e.p, h.representatives.at(e.p)[e.i]);
                const auto zq = perturb(e.q, h.representatives.at(e.q)[e.j]);
                if (class_product(h, x, lp.run.family, e.p, zp, e.q, zq) != e.value) {
                    o.fail(name + ": product depends on the representative");
                    return o;
                }
            }
    }
    return o;
}

Outcome power_series_connection() {
    Outcome o;
    const ModelFile cp2_file = parse_model_file(fixture("cp2"));
    const CDGAModel& a = *cp2_file.cdga;
    const int length = 4;
    const PowerSeriesConnection psc = build_power_series_connection(a, length);
    // the generator of degree 3 is b; d b = lambda [a, a] = 2 lambda a a
    const Q lambda = psc.boundary.at(1).coeff(Word{0, 0}) / 2;
    o.expect(lambda != 0, "lambda = 0");
    o.expect(psc.boundary.at(1) == Vec(Word{0, 0}, 2 * lambda), "d b is not a multiple of [a, a]");
    o.expect(flatness_defect(psc, a, length).empty(), "flatness defect below length 5");
    for (const Vec& v : boundary_square(psc, length)) o.expect(v.empty(), "d^2 != 0");

    const ModelFile s2_file = parse_model_file(fixture("s2"));
    const PowerSeriesConnection s2 = build_power_series_connection(*s2_file.cdga, length);
    for (const Vec& v : s2.boundary) o.expect(v.empty(), "S2 boundary is nonzero");
    ConnectionElement x_a;
    x_a.add({1, Word{0}}, 1);
    o.expect(s2.omega == x_a, "S2 omega is " + format_connection(s2.omega, s2, *s2_file.cdga));
    return o;
}

Outcome linf_restriction() {
    Outcome o;
    const ManifoldModel m = fixture_manifold("s2");
    const TruncationPolicy policy(8, 4);
    const TwistedFamily f = build_twisted_algebra(m.coalgebra, m.pairing, m.lie, m.tau, ActionKind::conjugation, policy);
    const LinfRestriction r = restrict_linf_to_primitives(f, policy);
    o.expect(r.checked > 0, "nothing checked");
    o.expect(r.ok(), "a bracket leaves the primitives");
    return o;
}

/** Random values in {-1, 0, 1} on a few words of each required degree. */
TwistingCochain random_cochain(const FiniteCoalgebra& c, const HopfAlgebra& h, std::mt19937& rng) {
    std::vector<Vec> values(c.space.dim());
    for (int x = 0; x < c.space.dim(); ++x) {
        const int d = c.space.degrees[x];
        if (d < 2) continue;
        for (const Word& w : h.basis_of_degree(d - 1, d))
            if (rng() % 2) values[x].add(w, static_cast<int>(rng() % 3) - 1);
    }
    return make_twisting_cochain(c, h, values);
}

Outcome mc_morphism() {
    Outcome o;
    std::mt19937 rng(12);
    const TruncationPolicy policy(6, 4);
    struct Input {
        std::string name;
        FiniteCoalgebra c;
        HopfAlgebra h;
    };
    std::vector<Input> inputs;
    for (const std::string name : {"s2", "s3", "cp2"}) {
        const ManifoldModel m = fixture_manifold(name);
        inputs.push_back({name, m.coalgebra, m.lie});
    }
    for (const std::string name : {"hopf", "su2-s4", "trivial-bundle"}) {
        const BundleModel b = fixture_bundle(name);
        inputs.push_back({name, b.base.coalgebra, b.group()});
    }
    int passed = 0, failed = 0;
    for (const Input& in : inputs)
        for (int trial = 0; trial < 50; ++trial) {
            const TwistingCochain t = random_cochain(in.c, in.h, rng);
            const bool mc = check_maurer_cartan(in.c, in.h, t, policy).pass;
            const bool chain = cochain_to_morphism(in.c, in.h, t, ConvolutionMode::assoc, policy).chain_map();
            (mc ? passed : failed)++;
            o.expect(mc == chain, in.name + ": MC " + std::to_string(mc) + " but chain map " + std::to_string(chain));
        }
    o.expect(passed > 0 && failed > 0, "samples did not exercise both outcomes");
    if (o.pass) o.detail = std::to_string(passed) + " MC, " + std::to_string(failed) + " not MC";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"hopf fibration betti (1,0,0,1)", hopf_fibration},
        {"instanton bundle betti of S^7", instanton_bundle},
        {"path spaces are acyclic", path_space},
        {"free loops of S^2 differ from the untwisted product", free_loops_s2},
        {"S^3 conjugation twist is trivial", h_space_s3},
        {"A-infinity relations of every built family", structure_relations},
        {"classical differential and coderivation", brown_reduction},
        {"conjugation equals bracket on primitives", conjugation_is_bracket},
        {"loop product derivation and representative independence", loop_product},
        {"power series connection on CP^2 and S^2", power_series_connection},
        {"L-infinity restriction to primitives", linf_restriction},
        {"Maurer-Cartan iff chain map", mc_morphism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " ["
                  << std::fixed << std::setprecision(2) << secs << "s]";
        if (!o.detail.empty()) std::cout << "  " << o.detail;
        std::cout << "\n";
    }
    return failures == 0 ? 0 : 1;
}
