#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tw/hopf.hpp"
#include "tw/structures.hpp"
#include "tw/twisting.hpp"

namespace tw {

/** A basis element x (x) h of C (x) H: x indexes the basis of C, h is a basis word of H. */
using TensorLetter = std::pair<int, Word>;

struct TwistedState;

/**
 * A family on C (x) H. Letters are the basis elements x (x) h within a finite window that is large
 * enough for every evaluation the policy requires; lookups outside it throw.
 */
class TwistedFamily {
public:
    std::shared_ptr<const FiniteCoalgebra> c;
    std::shared_ptr<const HopfAlgebra> h;
    TwistingCochain tau;
    ActionKind action = ActionKind::left_mult;
    TruncationPolicy policy;
    StructureFamily family;
    /** Pairing degree for algebra kind; C is regraded by -pairing_degree. */
    int pairing_degree = 0;

    bool is_algebra() const { return !family.is_coalgebra(); }
    int size() const { return family.size(); }
    const TensorLetter& letter(int i) const;
    int index(int x, const Word& hw) const;
    std::optional<int> find(int x, const Word& hw) const;
    /** Degree of x (x) h before shifting (C regraded for algebras). */
    int degree(int i) const;
    /** Letters with |x|+|h| <= max_weight and at most max_length letters in h. */
    std::vector<int> basis(int max_weight, int max_length) const;

    /** The differential d_tau on x (x) h, unshifted. */
    Vec differential(int i) const;
    /** Algebra kind: the unshifted product m_2(X, Y). */
    Vec unshifted_product(int i, int j) const;

    std::string name(int i) const;
    std::string format(const Vec& v) const;

    std::shared_ptr<TwistedState> state;
};

/** Arity n pairs c_n with the iterated coproduct of H; no twisting. */
TwistedFamily untwisted_tensor_coalgebra(const FiniteCoalgebra& c, const HopfAlgebra& h,
                                         const TruncationPolicy& policy);

/**
 * D(x (x) h) over the terms w_1..w_n of c~_n(x): the last n-k legs are sent through tau, bracketed
 * with nested_bracket, and act on h; the first k legs share the iterated coproduct of the result.
 * Requires tau to satisfy the Maurer-Cartan equation and to have primitive values.
 */
TwistedFamily build_twisted_coalgebra(const FiniteCoalgebra& c, const HopfAlgebra& h, const TwistingCochain& tau,
                                      ActionKind action, const TruncationPolicy& policy);

/**
 * The algebra on C (x) H with C carrying pair_to_algebra(c, p): m_1 is the twisted differential of
 * the coalgebra built with the same action, m_n = m_n^C (x) (n-fold product of H).
 */
TwistedFamily build_twisted_algebra(const FiniteCoalgebra& c, const Pairing& p, const HopfAlgebra& h,
                                    const TwistingCochain& tau, ActionKind action, const TruncationPolicy& policy);

/** d(XY) - (dX)Y - (-1)^{|X|} X(dY) on pairs of letters within the policy (total H length <= max_length). */
std::vector<Defect> derivation_defects(const TwistedFamily& f, const TruncationPolicy& policy);

struct LinfRestriction {
    StructureFamily linf;
    /** Inputs (letters expanded from primitive legs) whose bracket has a non-primitive H leg. */
    std::vector<Defect> closure_defects;
    std::size_t checked = 0;
    bool ok() const { return closure_defects.empty(); }
};

/**
 * Symmetrizes the algebra and evaluates l~_n on tuples x_1 (x) p_1, ..., x_n (x) p_n with p_i from
 * the Lie basis of Prim(H), total H length at most policy.max_length and |x_i|+|p_i| <= max_degree.
 */
LinfRestriction restrict_linf_to_primitives(const TwistedFamily& f, const TruncationPolicy& policy);

/** Basis of the primitives of H with at most max_length letters and degree at most max_degree. */
std::vector<Vec> primitive_basis(const HopfAlgebra& h, const TruncationPolicy& policy);

}  // namespace tw
