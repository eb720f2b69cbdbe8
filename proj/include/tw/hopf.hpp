#pragma once

#include <string>
#include <vector>

#include "tw/free.hpp"
#include "tw/graded.hpp"

namespace tw {

/**
 * Connected graded Hopf algebra generated by primitive letters: either the tensor algebra T(V)
 * with a differential given on generators, or the exterior algebra on odd generators.
 * Elements are Vecs of basis words; exterior basis words are strictly increasing.
 */
class HopfAlgebra {
public:
    HopfAlgebra() = default;

    static HopfAlgebra tensor(std::vector<std::string> names, std::vector<int> deg, std::vector<Vec> d_gen = {});
    static HopfAlgebra exterior(std::vector<std::string> names, std::vector<int> deg);

    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& deg() const { return deg_; }
    bool is_exterior() const { return exterior_; }
    int generators() const { return static_cast<int>(deg_.size()); }
    const std::vector<Vec>& differential_on_generators() const { return d_gen_; }
    bool has_differential() const;

    int degree(const Word& w) const { return word_degree(w, deg_); }
    Vec normalize(const Vec& v) const;
    Vec mul(const Vec& u, const Vec& v) const;
    Vec bracket(const Vec& u, const Vec& v) const;
    SplitVec coproduct(const Vec& v) const;
    Vec antipode(const Vec& v) const;
    Vec d(const Vec& v) const;
    bool is_primitive(const Vec& v) const;

    /** Basis words of the given degree with at most max_length letters. */
    std::vector<Word> basis_of_degree(int degree, int max_length) const;

    /** Returns a description of the first failure of d^2 = 0 or primitivity of d on generators, or "". */
    std::string check_differential(const TruncationPolicy& policy) const;

    std::string format(const Word& w) const;
    std::string format(const Vec& v) const;

private:
    std::vector<std::string> names_;
    std::vector<int> deg_;
    bool exterior_ = false;
    std::vector<Vec> d_gen_;
};

enum class ActionKind { left_mult, bracket, conjugation };

std::string to_string(ActionKind k);
ActionKind parse_action(const std::string& s);

/** a acting on x: a·x, [a,x] = ax - (-1)^{|a||x|}xa, or sum a(1) x s(a(2)) with its Koszul sign. */
Vec hopf_action(const HopfAlgebra& h, ActionKind kind, const Vec& a, const Vec& x);

std::string format_rational(const Q& q);

}  // namespace tw
