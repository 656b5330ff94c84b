#pragma once

#include "hptk/presentation.hpp"
#include "hptk/words.hpp"

#include <memory>

namespace hptk {

// Coderivation on the tensor (or free cocommutative) coalgebra of a graded
// space W, determined by its corestrictions L_[n] : n-words -> W. L_[0] = 0.
struct Coderivation {
    Flavor flavor = Flavor::Tensor;
    std::vector<int> w_degrees; // degrees of W
    int degree = 1;
    int arity_bound = 0;
    std::shared_ptr<WordIndex> words; // words over W up to arity_bound
    // corestrictions[k][word-id] -> value in W; word ids live in `words`
    std::map<int, std::map<int, SparseVec>> L;

    // Value of L_[k] on an arbitrary factor tuple (canonicalized with sign).
    SparseVec corestriction(const std::vector<int>& factors) const;
};

// Unique coderivation extension evaluated on one word: word-id -> coefficient.
std::map<int, Rational> extend_coderivation(const Coderivation& c, int word_id);

// Square of an odd coderivation: corestrictions computed both by the closed
// corestriction formula and by composing extensions; the two are asserted
// equal (aborts with the mismatching word otherwise).
Coderivation coderivation_square(const Coderivation& c);

// A-infinity structure: maps m_n of degree 2-n keyed by ordered index words
// over the underlying space.
struct AInftyStructure {
    GradedSpace space;
    int arity_bound = 0;
    std::shared_ptr<WordIndex> vwords; // tensor words over the space
    std::map<int, std::map<int, SparseVec>> maps; // arity -> word-id -> value

    SparseVec value(int arity, const std::vector<int>& factors) const;
};

// L-infinity structure: graded anti-symmetric maps l_n stored on canonical
// words (sorted by index; zero on a repeated factor of even degree).
struct LInftyStructure {
    GradedSpace space;
    int arity_bound = 0;
    std::shared_ptr<WordIndex> swords; // symmetric words in shifted degrees
    std::map<int, std::map<int, SparseVec>> maps;

    // Evaluation on an arbitrary tuple: sort with the anti-symmetry sign
    // sgn(sigma) * Koszul(sigma, |v|).
    SparseVec value(int arity, const std::vector<int>& factors) const;
};

// b_[k](s^-1 v_1, ..., s^-1 v_k) = (-1)^{sum_j (k-j)|v_j|} s^-1 m_k(v_1..v_k),
// a degree-1 coderivation on the cotensor coalgebra of the desuspension.
Coderivation ainfty_to_codifferential(const AInftyStructure& m);
Coderivation linfty_to_codifferential(const LInftyStructure& l);

// Generator-determined derivation on the dual side: images of the dual
// generators as words, graded by word length.
struct GeneratorDerivation {
    Flavor flavor = Flavor::Tensor;
    std::vector<int> gen_degrees; // degrees of the dual generators
    int degree = 1;
    std::shared_ptr<WordIndex> words; // words over the dual generators
    std::vector<std::map<int, Rational>> images; // per generator: word-id -> coeff

    bool image_is_zero() const;
};

// Derivation <-> coderivation transport across the pairing. Word indices are
// shared (dual generator i pairs with desuspended basis element i); the
// transported coefficient carries (-1)^{|Y|} * (-1)^{sum_{r<t} d_r d_t} and,
// for symmetric words, the matching multiplicity.
Coderivation dualize(const GeneratorDerivation& d);
GeneratorDerivation dualize_back(const Coderivation& b, int gen_count);

struct IdentityCheck {
    StructureReport report;      // one law result per arity
    bool routes_agree = true;    // direct identity vs codifferential square
};

// Stasheff identities up to the arity bound, checked both directly and via
// b^2 = 0 through the dictionary; the per-word zero patterns must agree.
IdentityCheck check_stasheff(const AInftyStructure& m);
// Generalized Jacobi identities with the sign sgn(sigma) * Koszul(sigma,|v|)
// * (-1)^{s(r-1)}, cross-checked against c^2 = 0.
IdentityCheck check_linfty(const LInftyStructure& l);

// Pairing sign of a word against its diagonal dual: (-1)^{sum_{r<t} d_r d_t}.
int diagonal_pairing_sign(const std::vector<int>& factors, const std::vector<int>& degrees);

} // namespace hptk
