#pragma once

#include "hptk/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace hptk {

// Sparse vector over a fixed basis: index -> nonzero coefficient.
// std::map keys keep every iteration order deterministic.
using SparseVec = std::map<int, Rational>;

void add_scaled(SparseVec& dst, const SparseVec& src, const Rational& c);
SparseVec scaled(const SparseVec& v, const Rational& c);
bool is_zero(const SparseVec& v);
Rational coeff(const SparseVec& v, int i);

struct BasisElement {
    std::string symbol;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

// Finite-dimensional Z-graded space with an ordered, named basis.
struct GradedSpace {
    std::vector<BasisElement> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    int degree(int i) const { return basis[i].degree; }
    const std::string& symbol(int i) const { return basis[i].symbol; }
    // -1 when the symbol is not declared.
    int index_of(const std::string& symbol) const;
    std::vector<int> indices_of_degree(int n) const;
    std::vector<int> degrees() const;
    bool operator==(const GradedSpace&) const = default;
};

// (-1)^{(sum left)(sum right)} for moving the left block past the right block.
int koszul_sign(const std::vector<int>& left_degrees, const std::vector<int>& right_degrees);
inline int koszul_sign(int left_degree_sum, int right_degree_sum) {
    return ((left_degree_sum % 2) != 0 && (right_degree_sum % 2) != 0) ? -1 : 1;
}

// Degree shift: amount +1 lowers every degree by one ({1,1,2} -> {0,0,1}),
// amount -1 raises. shift(shift(V,+1),-1) = V.
GradedSpace shift(const GradedSpace& space, int amount);

// Dual space: symbols suffixed with "^t", degrees negated.
GradedSpace dual(const GradedSpace& space);

// Degree-homogeneous linear map between graded spaces, stored column-sparse.
// Column j is the image of source basis element j.
struct GradedMap {
    std::vector<int> src_degrees;
    std::vector<int> tgt_degrees;
    int degree = 0;
    std::map<int, SparseVec> cols;

    SparseVec apply(const SparseVec& v) const;
    SparseVec column(int j) const;
    void set(int j, int i, const Rational& c); // entry target-i, source-j
    bool operator==(const GradedMap&) const = default;
};

GradedMap zero_map(const GradedSpace& src, const GradedSpace& tgt, int degree);
GradedMap identity_map(const GradedSpace& space);
// compose(f, g) = f after g.
GradedMap compose(const GradedMap& f, const GradedMap& g);
GradedMap add(const GradedMap& f, const GradedMap& g);
GradedMap scale(const GradedMap& f, const Rational& c);
bool map_is_zero(const GradedMap& f);
// Every entry must connect degree n to degree n + map degree.
bool degree_consistent(const GradedMap& f);

} // namespace hptk
