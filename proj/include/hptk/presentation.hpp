#pragma once

#include "hptk/graded.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hptk {

// Bracket structure constants. shift 0: Lie bracket of degree 0 on A.
// shift -1: Lie bracket on the suspension, degree -1 on A; every sign rule
// reads the shift.
struct BracketTable {
    int shift = 0;
    std::map<std::pair<int, int>, SparseVec> entries;

    SparseVec at(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? SparseVec{} : it->second;
    }
};

// Fully expanded presentation of a graded algebra with optional differential,
// bracket and odd square-zero operator.
struct AlgebraPresentation {
    std::string name;
    GradedSpace space;
    std::optional<int> unit;
    std::map<std::pair<int, int>, SparseVec> product;
    std::optional<GradedMap> differential; // degree +1
    std::optional<BracketTable> bracket;
    std::optional<GradedMap> bv_operator;

    SparseVec mul(int i, int j) const {
        auto it = product.find({i, j});
        return it == product.end() ? SparseVec{} : it->second;
    }
    SparseVec mul(const SparseVec& a, const SparseVec& b) const;
    SparseVec diff(const SparseVec& a) const;
    SparseVec bracket_at(int i, int j) const { return bracket ? bracket->at(i, j) : SparseVec{}; }
    SparseVec bracket_of(const SparseVec& a, const SparseVec& b) const;
    SparseVec bv(const SparseVec& a) const;

    // Structural checks: degree-additive product, degree-+1 differential,
    // shift-consistent bracket, homogeneous bv operator.
    void validate_structure() const;
};

struct LawResult {
    std::string law;
    bool pass = true;
    std::vector<std::string> witness; // symbols of the offending tuple
    SparseVec defect;                 // nonzero defect vector on failure
};

struct StructureReport {
    std::vector<LawResult> laws;

    bool all_pass() const {
        for (const auto& l : laws)
            if (!l.pass) return false;
        return true;
    }
    const LawResult* first_failure() const {
        for (const auto& l : laws)
            if (!l.pass) return &l;
        return nullptr;
    }
};

std::string format_element(const GradedSpace& space, const SparseVec& v);

} // namespace hptk
