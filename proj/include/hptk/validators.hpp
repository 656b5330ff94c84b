#pragma once

#include "hptk/presentation.hpp"
#include "hptk/solve.hpp"

namespace hptk {

// Law validators. Laws are checked on all basis tuples (enough by
// multilinearity); a failing law always carries a concrete witness tuple and
// the nonzero defect vector.
StructureReport check_dga(const AlgebraPresentation& p);
StructureReport check_dgla(const AlgebraPresentation& p);
StructureReport check_poisson(const AlgebraPresentation& p);
StructureReport check_gerstenhaber(const AlgebraPresentation& p);
StructureReport check_gbv(const AlgebraPresentation& p);

// [a . b] = (-1)^{|a|} (D(ab) - (Da)b - (-1)^{|a|} a(Db)) entrywise; the
// resulting bracket carries shift -1. Fails fast if D^2 != 0.
BracketTable bracket_from_delta(const AlgebraPresentation& p);

// b -> [a, b] (or [a . b]); degree |a| for shift 0, |a|-1 for shift -1.
GradedMap adjoint_action(const AlgebraPresentation& p, const SparseVec& a);

struct CohomologyData {
    std::vector<int> degrees_present;                 // sorted degrees with any basis element
    std::map<int, int> betti;                         // degree -> dim H
    GradedSpace h_space;                              // labeled by representative leading symbol
    std::vector<SparseVec> representatives;           // in A coordinates, echelon-reduced
    std::map<std::pair<int, int>, SparseVec> product; // induced product in H coordinates

    // Express a closed element in H coordinates (nullopt if not closed).
    std::optional<SparseVec> to_h(const AlgebraPresentation& p, const SparseVec& v) const;
};

CohomologyData cohomology(const AlgebraPresentation& p);
// Same computation against a caller-supplied representative set (used to
// assert representative independence of the induced product).
CohomologyData cohomology_with_representatives(const AlgebraPresentation& p,
                                               const std::vector<SparseVec>& reps);

} // namespace hptk
