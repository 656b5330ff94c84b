#pragma once

#include "hptk/presentation.hpp"
#include "hptk/validators.hpp"

namespace hptk {

// A = H (+) dM (+) M with H inside ker d, d injective on M. Q(a) is the M
// component x1 of a = a^H + d x1 + x2; phi = -Q below.
struct Splitting {
    GradedSpace h_space;                 // labeled by representative leading symbol
    std::vector<SparseVec> harmonic;     // representatives in A coordinates (echelon)
    std::vector<SparseVec> complement;   // basis of M in A coordinates
    GradedMap homotopy;                  // Q : A -> A, degree -1
    GradedMap projector;                 // a -> a^H, in A coordinates
    GradedMap include_h;                 // H coords -> A
    GradedMap project_h;                 // A -> H coords
};

// Per-degree rational Gram matrices; `monomial_orthonormal` means identity in
// every degree. Explicit matrices are indexed by the basis order restricted
// to each degree.
struct GramSpec {
    bool monomial_orthonormal = true;
    std::map<int, std::vector<std::vector<Rational>>> matrices;
};

struct HodgeData {
    GradedMap adjoint;   // d*, degree -1
    GradedMap laplacian; // dd* + d*d
    GradedMap green;     // G, zero on harmonics, inverse of laplacian elsewhere
};

// Deterministic echelon-based splitting: H = echelon complement of im d in
// ker d, M = span of the pivot columns of d. Fails fast when d^2 != 0.
Splitting compute_splitting(const AlgebraPresentation& p);

// Hodge-style splitting: d* is the Gram adjoint, H = ker(dd* + d*d),
// M = im d*, Q = d* G. Rejects non-positive-definite Gram matrices with the
// failing principal minor.
std::pair<Splitting, HodgeData> hodge_splitting(const AlgebraPresentation& p, const GramSpec& gram);

struct SDRData {
    GradedSpace small_space;
    GradedSpace big_space;
    GradedMap d_small;
    GradedMap d_big;
    GradedMap nabla; // small -> big
    GradedMap f;     // big -> small
    GradedMap phi;   // big -> big, degree -1
};

// nabla = inclusion, f = projection, phi = -Q, d_small = 0. The side
// conditions hold by construction for splitting-derived data.
SDRData make_sdr(const Splitting& s, const AlgebraPresentation& p);

// Checks f nabla = id, nabla f = id + d phi + phi d, both chain-map
// properties and the three side conditions; witnesses on failure.
StructureReport verify_sdr(const SDRData& sdr);

} // namespace hptk
