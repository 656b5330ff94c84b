#pragma once

#include "hptk/coalgebra.hpp"
#include "hptk/splitting.hpp"

#include <functional>

namespace hptk {

// Duck-typed view of a graded algebra (or graded Lie algebra) used by the
// transfer engine; mul2 is the bilinear operation feeding the curvature.
struct AlgebraView {
    int dim = 0;
    std::vector<int> degrees;
    std::vector<long long> weights; // filtration weights, all zero for plain algebras
    std::vector<std::string> labels;
    std::function<SparseVec(int, int)> mul2;
    Rational curvature_factor = 1;                     // 1 for products, 1/2 for brackets
    std::shared_ptr<const AlgebraPresentation> owned;  // keepalive for captured presentations
};

AlgebraView view_of(std::shared_ptr<const AlgebraPresentation> p);         // product view
AlgebraView bracket_view_of(std::shared_ptr<const AlgebraPresentation> p); // bracket view, 1/2 factor

// Everything the induction needs: the big complex with its differential and
// SDR maps onto the small side. For splitting-derived data d_small = 0 and
// the step obstruction is checked to be d-closed.
struct TransferContext {
    AlgebraView A;
    GradedMap d_big;
    GradedMap nabla;   // small -> big
    GradedMap f;       // big -> small
    GradedMap phi;     // big -> big, degree -1
    GradedMap d_small; // small -> small
    GradedSpace small_space;
    std::vector<long long> small_weights;
    long long weight_cap = -1; // -1: no filtration truncation
    Flavor flavor = Flavor::Tensor;
    bool splitting_derived = true;
};

TransferContext context_from_sdr(const SDRData& sdr, const AlgebraView& view, Flavor flavor);

// Element of A (x) words: word-id -> coefficient vector over A indices.
struct Series {
    std::map<int, SparseVec> coef;

    bool empty() const;
    SparseVec at(int word) const {
        auto it = coef.find(word);
        return it == coef.end() ? SparseVec{} : it->second;
    }
};

struct TransferResult {
    Flavor flavor = Flavor::Tensor;
    int truncation = 0;
    GradedSpace small_space;
    std::shared_ptr<WordIndex> words; // words over the dual generators
    std::vector<int> gen_degrees;     // 1 - small degree
    Series omega;
    GeneratorDerivation partial;      // images of the dual generators
};

// A finished run together with the context needed to re-verify it.
struct TransferRun {
    TransferContext ctx;
    TransferResult result;
};

// The inductive construction: omega_[1] = sum nabla(g) X^g, then length by
// length omega += phi(Gamma) and the generator images absorb -f(Gamma), where
// Gamma is the word-length component of the curvature
// partial(omega) + d(omega) + factor * omega * omega. Iterated to a fixpoint
// within each length when the small differential is nonzero.
TransferResult chen_transfer(const TransferContext& ctx, int truncation);

// DGA front end over a cohomological splitting.
TransferRun chen_transfer(const AlgebraPresentation& p, const Splitting& s, int truncation);
// DGLA front end (symmetric words, curvature with the 1/2 factor). For a
// shift--1 bracket the presentation and splitting are suspended first.
TransferRun hain_transfer(const AlgebraPresentation& p, const Splitting& s, int truncation);

// Independent re-evaluation: connection normalization, flatness at every
// stored length, partial^2 = 0 modulo the truncation ideal.
StructureReport verify_flatness(const TransferContext& ctx, const TransferResult& r);

// Transferred structure maps through dualize and the sign dictionary.
AInftyStructure extract_ainfty(const TransferResult& r);
LInftyStructure extract_linfty(const TransferResult& r);

struct TwistingCochain {
    std::shared_ptr<WordIndex> words;
    std::map<int, SparseVec> tau; // word-id -> element of A
};

// tau read off the connection coefficients through the pairing (normalized so
// that the identity below holds); verification of tau b + d tau = tau cup tau
// on every word up to the truncation, with b = dualize(partial).
std::pair<TwistingCochain, StructureReport> twisting_cochain(const AlgebraPresentation& p,
                                                             const TransferResult& r);

// Degree of the bracket read from its entries (-1 when the bracket is zero).
int bracket_degree(const AlgebraPresentation& p);

// Shifted copy used for shift--1 brackets: all degrees moved by the bracket's
// own degree so the bracket becomes degree 0; same structure constants.
AlgebraPresentation suspend_presentation(const AlgebraPresentation& p, int amount);
Splitting suspend_splitting(const Splitting& s, int amount);

} // namespace hptk
