#pragma once

#include "hptk/transfer.hpp"

namespace hptk {

// A (x) words over a coefficient word index, with the Koszul product
// (a u)(b v) = (-1)^{|u||b|} (ab)(uv) and truncation by the word bounds.
struct ProductAlgebra {
    std::shared_ptr<const AlgebraPresentation> base;
    std::shared_ptr<WordIndex> cwords;
    std::vector<std::string> gen_symbols; // labels of the coefficient generators

    int base_dim() const { return base->space.dim(); }
    int dim() const { return base_dim() * static_cast<int>(cwords->size()); }
    int pair_id(int i, int w) const { return w * base_dim() + i; }
    int pair_sym(int id) const { return id % base_dim(); }
    int pair_word(int id) const { return id / base_dim(); }
    int degree(int id) const {
        return base->space.degree(pair_sym(id)) + cwords->degree(pair_word(id));
    }
    long long weight(int id) const { return cwords->weight(pair_word(id)); }
    std::string label(int id) const;
    SparseVec mul(int a, int b) const;
    GradedSpace pair_space() const;
    AlgebraView view() const;
};

// Coefficientwise extension of an SDR across the word coalgebra generated by
// the dual generators of its small side (degrees 1 - |small|, weight 1 each).
struct TensoredSDR {
    ProductAlgebra big;
    GradedSpace small_pairs;
    std::vector<long long> small_weights;
    SDRData sdr;
};

// gen_source names the graded space whose dual generates the word coalgebra
// (defaults to the small side; pass the suspended small space for shift--1
// brackets so the generators get degrees 2 - |h|).
TensoredSDR tensor_sdr(const SDRData& base, std::shared_ptr<const AlgebraPresentation> p,
                       Flavor flavor, int bound, const GradedSpace* gen_source = nullptr);

// Word-side derivation extension on the pair space:
// e_i (x) w -> (-1)^{|e_i|} e_i (x) partial(w).
GradedMap word_operator(const ProductAlgebra& alg, const GeneratorDerivation& partial);

// ad_omega on the pair space: b (x) v -> sum_u (-1)^{|u|(|b|+shift)}
// [coef_u, b] (x) (u v), with the bracket and shift taken from the base
// presentation.
GradedMap adjoint_operator(const ProductAlgebra& alg, const Series& omega,
                           const WordIndex& omega_words);

// Degree-1 product derivation and square-zero checks for a candidate
// initiator; every failure carries the witness pair.
StructureReport verify_initiator(const ProductAlgebra& alg, const GradedMap& d_big,
                                 const GradedMap& t);

struct BPLState {
    std::vector<GradedMap> stage_t;       // t_1, t_2, ... until they vanish
    std::vector<GradedMap> stage_d_small; // d_small + f Sigma_k nabla
    SDRData output;                       // perturbed SDR with D_M and d + t
    StructureReport verification;         // SDR laws for the output + squares
};

// Basic perturbation lemma: t_{k+1} = (t phi)^k t, Sigma = sum t_k,
// nabla' = (1 + phi Sigma) nabla, f' = f (1 + Sigma phi),
// phi' = phi (1 + Sigma phi), D_M = d_M + f Sigma nabla. The initiator must
// raise the word-length filtration so the stages vanish.
BPLState run_bpl(const SDRData& sdr, const GradedMap& t);

struct DeformDga {
    TransferRun stage1; // partial^a
    TensoredSDR tensored;
    GradedMap initiator;
    BPLState bpl;
    TransferContext ctx2;
    TransferResult stage2; // partial^{aa}
    StructureReport flatness2;
    IdentityCheck stasheff2;
};

DeformDga deform_dga(const AlgebraPresentation& p, const Splitting& s, int word_bound,
                     int stage2_bound);

struct DeformPoissonGerstenhaber {
    TransferRun product_run; // partial^a
    TransferRun lie_run;     // (partial^L, omega^L)
    TensoredSDR tensored;
    GradedMap initiator;
    StructureReport initiator_report;
    BPLState bpl;
    TransferContext ctx2;
    TransferResult stage2; // partial^{aL}
    StructureReport flatness2;
    IdentityCheck stasheff2;
};

// include_adjoint selects the initiator partial^L + ad_{omega^L} (default) or
// partial^L alone.
DeformPoissonGerstenhaber deform_poisson_gerstenhaber(const AlgebraPresentation& p,
                                                      const Splitting& s, int tensor_bound,
                                                      int sym_bound, bool include_adjoint);

// True when the empty-coefficient-word sector of the stage-2 derivation
// reproduces the stage-1 derivation exactly (the zero-bracket degeneration).
// strict additionally requires that images of empty-sector generators never
// leave the empty sector.
bool empty_sector_matches(const TransferResult& stage2, const TransferResult& stage1,
                          int small_dim, bool strict);

} // namespace hptk
