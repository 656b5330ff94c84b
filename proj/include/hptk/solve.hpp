#pragma once

#include "hptk/graded.hpp"

#include <optional>
#include <vector>

namespace hptk {

// Exact Gaussian elimination over Q with deterministic pivoting (first
// nonzero column, then smallest row index). Kernel and image bases come out
// in reduced echelon form, so every output depends only on basis order.
class ExactSolver {
public:
    // columns[j] is the image of source basis vector j; rows = target dim.
    ExactSolver(int rows, std::vector<SparseVec> columns);

    int rank() const { return rank_; }
    // Reduced echelon basis of the kernel in source coordinates.
    const std::vector<SparseVec>& kernel_basis() const { return kernel_; }
    // Reduced echelon basis of the image in target coordinates.
    const std::vector<SparseVec>& image_basis() const { return image_; }
    // Source indices whose columns were chosen as pivots; they span a
    // complement of the kernel.
    const std::vector<int>& pivot_columns() const { return pivot_cols_; }
    // One exact preimage of target, or nullopt when target is not in the image.
    std::optional<SparseVec> preimage(const SparseVec& target) const;
    bool in_image(const SparseVec& target) const { return preimage(target).has_value(); }

private:
    int rows_ = 0;
    int cols_ = 0;
    int rank_ = 0;
    std::vector<SparseVec> kernel_;
    std::vector<SparseVec> image_;
    std::vector<int> pivot_cols_;
    // Row-reduced augmented system used for preimages: R = E * original,
    // where E records the elimination operations.
    std::vector<std::vector<Rational>> reduced_;   // rank_ rows of length cols_
    std::vector<std::vector<Rational>> elim_;      // rank_ rows of length rows_
    std::vector<int> pivot_col_of_row_;
    std::vector<std::vector<Rational>> zero_elim_; // elimination rows with zero reduced part
};

// Reduce a family of vectors modulo a reduced-echelon family, returning the
// reduced-echelon basis of the quotient complement (deterministic).
std::vector<SparseVec> echelon_complement(const std::vector<SparseVec>& family,
                                          const std::vector<SparseVec>& modulo);

// Reduced echelon form of the span of the given vectors.
std::vector<SparseVec> echelon_basis(const std::vector<SparseVec>& family);

} // namespace hptk
