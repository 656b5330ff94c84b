#pragma once

#include "hptk/certificate.hpp"
#include "hptk/document.hpp"
#include "hptk/perturb.hpp"

#include <string>

namespace hptk {

// Exit-code contract: 0 success, 1 structure invalid, 2 verification
// failure, 3 parse/usage error.
struct DriverResult {
    int exit_code = 0;
    std::string certificate;
};

DriverResult run_validate(const std::string& document_text);
DriverResult run_cohomology(const std::string& document_text);
DriverResult run_transfer(const std::string& document_text, int arity, const std::string& mode,
                          const std::string& splitting_kind);
DriverResult run_deform(const std::string& document_text, int word_bound, int sym_bound,
                        const std::string& initiator);
DriverResult run_massey(const std::string& document_text, const std::string& x,
                        const std::string& y, const std::string& z);

// Validators chosen by the declared structure (poisson/gerstenhaber when a
// bracket is present, plain DGA otherwise, GBV when a bv operator exists).
StructureReport validate_presentation(const AlgebraPresentation& p);

std::string word_text(const WordIndex& words, const GradedSpace& small_space, int id);

} // namespace hptk
