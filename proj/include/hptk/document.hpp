#pragma once

#include "hptk/presentation.hpp"
#include "hptk/splitting.hpp"

#include <string>

namespace hptk {

// Parsed algebra document: a fully expanded presentation plus the inner
// product specification. The text grammar is line-oriented and strict; see
// docs/schema-algebra.txt.
struct AlgebraDocument {
    AlgebraPresentation presentation;
    GramSpec gram;
};

// Parses and validates; throws Error(ParseOrUsage) with positioned messages.
AlgebraDocument parse_document(const std::string& text);

// Canonical serialization: sorted entries, lowest-term coefficients, fixed
// section order. parse(serialize(parse(text))) is byte-identical.
std::string serialize_document(const AlgebraDocument& doc);

} // namespace hptk
