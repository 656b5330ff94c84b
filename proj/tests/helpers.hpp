#pragma once

#include "hptk/corpus.hpp"
#include "hptk/document.hpp"

#include <string>

// Test fixtures for the shipped models.
inline hptk::AlgebraDocument load_model(const std::string& name) {
    return hptk::parse_document(hptk::corpus_document(name));
}

inline hptk::AlgebraPresentation model(const std::string& name) {
    return load_model(name).presentation;
}
