#pragma once

#include <string>
#include <vector>

namespace hptk {

// The five shipped models, embedded verbatim; corpus/*.alg carries the same
// bytes for direct CLI use.
std::vector<std::string> corpus_names();
std::string corpus_document(const std::string& name);

} // namespace hptk
