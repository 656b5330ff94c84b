#pragma once

#include "hptk/presentation.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace hptk {

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

// Machine-readable certificate: one canonical structured-text stream, built
// line by line in a fixed order so reruns are byte-identical.
class Certificate {
public:
    void header(const std::string& command, const std::string& input_name,
                const std::string& input_digest);
    void param(const std::string& key, const std::string& value);
    void param(const std::string& key, long long value);
    void check(const std::string& name, bool pass);
    void report(const std::string& prefix, const StructureReport& rep, const GradedSpace& space);
    void line(const std::string& text);
    void table(const std::string& kind, const std::string& key, const std::string& value);

    bool all_pass() const { return all_pass_; }
    std::string text() const;

private:
    std::vector<std::string> lines_;
    bool all_pass_ = true;
};

} // namespace hptk
