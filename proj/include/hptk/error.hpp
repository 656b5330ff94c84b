#pragma once

#include <stdexcept>
#include <string>

namespace hptk {

// Exit-code categories used by the CLI: 1 structure invalid, 2 verification
// failure, 3 parse/usage error. Internal contract violations also map to 2.
enum class ErrorKind { StructureInvalid = 1, VerificationFailed = 2, ParseOrUsage = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& msg) { throw Error(ErrorKind::ParseOrUsage, msg); }
[[noreturn]] inline void fail_structure(const std::string& msg) { throw Error(ErrorKind::StructureInvalid, msg); }
[[noreturn]] inline void fail_verify(const std::string& msg) { throw Error(ErrorKind::VerificationFailed, msg); }

} // namespace hptk
