#ifndef IMCA_ERROR_HPP
#define IMCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace imca {

// Error kinds mirror the CLI exit codes (parse 2, validation 3,
// verification 4, budget 5).
enum class ErrKind {
  Internal = 1,
  Parse = 2,
  Validation = 3,
  Verification = 4,
  Budget = 5,
  InvalidArgument = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace imca

#endif
