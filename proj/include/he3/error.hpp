#pragma once

#include <stdexcept>
#include <string>

namespace he3 {

// Error with a stable machine-readable code (used by the CLI for
// "code=<name> msg=<text>" reporting on stderr).
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

}  // namespace he3
