#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ckn {

/// Runtime error carrying a stable machine-readable code such as
/// "Subcritical", "NonConvergence" or "DuplicateOrZero".
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

}  // namespace ckn
