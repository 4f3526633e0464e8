#pragma once

#include <stdexcept>
#include <string>

namespace sextic {

/// Precondition or input violation (bad lattice, wrong basis, index range...).
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal identity that must hold by theory failed; signals a bug.
class consistency_error : public std::runtime_error {
  public:
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search ran out of budget before finishing.
class budget_exhausted : public std::runtime_error {
  public:
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed external input (CLI grammar, JSON schema).
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sextic
