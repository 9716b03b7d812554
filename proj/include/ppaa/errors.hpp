#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ppaa {

/// 1-based position of a parsed construct.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
  std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

/// Anything wrong with the user's program or query text.
class InputError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Validation, ReservedSymbol, Grounding, Query };

  InputError(Kind kind, const std::string& what, std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(span ? span->str() + ": " + what : what), kind_(kind), span_(span) {}

  Kind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  Kind kind_;
  std::optional<SourceSpan> span_;
};

/// A configured resource cap refused the computation.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::string cap, std::size_t limit, std::size_t requested)
      : std::runtime_error(cap + " cap exceeded: " + std::to_string(requested) + " > " +
                           std::to_string(limit)),
        cap_(std::move(cap)),
        limit_(limit),
        requested_(requested) {}

  const std::string& cap() const { return cap_; }
  std::size_t limit() const { return limit_; }
  std::size_t requested() const { return requested_; }

 private:
  std::string cap_;
  std::size_t limit_;
  std::size_t requested_;
};

}  // namespace ppaa
