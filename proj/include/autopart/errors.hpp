// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace autopart {

enum class ErrorKind {
  SyntaxError,
  SchemaError,
  DuplicateId,
  DanglingLinkEndpoint,
  SelfLoopLink,
  DuplicateLink,
  EmptyEcuSet,
  DanglingEdgeEndpoint,
  SelfLoopEdge,
  DuplicateEdge,
  NoRouteExists,
  IncompleteMapping,
  UnknownId,
  InstanceTooLarge,
  NoCompatibleTemplate,
  InfeasibleSynthesis,
  IoError,
};

const char* to_string(ErrorKind kind);

/// Every failure in the toolkit surfaces as an Error. `kind` is the machine-
/// readable class, `subject` names the offending element (an id, a JSON field
/// path, a file name), and what() carries the full human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string subject, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        subject_(std::move(subject)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

}  // namespace autopart
