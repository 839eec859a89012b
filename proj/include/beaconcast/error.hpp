// Copyright 2026 The beaconcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace beaconcast {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidMessage,
  kMessageTooLarge,
  kTruncatedField,
  kOversizeField,
  kUnknownTag,
  kInconsistentTag,
  kConflictingTotal,
  kParse,
  kSchema,
  kUndefinedMetric,
  kIo,
  kCaptureFormat,
  kNotFound,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the core carries one of the codes above; the C API
// maps them one-to-one onto bc_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// One offending field, addressed by JSON pointer ("/aps/0/channel/loss_p").
struct Diagnostic {
  std::string path;
  std::string message;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace beaconcast
