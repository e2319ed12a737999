/*
Copyright 2026 The svxinpaint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef SVX_ERROR_HPP_
#define SVX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace svx {

// Failure categories. The CLI maps them onto its exit codes.
enum class ErrorKind {
  kIo,          // missing or unwritable file
  kFormat,      // malformed input file
  kConstraint,  // valid input that violates a precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::kIo, message) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message)
      : Error(ErrorKind::kFormat, message) {}
};

class ConstraintError : public Error {
 public:
  explicit ConstraintError(const std::string& message)
      : Error(ErrorKind::kConstraint, message) {}
};

const char* to_string(ErrorKind kind);

}  // namespace svx

#endif  // SVX_ERROR_HPP_
