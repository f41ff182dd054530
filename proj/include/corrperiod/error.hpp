/* Copyright 2026 The corrperiod Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CORRPERIOD_ERROR_HPP_
#define CORRPERIOD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corrperiod {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Zero variance, or every sample rejected.
class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

class InsufficientPairsError : public Error {
 public:
  using Error::Error;
};

// No candidate period survived inside the search band.
class EmptyReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace corrperiod

#endif  // CORRPERIOD_ERROR_HPP_
