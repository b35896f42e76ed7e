// Copyright 2026 The pacfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PACFAIR_ERROR_HPP_
#define PACFAIR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace pacfair {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: wrong field count, unparsable number, unseen level.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A precondition on arguments or configuration does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The audit cannot produce a meaningful report (e.g. fewer than two
// feasible subgroups).
class AuditAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace pacfair

#endif  // PACFAIR_ERROR_HPP_
