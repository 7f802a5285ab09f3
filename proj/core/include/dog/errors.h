// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOG_ERRORS_H_
#define DOG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dog {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown ids, out-of-range endpoints, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine was asked to run above its size guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A call sequence contract was broken (double broadcast, double feed, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A value that the math guarantees was observed out of range.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace dog

#endif  // DOG_ERRORS_H_
