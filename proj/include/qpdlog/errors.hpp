/*
 * Copyright 2026 The qpdlog Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qpdlog {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range caller input (composite p, bad encodings, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Division by zero, level mismatch and similar arithmetic contract breaches.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A search ran out of its configured budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// A stored object failed re-validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpdlog
