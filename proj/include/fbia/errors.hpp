// SPDX-License-Identifier: Apache-2.0
//
// fbia: feedback interference alignment for the 3-user Gaussian interference channel
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace fbia {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class DegenerateNullspace : public Error {
public:
    using Error::Error;
};

class NonpositivePower : public Error {
public:
    explicit NonpositivePower(double P)
        : Error("transmit power must be positive, got " + std::to_string(P)) {}
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IOFailure : public Error {
public:
    using Error::Error;
};

} // namespace fbia
