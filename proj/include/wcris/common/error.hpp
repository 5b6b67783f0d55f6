// SPDX-License-Identifier: Apache-2.0
//
// wcris - beam synthesis for wave-controlled reconfigurable intelligent surfaces
// Copyright (C) 2026 The wcris authors
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

#ifndef WCRIS_COMMON_ERROR_HPP
#define WCRIS_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wcris
{
    /// Base of every error thrown by the library. `kind()` is a short
    /// machine-parsable tag used by the command line front end.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
        virtual const char *kind() const noexcept { return "error"; }
    };

    /// Argument outside the mathematical domain of an operation.
    class DomainError : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "domain"; }
    };

    /// A BSW configuration whose rectified bias leaves the varactor range.
    class RejectedConfiguration : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "rejected-configuration"; }
    };

    /// Malformed, corrupted or mismatched file content.
    class FormatError : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "format"; }
    };

    class DegenerateData : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "degenerate-data"; }
    };

    class TrainingError : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "training"; }
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
        const char *kind() const noexcept override { return "config"; }
    };

    inline void require(bool condition, const std::string &message)
    {
        if (!condition)
            throw DomainError(message);
    }
}

#endif
