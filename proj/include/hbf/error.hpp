// SPDX-License-Identifier: Apache-2.0
//
// hbf: hybrid analog/digital transceiver design for MIMO interference channels
// Copyright (C) 2026 The hbf authors
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

#ifndef HBF_ERROR_HPP
#define HBF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hbf
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidDimension : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidInput : public Error
    {
    public:
        using Error::Error;
    };

    // Raised when a scheme cannot be built for the given dimensions
    class Infeasible : public Error
    {
    public:
        using Error::Error;
    };

    class NumericalError : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
