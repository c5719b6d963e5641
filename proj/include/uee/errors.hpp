/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hetnet-uee Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
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

namespace uee {

/// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A function was called outside its mathematical domain
/// (nonpositive distance, zero load, zero SINR inside a log, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Invalid or unknown configuration.
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// An exhaustive search was asked to enumerate more points than its guard allows.
class SizeError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace uee
