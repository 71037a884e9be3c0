/*
Copyright 2026 The tscomp Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace tsc {

// Data errors: malformed input, corrupt streams, failed round trips.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments or flag values supplied by a caller.
class UsageError : public Error {
public:
    using Error::Error;
};

// A registered backend whose library could not be loaded.
class BackendUnavailable : public Error {
public:
    using Error::Error;
};

} // namespace tsc
