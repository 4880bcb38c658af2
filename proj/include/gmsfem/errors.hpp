// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_ERRORS_HPP
#define GMSFEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gmsfem
{

// Bad input: zero counts, out-of-range ids, inconsistent layouts, malformed config.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// A linear algebra stage failed (singular factorization, eigensolver breakdown).
class NumericalFailure : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmsfem

#endif  // GMSFEM_ERRORS_HPP
