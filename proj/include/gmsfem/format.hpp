// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_FORMAT_HPP
#define GMSFEM_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace gmsfem
{

// Shortest decimal that round-trips to the same double.
inline std::string FormatDouble(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
  {
    return "nan";
  }
  return std::string(buf, ptr);
}

}  // namespace gmsfem

#endif  // GMSFEM_FORMAT_HPP
