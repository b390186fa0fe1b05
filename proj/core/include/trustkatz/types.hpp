#pragma once

#include <cstdint>

namespace trustkatz {

using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;
using ExternalId = std::int64_t;

}  // namespace trustkatz
