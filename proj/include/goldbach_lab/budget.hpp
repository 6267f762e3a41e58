#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace goldbach_lab {

/// Memory cap in bytes. Read once from GOLDBACH_LAB_BUDGET_MB (default 2048).
inline std::uint64_t& memory_budget_bytes_slot() {
    static std::uint64_t bytes = [] {
        std::uint64_t mb = 2048;
        if (const char* env = std::getenv("GOLDBACH_LAB_BUDGET_MB")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) mb = v;
        }
        return mb << 20;
    }();
    return bytes;
}

inline std::uint64_t memory_budget_bytes() { return memory_budget_bytes_slot(); }

inline void set_memory_budget_mb(std::uint64_t mb) { memory_budget_bytes_slot() = mb << 20; }

inline void require_memory(std::uint64_t bytes, const std::string& what) {
    if (bytes > memory_budget_bytes())
        throw ResourceError(what + " needs " + std::to_string(bytes >> 20) + " MB, budget is " +
                            std::to_string(memory_budget_bytes() >> 20) + " MB");
}

}  // namespace goldbach_lab
