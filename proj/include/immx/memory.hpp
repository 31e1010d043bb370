#pragma once

#include <cstdint>

namespace immx {

// Logical byte accounting for the containers a run holds, so peak numbers
// are deterministic (OS RSS is reported separately and informationally).
struct MemoryLedger {
    std::uint64_t raw_block_bytes = 0;  // live raw sets, 4 bytes per member
    std::uint64_t encoded_bytes = 0;
    std::uint64_t freq_table_bytes = 0;
    std::uint64_t decode_buffer_bytes = 0;
    std::uint64_t peak_bytes = 0;

    std::uint64_t current() const {
        return raw_block_bytes + encoded_bytes + freq_table_bytes + decode_buffer_bytes;
    }
    void checkpoint() {
        if (current() > peak_bytes) peak_bytes = current();
    }
};

}  // namespace immx
