#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pdc {

/// Detector channels of a time-tag stream.
namespace channel {
inline constexpr std::uint8_t trigger = 0;
inline constexpr std::uint8_t herald = 1;
inline constexpr std::uint8_t converted = 2;
inline constexpr std::uint8_t unconverted = 3;
inline constexpr std::uint8_t max = 3;
}  // namespace channel

struct EventRecord {
    std::uint8_t channel = 0;
    std::uint64_t timestamp_ps = 0;  // since stream start

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Acquisition context the stream was produced under, when known. Not serialized.
struct StreamMetadata {
    double plate_thickness_mm = 0.0;
    double plate_refractive_index = 0.0;
    double rotation_hz = 0.0;
    double alpha_max_rad = 0.0;
    double gate_fwhm_fs = 0.0;
    double repetition_mhz = 0.0;
    double duration_s = 0.0;
};

struct EventStream {
    std::vector<EventRecord> records;  // timestamps non-decreasing
    std::optional<StreamMetadata> metadata;

    std::size_t count(std::uint8_t ch) const {
        std::size_t n = 0;
        for (const auto& r : records) n += r.channel == ch;
        return n;
    }
};

}  // namespace pdc
