#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pdc/events.hpp"

namespace pdc {

enum class EventFormat { csv, binary, automatic };

/// Binary frame: 1-byte channel followed by an 8-byte little-endian timestamp (ps).
inline constexpr std::size_t binary_frame_bytes = 9;
inline constexpr std::string_view csv_header = "channel,timestamp_ps";

struct ParseOptions {
    EventFormat format = EventFormat::automatic;
    /// Largest tolerated backwards step between consecutive timestamps, ps.
    std::uint64_t monotone_tolerance_ps = 0;
};

void write_events_csv(std::ostream& out, const EventStream& stream);
void write_events_binary(std::ostream& out, const EventStream& stream);
std::string events_to_csv(const EventStream& stream);
std::string events_to_binary(const EventStream& stream);

/// Parses either framing. Automatic detection: input starting with the CSV header is CSV,
/// anything else binary. Errors carry the 1-based line (CSV) or the byte offset of the
/// offending frame (binary).
EventStream parse_event_stream(std::string_view input, const ParseOptions& options = {});

void save_events(const std::filesystem::path& path, const EventStream& stream, EventFormat format);
EventStream load_events(const std::filesystem::path& path, const ParseOptions& options = {});

}  // namespace pdc
