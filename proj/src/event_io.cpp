#include "pdc/event_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "pdc/errors.hpp"

namespace pdc {

void write_events_csv(std::ostream& out, const EventStream& stream) {
    out << csv_header << '\n';
    for (const auto& r : stream.records) out << static_cast<unsigned>(r.channel) << ',' << r.timestamp_ps << '\n';
}

void write_events_binary(std::ostream& out, const EventStream& stream) {
    char frame[binary_frame_bytes];
    for (const auto& r : stream.records) {
        frame[0] = static_cast<char>(r.channel);
        for (int b = 0; b < 8; ++b) frame[1 + b] = static_cast<char>((r.timestamp_ps >> (8 * b)) & 0xffu);
        out.write(frame, binary_frame_bytes);
    }
}

std::string events_to_csv(const EventStream& stream) {
    std::ostringstream out;
    write_events_csv(out, stream);
    return out.str();
}

std::string events_to_binary(const EventStream& stream) {
    std::ostringstream out(std::ios::binary);
    write_events_binary(out, stream);
    return out.str();
}

namespace {

void check_record(const EventRecord& rec, const EventStream& stream, const ParseOptions& options,
                  std::size_t line, std::size_t offset) {
    if (rec.channel > channel::max)
        throw ParseError("unknown channel " + std::to_string(rec.channel), line, offset);
    if (!stream.records.empty()) {
        const std::uint64_t prev = stream.records.back().timestamp_ps;
        if (rec.timestamp_ps < prev && prev - rec.timestamp_ps > options.monotone_tolerance_ps)
            throw ParseError("timestamp decreases from " + std::to_string(prev) + " to " +
                                 std::to_string(rec.timestamp_ps),
                             line, offset);
    }
}

template <typename T>
bool parse_uint(std::string_view field, T& value) {
    if (field.empty()) return false;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    return ec == std::errc() && ptr == end;
}

EventStream parse_csv(std::string_view input, const ParseOptions& options) {
    EventStream stream;
    std::size_t line = 0;
    std::size_t pos = 0;
    while (pos < input.size()) {
        const std::size_t start = pos;
        std::size_t eol = input.find('\n', pos);
        if (eol == std::string_view::npos) eol = input.size();
        pos = eol + 1;
        ++line;
        std::string_view text = input.substr(start, eol - start);
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        if (line == 1) {
            if (text != csv_header) throw ParseError("missing CSV header", line, start);
            continue;
        }
        if (text.empty()) continue;
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected two comma-separated fields", line, start);
        unsigned ch = 0;
        EventRecord rec;
        if (!parse_uint(text.substr(0, comma), ch)) throw ParseError("malformed channel", line, start);
        if (!parse_uint(text.substr(comma + 1), rec.timestamp_ps))
            throw ParseError("malformed timestamp", line, start);
        if (ch > channel::max) throw ParseError("unknown channel " + std::to_string(ch), line, start);
        rec.channel = static_cast<std::uint8_t>(ch);
        check_record(rec, stream, options, line, start);
        stream.records.push_back(rec);
    }
    return stream;
}

EventStream parse_binary(std::string_view input, const ParseOptions& options) {
    EventStream stream;
    stream.records.reserve(input.size() / binary_frame_bytes);
    std::size_t offset = 0;
    for (; offset + binary_frame_bytes <= input.size(); offset += binary_frame_bytes) {
        EventRecord rec;
        rec.channel = static_cast<std::uint8_t>(input[offset]);
        for (int b = 0; b < 8; ++b)
            rec.timestamp_ps |= static_cast<std::uint64_t>(static_cast<unsigned char>(input[offset + 1 + b])) << (8 * b);
        check_record(rec, stream, options, 0, offset);
        stream.records.push_back(rec);
    }
    if (offset != input.size())
        throw ParseError("truncated frame (" + std::to_string(input.size() - offset) + " of " +
                             std::to_string(binary_frame_bytes) + " bytes)",
                         0, offset);
    return stream;
}

}  // namespace

EventStream parse_event_stream(std::string_view input, const ParseOptions& options) {
    EventFormat format = options.format;
    if (format == EventFormat::automatic) {
        // A binary frame opens with a channel byte; anything else is text.
        const bool binary = !input.empty() && static_cast<unsigned char>(input[0]) <= channel::max;
        format = binary ? EventFormat::binary : EventFormat::csv;
    }
    return format == EventFormat::csv ? parse_csv(input, options) : parse_binary(input, options);
}

void save_events(const std::filesystem::path& path, const EventStream& stream, EventFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    if (format == EventFormat::binary)
        write_events_binary(out, stream);
    else
        write_events_csv(out, stream);
    if (!out) throw InputError("write failed: " + path.string());
}

EventStream load_events(const std::filesystem::path& path, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_event_stream(data, options);
}

}  // namespace pdc
