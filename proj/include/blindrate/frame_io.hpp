#pragma once

#include <iosfwd>
#include <string>

#include "blindrate/channel.hpp"

namespace blindrate {

/// LLR frame text format: one frame per line, n decimal symbols separated by
/// single spaces. Pass expected_n = 0 to take the first line's length as n.
/// Malformed symbols or ragged lines raise ParseError with the line number.
std::vector<LlrFrame> read_frames(std::istream& in, std::size_t expected_n = 0);
std::vector<LlrFrame> read_frame_file(const std::string& path, std::size_t expected_n = 0);

/// Symbols are written with enough digits to round-trip exactly.
void write_frames(std::ostream& out, std::span<const LlrFrame> frames);
void write_frame_file(const std::string& path, std::span<const LlrFrame> frames);

}  // namespace blindrate
