#include "blindrate/frame_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "blindrate/errors.hpp"

namespace blindrate {

std::vector<LlrFrame> read_frames(std::istream& in, std::size_t expected_n) {
    std::vector<LlrFrame> frames;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<double> symbols;
        if (expected_n != 0) symbols.reserve(expected_n);

        const char* cursor = line.c_str();
        for (;;) {
            while (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') ++cursor;
            if (*cursor == '\0') break;
            char* end = nullptr;
            const double value = std::strtod(cursor, &end);
            if (end == cursor)
                throw ParseError(line_no, std::string("malformed symbol starting at '") +
                                              std::string(cursor).substr(0, 12) + "'");
            symbols.push_back(value);
            cursor = end;
        }

        if (symbols.empty()) continue;  // blank line
        if (expected_n == 0) expected_n = symbols.size();
        if (symbols.size() != expected_n)
            throw ParseError(line_no, "frame has " + std::to_string(symbols.size()) + " symbols, expected " +
                                          std::to_string(expected_n));
        frames.emplace_back(std::move(symbols));
    }
    return frames;
}

std::vector<LlrFrame> read_frame_file(const std::string& path, std::size_t expected_n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open frame file: " + path);
    return read_frames(in, expected_n);
}

void write_frames(std::ostream& out, std::span<const LlrFrame> frames) {
    char buffer[40];
    for (const LlrFrame& frame : frames) {
        for (std::size_t j = 0; j < frame.size(); ++j) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", frame.symbols[j]);
            if (j != 0) out.put(' ');
            out << buffer;
        }
        out.put('\n');
    }
}

void write_frame_file(const std::string& path, std::span<const LlrFrame> frames) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open frame file for writing: " + path);
    write_frames(out, frames);
}

}  // namespace blindrate
