#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cwcmatch/word.hpp"

namespace cwcmatch {

// Text format:
//
//   #cwc q=<q> n=<n> d=<d> w=<w>
//   #ccc q=<q> n=<n> d=<d> wbar=<w1,...,w_{q-1}>
//
// followed by one word per line. For q <= 10 a word is n contiguous digits,
// otherwise n comma-separated decimal symbols. Further lines starting with '#'
// are comments. Trailing whitespace on a line is ignored, as are blank lines
// at the end of the file; any other blank line is an error.

/// Parses header and words. Throws ParseError on any malformed line and on
/// duplicate words.
Code parse_code(std::string_view text);
Code read_code_file(const std::filesystem::path& path);

std::string format_header(const CodeSpec& spec);
std::string format_word(const Word& x);
/// Header plus one word per line, in code order, newline terminated.
std::string format_code(const Code& code);
void write_code_file(const std::filesystem::path& path, const Code& code);

}  // namespace cwcmatch
