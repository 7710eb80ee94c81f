#include "cwcmatch/code_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "cwcmatch/errors.hpp"

namespace cwcmatch {

namespace {

std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

int parse_int(std::string_view s, std::size_t line, std::string_view what) {
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end || value < 0)
        throw ParseError(line, "bad " + std::string(what) + " '" + std::string(s) + "'");
    return value;
}

int parse_keyed(std::string_view token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=')
        throw ParseError(line, "expected " + std::string(key) + "=<value>, got '" + std::string(token) + "'");
    return parse_int(token.substr(key.size() + 1), line, key);
}

CodeSpec parse_header(std::string_view line_text) {
    const auto tokens = split(line_text, ' ');
    if (tokens.size() != 5 || (tokens[0] != "#cwc" && tokens[0] != "#ccc"))
        throw ParseError(1, "header must be '#cwc q= n= d= w=' or '#ccc q= n= d= wbar='");
    const int q = parse_keyed(tokens[1], "q", 1);
    const int n = parse_keyed(tokens[2], "n", 1);
    const int d = parse_keyed(tokens[3], "d", 1);
    try {
        if (tokens[0] == "#cwc") return CodeSpec::cwc(q, n, d, parse_keyed(tokens[4], "w", 1));
        const std::string_view wb = tokens[4];
        if (wb.substr(0, 5) != "wbar=") throw ParseError(1, "expected wbar=<w1,...>");
        std::vector<int> counts;
        for (auto part : split(wb.substr(5), ',')) counts.push_back(parse_int(part, 1, "wbar entry"));
        return CodeSpec::ccc(q, n, d, Composition(std::move(counts)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(1, e.what());
    }
}

Word parse_word(std::string_view text, const CodeSpec& spec, std::size_t line) {
    const int q = spec.q();
    std::vector<std::uint8_t> symbols;
    symbols.reserve(static_cast<std::size_t>(spec.n()));
    if (q <= 10) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw ParseError(line, "non-digit character in word");
            symbols.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
    } else {
        for (auto part : split(text, ',')) symbols.push_back(static_cast<std::uint8_t>(
            std::min(parse_int(part, line, "symbol"), 255)));
    }
    if (symbols.size() != static_cast<std::size_t>(spec.n()))
        throw ParseError(line, "word has " + std::to_string(symbols.size()) + " symbols, expected " +
                                   std::to_string(spec.n()));
    for (auto s : symbols)
        if (s >= q) throw ParseError(line, "symbol " + std::to_string(s) + " not below q");
    return Word(q, std::move(symbols));
}

}  // namespace

Code parse_code(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && rstrip(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(1, "empty file");

    const CodeSpec spec = parse_header(rstrip(lines[0]));
    std::vector<Word> words;
    std::set<Word> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = rstrip(lines[i]);
        if (line.empty()) throw ParseError(i + 1, "blank line");
        if (line.front() == '#') continue;
        Word x = parse_word(line, spec, i + 1);
        if (!seen.insert(x).second) throw ParseError(i + 1, "duplicate word");
        words.push_back(std::move(x));
    }
    return Code(spec, std::move(words));
}

Code read_code_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str());
}

std::string format_header(const CodeSpec& spec) { return "#" + spec.describe(); }

std::string format_word(const Word& x) {
    std::string out;
    if (x.q() <= 10) {
        for (auto s : x.symbols()) out.push_back(static_cast<char>('0' + s));
    } else {
        for (int i = 0; i < x.n(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(x[i]);
        }
    }
    return out;
}

std::string format_code(const Code& code) {
    std::string out = format_header(code.spec()) + '\n';
    for (const auto& x : code.words()) out += format_word(x) + '\n';
    return out;
}

void write_code_file(const std::filesystem::path& path, const Code& code) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_code(code);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace cwcmatch
