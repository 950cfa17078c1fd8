#ifndef RECFG_DETAIL_LINE_READER_HPP
#define RECFG_DETAIL_LINE_READER_HPP

#include <sstream>
#include <string>
#include <vector>

#include "recfg/errors.hpp"

namespace recfg::detail {

// Strict line-oriented tokenizer: '#' lines are comments, blank lines are
// skipped, and every consumed line must be fully used by the caller.
class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    bool next_line(std::vector<std::string>& tokens, int& line_no) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            std::istringstream ls(line);
            std::string tok;
            tokens.clear();
            while (ls >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0][0] == '#') continue;
            line_no = line_;
            return true;
        }
        return false;
    }

    int line() const { return line_; }

private:
    std::istringstream in_;
    int line_ = 0;
};

inline int parse_int(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
}

} // namespace recfg::detail

#endif
