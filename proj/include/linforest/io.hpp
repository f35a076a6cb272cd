#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "graph.hpp"

namespace linforest {

// Edge-list text: first line "n m", then m lines "u v" (0-based, written with
// u < v), '#' starts a comment, blank lines ignored.  Repeated "u v" lines
// are how multigraphs are serialized.

inline void write_edge_list(std::ostream& os, const SimpleGraph& g) {
    os << g.size() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) os << e.first << ' ' << e.second << '\n';
}

inline void write_edge_list(std::ostream& os, const MultiGraph& g) {
    auto es = g.edges();
    std::sort(es.begin(), es.end());
    os << g.size() << ' ' << es.size() << '\n';
    for (const auto& e : es) os << e.first << ' ' << e.second << '\n';
}

template <class G>
inline std::string edge_list_string(const G& g) {
    std::ostringstream os;
    write_edge_list(os, g);
    return os.str();
}

namespace detail {
inline bool next_data_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) return true;
    }
    return false;
}
}  // namespace detail

inline MultiGraph read_edge_list_multi(std::istream& is) {
    std::string line;
    if (!detail::next_data_line(is, line)) throw std::invalid_argument("edge list: empty input");
    std::istringstream head(line);
    long long n = -1, m = -1;
    if (!(head >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("edge list: bad header '" + line + "'");
    MultiGraph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!detail::next_data_line(is, line)) throw std::invalid_argument("edge list: expected " + std::to_string(m) + " edges");
        std::istringstream row(line);
        int u, v;
        if (!(row >> u >> v)) throw std::invalid_argument("edge list: bad edge line '" + line + "'");
        g.add_edge(u, v);
    }
    return g;
}

inline SimpleGraph read_edge_list(std::istream& is) {
    MultiGraph m = read_edge_list_multi(is);
    SimpleGraph g(m.size());
    for (const auto& e : m.edges()) g.add_edge(e.first, e.second);  // throws on duplicates
    return g;
}

inline SimpleGraph read_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

// graph6: 6-bit big-endian packing of the upper triangle in column order
// (0,1),(0,2),(1,2),(0,3),... each byte offset by 63.
inline std::string write_graph6(const SimpleGraph& g) {
    int n = g.size();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    } else {
        throw std::invalid_argument("graph6: order too large");
    }
    int bit = 5, cur = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (g.has_edge(u, v)) cur |= 1 << bit;
            if (--bit < 0) {
                out.push_back(static_cast<char>(63 + cur));
                bit = 5;
                cur = 0;
            }
        }
    }
    if (n >= 2 && bit != 5) out.push_back(static_cast<char>(63 + cur));
    return out;
}

inline SimpleGraph read_graph6(const std::string& s) {
    size_t pos = 0;
    auto need = [&](size_t k) {
        if (pos + k > s.size()) throw std::invalid_argument("graph6: truncated");
    };
    need(1);
    long long n;
    if (static_cast<unsigned char>(s[pos]) == 126) {
        ++pos;
        need(3);
        n = 0;
        for (int i = 0; i < 3; ++i) {
            int c = static_cast<unsigned char>(s[pos++]) - 63;
            if (c < 0 || c > 63) throw std::invalid_argument("graph6: bad size byte");
            n = (n << 6) | c;
        }
    } else {
        n = static_cast<unsigned char>(s[pos++]) - 63;
        if (n < 0 || n > 62) throw std::invalid_argument("graph6: bad size byte");
    }
    SimpleGraph g(static_cast<int>(n));
    int bit = -1, cur = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            if (bit < 0) {
                need(1);
                cur = static_cast<unsigned char>(s[pos++]) - 63;
                if (cur < 0 || cur > 63) throw std::invalid_argument("graph6: bad data byte");
                bit = 5;
            }
            if (cur & (1 << bit)) g.add_edge(u, v);
            --bit;
        }
    }
    return g;
}

}  // namespace linforest
