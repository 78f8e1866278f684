#pragma once

// Symbolic data model for complex orthogonal designs: a p x n grid over the
// alphabet {0, +-z_j, +-z_j^*} plus the text format used by the tools.
//
// Conventions used throughout the library:
//  * rows and columns are 0-based in the API; the file format and all
//    user-facing reports are 1-based
//  * variable indices are 1-based (z1..zk), matching the token syntax
//  * every type is a plain value; no operation mutates its input

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cod {

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// One grid cell. var == 0 encodes the zero entry; a zero always carries
// sign +1 and conj false.
struct Entry {
    int var = 0;
    int sign = +1;
    bool conj = false;

    static Entry zero() { return {}; }

    static Entry variable(int var, int sign = +1, bool conj = false) {
        if (var < 1) throw std::invalid_argument("variable index must be >= 1");
        if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
        return Entry{var, sign, conj};
    }

    bool is_zero() const { return var == 0; }

    Entry negated() const {
        if (is_zero()) return *this;
        return Entry{var, -sign, conj};
    }

    Entry conjugated() const {
        if (is_zero()) return *this;
        return Entry{var, sign, !conj};
    }

    std::string token() const {
        if (is_zero()) return "0";
        std::string t;
        if (sign < 0) t += '-';
        t += 'z';
        t += std::to_string(var);
        if (conj) t += '*';
        return t;
    }

    friend bool operator==(const Entry&, const Entry&) = default;
};

// Deterministic total order on entries: 0 < z1 < z1* < -z1 < -z1* < z2 < ...
// Used wherever cells must be enumerated or compared canonically.
inline int entry_rank(const Entry& e) {
    if (e.is_zero()) return 0;
    return 1 + (e.var - 1) * 4 + (e.sign < 0 ? 2 : 0) + (e.conj ? 1 : 0);
}

struct Design {
    int p = 0;  // rows (decoding delay)
    int n = 0;  // columns (antennas)
    int k = 0;  // variables
    std::vector<Entry> cells;  // row-major, size p * n

    Entry& at(int r, int c) { return cells[static_cast<size_t>(r) * n + c]; }
    const Entry& at(int r, int c) const { return cells[static_cast<size_t>(r) * n + c]; }

    friend bool operator==(const Design&, const Design&) = default;
};

inline Design make_design(int p, int n, int k) {
    if (p < 1 || n < 1 || k < 1) throw std::invalid_argument("design dimensions must be positive");
    Design d;
    d.p = p;
    d.n = n;
    d.k = k;
    d.cells.assign(static_cast<size_t>(p) * n, Entry::zero());
    return d;
}

// Structural sanity: grid size, indices within [1..k], every variable used.
inline void validate_design(const Design& d) {
    if (d.p < 1 || d.n < 1 || d.k < 1) throw std::invalid_argument("design dimensions must be positive");
    if (d.cells.size() != static_cast<size_t>(d.p) * d.n)
        throw std::invalid_argument("grid size does not match declared dimensions");
    std::vector<int> used(static_cast<size_t>(d.k) + 1, 0);
    for (const Entry& e : d.cells) {
        if (e.is_zero()) {
            if (e.sign != 1 || e.conj) throw std::invalid_argument("zero entry with nonzero decorations");
            continue;
        }
        if (e.var < 1 || e.var > d.k) throw std::invalid_argument("variable index out of range");
        if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("entry sign must be +1 or -1");
        ++used[e.var];
    }
    for (int j = 1; j <= d.k; ++j)
        if (used[j] == 0)
            throw std::invalid_argument("variable z" + std::to_string(j) + " never occurs");
}

struct Occurrence {
    int row = 0;
    int col = 0;
    int sign = +1;
    bool conj = false;
};

// All cells holding variable j, row-major.
inline std::vector<Occurrence> variable_occurrences(const Design& d, int j) {
    if (j < 1 || j > d.k) throw std::out_of_range("variable index out of range");
    std::vector<Occurrence> occ;
    for (int r = 0; r < d.p; ++r)
        for (int c = 0; c < d.n; ++c) {
            const Entry& e = d.at(r, c);
            if (e.var == j) occ.push_back({r, c, e.sign, e.conj});
        }
    return occ;
}

enum class RowClass { NonConjugated, Conjugated, Mixed, Empty };

inline RowClass row_class(const Design& d, int r) {
    if (r < 0 || r >= d.p) throw std::out_of_range("row index out of range");
    bool any = false, all_conj = true, all_plain = true;
    for (int c = 0; c < d.n; ++c) {
        const Entry& e = d.at(r, c);
        if (e.is_zero()) continue;
        any = true;
        (e.conj ? all_plain : all_conj) = false;
    }
    if (!any) return RowClass::Empty;
    if (all_plain) return RowClass::NonConjugated;
    if (all_conj) return RowClass::Conjugated;
    return RowClass::Mixed;
}

inline int row_zero_count(const Design& d, int r) {
    if (r < 0 || r >= d.p) throw std::out_of_range("row index out of range");
    int zeros = 0;
    for (int c = 0; c < d.n; ++c)
        if (d.at(r, c).is_zero()) ++zeros;
    return zeros;
}

namespace detail {

inline Entry parse_token(std::string_view t, int k, int line_no) {
    auto fail = [&](const std::string& why) {
        throw ParseError("line " + std::to_string(line_no) + ": bad token '" + std::string(t) + "': " + why);
    };
    if (t == "0") return Entry::zero();
    size_t i = 0;
    int sign = +1;
    if (i < t.size() && t[i] == '-') {
        sign = -1;
        ++i;
    }
    if (i >= t.size() || t[i] != 'z') fail("expected 'z'");
    ++i;
    if (i >= t.size() || t[i] < '0' || t[i] > '9') fail("expected variable index");
    long idx = 0;
    while (i < t.size() && t[i] >= '0' && t[i] <= '9') {
        idx = idx * 10 + (t[i] - '0');
        if (idx > 1000000) fail("variable index too large");
        ++i;
    }
    bool conj = false;
    if (i < t.size() && t[i] == '*') {
        conj = true;
        ++i;
    }
    if (i != t.size()) fail("trailing characters");
    if (idx == 0) fail("variable index 0");
    if (idx > k) fail("variable index exceeds declared k=" + std::to_string(k));
    return Entry{static_cast<int>(idx), sign, conj};
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace detail

// Text format: line 1 is "p n k"; the next p lines carry n whitespace
// separated tokens 0 | -?z<index>*?. Lines starting with '#' are comments;
// blank lines are ignored.
inline Design parse_design(std::string_view text) {
    std::vector<std::pair<int, std::vector<std::string_view>>> rows;  // (line number, tokens)
    size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        if (line[first] == '#') continue;
        rows.emplace_back(line_no, detail::split_ws(line));
    }
    if (rows.empty()) throw ParseError("empty input");

    const auto& header = rows.front().second;
    if (header.size() != 3)
        throw ParseError("line " + std::to_string(rows.front().first) + ": header must be 'p n k'");
    auto parse_int = [&](std::string_view s, const char* what) {
        long v = 0;
        if (s.empty()) throw ParseError(std::string("bad header field ") + what);
        for (char ch : s) {
            if (ch < '0' || ch > '9')
                throw ParseError(std::string("bad header field ") + what + ": '" + std::string(s) + "'");
            v = v * 10 + (ch - '0');
            if (v > 1000000) throw ParseError(std::string("header field ") + what + " too large");
        }
        return static_cast<int>(v);
    };
    int p = parse_int(header[0], "p");
    int n = parse_int(header[1], "n");
    int k = parse_int(header[2], "k");
    if (p < 1 || n < 1 || k < 1) throw ParseError("header values must be positive");
    if (static_cast<int>(rows.size()) - 1 != p)
        throw ParseError("expected " + std::to_string(p) + " rows, found " + std::to_string(rows.size() - 1));

    Design d = make_design(p, n, k);
    std::vector<int> used(static_cast<size_t>(k) + 1, 0);
    for (int r = 0; r < p; ++r) {
        const auto& [ln, toks] = rows[static_cast<size_t>(r) + 1];
        if (static_cast<int>(toks.size()) != n)
            throw ParseError("line " + std::to_string(ln) + ": expected " + std::to_string(n) +
                             " tokens, found " + std::to_string(toks.size()));
        for (int c = 0; c < n; ++c) {
            Entry e = detail::parse_token(toks[static_cast<size_t>(c)], k, ln);
            if (!e.is_zero()) ++used[e.var];
            d.at(r, c) = e;
        }
    }
    for (int j = 1; j <= k; ++j)
        if (used[j] == 0) throw ParseError("variable z" + std::to_string(j) + " declared but never used");
    return d;
}

// Emits exactly the grammar above: single spaces, no trailing whitespace,
// no trailing newline.
inline std::string serialize_design(const Design& d) {
    std::string out = std::to_string(d.p) + " " + std::to_string(d.n) + " " + std::to_string(d.k);
    for (int r = 0; r < d.p; ++r) {
        out += '\n';
        for (int c = 0; c < d.n; ++c) {
            if (c) out += ' ';
            out += d.at(r, c).token();
        }
    }
    return out;
}

}  // namespace cod
