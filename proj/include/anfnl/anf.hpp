#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "anfnl/bits.hpp"

namespace anfnl {

/// A Boolean function given by its sparse algebraic normal form: a
/// duplicate-free set of nonzero monomial masks plus a flag for a stripped
/// constant-1 term. Monomials keep their first-appearance order.
struct AnfFunction {
    int n = 0;
    std::vector<Mask> monomials;
    bool complemented = false;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

// XOR-reduces a stream of masks: pairs cancel, survivors keep the order in
// which they first appeared.
class XorAccumulator {
public:
    void add(Mask m) {
        auto [it, inserted] = parity_.try_emplace(m, true);
        if (!inserted) it->second = !it->second;
        if (inserted) order_.push_back(m);
    }

    std::vector<Mask> survivors() const {
        std::vector<Mask> out;
        for (Mask m : order_)
            if (parity_.at(m)) out.push_back(m);
        return out;
    }

private:
    std::unordered_map<Mask, bool> parity_;
    std::vector<Mask> order_;
};

struct Term {
    std::uint64_t variables = 0;  // bit i-1 set when variable xi appears
    int constant_ones = 0;
    std::size_t pos = 0;
};

inline bool parse_uint(std::string_view s, std::size_t& i, std::uint64_t& out) {
    const char* first = s.data() + i;
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr == first) return false;
    i = static_cast<std::size_t>(res.ptr - s.data());
    return true;
}

inline std::vector<Term> tokenize_human(std::string_view text) {
    std::vector<Term> terms;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\n')) ++i;
    };
    bool expect_term = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) {
            if (expect_term) throw ParseError("expected a term", i);
            break;
        }
        if (!expect_term) {
            if (text[i] != '+') throw ParseError("expected '+' between terms", i);
            ++i;
            expect_term = true;
            continue;
        }
        Term term;
        term.pos = i;
        if (text[i] == '0' || text[i] == '1') {
            term.constant_ones = text[i] == '1' ? 1 : 0;
            ++i;
        } else if (text[i] == 'x' || text[i] == 'X') {
            bool expect_variable = true;
            while (true) {
                skip_ws();
                if (i < text.size() && text[i] == '*') {
                    if (expect_variable) throw ParseError("unexpected '*'", i);
                    ++i;
                    expect_variable = true;
                    continue;
                }
                if (i >= text.size() || (text[i] != 'x' && text[i] != 'X')) {
                    if (expect_variable) throw ParseError("expected a variable after '*'", i);
                    break;
                }
                std::size_t var_pos = i;
                ++i;
                std::uint64_t index = 0;
                if (!parse_uint(text, i, index)) throw ParseError("expected a variable index after 'x'", i);
                if (index == 0) throw ParseError("variable index 0 is invalid", var_pos);
                if (index > kMaxVars)
                    throw ParseError("variable index exceeds " + std::to_string(kMaxVars), var_pos);
                term.variables |= std::uint64_t{1} << (index - 1);
                expect_variable = false;
            }
        } else {
            throw ParseError("expected '1' or a variable", i);
        }
        terms.push_back(term);
        expect_term = false;
    }
    return terms;
}

inline AnfFunction parse_mask_list(std::string_view text, std::optional<int> n_override) {
    std::size_t i = 0;
    AnfFunction f;
    XorAccumulator acc;
    int constant_ones = 0;
    bool have_header = false;
    while (i <= text.size()) {
        std::size_t eol = text.find('\n', i);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(i, eol - i);
        std::size_t line_pos = i;
        i = eol + 1;

        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) {
            if (eol == text.size()) break;
            continue;
        }
        std::size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        line_pos += b;

        if (!have_header) {
            if (line.size() < 2 || (line[0] != 'n' && line[0] != 'N'))
                throw ParseError("mask list must start with an 'n=<count>' header", line_pos);
            std::size_t j = 1;
            while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
            if (j >= line.size() || line[j] != '=') throw ParseError("expected '=' in the n header", line_pos + j);
            ++j;
            while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
            std::uint64_t n_val = 0;
            if (!parse_uint(line, j, n_val) || j != line.size())
                throw ParseError("bad variable count in the n header", line_pos);
            if (n_val < 1 || n_val > kMaxVars)
                throw ParseError("variable count must be in [1, 64]", line_pos);
            f.n = static_cast<int>(n_val);
            if (n_override && *n_override != f.n)
                throw ParseError("n override conflicts with the mask-list header", line_pos);
            have_header = true;
        } else {
            std::uint64_t value = 0;
            std::size_t j = 0;
            if (line.size() > 2 && line[0] == '0' && (line[1] == 'x' || line[1] == 'X')) {
                const char* first = line.data() + 2;
                const char* last = line.data() + line.size();
                auto res = std::from_chars(first, last, value, 16);
                if (res.ec != std::errc{} || res.ptr != last)
                    throw ParseError("bad hexadecimal mask", line_pos);
            } else {
                if (!parse_uint(line, j, value) || j != line.size())
                    throw ParseError("bad mask value", line_pos);
            }
            if (value > full_mask(f.n))
                throw ParseError("mask exceeds 2^n - 1", line_pos);
            if (value == 0)
                ++constant_ones;
            else
                acc.add(value);
        }
        if (eol == text.size()) break;
    }
    if (!have_header) throw ParseError("mask list must start with an 'n=<count>' header", 0);
    f.monomials = acc.survivors();
    f.complemented = (constant_ones & 1) != 0;
    return f;
}

}  // namespace detail

/// Parses the human grammar ("x1x5 + x4x5 + 1", '*' optional between
/// variables) or, when the text starts with an "n=<count>" line, the
/// mask-list form with one monomial mask per line. Duplicate monomials cancel
/// pairwise; a surviving constant term is stripped into `complemented`.
inline AnfFunction parse_anf(std::string_view text, std::optional<int> n_override = std::nullopt) {
    if (n_override && (*n_override < 1 || *n_override > kMaxVars))
        throw ParseError("n override must be in [1, 64]", 0);

    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (text[first] == 'n' || text[first] == 'N')) {
        std::size_t after = text.find_first_not_of(" \t", first + 1);
        if (after != std::string_view::npos && text[after] == '=')
            return detail::parse_mask_list(text, n_override);
    }

    auto terms = detail::tokenize_human(text);
    int max_index = 0;
    for (const auto& t : terms)
        if (t.variables != 0)
            max_index = std::max(max_index, 64 - std::countl_zero(t.variables));

    AnfFunction f;
    if (n_override) {
        f.n = *n_override;
        if (max_index > f.n) {
            for (const auto& t : terms)
                if (t.variables >> f.n)
                    throw ParseError("variable index exceeds n=" + std::to_string(f.n), t.pos);
        }
    } else {
        if (max_index == 0) throw ParseError("cannot infer n from a constant function; pass n explicitly", 0);
        f.n = max_index;
    }

    detail::XorAccumulator acc;
    int constant_ones = 0;
    for (const auto& t : terms) {
        if (t.variables == 0) {
            constant_ones += t.constant_ones;
            continue;
        }
        Mask m = 0;
        for (int idx = 1; idx <= f.n; ++idx)
            if (t.variables & (std::uint64_t{1} << (idx - 1))) m |= variable_mask(idx, f.n);
        acc.add(m);
    }
    f.monomials = acc.survivors();
    f.complemented = (constant_ones & 1) != 0;
    return f;
}

/// Human form, variables in ascending index order within each term.
inline std::string format_anf(const AnfFunction& f) {
    std::string out;
    for (Mask m : f.monomials) {
        if (!out.empty()) out += " + ";
        for (int idx = 1; idx <= f.n; ++idx)
            if (m & variable_mask(idx, f.n)) out += "x" + std::to_string(idx);
    }
    if (f.complemented) {
        if (!out.empty()) out += " + ";
        out += "1";
    }
    if (out.empty()) out = "0";
    return out;
}

/// Mask-list form with the n header; the constant term is a 0x0 line.
inline std::string format_mask_list(const AnfFunction& f) {
    std::string out = "n=" + std::to_string(f.n) + "\n";
    for (Mask m : f.monomials) out += mask_to_hex(m) + "\n";
    if (f.complemented) out += "0x0\n";
    return out;
}

/// f(x) from the ANF: XOR over monomials u with u ⪯ x, plus the complement
/// flag. O(p) for p monomials, valid for any n up to 64.
inline bool evaluate(const AnfFunction& f, Mask x) {
    assert(is_subvector(x, full_mask(f.n)));
    bool acc = f.complemented;
    for (Mask u : f.monomials)
        if (is_subvector(u, x)) acc = !acc;
    return acc;
}

}  // namespace anfnl
