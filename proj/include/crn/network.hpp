#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/matrix.hpp"

namespace crn {

struct Species {
    std::string name;
    std::size_t index = 0;  // position in the species list
};

// One reaction; a reversible reaction is a single process (one column of the
// stoichiometric matrix), not a pair of irreversible ones.
struct Reaction {
    std::map<std::size_t, long long> left;   // species index -> coefficient >= 1
    std::map<std::size_t, long long> right;  // disjoint from left
    bool reversible = false;

    bool operator==(const Reaction&) const = default;
};

struct Network {
    std::vector<Species> species;
    std::vector<Reaction> reactions;

    std::size_t n() const { return species.size(); }
    std::size_t m() const { return reactions.size(); }

    const std::string& name_of(std::size_t i) const { return species.at(i).name; }

    bool operator==(const Network& o) const {
        if (reactions != o.reactions || species.size() != o.species.size()) return false;
        for (std::size_t i = 0; i < species.size(); ++i)
            if (species[i].name != o.species[i].name) return false;
        return true;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Parses one side of a reaction: "+"-separated terms "k X" or "X".
// Appearance order is preserved (it determines species numbering); duplicate
// mentions of a species accumulate.
inline std::vector<std::pair<std::string, long long>> parse_side(const std::string& s,
                                                                 std::size_t line_no,
                                                                 std::size_t base_col) {
    std::vector<std::pair<std::string, long long>> out;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; };
    skip_ws();
    if (pos == s.size()) return out;  // empty side
    bool expect_term = true;
    while (pos < s.size()) {
        if (!expect_term) {
            if (s[pos] != '+')
                throw ParseError(line_no, base_col + pos + 1, "expected '+' between terms");
            ++pos;
            skip_ws();
            expect_term = true;
            continue;
        }
        std::size_t term_col = base_col + pos + 1;
        long long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            coeff = std::stoll(s.substr(start, pos - start));
            if (coeff < 1) throw ParseError(line_no, term_col, "coefficient must be a positive integer");
            skip_ws();
        }
        if (pos == s.size() || !ident_start(s[pos]))
            throw ParseError(line_no, base_col + pos + 1, "expected species name");
        std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        std::string name = s.substr(start, pos - start);
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == name; });
        if (it != out.end())
            it->second += coeff;
        else
            out.emplace_back(std::move(name), coeff);
        skip_ws();
        expect_term = false;
    }
    if (expect_term) throw ParseError(line_no, base_col + pos, "trailing '+' without a term");
    return out;
}

}  // namespace detail

// Network invariants shared by the DSL and JSON import paths.
inline void validate_network(const Network& net) {
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < net.species.size(); ++i) {
        if (net.species[i].index != i) throw std::invalid_argument("species index out of order");
        if (!seen.emplace(net.species[i].name, i).second)
            throw std::invalid_argument("duplicate species name '" + net.species[i].name + "'");
    }
    std::vector<bool> used(net.n(), false);
    for (const auto& r : net.reactions) {
        if (r.left.empty() && r.right.empty()) throw std::invalid_argument("reaction with both sides empty");
        for (const auto& side : {r.left, r.right})
            for (const auto& [i, k] : side) {
                if (i >= net.n()) throw std::invalid_argument("reaction references unknown species");
                if (k < 1) throw std::invalid_argument("stoichiometric coefficient must be >= 1");
                used[i] = true;
            }
        for (const auto& [i, k] : r.left)
            if (r.right.count(i))
                throw std::invalid_argument("species '" + net.name_of(i) + "' appears on both sides of a reaction");
    }
    for (std::size_t i = 0; i < net.n(); ++i)
        if (!used[i])
            throw std::invalid_argument("species '" + net.name_of(i) + "' participates in no reaction");
}

// Parses the reaction DSL: one reaction per line, arrows "->" / "<->",
// "#" starts a comment, whitespace is insignificant. Species are numbered in
// first-appearance order.
inline Network parse_network(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    Network net;
    std::map<std::string, std::size_t> index;
    auto intern = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        std::size_t i = net.species.size();
        net.species.push_back({name, i});
        index.emplace(name, i);
        return i;
    };

    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        bool reversible = false;
        std::size_t arrow = line.find("<->");
        std::size_t arrow_len = 3;
        if (arrow != std::string::npos) {
            reversible = true;
        } else {
            arrow = line.find("->");
            arrow_len = 2;
        }
        if (arrow == std::string::npos) throw ParseError(line_no, 1, "missing reaction arrow '->' or '<->'");
        if (line.find("->", arrow + arrow_len) != std::string::npos)
            throw ParseError(line_no, arrow + arrow_len + 1, "more than one arrow on a line");

        auto lhs = detail::parse_side(line.substr(0, arrow), line_no, 0);
        auto rhs = detail::parse_side(line.substr(arrow + arrow_len), line_no, arrow + arrow_len);
        if (lhs.empty() && rhs.empty()) throw ParseError(line_no, 1, "reaction has no species");

        Reaction r;
        r.reversible = reversible;
        for (const auto& [name, k] : lhs) r.left[intern(name)] = k;
        for (const auto& [name, k] : rhs) {
            bool on_left = std::any_of(lhs.begin(), lhs.end(),
                                       [&](const auto& p) { return p.first == name; });
            if (on_left)
                throw ParseError(line_no, arrow + arrow_len + 1,
                                 "species '" + name + "' appears on both sides");
            r.right[intern(name)] = k;
        }
        if (warnings)
            for (std::size_t j = 0; j < net.reactions.size(); ++j)
                if (net.reactions[j] == r)
                    warnings->push_back("line " + std::to_string(line_no) + ": duplicate of reaction " +
                                        std::to_string(j));
        net.reactions.push_back(std::move(r));
    }
    if (net.reactions.empty()) throw ParseError(line_no ? line_no : 1, 1, "empty input: no reactions");
    validate_network(net);
    return net;
}

// Canonical text form; parsing it back yields an identical Network.
inline std::string to_text(const Network& net) {
    std::string out;
    auto side = [&](const std::map<std::size_t, long long>& s) {
        std::string t;
        for (const auto& [i, k] : s) {
            if (!t.empty()) t += " + ";
            if (k != 1) t += std::to_string(k) + " ";
            t += net.name_of(i);
        }
        return t;
    };
    for (const auto& r : net.reactions)
        out += side(r.left) + (r.reversible ? " <-> " : " -> ") + side(r.right) + "\n";
    return out;
}

inline nlohmann::json to_json(const Network& net) {
    nlohmann::json j;
    j["species"] = nlohmann::json::array();
    for (const auto& s : net.species) j["species"].push_back(s.name);
    j["reactions"] = nlohmann::json::array();
    for (const auto& r : net.reactions) {
        nlohmann::json jr;
        jr["reversible"] = r.reversible;
        jr["left"] = nlohmann::json::object();
        jr["right"] = nlohmann::json::object();
        for (const auto& [i, k] : r.left) jr["left"][net.name_of(i)] = k;
        for (const auto& [i, k] : r.right) jr["right"][net.name_of(i)] = k;
        j["reactions"].push_back(std::move(jr));
    }
    return j;
}

inline Network network_from_json(const nlohmann::json& j) {
    Network net;
    std::map<std::string, std::size_t> index;
    for (const auto& s : j.at("species")) {
        std::size_t i = net.species.size();
        net.species.push_back({s.get<std::string>(), i});
        index.emplace(net.species.back().name, i);
    }
    for (const auto& jr : j.at("reactions")) {
        Reaction r;
        r.reversible = jr.at("reversible").get<bool>();
        for (const auto& [name, k] : jr.at("left").items()) r.left[index.at(name)] = k.get<long long>();
        for (const auto& [name, k] : jr.at("right").items()) r.right[index.at(name)] = k.get<long long>();
        net.reactions.push_back(std::move(r));
    }
    validate_network(net);
    return net;
}

// Net production of species i by reaction j: right minus left coefficients.
inline Mat stoichiometric_matrix(const Network& net) {
    Mat g(net.n(), net.m());
    for (std::size_t j = 0; j < net.m(); ++j) {
        for (const auto& [i, k] : net.reactions[j].left) g(i, j) -= k;
        for (const auto& [i, k] : net.reactions[j].right) g(i, j) += k;
    }
    return g;
}

}  // namespace crn
