#include "upb/notation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace upb {

SymbolicProductBasis parse_basis(std::string_view text) {
    std::vector<std::vector<Symbol>> states;
    std::vector<Symbol> current;
    bool any_char = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            if (current.empty()) throw SyntaxError("empty state before ','", i);
            states.push_back(std::move(current));
            current.clear();
            continue;
        }
        any_char = true;
        if (c == '0') {
            current.push_back({'0', false});
        } else if (c == '1') {
            current.push_back({'0', true});
        } else if (c >= 'a' && c <= 'z') {
            current.push_back({c, false});
        } else if (c >= 'A' && c <= 'Z') {
            current.push_back({static_cast<char>(c - 'A' + 'a'), true});
        } else {
            throw SyntaxError(std::string("illegal character '") + c + "'", i);
        }
    }
    if (!any_char) throw SyntaxError("empty basis", 0);
    if (current.empty()) throw SyntaxError("trailing ','", text.size());
    states.push_back(std::move(current));

    SymbolicProductBasis b;
    b.s = static_cast<int>(states.size());
    b.p = static_cast<int>(states.front().size());
    for (const auto& st : states) {
        if (static_cast<int>(st.size()) != b.p)
            throw RaggedBasis("states have unequal lengths");
    }
    std::set<std::vector<Symbol>> uniq(states.begin(), states.end());
    if (uniq.size() != states.size()) throw DuplicateState("duplicate state in basis");
    b.states = std::move(states);
    return b;
}

std::string format_basis(const SymbolicProductBasis& b) {
    for (const auto& st : b.states) {
        if (static_cast<int>(st.size()) != b.p) throw RaggedBasis("ragged basis");
    }
    // Per qubit: rename letters in order of first appearance, '0' slot first.
    std::vector<std::map<char, char>> rename(b.p);
    for (int q = 0; q < b.p; ++q) {
        int next = 0;
        for (int v = 0; v < b.s; ++v) {
            char letter = b.states[v][q].letter;
            if (rename[q].count(letter)) continue;
            char out = next == 0 ? '0' : static_cast<char>('a' + next - 1);
            if (next > 26) throw Error("too many distinct bases on one qubit to print");
            rename[q][letter] = out;
            ++next;
        }
    }
    std::string text;
    for (int v = 0; v < b.s; ++v) {
        if (v) text += ',';
        for (int q = 0; q < b.p; ++q) {
            Symbol sym = b.states[v][q];
            char letter = rename[q][sym.letter];
            if (letter == '0') {
                text += sym.complemented ? '1' : '0';
            } else {
                text += sym.complemented ? static_cast<char>(letter - 'a' + 'A') : letter;
            }
        }
    }
    return text;
}

SymbolicProductBasis basis_from_graph(const OrthogonalityGraph& g) {
    require_valid(g);
    SymbolicProductBasis b;
    b.p = g.p;
    b.s = g.s;
    b.states.assign(g.s, std::vector<Symbol>(g.p));
    for (int q = 0; q < g.p; ++q) {
        const auto& f = g.qubits[q];
        std::vector<Symbol> region_symbol(f.regions.size());
        std::vector<char> assigned(f.regions.size(), 0);
        int next = 0;
        auto fresh = [&]() {
            if (next > 26) throw Error("too many bases on one qubit to symbolize");
            char letter = next == 0 ? '0' : static_cast<char>('a' + next - 1);
            ++next;
            return letter;
        };
        // Regions are sorted by (size, min vertex); walk components in order
        // of their smaller side's first vertex for a stable letter layout.
        std::vector<int> order(f.regions.size());
        for (size_t r = 0; r < order.size(); ++r) order[r] = static_cast<int>(r);
        std::sort(order.begin(), order.end(), [&](int i, int j) {
            return f.regions[i].front() < f.regions[j].front();
        });
        for (int r : order) {
            if (assigned[r]) continue;
            int mate = f.partner_of(r);
            char letter = fresh();
            region_symbol[r] = {letter, false};
            assigned[r] = 1;
            if (mate >= 0) {
                region_symbol[mate] = {letter, true};
                assigned[mate] = 1;
            }
        }
        for (size_t r = 0; r < f.regions.size(); ++r)
            for (Vertex v : f.regions[r]) b.states[v][q] = region_symbol[r];
    }
    return b;
}

std::string encode_graph(const OrthogonalityGraph& g) {
    require_valid(g);
    std::ostringstream out;
    out << "{\"p\":" << g.p << ",\"s\":" << g.s << ",\"qubits\":[";
    for (int q = 0; q < g.p; ++q) {
        if (q) out << ",";
        const auto& f = g.qubits[q];
        out << "{\"regions\":[";
        for (size_t r = 0; r < f.regions.size(); ++r) {
            if (r) out << ",";
            out << "[";
            for (size_t i = 0; i < f.regions[r].size(); ++i) {
                if (i) out << ",";
                out << f.regions[r][i];
            }
            out << "]";
        }
        out << "],\"matching\":[";
        for (size_t m = 0; m < f.matching.size(); ++m) {
            if (m) out << ",";
            out << "[" << f.matching[m].first << "," << f.matching[m].second << "]";
        }
        out << "]}";
    }
    out << "]}";
    return out.str();
}

OrthogonalityGraph decode_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DecodeError(std::string("graph record: ") + e.what(), e.byte);
    }
    try {
        OrthogonalityGraph g;
        g.p = doc.at("p").get<int>();
        g.s = doc.at("s").get<int>();
        for (const auto& qj : doc.at("qubits")) {
            std::vector<std::vector<Vertex>> regions;
            for (const auto& rj : qj.at("regions"))
                regions.push_back(rj.get<std::vector<Vertex>>());
            std::vector<std::pair<int, int>> matching;
            for (const auto& mj : qj.at("matching")) {
                if (mj.size() != 2) throw Error("matching entry is not a pair");
                matching.emplace_back(mj.at(0).get<int>(), mj.at(1).get<int>());
            }
            g.qubits.push_back(
                QubitFactorization::normalized(std::move(regions), std::move(matching)));
        }
        auto rep = validate_graph(g);
        if (!rep.ok()) throw DecodeError("graph record invalid: " + rep.to_string(), 0);
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("graph record: ") + e.what(), 0);
    }
}

}  // namespace upb
