#include "upb/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace upb {

int QubitFactorization::partner_of(int region) const {
    for (auto [a, b] : matching) {
        if (a == region) return b;
        if (b == region) return a;
    }
    return -1;
}

int QubitFactorization::region_of(Vertex v) const {
    for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
        for (Vertex u : regions[r])
            if (u == v) return r;
    }
    return -1;
}

QubitFactorization QubitFactorization::normalized(std::vector<std::vector<Vertex>> regions,
                                                  std::vector<std::pair<int, int>> matching) {
    for (auto& r : regions) std::sort(r.begin(), r.end());
    std::vector<int> order(regions.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    auto key = [&](int i) {
        return std::make_pair(regions[i].size(), regions[i].empty() ? -1 : regions[i].front());
    };
    std::sort(order.begin(), order.end(), [&](int i, int j) { return key(i) < key(j); });
    std::vector<int> pos(regions.size());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);

    QubitFactorization q;
    q.regions.reserve(regions.size());
    for (int i : order) q.regions.push_back(std::move(regions[i]));
    for (auto [a, b] : matching) {
        int na = (a >= 0 && a < static_cast<int>(pos.size())) ? pos[a] : a;
        int nb = (b >= 0 && b < static_cast<int>(pos.size())) ? pos[b] : b;
        q.matching.emplace_back(std::min(na, nb), std::max(na, nb));
    }
    std::sort(q.matching.begin(), q.matching.end());
    return q;
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (size_t i = 0; i < issues.size(); ++i) {
        if (i) out << "; ";
        if (issues[i].qubit >= 0) out << "qubit " << issues[i].qubit << ": ";
        out << issues[i].rule;
        if (!issues[i].detail.empty()) out << " (" << issues[i].detail << ")";
    }
    return out.str();
}

ValidationReport validate_graph(const OrthogonalityGraph& g) {
    ValidationReport rep;
    auto issue = [&](int qubit, std::string rule, std::string detail = {}) {
        rep.issues.push_back({qubit, std::move(rule), std::move(detail)});
    };

    if (g.p < 1) issue(-1, "qubit count must be at least 1");
    if (g.s < 1) issue(-1, "state count must be at least 1");
    if (static_cast<int>(g.qubits.size()) != g.p)
        issue(-1, "qubit list length disagrees with p");

    for (int q = 0; q < static_cast<int>(g.qubits.size()); ++q) {
        const auto& f = g.qubits[q];
        std::vector<int> seen(std::max(g.s, 0), 0);
        for (int r = 0; r < static_cast<int>(f.regions.size()); ++r) {
            if (f.regions[r].empty()) {
                issue(q, "empty region", "region " + std::to_string(r));
                continue;
            }
            for (Vertex v : f.regions[r]) {
                if (v < 0 || v >= g.s) {
                    issue(q, "vertex index out of range", std::to_string(v));
                } else if (seen[v]++) {
                    issue(q, "overlapping regions", "vertex " + std::to_string(v));
                }
            }
        }
        for (Vertex v = 0; v < g.s; ++v) {
            if (v < static_cast<int>(seen.size()) && !seen[v])
                issue(q, "vertex not covered by any region", std::to_string(v));
        }

        std::vector<int> used(f.regions.size(), 0);
        for (auto [a, b] : f.matching) {
            if (a < 0 || b < 0 || a >= static_cast<int>(f.regions.size()) ||
                b >= static_cast<int>(f.regions.size())) {
                issue(q, "matching references unknown region",
                      std::to_string(a) + "," + std::to_string(b));
                continue;
            }
            if (a == b) {
                issue(q, "self-paired region", std::to_string(a));
                continue;
            }
            if (used[a]++) issue(q, "region matched twice", std::to_string(a));
            if (used[b]++) issue(q, "region matched twice", std::to_string(b));
        }
    }
    return rep;
}

void require_valid(const OrthogonalityGraph& g) {
    auto rep = validate_graph(g);
    if (!rep.ok()) throw InvalidGraph("invalid orthogonality graph: " + rep.to_string());
}

OrthogonalityGraph graph_from_states(const SymbolicProductBasis& b) {
    for (const auto& st : b.states) {
        if (static_cast<int>(st.size()) != b.p)
            throw Error("ragged basis: state length disagrees with p");
    }
    OrthogonalityGraph g;
    g.p = b.p;
    g.s = b.s;
    g.qubits.reserve(b.p);
    for (int q = 0; q < b.p; ++q) {
        std::map<Symbol, std::vector<Vertex>> groups;
        for (int v = 0; v < b.s; ++v) groups[b.states[v][q]].push_back(v);

        std::vector<std::vector<Vertex>> regions;
        std::map<Symbol, int> index;
        for (auto& [sym, verts] : groups) {
            index[sym] = static_cast<int>(regions.size());
            regions.push_back(verts);
        }
        std::vector<std::pair<int, int>> matching;
        for (auto& [sym, idx] : index) {
            if (sym.complemented) continue;
            Symbol mate{sym.letter, true};
            auto it = index.find(mate);
            if (it != index.end()) matching.emplace_back(idx, it->second);
        }
        g.qubits.push_back(QubitFactorization::normalized(std::move(regions), std::move(matching)));
    }
    return g;
}

SizeProfile SizeProfile::normalized() const {
    SizeProfile out = *this;
    std::sort(out.qubits.begin(), out.qubits.end(), std::greater<>());
    return out;
}

std::string SizeProfile::to_string() const {
    std::ostringstream out;
    out << p << "x" << s << ":";
    for (const auto& q : qubits) {
        out << "[";
        for (auto [a, b] : q) out << "(" << a << "," << b << ")";
        out << "]";
    }
    return out.str();
}

std::string SizeProfile::hash() const {
    std::string text = normalized().to_string();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

SizeProfile profile_of(const OrthogonalityGraph& g) {
    require_valid(g);
    SizeProfile pr;
    pr.p = g.p;
    pr.s = g.s;
    pr.qubits.reserve(g.p);
    for (const auto& f : g.qubits) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<char> matched(f.regions.size(), 0);
        for (auto [a, b] : f.matching) {
            matched[a] = matched[b] = 1;
            int sa = static_cast<int>(f.regions[a].size());
            int sb = static_cast<int>(f.regions[b].size());
            pairs.emplace_back(std::max(sa, sb), std::min(sa, sb));
        }
        for (size_t r = 0; r < f.regions.size(); ++r) {
            if (!matched[r]) pairs.emplace_back(static_cast<int>(f.regions[r].size()), 0);
        }
        std::sort(pairs.begin(), pairs.end(), std::greater<>());
        pr.qubits.push_back(std::move(pairs));
    }
    return pr;
}

OrthogonalityGraph induced_subgraph(const OrthogonalityGraph& g,
                                    const std::vector<Vertex>& keep,
                                    int drop_qubit) {
    require_valid(g);
    std::vector<int> newid(g.s, -1);
    {
        std::set<Vertex> uniq(keep.begin(), keep.end());
        if (uniq.size() != keep.size()) throw Error("induced_subgraph: duplicate vertices");
        int next = 0;
        for (Vertex v : uniq) {
            if (v < 0 || v >= g.s) throw Error("induced_subgraph: vertex out of range");
            newid[v] = next++;
        }
    }
    OrthogonalityGraph out;
    out.s = static_cast<int>(keep.size());
    for (int q = 0; q < g.p; ++q) {
        if (q == drop_qubit) continue;
        const auto& f = g.qubits[q];
        std::vector<std::vector<Vertex>> regions;
        std::vector<int> surviving(f.regions.size(), -1);
        for (size_t r = 0; r < f.regions.size(); ++r) {
            std::vector<Vertex> verts;
            for (Vertex v : f.regions[r])
                if (newid[v] >= 0) verts.push_back(newid[v]);
            if (!verts.empty()) {
                surviving[r] = static_cast<int>(regions.size());
                regions.push_back(std::move(verts));
            }
        }
        std::vector<std::pair<int, int>> matching;
        for (auto [a, b] : f.matching) {
            if (surviving[a] >= 0 && surviving[b] >= 0)
                matching.emplace_back(surviving[a], surviving[b]);
        }
        out.qubits.push_back(QubitFactorization::normalized(std::move(regions), std::move(matching)));
    }
    out.p = static_cast<int>(out.qubits.size());
    return out;
}

}  // namespace upb
