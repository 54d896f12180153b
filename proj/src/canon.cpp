#include "upb/canon.hpp"

#include <algorithm>
#include <set>

#include "upb/notation.hpp"

namespace upb {

OrthogonalityGraph relabel(const OrthogonalityGraph& g,
                           const std::vector<int>& vertex_map,
                           const std::vector<int>& qubit_order) {
    if (static_cast<int>(vertex_map.size()) != g.s ||
        static_cast<int>(qubit_order.size()) != g.p)
        throw Error("relabel: permutation sizes disagree with graph");
    OrthogonalityGraph out;
    out.p = g.p;
    out.s = g.s;
    out.qubits.reserve(g.p);
    for (int pos = 0; pos < g.p; ++pos) {
        const auto& f = g.qubits[qubit_order[pos]];
        std::vector<std::vector<Vertex>> regions;
        regions.reserve(f.regions.size());
        for (const auto& r : f.regions) {
            std::vector<Vertex> verts;
            verts.reserve(r.size());
            for (Vertex v : r) verts.push_back(vertex_map[v]);
            regions.push_back(std::move(verts));
        }
        out.qubits.push_back(QubitFactorization::normalized(std::move(regions), f.matching));
    }
    return out;
}

namespace {

// Canonical labeling for one fixed qubit order. Vertices are partitioned by
// iteratively refined signatures; non-singleton cells are split by
// individualizing each member in turn; every discrete partition yields a
// labeling whose encoding competes for the minimum.
class CanonSearch {
public:
    CanonSearch(const OrthogonalityGraph& g, const std::vector<int>& qubit_order)
        : g_(g), order_(qubit_order), s_(g.s) {
        region_of_.assign(order_.size(), std::vector<int>(s_));
        partner_region_.assign(order_.size(), std::vector<int>(s_, -1));
        for (size_t qi = 0; qi < order_.size(); ++qi) {
            const auto& f = g_.qubits[order_[qi]];
            for (int r = 0; r < static_cast<int>(f.regions.size()); ++r)
                for (Vertex v : f.regions[r]) region_of_[qi][v] = r;
            for (int r = 0; r < static_cast<int>(f.regions.size()); ++r) {
                int mate = f.partner_of(r);
                if (mate >= 0)
                    for (Vertex v : f.regions[r]) partner_region_[qi][v] = mate;
            }
        }
    }

    std::string run() {
        std::vector<int> color(s_, 0);
        refine(color);
        descend(color);
        return best_;
    }

private:
    const OrthogonalityGraph& g_;
    std::vector<int> order_;
    int s_;
    std::vector<std::vector<int>> region_of_;
    std::vector<std::vector<int>> partner_region_;
    std::string best_;

    void refine(std::vector<int>& color) const {
        // Signature starts with the current color, so refinement keeps the
        // relative order of existing cells stable.
        for (int round = 0; round < s_; ++round) {
            std::vector<std::vector<int>> sig(s_);
            for (Vertex v = 0; v < s_; ++v) {
                auto& sv = sig[v];
                sv.push_back(color[v]);
                for (size_t qi = 0; qi < order_.size(); ++qi) {
                    const auto& f = g_.qubits[order_[qi]];
                    const auto& own = f.regions[region_of_[qi][v]];
                    std::vector<int> mates;
                    mates.reserve(own.size());
                    for (Vertex u : own)
                        if (u != v) mates.push_back(color[u]);
                    std::sort(mates.begin(), mates.end());
                    sv.push_back(static_cast<int>(mates.size()));
                    sv.insert(sv.end(), mates.begin(), mates.end());
                    int pr = partner_region_[qi][v];
                    if (pr < 0) {
                        sv.push_back(-1);
                    } else {
                        std::vector<int> partner;
                        for (Vertex u : f.regions[pr]) partner.push_back(color[u]);
                        std::sort(partner.begin(), partner.end());
                        sv.push_back(static_cast<int>(partner.size()));
                        sv.insert(sv.end(), partner.begin(), partner.end());
                    }
                }
            }
            std::vector<int> idx(s_);
            for (int i = 0; i < s_; ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
            std::vector<int> next(s_);
            int c = 0;
            for (int i = 0; i < s_; ++i) {
                if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++c;
                next[idx[i]] = c;
            }
            if (next == color) break;
            color = std::move(next);
        }
    }

    void descend(const std::vector<int>& color) {
        // First non-singleton cell in color order.
        int target = -1;
        {
            std::vector<int> count(s_, 0);
            for (int c : color) ++count[c];
            for (int c = 0; c < s_; ++c) {
                if (count[c] > 1) {
                    target = c;
                    break;
                }
            }
        }
        if (target < 0) {
            std::vector<int> vmap(s_);
            for (Vertex v = 0; v < s_; ++v) vmap[v] = color[v];
            std::string enc = encode_graph(relabel(g_, vmap, order_));
            if (best_.empty() || enc < best_) best_ = std::move(enc);
            return;
        }
        for (Vertex v = 0; v < s_; ++v) {
            if (color[v] != target) continue;
            std::vector<int> next(color);
            for (Vertex u = 0; u < s_; ++u)
                if (next[u] > target || (next[u] == target && u != v)) ++next[u];
            next[v] = target;
            refine(next);
            descend(next);
        }
    }
};

std::string qubit_fingerprint(const QubitFactorization& f) {
    OrthogonalityGraph one;
    one.p = 1;
    one.s = 0;
    for (const auto& r : f.regions) one.s += static_cast<int>(r.size());
    one.qubits.push_back(f);
    return encode_graph(one);
}

}  // namespace

CanonicalKey canonical_key(const OrthogonalityGraph& g) {
    require_valid(g);
    std::vector<std::string> prints(g.p);
    for (int q = 0; q < g.p; ++q) prints[q] = qubit_fingerprint(g.qubits[q]);

    std::vector<int> perm(g.p);
    for (int q = 0; q < g.p; ++q) perm[q] = q;
    std::sort(perm.begin(), perm.end());

    std::string best;
    std::set<std::vector<std::string>> seen;  // skip orders equal as content
    do {
        std::vector<std::string> arranged(g.p);
        for (int i = 0; i < g.p; ++i) arranged[i] = prints[perm[i]];
        if (!seen.insert(arranged).second) continue;
        CanonSearch search(g, perm);
        std::string enc = search.run();
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return CanonicalKey{std::move(best)};
}

bool are_equivalent(const OrthogonalityGraph& g1, const OrthogonalityGraph& g2) {
    require_valid(g1);
    require_valid(g2);
    if (g1.p != g2.p || g1.s != g2.s) return false;
    if (profile_of(g1).normalized() != profile_of(g2).normalized()) return false;
    return canonical_key(g1) == canonical_key(g2);
}

void Deduper::add(const OrthogonalityGraph& g) {
    if (p_ < 0) {
        p_ = g.p;
        s_ = g.s;
    } else if (g.p != p_ || g.s != s_) {
        throw MixedDimensions("dedupe stream mixes (p,s) dimensions");
    }
    CanonicalKey key = canonical_key(g);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, CatalogEntry{key, g, 1});
    } else {
        ++it->second.multiplicity;
    }
}

std::vector<CatalogEntry> Deduper::take() {
    std::vector<CatalogEntry> out;
    out.reserve(entries_.size());
    for (auto& [key, entry] : entries_) out.push_back(std::move(entry));
    entries_.clear();
    return out;
}

std::vector<CatalogEntry> dedupe(const std::vector<OrthogonalityGraph>& graphs) {
    Deduper d;
    for (const auto& g : graphs) d.add(g);
    return d.take();
}

}  // namespace upb
