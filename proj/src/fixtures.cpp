#include "upb/fixtures.hpp"

#include <sstream>

#include <json.hpp>

#include "upb/construct.hpp"
#include "upb/notation.hpp"
#include "upb/embedded_data.hpp"

namespace upb {

namespace {

std::vector<Fixture> load_fixtures() {
    std::vector<Fixture> out;
    std::istringstream in(embedded::fixtures_jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto doc = nlohmann::json::parse(line);
        Fixture f;
        f.name = doc.at("name").get<std::string>();
        f.p = doc.at("p").get<int>();
        f.s = doc.at("s").get<int>();
        f.ket = doc.at("ket").get<std::string>();
        auto basis = parse_basis(f.ket);
        if (basis.p != f.p || basis.s != f.s)
            throw Error("fixture " + f.name + " dimensions disagree with its ket");
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<SizeClaim> load_claims() {
    std::vector<SizeClaim> out;
    std::istringstream in(embedded::size_claims_jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto doc = nlohmann::json::parse(line);
        SizeClaim c;
        c.p = doc.at("p").get<int>();
        c.s = doc.at("s").get<long long>();
        std::string status = doc.at("status").get<std::string>();
        if (status == "exists") c.status = ClaimStatus::exists;
        else if (status == "impossible") c.status = ClaimStatus::impossible;
        else if (status == "unknown") c.status = ClaimStatus::unknown;
        else throw Error("size claim with unknown status " + status);
        c.source = doc.at("source").get<std::string>();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

const std::vector<Fixture>& fixture_corpus() {
    static const std::vector<Fixture> corpus = load_fixtures();
    return corpus;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixture_corpus())
        if (f.name == name) return f;
    throw Error("no fixture named " + name);
}

const std::vector<SizeClaim>& size_claims() {
    static const std::vector<SizeClaim> claims = load_claims();
    return claims;
}

std::vector<Fixture> combined_corpus() {
    std::vector<Fixture> out;
    auto base = parse_basis(fixture("shifts_3q").ket);
    for (const auto& f : fixture_corpus()) {
        if (f.name.rfind("pb_3q_", 0) != 0) continue;
        auto combined = combine(base, parse_basis(f.ket));
        Fixture cf;
        cf.name = "combined_" + f.name;
        cf.p = combined.p;
        cf.s = combined.s;
        cf.ket = format_basis(combined);
        out.push_back(std::move(cf));
    }
    return out;
}

}  // namespace upb
