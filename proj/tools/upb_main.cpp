// Command-line front end: parse, check, classify, construct, and census
// subcommands over the upb library. Structured output is JSON lines;
// --pretty switches to human-readable tables where available.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "upb/canon.hpp"
#include "upb/checker.hpp"
#include "upb/construct.hpp"
#include "upb/fixtures.hpp"
#include "upb/notation.hpp"
#include "upb/search.hpp"

namespace {

std::atomic<bool> g_cancel{false};

void on_signal(int) { g_cancel.store(true); }

// Inputs may be literal ket text, a literal graph record, or @path to a file
// holding either (comments after '#' and blank lines ignored).
std::string slurp_input(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw upb::Error("cannot open " + arg.substr(1));
    std::ostringstream text;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (text.tellp() > 0) text << "\n";
        text << line;
    }
    return text.str();
}

upb::OrthogonalityGraph graph_input(const std::string& arg) {
    std::string text = slurp_input(arg);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return upb::decode_graph(text);
    return upb::graph_from_states(upb::parse_basis(text));
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_catalog(std::ostream& out, const std::vector<upb::CatalogEntry>& catalog) {
    out << upb::kCatalogHeader << "\n";
    for (const auto& entry : catalog) {
        out << "{\"key\":" << json_string(entry.key.bytes)
            << ",\"graph\":" << upb::encode_graph(entry.representative)
            << ",\"multiplicity\":" << entry.multiplicity << "}\n";
    }
}

std::vector<upb::CatalogEntry> read_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw upb::Error("cannot open catalog " + path);
    std::string line;
    if (!std::getline(in, line)) throw upb::Error("empty catalog " + path);
    auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != "upb-catalog")
        throw upb::Error("not a catalog file: " + path);
    if (header.value("version", 0) != 1)
        throw upb::Error("catalog version mismatch in " + path);
    std::vector<upb::CatalogEntry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto doc = nlohmann::json::parse(line);
        upb::CatalogEntry e;
        e.key.bytes = doc.at("key").get<std::string>();
        e.representative = upb::decode_graph(doc.at("graph").dump());
        e.multiplicity = doc.at("multiplicity").get<std::uint64_t>();
        entries.push_back(std::move(e));
    }
    return entries;
}

int run_check(const std::string& input, bool pretty) {
    auto g = graph_input(input);
    auto verdict = upb::classify(g);
    std::cout << upb::to_string(verdict.kind) << "\n" << upb::encode_graph(g) << "\n";
    if (verdict.kind == upb::Verdict::Kind::not_pairwise_orthogonal) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [u, v] : verdict.missing_pairs) pairs.push_back({u, v});
        std::cout << "{\"missing_pairs\":" << pairs.dump() << "}\n";
    } else if (verdict.kind == upb::Verdict::Kind::extendible) {
        nlohmann::json w = verdict.witness->region_per_qubit;
        std::cout << "{\"witness_regions\":" << w.dump() << "}\n";
    }
    if (pretty && verdict.is_upb())
        std::cout << "ket: " << upb::format_basis(upb::basis_from_graph(g)) << "\n";
    return verdict.is_upb() ? 0 : 1;
}

int run_search(int p, int s, int workers, const std::string& out_path,
               const std::string& resume, const upb::ProfileConstraints& base, bool pretty) {
    upb::ProfileConstraints c = base;
    c.p = p;
    c.s = s;
    upb::SearchOptions opts;
    opts.workers = workers;
    opts.resume_path = resume;
    opts.cancel = &g_cancel;
    if (pretty) {
        opts.progress = [](std::size_t done, std::size_t total) {
            if (done % 500 == 0 || done == total)
                std::cerr << "\r" << done << "/" << total << " profiles" << std::flush;
            if (done == total) std::cerr << "\n";
        };
    }
    std::signal(SIGINT, on_signal);
    auto outcome = upb::full_search(c, opts);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw upb::Error("cannot write " + out_path);
        write_catalog(out, outcome.catalog);
    }
    std::cout << (pretty ? outcome.report.to_table() : outcome.report.to_json() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qubit unextendible product bases: checking, classification, construction"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable output");

    std::string input, second;
    int p = 0, workers = 0;
    long long s = 0;
    std::string out_path, resume, method, qubit_arg;

    auto* cmd_parse = app.add_subcommand("parse", "parse ket text, print normalized form and graph record");
    cmd_parse->add_option("input", input)->required();

    auto* cmd_check = app.add_subcommand("check", "classify a basis or graph record");
    cmd_check->add_option("input", input)->required();

    auto* cmd_canon = app.add_subcommand("canon", "print the canonical key");
    cmd_canon->add_option("input", input)->required();

    auto* cmd_equiv = app.add_subcommand("equiv", "decide equivalence of two inputs");
    cmd_equiv->add_option("a", input)->required();
    cmd_equiv->add_option("b", second)->required();

    upb::ProfileConstraints flags;
    auto add_constraint_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--allow-unmatched", flags.allow_unmatched_regions,
                      "extend the profile space with one-sided regions");
        cmd->add_flag("!--no-lemma-a1", flags.use_lemma_a1, "disable the single-component prune");
        cmd->add_flag("!--no-lemma-a2", flags.use_lemma_a2, "disable the covering-chain prune");
        cmd->add_flag("--odd-rule", flags.use_odd_pair_rule, "enable the odd-size pair rule");
    };

    auto* cmd_profiles = app.add_subcommand("profiles", "enumerate component size profiles");
    cmd_profiles->add_option("--p", p)->required();
    cmd_profiles->add_option("--s", s)->required();
    add_constraint_flags(cmd_profiles);

    auto* cmd_search = app.add_subcommand("search", "exhaustive census for one (p, s)");
    cmd_search->add_option("--p", p)->required();
    cmd_search->add_option("--s", s)->required();
    cmd_search->add_option("--workers", workers, "worker threads (default: hardware)");
    cmd_search->add_option("--resume", resume, "unit log for interrupt/resume");
    cmd_search->add_option("-o,--output", out_path, "catalog file (.jsonl)");
    add_constraint_flags(cmd_search);

    auto* cmd_construct = app.add_subcommand("construct", "build reference UPBs");
    cmd_construct->add_option("--method", method, "shifts|standard|combine|mult4|split")->required();
    cmd_construct->add_option("--p", p);
    cmd_construct->add_option("--s", s);
    cmd_construct->add_option("--a", input, "first basis (combine) or input graph (split)");
    cmd_construct->add_option("--b", second, "second basis (combine)");
    cmd_construct->add_option("--qubit", qubit_arg, "qubit index to split");

    auto* cmd_sizes = app.add_subcommand("sizes", "attainable-size catalog for p qubits");
    cmd_sizes->add_option("--p", p)->required();

    std::vector<std::string> merge_inputs;
    auto* cmd_merge = app.add_subcommand("merge", "merge catalogs of one (p, s)");
    cmd_merge->add_option("-o,--output", out_path)->required();
    cmd_merge->add_option("inputs", merge_inputs, "catalog files")->required();

    auto* cmd_fixtures = app.add_subcommand("fixtures", "list the bundled reference corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_parse->parsed()) {
            auto b = upb::parse_basis(slurp_input(input));
            auto g = upb::graph_from_states(b);
            std::cout << "{\"ket\":" << json_string(upb::format_basis(b))
                      << ",\"graph\":" << upb::encode_graph(g) << "}\n";
            return 0;
        }
        if (cmd_check->parsed()) return run_check(input, pretty);
        if (cmd_canon->parsed()) {
            std::cout << upb::canonical_key(graph_input(input)).bytes << "\n";
            return 0;
        }
        if (cmd_equiv->parsed()) {
            bool eq = upb::are_equivalent(graph_input(input), graph_input(second));
            std::cout << (eq ? "true" : "false") << "\n";
            return eq ? 0 : 1;
        }
        if (cmd_profiles->parsed()) {
            flags.p = p;
            flags.s = static_cast<int>(s);
            upb::EnumerationStats stats;
            auto profiles = upb::enumerate_profiles(flags, &stats);
            for (const auto& pr : profiles) {
                nlohmann::json q = nlohmann::json::array();
                for (const auto& qb : pr.qubits) {
                    nlohmann::json pairs = nlohmann::json::array();
                    for (auto [a, b] : qb) pairs.push_back({a, b});
                    q.push_back(pairs);
                }
                std::cout << "{\"qubits\":" << q.dump() << "}\n";
            }
            std::cout << "{\"profiles\":" << stats.kept << ",\"ordered\":" << stats.kept_ordered
                      << ",\"candidates\":" << stats.candidates
                      << ",\"constraints\":" << json_string(flags.describe()) << "}\n";
            return 0;
        }
        if (cmd_search->parsed())
            return run_search(p, static_cast<int>(s), workers, out_path, resume, flags, pretty);
        if (cmd_construct->parsed()) {
            upb::SymbolicProductBasis basis;
            if (method == "shifts") {
                basis = upb::shifts();
            } else if (method == "standard") {
                basis = upb::standard_basis(p);
            } else if (method == "combine") {
                basis = upb::combine(upb::parse_basis(slurp_input(input)),
                                     upb::parse_basis(slurp_input(second)));
            } else if (method == "mult4") {
                basis = upb::basis_from_graph(upb::build_multiple_of_four(p, s));
            } else if (method == "split") {
                basis = upb::basis_from_graph(
                    upb::split_qubit(graph_input(input), std::stoi(qubit_arg)));
            } else {
                throw upb::BadArguments("unknown construct method " + method);
            }
            std::cout << "{\"ket\":" << json_string(upb::format_basis(basis))
                      << ",\"graph\":" << upb::encode_graph(upb::graph_from_states(basis))
                      << "}\n";
            return 0;
        }
        if (cmd_sizes->parsed()) {
            auto cat = upb::attainable_sizes(p);
            if (pretty) {
                std::cout << "p=" << p << "\n  attainable: " << cat.attainable.to_string()
                          << "\n  impossible: " << cat.impossible.to_string()
                          << "\n  unknown:    " << cat.unknown.to_string()
                          << "\n  minimum size " << upb::min_size(p) << ", proven gap "
                          << cat.proven_gap << ", possible gap " << cat.possible_gap << "\n";
            } else {
                nlohmann::ordered_json doc;
                doc["p"] = p;
                doc["min_size"] = upb::min_size(p);
                auto dump_set = [](const upb::IntervalSet& set) {
                    nlohmann::json arr = nlohmann::json::array();
                    for (auto [lo, hi] : set.intervals()) arr.push_back({lo, hi});
                    return arr;
                };
                doc["attainable"] = dump_set(cat.attainable);
                doc["impossible"] = dump_set(cat.impossible);
                doc["unknown"] = dump_set(cat.unknown);
                doc["proven_gap"] = cat.proven_gap;
                doc["possible_gap"] = cat.possible_gap;
                std::cout << doc.dump() << "\n";
            }
            return 0;
        }
        if (cmd_merge->parsed()) {
            std::vector<upb::CatalogEntry> merged;
            int mp = -1, ms = -1;
            std::map<upb::CanonicalKey, upb::CatalogEntry> by_key;
            for (const auto& path : merge_inputs) {
                for (auto& e : read_catalog(path)) {
                    if (mp < 0) {
                        mp = e.representative.p;
                        ms = e.representative.s;
                    } else if (e.representative.p != mp || e.representative.s != ms) {
                        throw upb::MixedDimensions("catalogs mix (p,s) dimensions");
                    }
                    auto it = by_key.find(e.key);
                    if (it == by_key.end())
                        by_key.emplace(e.key, std::move(e));
                    else
                        it->second.multiplicity = std::max(it->second.multiplicity, e.multiplicity);
                }
            }
            for (auto& [k, e] : by_key) merged.push_back(std::move(e));
            std::ofstream out(out_path);
            if (!out) throw upb::Error("cannot write " + out_path);
            write_catalog(out, merged);
            std::cout << "{\"classes\":" << merged.size() << "}\n";
            return 0;
        }
        if (cmd_fixtures->parsed()) {
            for (const auto& f : upb::fixture_corpus())
                std::cout << "{\"name\":" << json_string(f.name) << ",\"p\":" << f.p
                          << ",\"s\":" << f.s << ",\"ket\":" << json_string(f.ket) << "}\n";
            return 0;
        }
    } catch (const upb::Interrupted& e) {
        std::cerr << "interrupted; resume with --resume " << e.resume_path << "\n";
        return 1;
    } catch (const upb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
