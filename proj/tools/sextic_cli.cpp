#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "sextic/classify.hpp"
#include "sextic/criterion.hpp"
#include "sextic/errors.hpp"
#include "sextic/json_io.hpp"
#include "sextic/specialize.hpp"

namespace fs = std::filesystem;
using namespace sextic;

namespace {

struct RunConfig {
    std::string format = "text";
    int jobs = 0;  // 0 = hardware default
    std::string cache_dir;
    size_t budget = 50'000'000;
};

int effective_jobs(const RunConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string cache_path(const RunConfig& cfg, const ADEType& r) {
    return (fs::path(cfg.cache_dir) / (r.name() + ".json")).string();
}

std::vector<LatticeType> classify_cached(const RunConfig& cfg, const ADEType& r) {
    if (!cfg.cache_dir.empty()) {
        if (auto text = read_file(cache_path(cfg, r)))
            if (auto types = classification_from_json(*text, r)) return std::move(*types);
    }
    auto types = lattice_types(r);
    if (!cfg.cache_dir.empty()) {
        fs::create_directories(cfg.cache_dir);
        write_file_atomic(cache_path(cfg, r), classification_to_json(r, types));
    }
    return types;
}

std::string structure_str(const IVec& inv) {
    if (inv.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < inv.size(); ++i) s += (i ? "+" : "") + std::string("Z/") + inv[i].get_str();
    return s;
}

std::string degs_str(const std::vector<int>& degs) {
    std::string s = "[";
    for (size_t i = 0; i < degs.size(); ++i) s += (i ? "," : "") + std::to_string(degs[i]);
    return s + "]";
}

void print_classification_text(const ADEType& r, const std::vector<LatticeType>& types) {
    std::cout << "ADE type " << r.name() << " (mu = " << r.mu() << "): " << types.size()
              << " lattice type(s)\n";
    int idx = 0;
    for (const auto& t : types) {
        std::cout << "  type " << idx++ << ": |G| = " << t.glue_order().get_str()
                  << ", G = " << structure_str(t.g_structure)
                  << ", F = " << structure_str(t.profile.f_structure)
                  << ", degs = " << degs_str(t.profile.degs) << ", z1 = " << t.profile.z1
                  << ", z2 = " << t.profile.z2 << "\n";
        for (const auto& g : t.glue_gens) {
            std::vector<long> tl;
            for (const auto& v : g) tl.push_back(static_cast<long>(v.get_si()));
            IVec d = t.setting->dual_of_tuple(tl);
            std::cout << "    glue gen (dual): [";
            for (size_t i = 0; i < d.size(); ++i) std::cout << (i ? "," : "") << d[i].get_str();
            std::cout << "]\n";
        }
        for (const auto& c : t.profile.classes) {
            std::cout << "    " << c.role << " order " << c.class_order.get_str() << " coords [";
            for (size_t i = 0; i < c.dual.size(); ++i) std::cout << (i ? "," : "") << c.dual[i].get_str();
            std::cout << "] tau (";
            for (size_t i = 0; i < c.tau.size(); ++i) std::cout << (i ? "," : "") << c.tau[i];
            std::cout << ")\n";
        }
    }
}

void print_classification_csv(const ADEType& r, const std::vector<LatticeType>& types) {
    std::cout << "ade,mu,type,glue_order,G,F,degs,z1,z2\n";
    int idx = 0;
    for (const auto& t : types) {
        std::cout << r.name() << "," << r.mu() << "," << idx++ << "," << t.glue_order().get_str()
                  << "," << structure_str(t.g_structure) << ","
                  << structure_str(t.profile.f_structure) << "," << degs_str(t.profile.degs) << ","
                  << t.profile.z1 << "," << t.profile.z2 << "\n";
    }
}

int run_classify(const RunConfig& cfg, const std::string& ade) {
    ADEType r = parse_ade(ade);
    auto types = classify_cached(cfg, r);
    if (cfg.format == "json")
        std::cout << classification_to_json(r, types) << "\n";
    else if (cfg.format == "csv")
        print_classification_csv(r, types);
    else
        print_classification_text(r, types);
    return 0;
}

int run_enumerate(const RunConfig& cfg, int max_mu) {
    std::function<std::optional<std::vector<LatticeType>>(const ADEType&)> load;
    std::function<void(const ADEType&, const std::vector<LatticeType>&)> store;
    if (!cfg.cache_dir.empty()) {
        fs::create_directories(cfg.cache_dir);
        load = [&cfg](const ADEType& r) -> std::optional<std::vector<LatticeType>> {
            if (auto text = read_file(cache_path(cfg, r)))
                if (auto types = classification_from_json(*text, r)) return types;
            return std::nullopt;
        };
        store = [&cfg](const ADEType& r, const std::vector<LatticeType>& types) {
            write_file_atomic(cache_path(cfg, r), classification_to_json(r, types));
        };
    }
    auto res = enumerate_all(max_mu, effective_jobs(cfg), load, store);
    if (cfg.format == "json") {
        std::string out = "{\n  \"rows\": [";
        for (size_t i = 0; i < res.rows.size(); ++i) {
            out += (i ? "," : "");
            out += "\n    {\"mu\": " + std::to_string(res.rows[i].mu) +
                   ", \"lattice_types\": " + std::to_string(res.rows[i].lattice_types) +
                   ", \"config_types\": " + std::to_string(res.rows[i].config_types) + "}";
        }
        out += "\n  ],\n  \"zariski_kples\": [";
        for (size_t i = 0; i < res.kples.size(); ++i) {
            const auto& k = res.kples[i];
            out += (i ? "," : "");
            out += "\n    {\"ade\": \"" + k.r.name() + "\", \"mu\": " + std::to_string(k.mu) +
                   ", \"k\": " + std::to_string(k.members.size()) +
                   ", \"g_orders_differ\": " + (k.g_orders_differ ? "true" : "false") +
                   ", \"members\": [";
            for (size_t j = 0; j < k.members.size(); ++j) {
                const auto& m = k.members[j];
                out += (j ? "," : "");
                out += "{\"z1\": " + std::to_string(m.z1) + ", \"z2\": " + std::to_string(m.z2) +
                       ", \"g_order\": \"" + m.g_order.get_str() + "\"}";
            }
            out += "]}";
        }
        out += "\n  ]\n}";
        std::cout << out << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "mu,lattice_types,config_types\n";
        for (const auto& row : res.rows)
            std::cout << row.mu << "," << row.lattice_types << "," << row.config_types << "\n";
    } else {
        std::cout << "mu | lattice types | configuration types\n";
        for (const auto& row : res.rows)
            std::cout << row.mu << " | " << row.lattice_types << " | " << row.config_types << "\n";
        std::cout << res.kples.size() << " lattice Zariski k-ple(s)\n";
        for (const auto& k : res.kples) {
            std::cout << "  " << k.r.name() << " (mu=" << k.mu << ", k=" << k.members.size()
                      << (k.g_orders_differ ? ", |G| pairwise distinct" : "") << "):";
            for (const auto& m : k.members)
                std::cout << " (z1=" << m.z1 << ",z2=" << m.z2 << ",|G|=" << m.g_order.get_str() << ")";
            std::cout << "\n";
        }
    }
    return 0;
}

int run_specialize(const RunConfig& cfg, const std::string& src_path, const std::string& dst_path) {
    auto src_text = read_file(src_path);
    auto dst_text = read_file(dst_path);
    if (!src_text || !dst_text) throw parse_error("cannot read input files");
    ParsedLatticeData src = lattice_data_from_json(*src_text);
    ParsedLatticeData dst = lattice_data_from_json(*dst_text);
    bool complete = true;
    if (src.marked && dst.marked) {
        ExtendedLatticeData es{src.type, *src.marked};
        ExtendedLatticeData ed{dst.type, *dst.marked};
        auto cert = certify_specialization(es, ed, cfg.budget, &complete);
        if (cert) {
            std::cout << "certified embedding found (marked sign "
                      << (cert->marked_sign > 0 ? "+" : "-") << ")\n";
            std::cout << "flags: isometric=1 h_preserving=1 monoid=1 primitive=1 marked=1 vanishing_h1=1\n";
            return 0;
        }
    } else {
        std::vector<GeometricEmbedding> found;
        search_geometric_embeddings(src.type, dst.type, cfg.budget,
                                    [&](const GeometricEmbedding& e) {
                                        found.push_back(e);
                                        return found.size() < 16;
                                    });
        if (!found.empty()) {
            std::cout << found.size() << " geometric embedding(s) found\n";
            for (const auto& e : found) {
                std::cout << "flags: isometric=" << e.isometric << " h_preserving=" << e.h_preserving
                          << " monoid=" << e.monoid_condition << " primitive=" << e.primitive << "\n";
            }
            return 0;
        }
    }
    if (!complete) {
        std::cerr << "search budget exhausted before completion\n";
        return 4;
    }
    std::cerr << "no geometric embedding found\n";
    return 1;
}

int run_criterion(const RunConfig&, int deg, const std::string& t_str,
                  const std::vector<std::string>& sing) {
    SplitCurveSpec spec;
    spec.degree = deg;
    auto t = rat_from_string(t_str);
    if (!t) throw parse_error("bad rational for --t: " + t_str);
    spec.t_gamma = *t;
    for (const auto& s : sing) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw parse_error("expected TYPE:TAU in --sing " + s);
        ADEType r = parse_ade(s.substr(0, colon));
        int tau = std::stoi(s.substr(colon + 1));
        for (const auto& c : r.components) spec.incidences.emplace_back(c, tau);
    }
    Rat lhs = pre_z_split_lhs(spec);
    auto res = pre_z_split_test(spec);
    std::cout << "lhs = " << rat_to_string(lhs) << ", t = " << rat_to_string(spec.t_gamma) << ": ";
    switch (res) {
        case SplitTestResult::Equality:
            std::cout << "Equality (pre-Z-splitting)\n";
            break;
        case SplitTestResult::StrictInequality:
            std::cout << "StrictInequality (splitting, not pre-Z)\n";
            break;
        case SplitTestResult::Infeasible:
            std::cout << "Infeasible (inconsistent input)\n";
            break;
    }
    return 0;
}

int run_demo(const RunConfig& cfg) {
    RunConfig c = cfg;
    std::cout << "== classification of A3+2A7 ==\n";
    ADEType r = parse_ade("A3+2A7");
    auto types = classify_cached(c, r);
    print_classification_text(r, types);

    std::cout << "\n== specialization: conic class-order 4, 2A1+4A3 into A3+2A7 ==\n";
    ADEType r2 = parse_ade("2A1+4A3");
    auto types2 = classify_cached(c, r2);
    const LatticeType* src = nullptr;
    for (const auto& t : types2)
        if (t.profile.z2 == 1 && t.glue_order() == 4) src = &t;
    const LatticeType* dst = nullptr;
    for (const auto& t : types)
        if (t.profile.z2 == 1) dst = &t;
    if (src && dst) {
        auto src_pairs = distinct_marked_pairs(*src, src->sets.conic_l);
        auto dst_pairs = distinct_marked_pairs(*dst, dst->sets.conic_l);
        bool complete = true;
        auto cert = certify_specialization({*src, src_pairs.front()}, {*dst, dst_pairs.front()},
                                           c.budget, &complete);
        std::cout << (cert ? "certified embedding found\n" : "no certificate found\n");
    }
    std::cout << "\n== numerical criterion examples ==\n";
    run_criterion(c, 2, "0", {"6A2:1"});
    run_criterion(c, 1, "3", {});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice-type classification of simple plane sextics"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--format", cfg.format, "output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--jobs", cfg.jobs, "worker threads (default: hardware)");
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory for classification results")
        ->envname("SEXTIC_CACHE_DIR");
    app.add_option("--budget", cfg.budget, "node budget for embedding searches");

    std::string ade;
    auto* c_classify = app.add_subcommand("classify", "classify lattice types of one ADE configuration");
    c_classify->fallthrough();
    c_classify->add_option("ade", ade, "ADE type, e.g. A3+2A7")->required();

    int max_mu = 8;
    auto* c_enum = app.add_subcommand("enumerate", "count lattice and configuration types per mu");
    c_enum->fallthrough();
    c_enum->add_option("--max-mu", max_mu, "maximal total Milnor number")->required();

    std::string src_path, dst_path;
    auto* c_spec = app.add_subcommand("specialize", "search geometric embeddings between lattice data");
    c_spec->fallthrough();
    c_spec->add_option("src", src_path, "source lattice-datum JSON")->required();
    c_spec->add_option("dst", dst_path, "target lattice-datum JSON")->required();

    int deg = 1;
    std::string t_str = "0";
    std::vector<std::string> sing;
    auto* c_crit = app.add_subcommand("criterion", "numerical pre-Z-splitting test");
    c_crit->fallthrough();
    c_crit->add_option("--deg", deg, "degree of the proposed curve")->required();
    c_crit->add_option("--t", t_str, "pairing of the lift with the branch transform")->required();
    c_crit->add_option("--sing", sing, "incidences TYPE:TAU, e.g. 6A2:1");

    auto* c_demo = app.add_subcommand("demo", "run the A3+2A7 walkthrough");
    c_demo->fallthrough();

    CLI11_PARSE(app, argc, argv);
    try {
        if (c_classify->parsed()) return run_classify(cfg, ade);
        if (c_enum->parsed()) return run_enumerate(cfg, max_mu);
        if (c_spec->parsed()) return run_specialize(cfg, src_path, dst_path);
        if (c_crit->parsed()) return run_criterion(cfg, deg, t_str, sing);
        if (c_demo->parsed()) return run_demo(cfg);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
