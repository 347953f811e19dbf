#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lcmix/io.hpp"
#include "lcmix/version.hpp"

namespace {

using lcmix::io::json;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lcmix::InputError("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct Output {
    std::string path; // empty = stdout
    bool timestamp = true;

    void emit(json j, const json& config) const {
        j["tool"] = "lcmix";
        j["version"] = lcmix::kVersion;
        j["config"] = config;
        if (timestamp) {
            auto now = std::chrono::system_clock::now();
            j["generated_at"] =
                (long long)std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
                    .count();
        }
        std::string text = j.dump(2);
        if (path.empty()) {
            std::cout << text << std::endl;
        } else {
            std::ofstream out(path);
            if (!out) throw lcmix::InputError("cannot write " + path);
            out << text << std::endl;
        }
    }
};

std::vector<int> parse_kappa_list(const std::string& arg) {
    std::vector<int> out;
    size_t range = arg.find("..");
    if (range != std::string::npos) {
        int lo = std::stoi(arg.substr(0, range));
        int hi = std::stoi(arg.substr(range + 2));
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    size_t pos = 0;
    while (pos < arg.size()) {
        size_t comma = arg.find(',', pos);
        if (comma == std::string::npos) comma = arg.size();
        out.push_back(std::stoi(arg.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw lcmix::InputError("empty kappa list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"aperiodicity, mixing times, local consistency, and fooling instances"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // frees -h / --h for the chromatic target

    Output output;
    std::uint64_t seed = 0;
    long long budget = 50'000'000;
    int threads = 1;
    app.add_option("--out", output.path, "write the JSON report here instead of stdout");
    app.add_flag("!--no-timestamp", output.timestamp, "omit the timestamp for byte-stable output");
    app.add_option("--seed", seed, "seed for randomized subcommands (echoed in reports)");
    app.add_option("--budget", budget, "work budget for search-heavy operations");
    app.add_option("--threads", threads, "parallelism hint (reserved)");

    std::string in_path, instance_path, template_path, weak_path;
    int kappa = 2;
    std::string kappa_spec = "0..3";
    std::string beta_str = "41/40", gamma_str = "4", delta_str = "0";
    int tau = 1, g = 3, h = 3, r = 2, n = 60, max_attempts = 20;
    double p = 0.1;
    bool proof_faithful = false;
    std::optional<long long> cap;

    auto* c_params = app.add_subcommand("params", "derived parameters of the random construction");
    c_params->add_option("--g", g, "girth target")->required();
    c_params->add_option("--h", h, "chromatic target")->required();
    c_params->add_option("--beta", beta_str, "rational beta > 1, as p/q")->required();
    c_params->add_option("--r", r, "uniformity")->required();

    auto* c_aper = app.add_subcommand("aperiodicity", "decide aperiodicity of a structure");
    c_aper->add_option("--in", in_path, "structure JSON")->required();
    long long cap_value = -1;
    c_aper->add_option("--cap", cap_value, "level-set iteration cap");

    auto* c_mix = app.add_subcommand("mixing-time", "exact mixing time of a structure");
    c_mix->add_option("--in", in_path, "structure JSON")->required();
    c_mix->add_option("--cap", cap_value, "level-set iteration cap");

    auto* c_stats = app.add_subcommand("hg-stats", "fibrosity and sparsity analytics");
    c_stats->add_option("--in", in_path, "hypergraph JSON")->required();
    c_stats->add_option("--tau", tau, "fiber length for fbr_tau");
    std::string stats_beta;
    c_stats->add_option("--beta", stats_beta, "also decide beta-sparsity, rational p/q");

    auto* c_girth = app.add_subcommand("girth", "shortest Berge cycle length");
    c_girth->add_option("--in", in_path, "hypergraph JSON")->required();

    auto* c_gen = app.add_subcommand("generate", "verified sparse high-girth high-chromatic instance");
    c_gen->add_option("--n", n, "vertex count")->required();
    c_gen->add_option("--p", p, "edge probability")->required();
    c_gen->add_option("--r", r, "uniformity");
    c_gen->add_option("--g", g, "girth target");
    c_gen->add_option("--h", h, "chromatic target");
    c_gen->add_option("--beta", beta_str, "rational beta");
    c_gen->add_option("--delta", delta_str, "rational delta for the threshold check");
    c_gen->add_option("--max-attempts", max_attempts, "rejection-loop attempts");
    c_gen->add_flag("--proof-faithful", proof_faithful, "remove exactly n/2 vertices, not a minimal hitting set");
    std::string gen_out;
    c_gen->add_option("--hypergraph-out", gen_out, "write the accepted hypergraph JSON here");

    auto* c_lc = app.add_subcommand("lc", "local-consistency run");
    c_lc->add_option("--instance", instance_path, "instance JSON")->required();
    c_lc->add_option("--template", template_path, "template JSON")->required();
    c_lc->add_option("--kappa", kappa, "consistency level")->required();

    auto* c_hom = app.add_subcommand("hom", "homomorphism search");
    c_hom->add_option("--instance", instance_path, "instance JSON")->required();
    c_hom->add_option("--template", template_path, "template JSON")->required();

    auto* c_gap = app.add_subcommand("gap", "consistency-gap check (tiny scale)");
    c_gap->add_option("--instance", instance_path, "instance JSON")->required();
    c_gap->add_option("--template", template_path, "template JSON")->required();
    c_gap->add_option("--kappa", kappa, "gap level")->required();
    c_gap->add_option("--gamma", gamma_str, "rational gamma")->required();

    auto* c_fool = app.add_subcommand("fool", "end-to-end fooling-instance experiment");
    c_fool->add_option("--template", template_path, "strong template JSON")->required();
    c_fool->add_option("--weak", weak_path, "weak template JSON")->required();
    c_fool->add_option("--n", n, "instance size");
    c_fool->add_option("--p", p, "edge probability");
    c_fool->add_option("--kappa", kappa_spec, "kappa list, e.g. 0..3 or 2,3");
    c_fool->add_option("--max-attempts", max_attempts, "generation attempts");
    c_fool->add_flag("--proof-faithful", proof_faithful, "exact n/2 removal regime");
    int min_girth = 2;
    c_fool->add_option("--min-girth", min_girth, "floor for the generation girth target");

    for (auto* sub : app.get_subcommands({})) {
        sub->set_help_flag("--help", "print help");
        sub->fallthrough(); // global options may follow the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitYes : kExitError; // malformed flags are input errors
    }

    json config = {{"seed", seed}, {"budget", budget}, {"threads", threads}};

    try {
        if (*c_params) {
            config["subcommand"] = "params";
            auto params = lcmix::derived_params(g, h, lcmix::Rat::parse(beta_str), r);
            output.emit(lcmix::io::report_to_json(params), config);
            return kExitYes;
        }
        if (*c_aper || *c_mix) {
            config["subcommand"] = *c_aper ? "aperiodicity" : "mixing-time";
            config["in"] = in_path;
            auto s = lcmix::io::parse_structure_text(read_file(in_path));
            auto monic = s.is_monic() ? s : lcmix::monic_product(s);
            auto rep = lcmix::mixing_time_monic(
                monic, cap_value > 0 ? std::optional<long long>(cap_value) : std::nullopt);
            output.emit(lcmix::io::report_to_json(rep), config);
            if (rep.status == lcmix::AperiodicityStatus::Undecided) return kExitBudget;
            return rep.aperiodic() ? kExitYes : kExitNo;
        }
        if (*c_stats) {
            config["subcommand"] = "hg-stats";
            config["in"] = in_path;
            auto hg = lcmix::io::parse_hypergraph_text(read_file(in_path));
            std::optional<lcmix::Rat> beta;
            if (!stats_beta.empty()) beta = lcmix::Rat::parse(stats_beta);
            auto rep = lcmix::fibrosity_report(hg, tau, beta);
            output.emit(lcmix::io::report_to_json(rep), config);
            return kExitYes;
        }
        if (*c_girth) {
            config["subcommand"] = "girth";
            config["in"] = in_path;
            auto hg = lcmix::io::parse_hypergraph_text(read_file(in_path));
            auto gv = lcmix::girth(hg);
            json j;
            if (gv) j["girth"] = *gv;
            else j["girth"] = "inf";
            output.emit(j, config);
            return kExitYes;
        }
        if (*c_gen) {
            config["subcommand"] = "generate";
            lcmix::GenOptions opts;
            opts.proof_faithful = proof_faithful;
            opts.chi_budget = budget;
            auto [hg, rep] = lcmix::generate_verified(n, p, r, g, h, lcmix::Rat::parse(beta_str),
                                                      lcmix::Rat::parse(delta_str), max_attempts,
                                                      seed, opts);
            output.emit(lcmix::io::report_to_json(rep), config);
            if (hg && !gen_out.empty()) {
                std::ofstream out(gen_out);
                out << lcmix::io::hypergraph_to_json(*hg).dump(2) << std::endl;
            }
            return hg ? kExitYes : kExitBudget;
        }
        if (*c_lc) {
            config["subcommand"] = "lc";
            config["kappa"] = kappa;
            auto x = lcmix::io::parse_structure_text(read_file(instance_path));
            auto a = lcmix::io::parse_structure_text(read_file(template_path));
            lcmix::LcOptions opts;
            opts.slot_budget = budget;
            auto res = lcmix::lc(x, a, kappa, opts);
            output.emit(lcmix::io::report_to_json(res), config);
            return res.yes ? kExitYes : kExitNo;
        }
        if (*c_hom) {
            config["subcommand"] = "hom";
            auto x = lcmix::io::parse_structure_text(read_file(instance_path));
            auto a = lcmix::io::parse_structure_text(read_file(template_path));
            auto hom = lcmix::find_homomorphism(x, a);
            json j = {{"exists", hom.has_value()}};
            if (hom) j["map"] = *hom;
            output.emit(j, config);
            return hom ? kExitYes : kExitNo;
        }
        if (*c_gap) {
            config["subcommand"] = "gap";
            config["kappa"] = kappa;
            config["gamma"] = gamma_str;
            auto x = lcmix::io::parse_structure_text(read_file(instance_path));
            auto a = lcmix::io::parse_structure_text(read_file(template_path));
            auto v = lcmix::check_consistency_gap(x, a, kappa, lcmix::Rat::parse(gamma_str), budget);
            output.emit(lcmix::io::report_to_json(v), config);
            return v.holds ? kExitYes : kExitNo;
        }
        if (*c_fool) {
            config["subcommand"] = "fool";
            auto a = lcmix::io::parse_structure_text(read_file(template_path));
            auto b = lcmix::io::parse_structure_text(read_file(weak_path));
            lcmix::PipelineConfig pc;
            pc.n = n;
            pc.p = p;
            pc.kappa_list = parse_kappa_list(kappa_spec);
            pc.seed = seed;
            pc.max_attempts = max_attempts;
            pc.lc_budget = budget;
            pc.proof_faithful = proof_faithful;
            pc.min_girth = min_girth;
            auto rep = lcmix::fooling_pipeline(a, b, pc);
            output.emit(lcmix::io::report_to_json(rep), config);
            return rep.fooled ? kExitYes : kExitBudget;
        }
    } catch (const lcmix::InputError& e) {
        std::cerr << "input error: " << e.what() << std::endl;
        return kExitError;
    } catch (const lcmix::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << std::endl;
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitError;
    }
    return kExitError;
}
