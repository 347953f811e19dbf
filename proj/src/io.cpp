#include "lcmix/io.hpp"

namespace lcmix::io {

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

int require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw InputError(where + ": expected an integer");
    return j.get<int>();
}

} // namespace

RelationalStructure parse_structure(const json& j) {
    if (!j.is_object()) throw InputError("structure: expected a JSON object");
    if (!j.contains("domain_size") || !j.contains("relations"))
        throw InputError("structure: needs domain_size and relations");
    const int n = require_int(j["domain_size"], "domain_size");
    if (!j["relations"].is_array()) throw InputError("relations: expected an array");

    Signature sig;
    std::vector<std::vector<Tuple>> rels;
    int rel_idx = 0;
    for (const auto& r : j["relations"]) {
        const std::string where = "relations[" + std::to_string(rel_idx) + "]";
        if (!r.is_object() || !r.contains("name") || !r.contains("arity") || !r.contains("tuples"))
            throw InputError(where + ": needs name, arity, tuples");
        RelationSymbol sym;
        sym.name = r["name"].get<std::string>();
        sym.arity = require_int(r["arity"], where + ".arity");
        std::vector<Tuple> tuples;
        int tup_idx = 0;
        for (const auto& t : r["tuples"]) {
            if (!t.is_array())
                throw InputError(where + ".tuples[" + std::to_string(tup_idx) + "]: expected an array");
            Tuple tup;
            int ent_idx = 0;
            for (const auto& e : t) {
                int v = require_int(e, where + ".tuples[" + std::to_string(tup_idx) + "][" +
                                           std::to_string(ent_idx) + "]");
                if (v < 0 || v >= n)
                    throw InputError(where + ".tuples[" + std::to_string(tup_idx) + "][" +
                                     std::to_string(ent_idx) + "]: vertex " + std::to_string(v) +
                                     " out of range [0," + std::to_string(n) + ")");
                tup.push_back(v);
                ++ent_idx;
            }
            if ((int)tup.size() != sym.arity)
                throw InputError(where + ".tuples[" + std::to_string(tup_idx) +
                                 "]: length does not match arity " + std::to_string(sym.arity));
            tuples.push_back(std::move(tup));
            ++tup_idx;
        }
        sig.symbols.push_back(sym);
        rels.push_back(std::move(tuples));
        ++rel_idx;
    }
    return RelationalStructure::make(std::move(sig), n, std::move(rels));
}

RelationalStructure parse_structure_text(const std::string& text) {
    return parse_structure(parse_text(text));
}

json structure_to_json(const RelationalStructure& s) {
    json rels = json::array();
    for (int i = 0; i < s.num_symbols(); ++i) {
        json tuples = json::array();
        for (const Tuple& t : s.relations[i]) tuples.push_back(t);
        rels.push_back({{"name", s.sig.symbols[i].name},
                        {"arity", s.sig.symbols[i].arity},
                        {"tuples", tuples}});
    }
    return {{"domain_size", s.domain_size}, {"relations", rels}};
}

Hypergraph parse_hypergraph(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("r") || !j.contains("edges"))
        throw InputError("hypergraph: needs n, r, edges");
    const int n = require_int(j["n"], "n");
    const int r = require_int(j["r"], "r");
    std::vector<std::vector<int>> edges;
    int e_idx = 0;
    for (const auto& e : j["edges"]) {
        if (!e.is_array()) throw InputError("edges[" + std::to_string(e_idx) + "]: expected an array");
        std::vector<int> edge;
        int v_idx = 0;
        for (const auto& v : e) {
            int vi = require_int(v, "edges[" + std::to_string(e_idx) + "][" + std::to_string(v_idx) + "]");
            if (vi < 0 || vi >= n)
                throw InputError("edges[" + std::to_string(e_idx) + "][" + std::to_string(v_idx) +
                                 "]: vertex " + std::to_string(vi) + " out of range [0," +
                                 std::to_string(n) + ")");
            edge.push_back(vi);
            ++v_idx;
        }
        edges.push_back(std::move(edge));
        ++e_idx;
    }
    return Hypergraph::make(n, r, std::move(edges));
}

Hypergraph parse_hypergraph_text(const std::string& text) {
    return parse_hypergraph(parse_text(text));
}

json hypergraph_to_json(const Hypergraph& h) {
    json edges = json::array();
    for (const auto& e : h.edges) edges.push_back(e);
    return {{"n", h.n}, {"r", h.r}, {"edges", edges}};
}

json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw InputError("expected a rational as \"p/q\" or an integer");
}

namespace {

const char* status_name(AperiodicityStatus s) {
    switch (s) {
        case AperiodicityStatus::Aperiodic: return "aperiodic";
        case AperiodicityStatus::NotAperiodic: return "not-aperiodic";
        default: return "undecided";
    }
}

const char* mode_name(VerdictMode m) {
    switch (m) {
        case VerdictMode::Exact: return "exact";
        case VerdictMode::Implied: return "implied";
        default: return "unknown";
    }
}

const char* verdict_name(PropertyVerdict v) {
    switch (v) {
        case PropertyVerdict::VerifiedTrue: return "verified-true";
        case PropertyVerdict::VerifiedFalse: return "verified-false";
        default: return "unknown";
    }
}

json girth_json(const std::optional<int>& g) {
    if (g) return *g;
    return "inf";
}

} // namespace

json report_to_json(const AperiodicityReport& rep) {
    json j = {{"status", status_name(rep.status)},
              {"aperiodic", rep.aperiodic()},
              {"certificate", rep.certificate}};
    if (rep.mixing_time) j["mixing_time"] = *rep.mixing_time;
    if (rep.upper_bound_used) j["upper_bound_used"] = *rep.upper_bound_used;
    return j;
}

json report_to_json(const SparsityVerdict& v) {
    json j = {{"mode", mode_name(v.mode)}};
    if (v.value) j["value"] = *v.value;
    if (!v.witness_edges.empty()) j["witness_edges"] = v.witness_edges;
    return j;
}

json report_to_json(const FibrosityReport& rep) {
    json j = {{"tau", rep.tau},
              {"fbr_tau", rep.fbr_tau},
              {"fbr_max", rep.fbr_max},
              {"pendency", rep.pendency},
              {"link_count", rep.link_count},
              {"girth", girth_json(rep.girth)},
              {"sdr_total", rat_to_json(rep.sdr_total)},
              {"sdr_identity_holds", rep.sdr_identity_holds}};
    if (rep.beta) {
        j["beta"] = rat_to_json(*rep.beta);
        j["beta_sparse"] = *rep.beta_sparse;
        j["hereditarily_beta_sparse"] = *rep.hereditarily_beta_sparse;
    }
    return j;
}

json report_to_json(const GeneratorParams& p) {
    return {{"r", p.r},
            {"g", p.g},
            {"h", p.h},
            {"beta", rat_to_json(p.beta)},
            {"ell", (double)p.ell},
            {"nu", (double)p.nu},
            {"theta", (double)p.theta},
            {"mu", (double)p.mu},
            {"delta", (double)p.delta},
            {"n0", "unquantified in source"},
            {"mu_bound_holds", p.mu_bound_holds},
            {"theta_bound_holds", p.theta_bound_holds}};
}

json report_to_json(const GenerationReport& rep) {
    json j = {{"attempts", rep.attempts},
              {"success", rep.success},
              {"seed", rep.seed},
              {"final_n", rep.final_n},
              {"final_m", rep.final_m},
              {"girth", girth_json(rep.girth)},
              {"girth_verdict", verdict_name(rep.girth_ok)},
              {"chromatic_verdict", verdict_name(rep.chromatic_ok)},
              {"chromatic_certificate", rep.chromatic_certificate},
              {"threshold_sparsity", report_to_json(rep.threshold_sparsity)}};
    if (rep.chi_exact) j["chi_exact"] = *rep.chi_exact;
    if (rep.independence) j["independence"] = *rep.independence;
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    return j;
}

json report_to_json(const LcResult& res) {
    return {{"answer", res.yes ? "yes" : "no"},
            {"kappa", res.kappa},
            {"family_size", res.family_size},
            {"eliminated", res.eliminated}};
}

json report_to_json(const GapVerdict& v) {
    json j = {{"holds", v.holds}};
    if (v.witness) {
        json pairs = json::array();
        for (auto [src, val] : v.witness->f.pairs) pairs.push_back({src, val});
        json tuples = json::array();
        for (const auto& per_symbol : v.witness->y.tuple_indices) tuples.push_back(per_symbol);
        j["witness"] = {{"map", pairs},
                        {"substructure_vertices", v.witness->y.vertices},
                        {"substructure_tuples", tuples}};
    }
    return j;
}

json report_to_json(const FoolingReport& rep) {
    json runs = json::array();
    for (const auto& kv : rep.lc_runs)
        runs.push_back({{"kappa", kv.kappa}, {"answer", kv.answer}, {"family_size", kv.family_size}});
    json j = {{"fooled", rep.fooled},
              {"fooled_kappa", rep.fooled_kappa},
              {"tau", rep.tau},
              {"r", rep.r},
              {"weak_template_chromatic", rep.chromatic_b},
              {"chi_target", rep.chi_target},
              {"a_was_monic", rep.a_was_monic},
              {"b_was_monic", rep.b_was_monic},
              {"n", rep.n},
              {"m", rep.m},
              {"instance_girth", girth_json(rep.instance_girth)},
              {"generation", report_to_json(rep.generation)},
              {"sparsity_at_na", report_to_json(rep.sparsity_at_na)},
              {"hereditarily_sparse", rep.hereditarily_sparse},
              {"lc_runs", runs},
              {"non_hom_certificate", rep.non_hom_certificate},
              {"non_hom_exact", rep.non_hom_exact},
              {"seed", rep.seed},
              {"beta", rat_to_json(rep.beta)},
              {"delta_derived", (double)rep.delta_derived},
              {"epsilon_derived", (double)rep.epsilon_derived},
              {"kappa_over_n", rep.kappa_over_n},
              {"notes", rep.notes}};
    if (!rep.abort_stage.empty()) j["abort_stage"] = rep.abort_stage;
    return j;
}

} // namespace lcmix::io
