// Command-line front end: deterministic JSON reports over the interchange
// formats, with golden-file comparison.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bitwist/report.hpp"

using namespace bitwist;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Common {
    bool json = false;
    std::string golden;
    long long seed = 0;       // reserved for randomized property suites
    long long cap = 200000;   // flag cap for isomorphism searches
};

int emit(const Common& c, const std::string& subcommand, const std::string& input_bytes,
         const Json& result, const std::string& human) {
    Json rep = run_report(subcommand, digest_bytes(input_bytes), result);
    std::string serialized = rep.dump(2) + "\n";
    if (!c.golden.empty()) {
        std::string want;
        try {
            want = slurp(c.golden);
        } catch (const std::exception&) {
            std::cerr << "golden file missing; produced report follows\n" << serialized;
            return 1;
        }
        if (want != serialized) {
            std::cerr << "golden mismatch against " << c.golden << "\n";
            std::cout << serialized;
            return 1;
        }
        std::cout << "golden match: " << c.golden << "\n";
        return 0;
    }
    if (c.json)
        std::cout << serialized;
    else
        std::cout << human;
    return 0;
}

std::map<std::string, mpq_class> parse_alpha(const std::vector<std::string>& specs) {
    std::map<std::string, mpq_class> alpha;
    for (const auto& spec : specs) {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad --alpha entry: " + item);
            mpq_class v(item.substr(eq + 1));
            v.canonicalize();
            alpha[item.substr(0, eq)] = v;
        }
    }
    return alpha;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bitwist construction toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json, "machine-readable report");
    app.add_option("--golden", common.golden, "compare report against a golden file");
    app.add_option("--seed", common.seed, "seed for randomized property subcommands");
    app.add_option("--cap", common.cap, "size cap for isomorphism searches");

    std::string file, file2, edge1, edge2, pq, mults, mode;
    std::vector<std::string> alpha_specs;

    auto* validate = app.add_subcommand("validate", "validate a ball (and pairing) file");
    validate->add_option("file", file)->required();
    auto* cycles = app.add_subcommand("cycles", "edge cycles of a face-pairing");
    cycles->add_option("file", file)->required();
    auto* build = app.add_subcommand("build", "subdivide, bitwist, quotient, certify");
    build->add_option("file", file)->required();
    auto* invariants = app.add_subcommand("invariants", "fundamental group and homology");
    invariants->add_option("file", file)->required();
    auto* heegaard = app.add_subcommand("heegaard", "edge-pairing surface and twist data");
    heegaard->add_option("file", file)->required();
    auto* dualcheck = app.add_subcommand("dualcheck", "vertex-link duality certificate");
    dualcheck->add_option("file", file)->required();
    auto* lens = app.add_subcommand("lens", "lens space continued fractions");
    lens->add_option("--pq", pq, "P/Q");
    lens->add_option("--multipliers", mults, "m1,m2,...");
    auto* surgery = app.add_subcommand("surgery", "framed link operations");
    surgery->add_option("mode", mode, "simplify | h1")->required();
    surgery->add_option("file", file)->required();
    auto* consum = app.add_subcommand("consum", "connected sum of two paired balls");
    consum->add_option("file1", file)->required();
    consum->add_option("edge1", edge1)->required();
    consum->add_option("file2", file2)->required();
    consum->add_option("edge2", edge2)->required();
    auto* reframe = app.add_subcommand("reframe", "attach scallops for new framings");
    reframe->add_option("file", file)->required();
    reframe->add_option("--alpha", alpha_specs, "edge=P/Q[,edge=P/Q...]")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_validate(in);
            bool ok = r["ball"]["ok"].get<bool>() &&
                      (!in.has_pairing || r["pairing"]["ok"].get<bool>());
            return emit(common, "validate", bytes, r, ok ? "ok\n" : "invalid\n");
        }
        if (cycles->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_cycles(in);
            std::ostringstream h;
            for (const auto& cy : r["cycles"])
                h << "[" << cy["representative"].get<std::string>() << "] length "
                  << cy["length"] << "\n";
            return emit(common, "cycles", bytes, r, h.str());
        }
        if (build->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_build(in);
            std::ostringstream h;
            h << "cells (" << r["cells"]["v"] << ", " << r["cells"]["e"] << ", " << r["cells"]["f"]
              << ", " << r["cells"]["c3"] << ")  euler " << r["euler"] << "  certificate "
              << (r["certificate"]["pass"].get<bool>() ? "pass" : "fail") << "\n";
            return emit(common, "build", bytes, r, h.str());
        }
        if (invariants->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_invariants(in);
            std::ostringstream h;
            h << "generators:";
            for (const auto& g : r["generators"]) h << " " << g.get<std::string>();
            h << "\nrelators:\n";
            for (const auto& rel : r["relators"])
                h << "  " << rel["word"].get<std::string>() << "\n";
            h << "H1 = " << r["h1"].get<std::string>() << "\n";
            return emit(common, "invariants", bytes, r, h.str());
        }
        if (heegaard->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_heegaard(in);
            std::ostringstream h;
            h << "genus " << r["genus"] << ", twist word " << r["twist_word"].get<std::string>()
              << ", winding " << (r["winding_verified"].get<bool>() ? "verified" : "FAILED")
              << "\n";
            return emit(common, "heegaard", bytes, r, h.str());
        }
        if (dualcheck->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            FacePairing p{in.ball, in.pairing};
            EdgeCycleSet cy = edge_cycles(p);
            MultiplierFunction mul = attach_multipliers(cy, in.multipliers);
            DualLinkCheck res = dual_link_check(p, mul, common.cap);
            Json r;
            r["isomorphic"] = res.isomorphic;
            r["skipped_by_cap"] = res.skipped_by_cap;
            r["detail"] = res.detail;
            return emit(common, "dualcheck", bytes, r, res.detail + "\n");
        }
        if (lens->parsed()) {
            Json r;
            std::string input;
            if (!pq.empty()) {
                auto slash = pq.find('/');
                mpz_class p(pq.substr(0, slash));
                mpz_class q(slash == std::string::npos ? "1" : pq.substr(slash + 1));
                r = report_lens_from_pq(p, q);
                input = pq;
            } else if (!mults.empty()) {
                std::vector<long long> m;
                std::stringstream ss(mults);
                std::string item;
                while (std::getline(ss, item, ',')) m.push_back(std::stoll(item));
                r = report_lens_from_multipliers(m);
                input = mults;
            } else {
                std::cerr << "lens: need --pq or --multipliers\n";
                return 2;
            }
            std::ostringstream h;
            h << "L(" << r["p"].get<std::string>() << "," << r["q"].get<std::string>()
              << ")  multipliers";
            for (const auto& m : r["multipliers"]) h << " " << m;
            h << "\n";
            return emit(common, "lens", input, r, h.str());
        }
        if (surgery->parsed()) {
            std::string bytes = slurp(file);
            LinkInput in = parse_link_input(Json::parse(bytes));
            if (mode == "h1") {
                Json r = report_surgery_h1(in);
                return emit(common, "surgery-h1", bytes, r,
                            "H1 = " + r["h1"].get<std::string>() + "\n");
            }
            if (mode == "simplify") {
                Json r = report_surgery_simplify(in);
                std::ostringstream h;
                h << r["link"]["components"].size() << " components after simplification\n";
                return emit(common, "surgery-simplify", bytes, r, h.str());
            }
            std::cerr << "surgery: unknown mode " << mode << "\n";
            return 2;
        }
        if (consum->parsed()) {
            std::string bytes = slurp(file), bytes2 = slurp(file2);
            BallInput a = parse_ball_input(Json::parse(bytes));
            BallInput b = parse_ball_input(Json::parse(bytes2));
            Json r = report_consum(a, edge1, b, edge2);
            std::ostringstream h;
            h << "connected sum: certificate "
              << (r["certificate_pass"].get<bool>() ? "pass" : "fail") << ", H1 = "
              << r["h1"].get<std::string>() << "\n";
            return emit(common, "consum", bytes + "\n" + bytes2, r, h.str());
        }
        if (reframe->parsed()) {
            std::string bytes = slurp(file);
            BallInput in = parse_ball_input(Json::parse(bytes));
            Json r = report_reframe(in, parse_alpha(alpha_specs));
            std::ostringstream h;
            h << "reframed: H1 = " << r["h1"].get<std::string>() << "\n";
            return emit(common, "reframe", bytes, r, h.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
