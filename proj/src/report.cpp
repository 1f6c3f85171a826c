#include "bitwist/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace bitwist {

namespace {

Json validation_to_json(const ValidationReport& r) {
    Json j;
    j["ok"] = r.ok;
    j["violations"] = r.violations;
    return j;
}

FacePairing pairing_of(const BallInput& in) {
    if (!in.has_pairing) throw std::invalid_argument("input has no pairing");
    return FacePairing{in.ball, in.pairing};
}

MultiplierFunction multipliers_of(const BallInput& in, const EdgeCycleSet& cycles) {
    if (in.multipliers.empty()) throw std::invalid_argument("input has no multipliers");
    return attach_multipliers(cycles, in.multipliers);
}

Json trace_to_json(const std::vector<OrbitHop>& trace, const OffsetPairing& pairing) {
    Json hops = Json::array();
    for (const auto& h : trace) {
        Json hop;
        hop["edge"] = h.edge;
        hop["dir"] = h.dir;
        hop["pair"] = pairing.pairs[h.pair].from + "|" + pairing.pairs[h.pair].to;
        hop["power"] = h.power;
        hops.push_back(std::move(hop));
    }
    return hops;
}

Json curve_to_json(const EdgeCycle& c) {
    Json j = Json::array();
    for (const auto& s : c) j.push_back((s.dir > 0 ? "+" : "-") + s.edge);
    return j;
}

}  // namespace

std::pair<SubdividedBall, BitwistPairing> build_bitwist(const BallInput& in) {
    FacePairing p = pairing_of(in);
    EdgeCycleSet cycles = edge_cycles(p);
    MultiplierFunction mul = multipliers_of(in, cycles);
    SubdividedBall q = subdivide(p, mul);
    BitwistPairing d = bitwist(q);
    return {std::move(q), std::move(d)};
}

QuotientComplex build_quotient(const BallInput& in) {
    auto [q, d] = build_bitwist(in);
    return quotient(q, d);
}

Json report_validate(const BallInput& in) {
    Json j;
    j["ball"] = validation_to_json(validate_sphere(in.ball));
    if (in.has_pairing) j["pairing"] = validation_to_json(validate_pairing(pairing_of(in)));
    if (in.has_pairing && !in.multipliers.empty()) {
        Json m;
        try {
            EdgeCycleSet cycles = edge_cycles(pairing_of(in));
            multipliers_of(in, cycles);
            m["ok"] = true;
            m["violations"] = Json::array();
        } catch (const std::exception& e) {
            m["ok"] = false;
            m["violations"] = Json::array({e.what()});
        }
        j["multipliers"] = m;
    }
    return j;
}

Json report_cycles(const BallInput& in) {
    FacePairing p = pairing_of(in);
    EdgeCycleSet cycles = edge_cycles(p);
    Json j;
    j["count"] = cycles.cycles.size();
    j["cycles"] = Json::array();
    for (const auto& cy : cycles.cycles) {
        Json c;
        c["representative"] = cy.representative;
        c["length"] = cy.length;
        c["trace"] = trace_to_json(cy.trace, in.pairing);
        if (in.multipliers.count(cy.representative))
            c["multiplier"] = in.multipliers.at(cy.representative);
        j["cycles"].push_back(std::move(c));
    }
    return j;
}

Json report_build(const BallInput& in) {
    auto [q, d] = build_bitwist(in);
    QuotientComplex m = quotient(q, d);
    ManifoldCertificate cert = certify_manifold(m);

    Json j;
    j["subdivision"] = {{"vertices", q.ball.vertices.size()},
                        {"edges", q.ball.edges.size()},
                        {"faces", q.ball.faces.size()}};
    j["cells"] = {{"v", m.vertices}, {"e", m.edges}, {"f", m.faces}, {"c3", m.three_cells}};
    j["euler"] = m.euler();
    j["certificate"] = {{"pass", cert.pass},
                        {"vertex_orbits", cert.vertex_orbits},
                        {"edge_orbits", cert.edge_orbits},
                        {"face_pairs", cert.face_pairs}};
    j["edge_orbit_traces"] = Json::array();
    for (const auto& orb : m.orbits.edge_orbits) {
        Json t;
        t["length"] = orb.trace.size();
        t["hops"] = trace_to_json(orb.trace, d.delta);
        j["edge_orbit_traces"].push_back(std::move(t));
    }
    return j;
}

Json report_invariants(const BallInput& in) {
    QuotientComplex m = build_quotient(in);
    GroupPresentation pres = pi1(m);
    AbelianInvariants ab = h1(pres);

    Json j;
    j["generators"] = pres.generator_names;
    j["relators"] = Json::array();
    auto word_str = [&](const Word& w) {
        std::string s;
        for (int x : w) {
            int g = x > 0 ? x : -x;
            s += (s.empty() ? "" : " ") + std::string(x > 0 ? "" : "~") + pres.generator_names[g - 1];
        }
        return s;
    };
    for (size_t r = 0; r < pres.relators.size(); ++r)
        j["relators"].push_back({{"word", word_str(pres.relators[r])},
                                 {"length", pres.relators[r].size()},
                                 {"reduced", word_str(pres.reduced_relators[r])}});
    j["h1"] = ab.to_string();
    j["h1_order"] = ab.order().get_str();
    j["euler"] = m.euler();
    return j;
}

Json report_heegaard(const BallInput& in) {
    auto [q, d] = build_bitwist(in);
    EdgePairingSurface s = build_surface(q, d);
    HeegaardDiagram diag = heegaard_diagram(s);
    CylinderDecomposition dec = cylinders(s, q);
    TwistWord tw = twist_word(dec);
    WindingReport wr = winding_check(s, diag, dec);

    Json j;
    j["genus"] = s.genus;
    j["v_curves"] = Json::array();
    for (const auto& c : diag.v_curves) j["v_curves"].push_back(curve_to_json(c));
    j["d_curves"] = Json::array();
    for (const auto& c : diag.d_curves) j["d_curves"].push_back(curve_to_json(c));
    j["cylinders"] = Json::array();
    for (size_t i = 0; i < dec.cylinders.size(); ++i) {
        const auto& cyl = dec.cylinders[i];
        j["cylinders"].push_back({{"cycle", cyl.cycle_representative},
                                  {"multiplier", cyl.multiplier},
                                  {"winding", wr.winding[i]},
                                  {"caps", cyl.caps.size()}});
    }
    std::string word;
    for (const auto& f : tw.factors)
        word += (word.empty() ? "" : " . ") + std::string("tau[") + f.cycle_representative +
                "]^" + std::to_string(f.exponent);
    j["twist_word"] = word;
    j["winding_verified"] = wr.pass;
    return j;
}

Json report_lens_from_pq(const mpz_class& p, const mpz_class& q) {
    LensParams lp = multipliers_from_lens(p, q);
    LensParams back = lens_from_multipliers(lp.m);
    Json j;
    j["p"] = lp.p.get_str();
    j["q"] = lp.q.get_str();
    j["a"] = lp.a;
    j["multipliers"] = lp.m;
    j["round_trip"] = (back.p == lp.p && back.q == lp.q);
    return j;
}

Json report_lens_from_multipliers(const std::vector<long long>& m) {
    LensParams lp = lens_from_multipliers(m);
    LensParams back = multipliers_from_lens(lp.p, lp.q);
    Json j;
    j["p"] = lp.p.get_str();
    j["q"] = lp.q.get_str();
    j["a"] = lp.a;
    j["multipliers"] = lp.m;
    j["round_trip"] = (back.m == lp.m);
    return j;
}

Json report_surgery_h1(const LinkInput& in) {
    Json j;
    AbelianInvariants ab = h1_from_link(delete_infinite_components(in.link));
    j["h1"] = ab.to_string();
    j["h1_order"] = ab.order().get_str();
    return j;
}

Json report_surgery_simplify(const LinkInput& in) {
    FramedLink l = simplify_link(in.link);
    Json j;
    j["link"] = link_to_json(l);
    if (std::none_of(l.components.begin(), l.components.end(),
                     [](const LinkComponent& c) { return c.framing.is_infinite(); })) {
        AbelianInvariants ab = h1_from_link(l);
        j["h1"] = ab.to_string();
    }
    return j;
}

Json report_consum(const BallInput& a, const std::string& e1, const BallInput& b,
                   const std::string& e2) {
    FacePairing p1{a.ball, a.pairing};
    FacePairing p2{b.ball, b.pairing};
    EdgeCycleSet c1 = edge_cycles(p1), c2 = edge_cycles(p2);
    MultiplierFunction m1 = attach_multipliers(c1, a.multipliers);
    MultiplierFunction m2 = attach_multipliers(c2, b.multipliers);
    PairedBall sum = connected_sum(p1, m1, e1, p2, m2, e2);

    BallInput out;
    out.ball = sum.pairing.base;
    out.pairing = sum.pairing.pairing;
    out.has_pairing = true;
    for (const auto& [rep, v] : sum.mul.by_representative) out.multipliers[rep] = v;

    Json j;
    j["ball"] = ball_input_to_json(out);
    QuotientComplex m = build_quotient(out);
    ManifoldCertificate cert = certify_manifold(m);
    j["certificate_pass"] = cert.pass;
    j["h1"] = h1(pi1(m)).to_string();
    return j;
}

Json report_reframe(const BallInput& in, const std::map<std::string, mpq_class>& alpha) {
    FacePairing p{in.ball, in.pairing};
    ReframeResult res = attach_scallops(p, alpha);

    Json j;
    j["steps"] = Json::array();
    for (const auto& st : res.steps) {
        Json s;
        s["cycle"] = st.cycle;
        s["alpha"] = st.alpha.get_str();
        s["case"] = st.reciprocal_case ? "reciprocal" : "scallop";
        s["multiplier"] = st.attached_multiplier;
        if (!st.reciprocal_case) s["scallop_multipliers"] = st.scallop_multipliers;
        s["identity"] = st.identity_holds;
        j["steps"].push_back(std::move(s));
    }
    BallInput out;
    out.ball = res.pairing.base;
    out.pairing = res.pairing.pairing;
    out.has_pairing = true;
    for (const auto& [rep, v] : res.mul.by_representative) out.multipliers[rep] = v;
    j["ball"] = ball_input_to_json(out);

    QuotientComplex m = build_quotient(out);
    j["certificate_pass"] = certify_manifold(m).pass;
    j["h1"] = h1(pi1(m)).to_string();
    return j;
}

Json run_report(const std::string& subcommand, const std::string& input_digest, Json result) {
    Json j;
    j["tool"] = "bitwist";
    j["version"] = "1.0";
    j["subcommand"] = subcommand;
    j["input_digest"] = input_digest;
    j["result"] = std::move(result);
    return j;
}

std::string digest_bytes(const std::string& bytes) {
    // FNV-1a, enough for change detection in golden files.
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

}  // namespace bitwist
