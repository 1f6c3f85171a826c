#include "bitwist/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bitwist {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace

BallInput parse_ball_input(const Json& j) {
    BallInput out;
    for (const auto& v : j.at("vertices")) out.ball.vertices.push_back(v.get<std::string>());
    for (const auto& e : j.at("edges")) {
        const auto& ends = e.at("ends");
        out.ball.edges.push_back(
            {e.at("id").get<std::string>(), ends.at(0).get<std::string>(), ends.at(1).get<std::string>()});
    }
    for (const auto& f : j.at("faces")) {
        FaceRec rec{f.at("id").get<std::string>(), {}};
        for (const auto& s : f.at("boundary"))
            rec.boundary.push_back({s.at("edge").get<std::string>(), s.at("dir").get<int>()});
        out.ball.faces.push_back(std::move(rec));
    }
    if (j.contains("pairing")) {
        out.has_pairing = true;
        for (const auto& p : j.at("pairing"))
            out.pairing.pairs.push_back({p.at("from").get<std::string>(),
                                         p.at("to").get<std::string>(), p.at("offset").get<int>()});
    }
    if (j.contains("multipliers"))
        for (const auto& [k, v] : j.at("multipliers").items())
            out.multipliers[k] = v.get<long long>();
    return out;
}

BallInput load_ball_file(const std::string& path) { return parse_ball_input(load_json(path)); }

Json ball_to_json(const FacetedBall& b) {
    Json j;
    j["vertices"] = b.vertices;
    j["edges"] = Json::array();
    for (const auto& e : b.edges) j["edges"].push_back({{"id", e.id}, {"ends", {e.tail, e.head}}});
    j["faces"] = Json::array();
    for (const auto& f : b.faces) {
        Json sides = Json::array();
        for (const auto& s : f.boundary) sides.push_back({{"edge", s.edge}, {"dir", s.dir}});
        j["faces"].push_back({{"id", f.id}, {"boundary", sides}});
    }
    return j;
}

Json ball_input_to_json(const BallInput& in) {
    Json j = ball_to_json(in.ball);
    if (in.has_pairing) {
        j["pairing"] = Json::array();
        for (const auto& p : in.pairing.pairs)
            j["pairing"].push_back({{"from", p.from}, {"to", p.to}, {"offset", p.offset}});
    }
    if (!in.multipliers.empty()) {
        Json m = Json::object();
        for (const auto& [k, v] : in.multipliers) m[k] = v;
        j["multipliers"] = m;
    }
    return j;
}

LinkInput parse_link_input(const Json& j) {
    LinkInput out;
    for (const auto& c : j.at("components")) {
        LinkComponent comp;
        comp.id = c.at("id").get<std::string>();
        std::string kind = c.value("kind", "other");
        comp.kind = kind == "face"   ? LinkComponent::Face
                    : kind == "edge" ? LinkComponent::Edge
                                     : LinkComponent::Other;
        comp.framing = Framing::parse(c.at("framing").get<std::string>());
        comp.unknotted = c.value("unknotted", false);
        comp.cycle = c.value("cycle", std::string{});
        out.link.components.push_back(std::move(comp));
    }
    size_t n = out.link.components.size();
    out.link.linking.assign(n, std::vector<long long>(n, 0));
    if (j.contains("linking")) {
        const auto& m = j.at("linking");
        if (m.size() != n) throw std::runtime_error("linking matrix size mismatch");
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) out.link.linking[a][b] = m.at(a).at(b).get<long long>();
    }
    if (j.contains("meridians"))
        for (const auto& m : j.at("meridians"))
            out.link.meridians.insert({m.at(0).get<std::string>(), m.at(1).get<std::string>()});
    if (j.contains("blackboard"))
        for (const auto& [k, v] : j.at("blackboard").items()) out.blackboard[k] = v.get<long long>();
    ValidationReport r = validate_link(out.link);
    if (!r.ok) throw std::runtime_error("invalid link: " + r.violations.front());
    return out;
}

LinkInput load_link_file(const std::string& path) { return parse_link_input(load_json(path)); }

Json link_to_json(const FramedLink& l) {
    Json j;
    j["components"] = Json::array();
    for (const auto& c : l.components) {
        Json cc;
        cc["id"] = c.id;
        cc["kind"] = c.kind == LinkComponent::Face   ? "face"
                     : c.kind == LinkComponent::Edge ? "edge"
                                                     : "other";
        cc["framing"] = c.framing.str();
        cc["unknotted"] = c.unknotted;
        if (!c.cycle.empty()) cc["cycle"] = c.cycle;
        j["components"].push_back(std::move(cc));
    }
    j["linking"] = l.linking;
    j["meridians"] = Json::array();
    for (const auto& [k, jj] : l.meridians) j["meridians"].push_back({k, jj});
    return j;
}

}  // namespace bitwist
