#include "bitwist/pairing.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace bitwist {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

ValidationReport validate_pairing(const FacePairing& p) {
    ValidationReport r = validate_sphere(p.base);
    if (!r.ok) return r;

    std::map<std::string, int> cover;
    for (const auto& f : p.base.faces) cover[f.id] = 0;
    for (const auto& pr : p.pairing.pairs) {
        if (p.base.face_index(pr.from) < 0) {
            r.fail("pairing references unknown face " + pr.from);
            continue;
        }
        if (p.base.face_index(pr.to) < 0) {
            r.fail("pairing references unknown face " + pr.to);
            continue;
        }
        if (pr.from == pr.to) {
            r.fail("face " + pr.from + " paired with itself");
            continue;
        }
        cover[pr.from]++;
        cover[pr.to]++;
        size_t lf = p.base.face(pr.from).boundary.size();
        size_t lt = p.base.face(pr.to).boundary.size();
        if (lf != lt)
            r.fail("paired faces " + pr.from + ", " + pr.to + " have boundary lengths " +
                   std::to_string(lf) + " != " + std::to_string(lt));
    }
    for (const auto& [fid, n] : cover) {
        if (n == 0) r.fail("uncovered face " + fid);
        if (n > 1) r.fail("face " + fid + " covered " + std::to_string(n) + " times");
    }
    return r;
}

PairingTables::PairingTables(const Complex2& c, const OffsetPairing& p) : c_(&c), pairs_(p.pairs) {
    int nf = static_cast<int>(c.faces.size());
    pair_of_face_.assign(nf, -1);
    partner_.assign(nf, -1);
    is_from_.assign(nf, 0);
    offset_for_face_.assign(nf, 0);
    for (size_t k = 0; k < pairs_.size(); ++k) {
        int fa = c.face_index(pairs_[k].from);
        int fb = c.face_index(pairs_[k].to);
        if (fa < 0 || fb < 0) throw std::invalid_argument("pairing references unknown face");
        if (pair_of_face_[fa] != -1 || pair_of_face_[fb] != -1)
            throw std::invalid_argument("face paired twice");
        int L = static_cast<int>(c.faces[fa].boundary.size());
        if (L != static_cast<int>(c.faces[fb].boundary.size()))
            throw std::invalid_argument("paired faces with different boundary lengths");
        pair_of_face_[fa] = pair_of_face_[fb] = static_cast<int>(k);
        partner_[fa] = fb;
        partner_[fb] = fa;
        is_from_[fa] = 1;
        // The alignment i -> (offset - i) mod L is an involution, so the same
        // offset serves both directions.
        offset_for_face_[fa] = mod(pairs_[k].offset, L);
        offset_for_face_[fb] = mod(pairs_[k].offset, L);
    }
    for (int f = 0; f < nf; ++f)
        if (pair_of_face_[f] == -1) throw std::invalid_argument("uncovered face " + c.faces[f].id);
}

int PairingTables::partner_slot(int face, int slot) const {
    int L = static_cast<int>(c_->faces[face].boundary.size());
    return mod(offset_for_face_[face] - slot, L);
}

std::pair<int, int> PairingTables::corner_image(int face, int slot) const {
    int g = partner_[face];
    int L = static_cast<int>(c_->faces[face].boundary.size());
    return {g, mod(partner_slot(face, slot) + 1, L)};
}

OrbitData pairing_orbits(const Complex2& c, const OffsetPairing& p) {
    PairingTables t(c, p);
    FlagSystem fs(c);
    OrbitData out;

    // Side occurrences per edge index.
    const auto& sides = fs.edge_sides();

    // Directed-edge walk. State: (edge index, direction, entered-side 0/1).
    // The next hop applies the pairing map at the side not entered through.
    struct Hop {
        int edge, dir, side;      // state before hop; hop applies at `side`
    };
    auto apply_at_side = [&](int edge, int dir, int side_sel) {
        const SideRef& s = side_sel == 0 ? sides[edge].first : sides[edge].second;
        int f = s.face;
        int g = t.partner_face(f);
        int j = t.partner_slot(f, s.slot);
        const EdgeSide& img = c.faces[g].boundary[j];
        int img_edge = c.edge_index(img.edge);
        // Gluing identifies slot-forward with image-slot-backward.
        bool along_slot = (dir == s.dir);
        int img_dir = along_slot ? -img.dir : img.dir;
        // Find which occurrence of img_edge the image slot is.
        int img_side = (sides[img_edge].first.face == g && sides[img_edge].first.slot == j) ? 0 : 1;
        int pair = t.pair_of_face(f);
        int power = t.is_from(f) ? +1 : -1;
        return std::tuple<int, int, int, int, int>{img_edge, img_dir, img_side, pair, power};
    };

    int ne = static_cast<int>(c.edges.size());
    std::vector<char> edge_done(ne, 0);

    // Deterministic start order: ascending edge id.
    std::vector<int> order(ne);
    for (int i = 0; i < ne; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.edges[a].id < c.edges[b].id; });

    for (int e0 : order) {
        if (edge_done[e0]) continue;
        EdgeOrbit orbit;
        int e = e0, dir = 1, enter = 0;  // start as if entered through side .first
        do {
            if (edge_done[e] && e != e0)
                throw std::runtime_error("edge orbit walk revisited " + c.edges[e].id);
            edge_done[e] = 1;
            orbit.orientation[c.edges[e].id] = dir;
            int hop_side = 1 - enter;
            auto [e2, d2, s2, pair, power] = apply_at_side(e, dir, hop_side);
            orbit.trace.push_back({c.edges[e].id, dir, pair, power});
            e = e2;
            dir = d2;
            enter = s2;
        } while (e != e0);
        if (dir != 1)
            throw std::runtime_error("edge orbit of " + c.edges[e0].id +
                                     " closes with reversed orientation");
        out.edge_orbits.push_back(std::move(orbit));
    }
    for (size_t k = 0; k < out.edge_orbits.size(); ++k)
        for (const auto& [eid, d] : out.edge_orbits[k].orientation)
            out.orbit_of_edge[eid] = static_cast<int>(k);

    // Vertex orbits: corner images generate the identifications.
    int nv = static_cast<int>(c.vertices.size());
    std::vector<int> parent(nv);
    for (int i = 0; i < nv; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int f = 0; f < static_cast<int>(c.faces.size()); ++f) {
        if (!t.is_from(f)) continue;
        const auto& b = c.faces[f].boundary;
        int g = t.partner_face(f);
        int L = static_cast<int>(b.size());
        for (int i = 0; i < L; ++i) {
            int j = t.partner_slot(f, i);
            int va = c.vertex_index(c.side_tail(b[i]));
            int vb = c.vertex_index(c.side_head(c.faces[g].boundary[j]));
            int ra = find(va), rb = find(vb);
            if (ra != rb) parent[ra] = rb;
        }
    }
    std::map<int, std::vector<std::string>> groups;
    for (int i = 0; i < nv; ++i) groups[find(i)].push_back(c.vertices[i]);
    for (auto& [root, mem] : groups) {
        std::sort(mem.begin(), mem.end());
        out.vertex_orbits.push_back(mem);
    }
    std::sort(out.vertex_orbits.begin(), out.vertex_orbits.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (size_t k = 0; k < out.vertex_orbits.size(); ++k)
        for (const auto& v : out.vertex_orbits[k]) out.orbit_of_vertex[v] = static_cast<int>(k);
    return out;
}

EdgeCycleSet edge_cycles(const FacePairing& p) {
    ValidationReport r = validate_pairing(p);
    if (!r.ok) throw std::invalid_argument("edge_cycles: invalid pairing: " + r.violations.front());
    OrbitData orbits = pairing_orbits(p.base, p.pairing);
    EdgeCycleSet out;
    for (const auto& orb : orbits.edge_orbits) {
        EdgeCycle cy;
        cy.trace = orb.trace;
        cy.length = orb.length();
        cy.representative = orb.trace.front().edge;
        out.cycles.push_back(std::move(cy));
    }
    for (size_t k = 0; k < out.cycles.size(); ++k)
        for (const auto& hop : out.cycles[k].trace) out.cycle_of_edge[hop.edge] = static_cast<int>(k);
    return out;
}

long long MultiplierFunction::of_cycle(const EdgeCycleSet& cycles, const std::string& edge) const {
    auto it = cycles.cycle_of_edge.find(edge);
    if (it == cycles.cycle_of_edge.end()) throw std::out_of_range("edge not in any cycle: " + edge);
    return by_representative.at(cycles.cycles[it->second].representative);
}

MultiplierFunction attach_multipliers(const EdgeCycleSet& cycles,
                                      const std::map<std::string, long long>& values) {
    MultiplierFunction m;
    for (const auto& cy : cycles.cycles) {
        // Accept the value under any member edge of the cycle.
        long long found = 0;
        bool have = false;
        for (const auto& hop : cy.trace) {
            auto it = values.find(hop.edge);
            if (it == values.end()) continue;
            if (have && it->second != found)
                throw std::invalid_argument("conflicting multipliers within cycle of " +
                                            cy.representative);
            found = it->second;
            have = true;
        }
        if (!have) throw std::invalid_argument("incomplete multiplier map (cycle of " +
                                               cy.representative + ")");
        if (found == 0) throw std::invalid_argument("zero multiplier not supported in engine");
        m.by_representative[cy.representative] = found;
    }
    return m;
}

}  // namespace bitwist
