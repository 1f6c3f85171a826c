#include "bitwist/engine.hpp"

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

std::string subedge_id(const std::string& edge, int i) { return edge + "#" + std::to_string(i); }
std::string subvertex_id(const std::string& edge, int i) { return edge + "@" + std::to_string(i); }

}  // namespace

long long SubdividedBall::multiplier_of_edge(const std::string& model_edge) const {
    return mul.of_cycle(cycles, model_edge);
}

int SubdividedBall::cycle_of_edge(const std::string& model_edge) const {
    return cycles.cycle_of_edge.at(model_edge);
}

SubdividedBall subdivide(const FacePairing& p, const MultiplierFunction& m) {
    ValidationReport vr = validate_pairing(p);
    if (!vr.ok) throw std::invalid_argument("subdivide: invalid pairing: " + vr.violations.front());

    SubdividedBall out;
    out.model = p;
    out.cycles = edge_cycles(p);
    for (const auto& cy : out.cycles.cycles) {
        auto it = m.by_representative.find(cy.representative);
        if (it == m.by_representative.end())
            throw std::invalid_argument("incomplete multiplier map (cycle of " + cy.representative + ")");
        if (it->second == 0) throw std::invalid_argument("zero multiplier not supported in engine");
    }
    out.mul = m;

    const FacetedBall& base = p.base;
    FacetedBall& q = out.ball;

    // Subedge chains. n(e) = l([e]) * |mul([e])| pieces along the stored
    // direction, with fresh interior vertices.
    std::map<std::string, int> nsub;
    q.vertices = base.vertices;
    for (const auto& e : base.edges) {
        long long mult = m.by_representative.at(
            out.cycles.cycles[out.cycles.cycle_of_edge.at(e.id)].representative);
        int n = out.cycles.cycles[out.cycles.cycle_of_edge.at(e.id)].length *
                static_cast<int>(mult < 0 ? -mult : mult);
        nsub[e.id] = n;
        for (int i = 1; i < n; ++i) q.vertices.push_back(subvertex_id(e.id, i));
        for (int i = 0; i < n; ++i) {
            std::string tail = i == 0 ? e.tail : subvertex_id(e.id, i);
            std::string head = i == n - 1 ? e.head : subvertex_id(e.id, i + 1);
            q.edges.push_back({subedge_id(e.id, i), tail, head});
        }
    }

    auto sign_of = [&](const std::string& edge) {
        return m.by_representative.at(
                   out.cycles.cycles[out.cycles.cycle_of_edge.at(edge)].representative) > 0
                   ? +1
                   : -1;
    };

    out.face_slots.resize(base.faces.size());
    for (size_t fi = 0; fi < base.faces.size(); ++fi) {
        const FaceRec& f = base.faces[fi];
        int L = static_cast<int>(f.boundary.size());
        FaceRec qf{f.id, {}};
        auto& slots = out.face_slots[fi];
        std::map<std::string, int> corner_occurrence;
        for (int i = 0; i < L; ++i) {
            const EdgeSide& side = f.boundary[i];
            int n = nsub[side.edge];
            for (int t = 0; t < n; ++t) {
                int idx = side.dir > 0 ? t : n - 1 - t;
                qf.boundary.push_back({subedge_id(side.edge, idx), side.dir});
                QSlot s;
                s.kind = QSlot::Sub;
                s.orig_edge = side.edge;
                s.sub_index = idx;
                s.orig_slot = i;
                s.cycle = out.cycles.cycle_of_edge.at(side.edge);
                slots.push_back(s);
            }
            // Corner at the head of model slot i: incoming side i, outgoing
            // side i+1. A sticker appears when the incoming original edge is
            // negative and the outgoing one positive.
            const EdgeSide& next = f.boundary[(i + 1) % L];
            if (sign_of(side.edge) < 0 && sign_of(next.edge) > 0) {
                const std::string corner_vertex = base.side_head(side);
                int occ = corner_occurrence[corner_vertex]++;
                std::string stk = f.id + "!" + corner_vertex + "!" + std::to_string(occ);
                std::string head = stk + "h";
                q.vertices.push_back(head);
                q.edges.push_back({stk, corner_vertex, head});
                qf.boundary.push_back({stk, +1});
                QSlot so;
                so.kind = QSlot::StickerOut;
                so.sticker_edge = stk;
                // Cylinder rule: the side adjacent to the negative edge goes
                // with that edge's cycle, the side adjacent to the positive
                // edge with the positive one.
                so.cycle = out.cycles.cycle_of_edge.at(side.edge);
                slots.push_back(so);
                qf.boundary.push_back({stk, -1});
                QSlot sb;
                sb.kind = QSlot::StickerBack;
                sb.sticker_edge = stk;
                sb.cycle = out.cycles.cycle_of_edge.at(next.edge);
                slots.push_back(sb);
            }
        }
        q.faces.push_back(std::move(qf));
    }

    // eps' on subedge slots. For model slots i -> j = (offset - i) mod L, the
    // t-th traversed subedge of i matches the (n-1-t)-th traversed subedge of j.
    PairingTables tables(base, p.pairing);
    std::vector<std::vector<std::vector<int>>> qslots_of_pslot(base.faces.size());
    for (size_t fi = 0; fi < base.faces.size(); ++fi) {
        qslots_of_pslot[fi].resize(base.faces[fi].boundary.size());
        for (size_t s = 0; s < out.face_slots[fi].size(); ++s) {
            const QSlot& qs = out.face_slots[fi][s];
            if (qs.kind == QSlot::Sub) qslots_of_pslot[fi][qs.orig_slot].push_back(static_cast<int>(s));
        }
    }
    out.eps_sub.resize(p.pairing.pairs.size());
    for (size_t k = 0; k < p.pairing.pairs.size(); ++k) {
        int fa = base.face_index(p.pairing.pairs[k].from);
        int fb = base.face_index(p.pairing.pairs[k].to);
        out.eps_sub[k].assign(out.face_slots[fa].size(), -1);
        for (size_t s = 0; s < out.face_slots[fa].size(); ++s) {
            const QSlot& qs = out.face_slots[fa][s];
            if (qs.kind != QSlot::Sub) continue;
            int j = tables.partner_slot(fa, qs.orig_slot);
            const auto& mine = qslots_of_pslot[fa][qs.orig_slot];
            const auto& theirs = qslots_of_pslot[fb][j];
            int t = static_cast<int>(std::find(mine.begin(), mine.end(), static_cast<int>(s)) -
                                     mine.begin());
            out.eps_sub[k][s] = theirs[theirs.size() - 1 - t];
        }
    }

    ValidationReport qr = validate_sphere(q);
    if (!qr.ok) throw std::logic_error("subdivide produced an invalid ball: " + qr.violations.front());
    return out;
}

BitwistPairing bitwist(const SubdividedBall& q) {
    const FacetedBall& ball = q.ball;
    BitwistPairing out;
    out.triangle_map.resize(q.model.pairing.pairs.size());

    for (size_t k = 0; k < q.model.pairing.pairs.size(); ++k) {
        const auto& pr = q.model.pairing.pairs[k];
        int fa = ball.face_index(pr.from);
        const auto& slots = q.face_slots[fa];
        int L = static_cast<int>(slots.size());
        int T = 2 * L;
        std::vector<int> tri(T, -1);

        // Shift rule on subedge triangles: eps'(2p+h) = 2p' + (1-h), then two
        // triangles against the cyclic order for positive original edges and
        // with it for negative ones (the convention reproducing the model
        // example's permutation tables).
        for (int p = 0; p < L; ++p) {
            if (slots[p].kind != QSlot::Sub) continue;
            int pp = q.eps_sub[k][p];
            long long mult = q.multiplier_of_edge(slots[p].orig_edge);
            int shift = mult > 0 ? -2 : +2;
            for (int h = 0; h < 2; ++h) tri[2 * p + h] = mod(2 * pp + (1 - h) + shift, T);
        }
        // Rigidity: delta(t+1) = delta(t) - 1 wherever defined; fill the
        // sticker triangles from it and detect any inconsistency.
        int anchor = -1;
        for (int t = 0; t < T; ++t)
            if (tri[t] != -1) {
                anchor = t;
                break;
            }
        if (anchor < 0) throw std::logic_error("face pair with no subedge slots");
        int c = mod(tri[anchor] + anchor, T);
        for (int t = 0; t < T; ++t) {
            int want = mod(c - t, T);
            if (tri[t] == -1)
                tri[t] = want;
            else if (tri[t] != want)
                throw std::runtime_error("sticker placement violated (pair " + pr.from + "/" +
                                         pr.to + ", triangle " + std::to_string(t) + ")");
        }
        out.triangle_map[k] = tri;
        // Slot-level offset: slot p -> slot (c_s - p) mod L with both
        // triangles of p landing in one slot.
        std::vector<int> slot_img(L);
        for (int p = 0; p < L; ++p) {
            int a = tri[2 * p] / 2, b = tri[2 * p + 1] / 2;
            if (a != b) throw std::runtime_error("sticker placement violated (split slot)");
            slot_img[p] = a;
        }
        int offset = mod(slot_img[0] + 0, L);
        for (int p = 0; p < L; ++p)
            if (slot_img[p] != mod(offset - p, L))
                throw std::runtime_error("sticker placement violated (non-rigid slots)");
        out.delta.pairs.push_back({pr.from, pr.to, offset});
    }
    return out;
}

QuotientComplex quotient(const SubdividedBall& q, const BitwistPairing& d) {
    QuotientComplex m;
    m.ball = q.ball;
    m.delta = d.delta;
    m.orbits = pairing_orbits(q.ball, d.delta);
    m.vertices = static_cast<long long>(m.orbits.vertex_orbits.size());
    m.edges = static_cast<long long>(m.orbits.edge_orbits.size());
    m.faces = static_cast<long long>(d.delta.pairs.size());
    m.three_cells = 1;

    for (const auto& pr : d.delta.pairs) {
        const FaceRec& f = q.ball.face(pr.from);
        std::vector<std::pair<int, int>> word;
        for (const auto& side : f.boundary) {
            int orb = m.orbits.orbit_of_edge.at(side.edge);
            int orient = m.orbits.edge_orbits[orb].orientation.at(side.edge);
            word.emplace_back(orb, side.dir * orient);
        }
        m.boundary_words.push_back(std::move(word));
    }
    return m;
}

ManifoldCertificate certify_manifold(const QuotientComplex& m) {
    ManifoldCertificate c;
    c.vertex_orbits = m.vertices;
    c.edge_orbits = m.edges;
    c.face_pairs = m.faces;
    c.euler = m.euler();
    c.pass = (c.vertex_orbits == 1) && (c.edge_orbits == c.face_pairs) && (c.euler == 0);
    return c;
}

Complex2 vertex_link(const Complex2& ball, const OffsetPairing& pairing) {
    PairingTables t(ball, pairing);
    FlagSystem fs(ball);

    // Edge-end orbits under the gluings: traversal-tail end of (f, slot i)
    // matches traversal-head end of (g, partner slot).
    int ne = static_cast<int>(ball.edges.size());
    std::vector<int> parent(2 * ne);
    for (int i = 0; i < 2 * ne; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    };
    auto trav_tail_end = [&](const EdgeSide& s) {
        return 2 * ball.edge_index(s.edge) + (s.dir > 0 ? 0 : 1);
    };
    auto trav_head_end = [&](const EdgeSide& s) {
        return 2 * ball.edge_index(s.edge) + (s.dir > 0 ? 1 : 0);
    };
    for (int f = 0; f < static_cast<int>(ball.faces.size()); ++f) {
        if (!t.is_from(f)) continue;
        int g = t.partner_face(f);
        const auto& bf = ball.faces[f].boundary;
        const auto& bg = ball.faces[g].boundary;
        for (int i = 0; i < static_cast<int>(bf.size()); ++i) {
            int j = t.partner_slot(f, i);
            unite(trav_tail_end(bf[i]), trav_head_end(bg[j]));
            unite(trav_head_end(bf[i]), trav_tail_end(bg[j]));
        }
    }
    auto end_orbit_id = [&](int dart) { return "E" + std::to_string(find(dart)); };

    // Corner pairing: corner (f,i) (at the tail of slot i) maps to corner
    // (g, partner_slot(i)+1).
    auto corner_key = [&](int f, int i) {
        return ball.faces[f].id + "/" + std::to_string(i);
    };
    std::map<std::string, std::string> corner_edge_id;  // corner -> link edge id
    std::map<std::string, int> corner_dir;
    Complex2 link;
    std::set<std::string> link_vertices;
    for (int f = 0; f < static_cast<int>(ball.faces.size()); ++f) {
        const auto& bf = ball.faces[f].boundary;
        int L = static_cast<int>(bf.size());
        for (int i = 0; i < L; ++i) {
            auto [g, j] = t.corner_image(f, i);
            std::string a = corner_key(f, i), b = corner_key(g, j);
            if (corner_edge_id.count(a)) continue;
            // Canonical direction from the first-seen corner: from the end
            // shared with the head of slot i-1 toward the tail end of slot i.
            int prev = (i + L - 1) % L;
            std::string tail = end_orbit_id(trav_head_end(bf[prev]));
            std::string head = end_orbit_id(trav_tail_end(bf[i]));
            std::string id = "c:" + a;
            link.edges.push_back({id, tail, head});
            link_vertices.insert(tail);
            link_vertices.insert(head);
            corner_edge_id[a] = id;
            corner_dir[a] = +1;
            corner_edge_id[b] = id;
            corner_dir[b] = (b == a) ? +1 : -1;
        }
    }
    for (const auto& v : link_vertices) link.vertices.push_back(v);

    // One polygon per ball vertex: corners in rotation order. Rotation on
    // tail-end flags is s1 o s2.
    std::vector<char> used(fs.flag_count(), 0);
    std::map<std::string, std::vector<EdgeSide>> polys;
    for (int f0 = 0; f0 < fs.flag_count(); ++f0) {
        if (fs.end_of(f0) != 0 || used[f0]) continue;
        std::vector<EdgeSide> word;
        std::string at;
        int fl = f0;
        do {
            used[fl] = 1;
            int f = fs.face_of(fl), i = fs.slot_of(fl);
            at = ball.side_tail(ball.faces[f].boundary[i]);
            std::string key = corner_key(f, i);
            word.push_back({corner_edge_id.at(key), corner_dir.at(key)});
            fl = fs.s1(fs.s2(fl));
        } while (fl != f0);
        if (polys.count(at)) throw std::runtime_error("split rotation at ball vertex " + at);
        polys[at] = std::move(word);
    }
    for (const auto& v : ball.vertices) {
        auto it = polys.find(v);
        if (it == polys.end()) throw std::runtime_error("ball vertex with no rotation: " + v);
        link.faces.push_back({"lk:" + v, it->second});
    }

    ValidationReport r = validate_surface(link);
    if (!r.ok) throw std::logic_error("vertex link is not a valid closed surface: " + r.violations.front());
    return link;
}

DualLinkCheck dual_link_check(const FacePairing& p, const MultiplierFunction& m, long long flag_cap) {
    DualLinkCheck out;

    SubdividedBall q = subdivide(p, m);
    BitwistPairing d = bitwist(q);

    MultiplierFunction neg;
    for (const auto& [k, v] : m.by_representative) neg.by_representative[k] = -v;
    SubdividedBall qstar = subdivide(p, neg);

    Complex2 link = vertex_link(q.ball, d.delta);
    Complex2 dual = dual_complex(link);
    out.dual_link_faces = static_cast<long long>(dual.faces.size());
    out.dual_star_faces = static_cast<long long>(qstar.ball.faces.size());

    long long flags = 0;
    for (const auto& f : dual.faces) flags += 2 * static_cast<long long>(f.boundary.size());
    if (flag_cap >= 0 && flags > flag_cap) {
        out.skipped_by_cap = true;
        out.detail = "skipped (cap)";
        return out;
    }

    auto iso = cellular_isomorphism(dual, qstar.ball, /*orientation_preserving=*/false, flag_cap);
    out.isomorphic = iso.has_value();
    out.detail = out.isomorphic ? "orientation-reversing isomorphism found"
                                : "no orientation-reversing isomorphism";
    return out;
}

}  // namespace bitwist
