#include "bitwist/heegaard.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bitwist {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

std::string vs_id(int pair, int slot) { return "w:" + std::to_string(pair) + ":" + std::to_string(slot); }
std::string quad_id(int pair, int slot) { return "a:" + std::to_string(pair) + ":" + std::to_string(slot); }

}  // namespace

EdgePairingSurface build_surface(const SubdividedBall& q, const BitwistPairing& d) {
    EdgePairingSurface out;
    out.ball = q.ball;
    out.delta = d.delta;
    const Complex2& ball = out.ball;
    PairingTables t(ball, d.delta);

    Complex2& y = out.y;
    y.vertices = ball.vertices;
    y.edges = ball.edges;

    for (int k = 0; k < t.pair_count(); ++k) {
        int fa = ball.face_index(t.pair(k).from);
        int fb = ball.face_index(t.pair(k).to);
        const auto& bf = ball.faces[fa].boundary;
        const auto& bg = ball.faces[fb].boundary;
        int L = static_cast<int>(bf.size());
        for (int i = 0; i < L; ++i) {
            // Vertical edge over corner i of the from-face: joins the corner
            // vertex to its image corner's vertex.
            int j = t.partner_slot(fa, i);
            std::string top_vertex = ball.side_head(bg[j]);  // tail of slot j+1
            y.edges.push_back({vs_id(k, i), ball.side_tail(bf[i]), top_vertex});
        }
        for (int i = 0; i < L; ++i) {
            int j = t.partner_slot(fa, i);
            SurfaceQuad quad;
            quad.pair = k;
            quad.slot = i;
            quad.face_id = quad_id(k, i);
            quad.bottom_edge = bf[i].edge;
            quad.top_edge = bg[j].edge;
            quad.bottom_cycle = q.face_slots[fa][i].cycle;
            quad.top_cycle = q.face_slots[fb][j].cycle;
            y.faces.push_back({quad.face_id,
                               {bf[i],
                                {vs_id(k, mod(i + 1, L)), +1},
                                bg[j],
                                {vs_id(k, i), -1}}});
            out.quad_of_face[quad.face_id] = static_cast<int>(out.quads.size());
            out.quads.push_back(std::move(quad));
        }
    }
    ValidationReport yr = validate_surface(y);
    if (!yr.ok) throw std::runtime_error("pairing misalignment: " + yr.violations.front());

    long long chi = euler_characteristic(y);
    if (chi != 2 - 2 * t.pair_count())
        throw std::runtime_error("edge pairing surface has unexpected Euler characteristic");
    out.genus = t.pair_count();

    DualCapComplex dc = dual_cap(barycentric_boundary(y));
    out.s = std::move(dc.complex);
    out.cap_tags = std::move(dc.caps);

    // Classification. Half-edges of ball edges lie in the 1-skeleton X;
    // half-edges of vertical Y-edges meet X only at one endpoint. Meridian
    // spokes at quad slots 0/2 touch X at the horizontal edge barycenter,
    // those at slots 1/3 are disjoint from X.
    for (const auto& e : ball.edges) {
        out.axis[half_edge_id(e.id, 0)] = EdgeAxis::Vertical;
        out.axis[half_edge_id(e.id, 1)] = EdgeAxis::Vertical;
        out.role[half_edge_id(e.id, 0)] = EdgeRole::Nonmeridian;
        out.role[half_edge_id(e.id, 1)] = EdgeRole::Nonmeridian;
    }
    for (const auto& quad : out.quads) {
        for (int end = 0; end < 2; ++end) {
            out.axis[half_edge_id(vs_id(quad.pair, quad.slot), end)] = EdgeAxis::Diagonal;
            out.role[half_edge_id(vs_id(quad.pair, quad.slot), end)] = EdgeRole::Nonmeridian;
        }
        for (int slot = 0; slot < 4; ++slot) {
            std::string es = "es:" + quad.face_id + ":" + std::to_string(slot);
            out.axis[es] = (slot % 2 == 0) ? EdgeAxis::Diagonal : EdgeAxis::Vertical;
            out.role[es] = EdgeRole::Meridian;
        }
    }
    return out;
}

namespace {

// Components of an edge subset that is a union of disjoint simple closed
// curves. Verifies 2-regularity on the subset.
std::vector<EdgeCycle> curve_components(const Complex2& s, const std::set<std::string>& subset) {
    std::map<std::string, std::vector<std::pair<int, int>>> incident;  // vertex -> (edge idx, dir out)
    std::vector<int> eidx;
    for (const auto& id : subset) {
        int e = s.edge_index(id);
        if (e < 0) throw std::logic_error("curve edge not in surface: " + id);
        incident[s.edges[e].tail].push_back({e, +1});
        incident[s.edges[e].head].push_back({e, -1});
        eidx.push_back(e);
    }
    for (const auto& [v, inc] : incident)
        if (inc.size() != 2)
            throw std::runtime_error("curve family is not 2-regular at vertex " + v + " (" +
                                     std::to_string(inc.size()) + " incidences)");
    std::set<int> unused(eidx.begin(), eidx.end());
    std::vector<EdgeCycle> out;
    while (!unused.empty()) {
        // Smallest edge id first for determinism.
        int start = *std::min_element(unused.begin(), unused.end(), [&](int a, int b) {
            return s.edges[a].id < s.edges[b].id;
        });
        EdgeCycle cyc;
        int e = start, dir = +1;
        do {
            unused.erase(e);
            cyc.push_back({s.edges[e].id, dir});
            const std::string& head = dir > 0 ? s.edges[e].head : s.edges[e].tail;
            const auto& inc = incident.at(head);
            for (const auto& [e2, d2] : inc) {
                if (e2 == e) continue;
                e = e2;
                dir = d2;
                break;
            }
        } while (e != start);
        out.push_back(std::move(cyc));
    }
    return out;
}

}  // namespace

SubSurface assemble_subsurface(const Complex2& s, const std::vector<char>& face_in,
                               const std::vector<char>& edge_allowed) {
    FlagSystem fs(s);
    SubSurface out;

    int ne = static_cast<int>(s.edges.size());
    std::vector<char> glued(ne, 0);
    long long n_glued = 0, n_boundary_sides = 0;
    for (int e = 0; e < ne; ++e) {
        const auto& [a, b] = fs.edge_sides()[e];
        bool both = face_in[a.face] && face_in[b.face];
        glued[e] = edge_allowed[e] && both;
    }

    std::vector<char> in_flag(fs.flag_count(), 0);
    for (int f = 0; f < fs.flag_count(); ++f) in_flag[f] = face_in[fs.face_of(f)];

    // Vertices: flag classes under s1 and glued s2.
    std::vector<int> parent(fs.flag_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    };
    for (int f = 0; f < fs.flag_count(); ++f) {
        if (!in_flag[f]) continue;
        if (in_flag[fs.s1(f)]) unite(f, fs.s1(f));
        int eidx = s.edge_index(s.faces[fs.face_of(f)].boundary[fs.slot_of(f)].edge);
        if (glued[eidx]) unite(f, fs.s2(f));
    }
    std::set<int> vclasses;
    for (int f = 0; f < fs.flag_count(); ++f)
        if (in_flag[f]) vclasses.insert(find(f));

    long long F = 0;
    for (char c : face_in) F += c ? 1 : 0;
    for (int e = 0; e < ne; ++e) {
        if (glued[e]) {
            ++n_glued;
            continue;
        }
        const auto& [a, b] = fs.edge_sides()[e];
        if (face_in[a.face]) ++n_boundary_sides;
        if (face_in[b.face]) ++n_boundary_sides;
    }
    out.face_count = static_cast<int>(F);
    out.chi = static_cast<long long>(vclasses.size()) - (n_glued + n_boundary_sides) + F;

    // Components through glued edges.
    int nf = static_cast<int>(s.faces.size());
    std::vector<int> fparent(nf);
    std::iota(fparent.begin(), fparent.end(), 0);
    std::function<int(int)> ffind = [&](int x) {
        while (fparent[x] != x) x = fparent[x] = fparent[fparent[x]];
        return x;
    };
    for (int e = 0; e < ne; ++e) {
        if (!glued[e]) continue;
        const auto& [a, b] = fs.edge_sides()[e];
        int ra = ffind(a.face), rb = ffind(b.face);
        if (ra != rb) fparent[ra] = rb;
    }
    std::set<int> comps;
    for (int f = 0; f < nf; ++f)
        if (face_in[f]) comps.insert(ffind(f));
    out.components = static_cast<int>(comps.size());

    // Boundary walk. From the head flag of an unglued side, rotate through
    // glued sides to the next unglued side; record crossings for the parallel
    // dual walk.
    auto side_edge_idx = [&](int face, int slot) {
        return s.edge_index(s.faces[face].boundary[slot].edge);
    };
    std::set<std::pair<int, int>> todo;  // unglued sides of subset faces
    for (int f = 0; f < nf; ++f) {
        if (!face_in[f]) continue;
        for (int i = 0; i < static_cast<int>(s.faces[f].boundary.size()); ++i)
            if (!glued[side_edge_idx(f, i)]) todo.insert({f, i});
    }
    while (!todo.empty()) {
        auto [f0, i0] = *todo.begin();
        EdgeCycle circle;
        std::vector<std::pair<int, int>> parallel;
        int f = f0, i = i0;
        do {
            todo.erase({f, i});
            circle.push_back(s.faces[f].boundary[i]);
            int x = fs.flag(f, i, 1);  // head flag
            x = fs.s1(x);
            while (glued[side_edge_idx(fs.face_of(x), fs.slot_of(x))]) {
                int eidx = side_edge_idx(fs.face_of(x), fs.slot_of(x));
                // Crossing from the current face to the s2-partner face.
                int from_face = fs.face_of(x);
                const auto& [sa, sb] = fs.edge_sides()[eidx];
                const SideRef& pos = sa.dir > 0 ? sa : sb;
                parallel.push_back({eidx, pos.face == from_face ? +1 : -1});
                x = fs.s2(x);
                x = fs.s1(x);
            }
            f = fs.face_of(x);
            i = fs.slot_of(x);
        } while (!(f == f0 && i == i0));
        out.boundary.push_back(std::move(circle));
        out.boundary_parallel.push_back(std::move(parallel));
    }
    return out;
}

HeegaardDiagram heegaard_diagram(const EdgePairingSurface& s) {
    HeegaardDiagram out;
    std::set<std::string> vset, dset;
    for (const auto& [id, ax] : s.axis) {
        if (s.role.at(id) != EdgeRole::Meridian) continue;
        (ax == EdgeAxis::Vertical ? vset : dset).insert(id);
    }
    out.v_curves = curve_components(s.s, vset);
    out.d_curves = curve_components(s.s, dset);

    int pairs = s.genus;
    if (static_cast<int>(out.v_curves.size()) != pairs)
        throw std::runtime_error("vertical meridian curve count " +
                                 std::to_string(out.v_curves.size()) + " != face pairs " +
                                 std::to_string(pairs));
    if (static_cast<int>(out.d_curves.size()) != pairs)
        throw std::runtime_error("diagonal meridian curve count " +
                                 std::to_string(out.d_curves.size()) + " != face pairs");

    // Planar complements: cut along the family, cap the boundary circles, and
    // expect one sphere.
    auto planar = [&](const std::set<std::string>& family) {
        std::vector<char> face_in(s.s.faces.size(), 1);
        std::vector<char> allowed(s.s.edges.size(), 1);
        for (const auto& id : family) allowed[s.s.edge_index(id)] = 0;
        SubSurface cut = assemble_subsurface(s.s, face_in, allowed);
        return cut.components == 1 &&
               cut.chi + static_cast<long long>(cut.boundary.size()) == 2;
    };
    out.v_planar_complement = planar(vset);
    out.d_planar_complement = planar(dset);
    if (!out.v_planar_complement || !out.d_planar_complement)
        throw std::runtime_error("meridian family does not have a planar complement");

    // Canonical form: rotate each curve to its smallest edge id.
    auto canonical = [](EdgeCycle& c) {
        size_t best = 0;
        for (size_t i = 1; i < c.size(); ++i)
            if (c[i].edge < c[best].edge) best = i;
        std::rotate(c.begin(), c.begin() + best, c.end());
    };
    for (auto& c : out.v_curves) canonical(c);
    for (auto& c : out.d_curves) canonical(c);
    return out;
}

CylinderDecomposition cylinders(const EdgePairingSurface& s, const SubdividedBall& q) {
    CylinderDecomposition out;
    int ncycles = static_cast<int>(q.cycles.cycles.size());

    // Cap -> cycle: corners 0/1 of a quad touch the bottom side, corners 2/3
    // the top side; the cap joins that side's cycle (stickers already carry
    // the cycle chosen by the absorption rule).
    std::vector<std::vector<char>> face_in(ncycles,
                                           std::vector<char>(s.s.faces.size(), 0));
    for (size_t ci = 0; ci < s.cap_tags.size(); ++ci) {
        const DualCapCell& cap = s.cap_tags[ci];
        auto it = s.quad_of_face.find(cap.face);
        if (it == s.quad_of_face.end()) throw std::logic_error("cap on unknown quad " + cap.face);
        const SurfaceQuad& quad = s.quads[it->second];
        int cyc = (cap.corner == 0 || cap.corner == 1) ? quad.bottom_cycle : quad.top_cycle;
        if (cyc < 0 || cyc >= ncycles) throw std::logic_error("cap with unassigned cycle");
        face_in[cyc][ci] = 1;
    }

    std::vector<char> allow(s.s.edges.size(), 1);
    for (int c = 0; c < ncycles; ++c) {
        Cylinder cyl;
        cyl.cycle = c;
        cyl.cycle_representative = q.cycles.cycles[c].representative;
        cyl.multiplier = q.mul.by_representative.at(cyl.cycle_representative);
        for (size_t ci = 0; ci < s.s.faces.size(); ++ci)
            if (face_in[c][ci]) cyl.caps.push_back(s.s.faces[ci].id);
        if (cyl.caps.empty())
            throw std::runtime_error("cylinder of cycle " + cyl.cycle_representative +
                                     " received no caps");
        SubSurface sub = assemble_subsurface(s.s, face_in[c], allow);
        cyl.chi = sub.chi;
        cyl.connected = sub.components == 1;
        cyl.boundary_circles = static_cast<int>(sub.boundary.size());
        cyl.closed = sub.boundary.empty();
        if (!cyl.closed) {
            cyl.core_boundary = sub.boundary.front();
            cyl.core_parallel = sub.boundary_parallel.front();
        }
        out.cylinders.push_back(std::move(cyl));
    }
    return out;
}

SurfaceHomology::SurfaceHomology(const Complex2& s) : s_(&s) {
    FlagSystem fs(s);
    int nv = static_cast<int>(s.vertices.size());
    int ne = static_cast<int>(s.edges.size());
    int nf = static_cast<int>(s.faces.size());

    // Spanning tree of the 1-skeleton.
    std::vector<char> in_tree(ne, 0), vseen(nv, 0);
    std::vector<int> order(ne);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return s.edges[a].id < s.edges[b].id; });
    std::vector<std::vector<int>> vinc(nv);
    for (int e : order) {
        vinc[s.vertex_index(s.edges[e].tail)].push_back(e);
        vinc[s.vertex_index(s.edges[e].head)].push_back(e);
    }
    std::vector<int> stack{0};
    if (nv > 0) vseen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : vinc[v]) {
            int w = s.vertex_index(s.edges[e].tail) == v ? s.vertex_index(s.edges[e].head)
                                                         : s.vertex_index(s.edges[e].tail);
            if (!vseen[w]) {
                vseen[w] = 1;
                in_tree[e] = 1;
                stack.push_back(w);
            }
        }
    }

    // Cotree in the dual graph over the remaining edges. Record BFS parents.
    std::vector<int> fparent_face(nf, -1), fparent_edge(nf, -1), fdepth(nf, -1);
    std::vector<std::vector<std::pair<int, int>>> finc(nf);  // face -> (edge, other face)
    for (int e = 0; e < ne; ++e) {
        if (in_tree[e]) continue;
        const auto& [a, b] = fs.edge_sides()[e];
        finc[a.face].push_back({e, b.face});
        finc[b.face].push_back({e, a.face});
    }
    std::vector<char> in_cotree(ne, 0);
    std::vector<int> fq{0};
    if (nf > 0) fdepth[0] = 0;
    for (size_t qi = 0; qi < fq.size(); ++qi) {
        int f = fq[qi];
        for (const auto& [e, g] : finc[f]) {
            if (fdepth[g] != -1 || in_cotree[e]) continue;
            fdepth[g] = fdepth[f] + 1;
            fparent_face[g] = f;
            fparent_edge[g] = e;
            in_cotree[e] = 1;
            fq.push_back(g);
        }
    }

    auto crossing_sign = [&](int e, int from_face) {
        const auto& [a, b] = fs.edge_sides()[e];
        const SideRef& pos = a.dir > 0 ? a : b;
        return pos.face == from_face ? +1 : -1;
    };

    for (int x = 0; x < ne; ++x) {
        if (in_tree[x] || in_cotree[x]) continue;
        // Dual cycle: cross x, then return through the cotree.
        std::map<int, int> cocycle;
        const auto& [a, b] = fs.edge_sides()[x];
        int fa = a.face, fb = b.face;
        cocycle[x] += crossing_sign(x, fa);
        // Path fb -> fa in the cotree via lowest common ancestor.
        std::vector<std::pair<int, int>> up_b, up_a;  // (edge, from_face) hops toward root
        int u = fb, v = fa;
        while (u != v) {
            if (fdepth[u] >= fdepth[v]) {
                up_b.push_back({fparent_edge[u], u});
                u = fparent_face[u];
            } else {
                up_a.push_back({fparent_edge[v], v});
                v = fparent_face[v];
            }
        }
        for (const auto& [e, from] : up_b) cocycle[e] += crossing_sign(e, from);
        // Descending from the LCA to fa crosses each hop from parent to child.
        for (auto it = up_a.rbegin(); it != up_a.rend(); ++it) {
            int child = it->second;
            int e = it->first;
            cocycle[e] += crossing_sign(e, fparent_face[child] == -1 ? child : fparent_face[child]);
        }
        cocycles_.push_back(std::move(cocycle));
    }
}

std::vector<long long> SurfaceHomology::coords(const EdgeCycle& z) const {
    std::map<int, long long> mult;
    for (const auto& side : z) mult[s_->edge_index(side.edge)] += side.dir;
    std::vector<long long> out;
    for (const auto& co : cocycles_) {
        long long v = 0;
        for (const auto& [e, sign] : co) {
            auto it = mult.find(e);
            if (it != mult.end()) v += static_cast<long long>(sign) * it->second;
        }
        out.push_back(v);
    }
    return out;
}

long long algebraic_intersection(const Complex2& s, const EdgeCycle& a, const EdgeCycle& b) {
    FlagSystem fs(s);
    // Rotation of darts (edge, end) around each vertex, via tail-flag walk.
    std::map<std::string, std::vector<std::pair<int, int>>> rotation;
    std::vector<char> used(fs.flag_count(), 0);
    for (int f0 = 0; f0 < fs.flag_count(); ++f0) {
        if (fs.end_of(f0) != 0 || used[f0]) continue;
        std::vector<std::pair<int, int>> darts;
        std::string at;
        int f = f0;
        do {
            used[f] = 1;
            const EdgeSide& side = s.faces[fs.face_of(f)].boundary[fs.slot_of(f)];
            at = s.side_tail(side);
            darts.push_back({s.edge_index(side.edge), side.dir > 0 ? 0 : 1});
            f = fs.s1(fs.s2(f));
        } while (f != f0);
        rotation[at] = std::move(darts);
    }
    std::map<std::string, std::map<std::pair<int, int>, int>> dart_pos;
    for (const auto& [v, darts] : rotation)
        for (size_t i = 0; i < darts.size(); ++i) dart_pos[v][darts[i]] = static_cast<int>(i);

    // Passages: at the head vertex of step k, incoming dart and outgoing dart.
    auto passages = [&](const EdgeCycle& z) {
        std::map<std::string, std::vector<std::pair<int, int>>> out;
        for (size_t k = 0; k < z.size(); ++k) {
            const EdgeSide& cur = z[k];
            const EdgeSide& nxt = z[(k + 1) % z.size()];
            const std::string& v = s.side_head(cur);
            std::pair<int, int> din{s.edge_index(cur.edge), cur.dir > 0 ? 1 : 0};
            std::pair<int, int> dout{s.edge_index(nxt.edge), nxt.dir > 0 ? 0 : 1};
            out[v].push_back({dart_pos.at(v).at(din), dart_pos.at(v).at(dout)});
        }
        return out;
    };
    auto pa = passages(a), pb = passages(b);

    long long total = 0;
    for (const auto& [v, pas_a] : pa) {
        auto it = pb.find(v);
        if (it == pb.end()) continue;
        int R = static_cast<int>(rotation.at(v).size());
        for (const auto& [ai, ao] : pas_a)
            for (const auto& [bi, bo] : it->second) {
                if (ai == bi || ai == bo || ao == bi || ao == bo)
                    throw std::logic_error("algebraic_intersection requires edge-disjoint curves");
                // Cyclic order from ai: which of {bi, bo} lies in (ai, ao)?
                auto between = [&](int x) {
                    int end = mod(ao - ai, R);
                    return mod(x - ai, R) < end;
                };
                bool bi_in = between(bi), bo_in = between(bo);
                if (bi_in && !bo_in) total += 1;
                else if (!bi_in && bo_in) total -= 1;
            }
    }
    return total;
}

TwistWord twist_word(const CylinderDecomposition& dec) {
    TwistWord w;
    for (const auto& cyl : dec.cylinders) w.factors.push_back({cyl.cycle_representative, cyl.multiplier});
    w.handedness = +1;
    return w;
}

namespace {

// Evaluate a dual-walk cocycle on an edge cycle.
long long evaluate_cocycle(const Complex2& s, const std::vector<std::pair<int, int>>& cocycle,
                           const EdgeCycle& z) {
    std::map<int, long long> mult;
    for (const auto& side : z) mult[s.edge_index(side.edge)] += side.dir;
    long long v = 0;
    for (const auto& [e, sign] : cocycle) {
        auto it = mult.find(e);
        if (it != mult.end()) v += static_cast<long long>(sign) * it->second;
    }
    return v;
}

}  // namespace

WindingReport winding_check(const EdgePairingSurface& s, const HeegaardDiagram& diag,
                            const CylinderDecomposition& dec) {
    WindingReport rep;
    int g = s.genus;
    int nc = static_cast<int>(dec.cylinders.size());
    rep.winding.assign(nc, 0);

    // Structural annulus checks.
    for (const auto& cyl : dec.cylinders) {
        if (!cyl.connected) {
            rep.detail = "cylinder " + cyl.cycle_representative + " is disconnected";
            return rep;
        }
        if (cyl.closed) {
            if (nc != 1) {
                rep.detail = "closed cylinder with several edge cycles";
                return rep;
            }
        } else if (cyl.chi != 0 || cyl.boundary_circles != 2) {
            rep.detail = "cylinder " + cyl.cycle_representative + " is not an annulus (chi=" +
                         std::to_string(cyl.chi) + ", circles=" +
                         std::to_string(cyl.boundary_circles) + ")";
            return rep;
        }
    }

    // Crossing matrix and homology data.
    std::vector<std::vector<long long>> M(g, std::vector<long long>(g, 0));
    for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k)
            M[j][k] = algebraic_intersection(s.s, diag.d_curves[j], diag.v_curves[k]);

    SurfaceHomology hom(s.s);
    std::vector<std::vector<long long>> cd(g), cv(g);
    for (int j = 0; j < g; ++j) cd[j] = hom.coords(diag.d_curves[j]);
    for (int k = 0; k < g; ++k) cv[k] = hom.coords(diag.v_curves[k]);

    auto add_scaled = [](std::vector<long long>& acc, const std::vector<long long>& x, long long c) {
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * x[i];
    };

    const int H = -1;  // global handedness, pinned by the worked example

    if (nc == 1 && dec.cylinders[0].closed) {
        // Single-cycle case: D_j = tau^m(V_sigma(j)) along one core beta.
        long long m = dec.cylinders[0].multiplier;
        std::vector<int> perm(g);
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end());
        bool ok = false;
        do {
            for (int smask = 0; smask < (1 << g) && !ok; ++smask) {
                // w_j = cd_j - s_j cv_sigma(j) must be lambda_j * b for a common b,
                // and M_jk = -H m s_j u_sigma(j) u_k for an integer vector u with
                // lambda_j = -H m s_j u_sigma(j) * c.
                std::vector<std::vector<long long>> w(g);
                for (int j = 0; j < g; ++j) {
                    w[j] = cd[j];
                    add_scaled(w[j], cv[perm[j]], (smask >> j) & 1 ? 1 : -1);
                }
                // Common direction b.
                std::vector<long long> b;
                for (int j = 0; j < g && b.empty(); ++j)
                    for (long long x : w[j])
                        if (x != 0) {
                            b = w[j];
                            break;
                        }
                bool good = true;
                std::vector<long long> lambda(g, 0);
                if (!b.empty()) {
                    long long bg = 0;
                    for (long long x : b) bg = std::gcd(bg, x < 0 ? -x : x);
                    for (auto& x : b) x /= bg;
                    for (int j = 0; j < g && good; ++j) {
                        long long lam = 0;
                        for (size_t i = 0; i < b.size() && good; ++i) {
                            if (b[i] == 0) {
                                if (w[j][i] != 0) good = false;
                            } else if (w[j][i] % b[i] == 0) {
                                long long c = w[j][i] / b[i];
                                if (lam == 0) lam = c;
                                else if (lam != c) good = false;
                            } else
                                good = false;
                        }
                        for (size_t i = 0; i < b.size() && good; ++i)
                            if (w[j][i] != lam * b[i]) good = false;
                        lambda[j] = lam;
                    }
                }
                if (!good) continue;
                // Rank-1 structure of M with the coupled scale.
                // M_jk * s_j = -H m u_sigma(j) u_k ; lambda_j * s_j = -H m c u_sigma(j).
                std::vector<long long> u(g, 0);
                bool mzero = true;
                for (int j = 0; j < g && mzero; ++j)
                    for (int k = 0; k < g; ++k)
                        if (M[j][k] != 0) mzero = false;
                if (mzero) {
                    if (m != 0) continue;
                }
                // Solve u from the matrix: u_k proportional to column values.
                // Use the first nonzero row.
                int j0 = -1;
                for (int j = 0; j < g; ++j)
                    for (int k = 0; k < g; ++k)
                        if (M[j][k] != 0) {
                            j0 = j;
                            break;
                        }
                if (j0 < 0) continue;
                long long sj0 = (smask >> j0) & 1 ? -1 : 1;
                // M[j0][k] * s_j0 = -H m u_sigma(j0) u_k : u_k up to the factor
                // t := -H m u_sigma(j0).
                // Try all divisors shapes via gcd normalization.
                long long rg = 0;
                for (int k = 0; k < g; ++k) rg = std::gcd(rg, std::abs(M[j0][k]));
                bool done = false;
                for (long long t : {rg, -rg}) {
                    if (t == 0 || done) continue;
                    bool fits = true;
                    std::vector<long long> uu(g);
                    for (int k = 0; k < g; ++k) {
                        long long num = M[j0][k] * sj0;
                        if (num % t != 0) {
                            fits = false;
                            break;
                        }
                        uu[k] = num / t;
                    }
                    if (!fits) continue;
                    // t must equal -H m uu[sigma(j0)] * divisor structure: check full matrix.
                    // Determine scalar alpha with t = -H m alpha and uu scaled by alpha:
                    // overall M_jk s_j = -H m (alpha uu_sigma(j)) uu_k requires
                    // alpha uu_sigma(j0) = ... ; simpler: verify directly with
                    // u := uu and scale a := t / (-H m uu[sigma(j0)]) when integral.
                    long long denom = -static_cast<long long>(H) * m * uu[perm[j0]];
                    if (denom == 0 || t % denom != 0) continue;
                    long long a = t / denom;
                    // Fold a into u (u scaled by integer a on one side).
                    bool all = true;
                    for (int j = 0; j < g && all; ++j) {
                        long long sj = (smask >> j) & 1 ? -1 : 1;
                        for (int k = 0; k < g && all; ++k)
                            if (M[j][k] * sj != -static_cast<long long>(H) * m * a * uu[perm[j]] * uu[k])
                                all = false;
                    }
                    if (!all) continue;
                    // Lambda coupling: lambda_j s_j = -H m c (a uu_sigma(j)) for some c.
                    long long c = 0;
                    bool lamok = true;
                    for (int j = 0; j < g && lamok; ++j) {
                        long long sj = (smask >> j) & 1 ? -1 : 1;
                        long long lhs = lambda[j] * sj;
                        long long rhs_base = -static_cast<long long>(H) * m * a * uu[perm[j]];
                        if (rhs_base == 0) {
                            if (lhs != 0) lamok = false;
                        } else if (lhs % rhs_base != 0) {
                            lamok = false;
                        } else {
                            long long cc = lhs / rhs_base;
                            if (c == 0) c = cc;
                            else if (cc != c) lamok = false;
                        }
                    }
                    if (lamok) {
                        done = true;
                        ok = true;
                    }
                }
                if (ok) break;
            }
            if (ok) break;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (ok) {
            rep.pass = true;
            rep.winding[0] = dec.cylinders[0].multiplier;
            rep.detail = "verified (closed cylinder)";
        } else {
            rep.detail = "twist identity failed (closed cylinder)";
        }
        return rep;
    }

    // Annular case: inner products of the vertical curves with each cylinder
    // core, via the pushed-in parallel cocycles, plus the core classes.
    std::vector<std::vector<long long>> N(nc, std::vector<long long>(g, 0));
    std::vector<std::vector<long long>> cbeta(nc);
    for (int i = 0; i < nc; ++i) {
        for (int k = 0; k < g; ++k)
            N[i][k] = evaluate_cocycle(s.s, dec.cylinders[i].core_parallel, diag.v_curves[k]);
        cbeta[i] = hom.coords(dec.cylinders[i].core_boundary);
    }

    std::vector<int> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end());
    bool ok = false;
    do {
        for (int smask = 0; smask < (1 << g) && !ok; ++smask) {
            // M identity first (epsilon-free).
            bool good = true;
            for (int j = 0; j < g && good; ++j) {
                long long sj = (smask >> j) & 1 ? -1 : 1;
                for (int k = 0; k < g && good; ++k) {
                    long long rhs = 0;
                    for (int i = 0; i < nc; ++i)
                        rhs += dec.cylinders[i].multiplier * (-N[i][perm[j]]) * N[i][k];
                    if (M[j][k] != sj * H * rhs) good = false;
                }
            }
            if (!good) continue;
            // Coordinate identity. The parallel cocycle sits on one fixed side
            // of its circle by construction, so a single global sign relates
            // the two representations of the cores.
            for (int eps : {+1, -1}) {
                bool all = true;
                for (int j = 0; j < g && all; ++j) {
                    long long sj = (smask >> j) & 1 ? -1 : 1;
                    std::vector<long long> rhs = cv[perm[j]];
                    for (int i = 0; i < nc; ++i)
                        add_scaled(rhs, cbeta[i],
                                   H * eps * dec.cylinders[i].multiplier * (-N[i][perm[j]]));
                    for (size_t t = 0; t < rhs.size() && all; ++t)
                        if (cd[j][t] != sj * rhs[t]) all = false;
                }
                if (all) {
                    ok = true;
                    break;
                }
            }
        }
        if (ok) break;
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (ok) {
        rep.pass = true;
        for (int i = 0; i < nc; ++i) rep.winding[i] = dec.cylinders[i].multiplier;
        rep.detail = "verified";
    } else {
        rep.detail = "twist identity failed";
    }
    return rep;
}

}  // namespace bitwist
