#include "bitwist/complex2.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace bitwist {

void Complex2::build_index() const {
    if (index_built_) return;
    vidx_.clear();
    eidx_.clear();
    fidx_.clear();
    for (size_t i = 0; i < vertices.size(); ++i) vidx_[vertices[i]] = static_cast<int>(i);
    for (size_t i = 0; i < edges.size(); ++i) eidx_[edges[i].id] = static_cast<int>(i);
    for (size_t i = 0; i < faces.size(); ++i) fidx_[faces[i].id] = static_cast<int>(i);
    index_built_ = true;
}

int Complex2::vertex_index(const std::string& id) const {
    build_index();
    auto it = vidx_.find(id);
    return it == vidx_.end() ? -1 : it->second;
}

int Complex2::edge_index(const std::string& id) const {
    build_index();
    auto it = eidx_.find(id);
    return it == eidx_.end() ? -1 : it->second;
}

int Complex2::face_index(const std::string& id) const {
    build_index();
    auto it = fidx_.find(id);
    return it == fidx_.end() ? -1 : it->second;
}

const EdgeRec& Complex2::edge(const std::string& id) const {
    int i = edge_index(id);
    if (i < 0) throw std::out_of_range("unknown edge id: " + id);
    return edges[i];
}

const FaceRec& Complex2::face(const std::string& id) const {
    int i = face_index(id);
    if (i < 0) throw std::out_of_range("unknown face id: " + id);
    return faces[i];
}

const std::string& Complex2::side_tail(const EdgeSide& s) const {
    const EdgeRec& e = edge(s.edge);
    return s.dir > 0 ? e.tail : e.head;
}

const std::string& Complex2::side_head(const EdgeSide& s) const {
    const EdgeRec& e = edge(s.edge);
    return s.dir > 0 ? e.head : e.tail;
}

void ValidationReport::fail(std::string msg) {
    ok = false;
    violations.push_back(std::move(msg));
}

ValidationReport validate_surface(const Complex2& c) {
    ValidationReport r;
    std::set<std::string> vseen, eseen, fseen;
    for (const auto& v : c.vertices)
        if (!vseen.insert(v).second) r.fail("duplicate vertex id: " + v);
    for (const auto& e : c.edges) {
        if (!eseen.insert(e.id).second) r.fail("duplicate edge id: " + e.id);
        if (!vseen.count(e.tail)) r.fail("edge " + e.id + " has unknown tail " + e.tail);
        if (!vseen.count(e.head)) r.fail("edge " + e.id + " has unknown head " + e.head);
    }
    for (const auto& f : c.faces)
        if (!fseen.insert(f.id).second) r.fail("duplicate face id: " + f.id);
    if (!r.ok) return r;

    // Side count and direction parity per edge.
    std::map<std::string, std::pair<int, int>> sides;  // edge -> (#dir+, #dir-)
    for (const auto& f : c.faces) {
        if (f.boundary.empty()) r.fail("face " + f.id + " has empty boundary");
        for (const auto& s : f.boundary) {
            if (c.edge_index(s.edge) < 0) {
                r.fail("face " + f.id + " references unknown edge " + s.edge);
                return r;
            }
            if (s.dir != 1 && s.dir != -1) {
                r.fail("face " + f.id + " has side with dir not in {+1,-1}");
                return r;
            }
            auto& cnt = sides[s.edge];
            (s.dir > 0 ? cnt.first : cnt.second)++;
        }
    }
    for (const auto& e : c.edges) {
        auto it = sides.find(e.id);
        int pos = it == sides.end() ? 0 : it->second.first;
        int neg = it == sides.end() ? 0 : it->second.second;
        if (pos + neg != 2)
            r.fail("edge " + e.id + " appears " + std::to_string(pos + neg) +
                   " times in face boundaries (expected 2)");
        else if (pos != 1 || neg != 1)
            r.fail("edge " + e.id + " is traversed twice in the same direction (orientation)");
    }

    // Boundary chaining.
    for (const auto& f : c.faces) {
        const auto& b = f.boundary;
        for (size_t i = 0; i < b.size(); ++i) {
            const auto& cur = b[i];
            const auto& nxt = b[(i + 1) % b.size()];
            if (c.side_head(cur) != c.side_tail(nxt))
                r.fail("face " + f.id + " boundary breaks at slot " + std::to_string(i) + " (" +
                       c.side_head(cur) + " != " + c.side_tail(nxt) + ")");
        }
    }
    return r;
}

long long euler_characteristic(const Complex2& c) {
    return static_cast<long long>(c.vertices.size()) - static_cast<long long>(c.edges.size()) +
           static_cast<long long>(c.faces.size());
}

int connected_component_count(const Complex2& c) {
    // Union-find over vertices along edges; isolated vertices count too.
    std::vector<int> parent(c.vertices.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : c.edges) {
        int a = find(c.vertex_index(e.tail)), b = find(c.vertex_index(e.head));
        if (a != b) parent[a] = b;
    }
    std::set<int> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
}

ValidationReport validate_sphere(const Complex2& c) {
    if (c.edges.empty() && c.vertices.size() == 1 && c.faces.size() == 1) {
        ValidationReport r;
        r.fail("forbidden minimal complex (one 0-cell and one 2-cell only)");
        return r;
    }
    ValidationReport r = validate_surface(c);
    if (!r.ok) return r;
    if (euler_characteristic(c) != 2)
        r.fail("Euler characteristic != 2 (got " + std::to_string(euler_characteristic(c)) + ")");
    if (!c.vertices.empty() && connected_component_count(c) != 1) r.fail("complex is not connected");
    return r;
}

Complex2 mirror(const Complex2& c) {
    Complex2 m = c;
    for (auto& f : m.faces) {
        std::reverse(f.boundary.begin(), f.boundary.end());
        for (auto& s : f.boundary) s.dir = -s.dir;
    }
    m.invalidate_index();
    return m;
}

FlagSystem::FlagSystem(const Complex2& c) : c_(&c) {
    int nflags = 0;
    face_offset_.resize(c.faces.size());
    for (size_t f = 0; f < c.faces.size(); ++f) {
        face_offset_[f] = nflags;
        nflags += 2 * static_cast<int>(c.faces[f].boundary.size());
    }
    s0_.assign(nflags, -1);
    s1_.assign(nflags, -1);
    s2_.assign(nflags, -1);
    face_.assign(nflags, -1);
    slot_.assign(nflags, -1);
    end_.assign(nflags, -1);

    edge_sides_.assign(c.edges.size(), {SideRef{}, SideRef{}});
    std::vector<int> seen(c.edges.size(), 0);
    for (size_t f = 0; f < c.faces.size(); ++f) {
        const auto& b = c.faces[f].boundary;
        int L = static_cast<int>(b.size());
        for (int i = 0; i < L; ++i) {
            int ei = c.edge_index(b[i].edge);
            SideRef ref{static_cast<int>(f), i, b[i].dir};
            if (seen[ei] == 0)
                edge_sides_[ei].first = ref;
            else if (seen[ei] == 1)
                edge_sides_[ei].second = ref;
            else
                throw std::runtime_error("edge covered more than twice: " + b[i].edge);
            seen[ei]++;
            for (int t = 0; t < 2; ++t) {
                int id = face_offset_[f] + 2 * i + t;
                face_[id] = static_cast<int>(f);
                slot_[id] = i;
                end_[id] = t;
                s0_[id] = face_offset_[f] + 2 * i + (1 - t);
            }
            // s1: head end of slot i meets tail end of slot i+1.
            int head_id = face_offset_[f] + 2 * i + 1;
            int next_tail = face_offset_[f] + 2 * ((i + 1) % L);
            s1_[head_id] = next_tail;
            s1_[next_tail] = head_id;
        }
    }
    for (size_t e = 0; e < c.edges.size(); ++e) {
        if (seen[e] != 2) throw std::runtime_error("edge not covered twice: " + c.edges[e].id);
        const SideRef& a = edge_sides_[e].first;
        const SideRef& b = edge_sides_[e].second;
        if (a.dir == b.dir) throw std::runtime_error("incoherent orientation at edge " + c.edges[e].id);
        // Opposite directions: geometric ends match with end flag flipped.
        for (int t = 0; t < 2; ++t) {
            int fa = face_offset_[a.face] + 2 * a.slot + t;
            int fb = face_offset_[b.face] + 2 * b.slot + (1 - t);
            s2_[fa] = fb;
            s2_[fb] = fa;
        }
    }
}

int FlagSystem::flag(int face, int slot, int end) const {
    return face_offset_[face] + 2 * slot + end;
}

std::optional<std::vector<int>> cellular_isomorphism(const Complex2& a, const Complex2& b,
                                                     bool orientation_preserving, long long flag_cap) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
        a.faces.size() != b.faces.size())
        return std::nullopt;
    const Complex2 bb = orientation_preserving ? b : mirror(b);
    FlagSystem fa(a), fb(bb);
    if (fa.flag_count() != fb.flag_count()) return std::nullopt;
    int n = fa.flag_count();
    if (n == 0) {
        // No edges anywhere; compare bare cell counts only.
        return std::vector<int>{};
    }
    if (flag_cap >= 0 && n > flag_cap) throw std::length_error("isomorphism search size cap exceeded");

    // Mirroring b swaps the parity classes, so matching end-parity flags in bb
    // realizes an orientation-reversing map back in b.
    for (int start = 0; start < n; ++start) {
        if (fb.end_of(start) != fa.end_of(0)) continue;
        std::vector<int> img(n, -1), pre(n, -1);
        img[0] = start;
        pre[start] = 0;
        std::vector<int> stack{0};
        bool okmap = true;
        auto extend = [&](int x, int y) {
            if (img[x] == -1 && pre[y] == -1) {
                img[x] = y;
                pre[y] = x;
                stack.push_back(x);
                return true;
            }
            return img[x] == y;
        };
        while (okmap && !stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            int y = img[x];
            okmap = extend(fa.s0(x), fb.s0(y)) && extend(fa.s1(x), fb.s1(y)) && extend(fa.s2(x), fb.s2(y));
        }
        if (!okmap) continue;
        bool total = true;
        for (int i = 0; i < n && total; ++i) total = img[i] != -1;
        if (total) return img;
        // Disconnected flag graphs (disconnected complex): skip partial maps.
    }
    return std::nullopt;
}

Complex2 dual_complex(const Complex2& c) {
    FlagSystem fs(c);
    Complex2 d;
    d.vertices.reserve(c.faces.size());
    for (const auto& f : c.faces) d.vertices.push_back(f.id);

    // Dual edge for each primal edge: tail = face of the dir=+1 side, head =
    // face of the dir=-1 side.
    d.edges.reserve(c.edges.size());
    for (size_t e = 0; e < c.edges.size(); ++e) {
        const auto& [sa, sb] = fs.edge_sides()[e];
        const SideRef& pos = sa.dir > 0 ? sa : sb;
        const SideRef& neg = sa.dir > 0 ? sb : sa;
        d.edges.push_back({c.edges[e].id, c.faces[pos.face].id, c.faces[neg.face].id});
    }

    // One dual face per primal vertex; its boundary lists the edges crossed by
    // the rotation around the vertex. Rotation step on tail-end flags:
    // r = s1 o s2.
    std::vector<char> used(fs.flag_count(), 0);
    std::vector<std::pair<std::string, std::vector<EdgeSide>>> dual_faces;  // (vertex, word)
    for (int f0 = 0; f0 < fs.flag_count(); ++f0) {
        if (fs.end_of(f0) != 0 || used[f0]) continue;
        std::vector<EdgeSide> word;
        std::string vertex_id;
        int f = f0;
        do {
            used[f] = 1;
            const FaceRec& fc = c.faces[fs.face_of(f)];
            const EdgeSide& side = fc.boundary[fs.slot_of(f)];
            // Tail-end flag sits at the geometric tail of the directed side.
            vertex_id = c.side_tail(side);
            // The crossed edge is side.edge at its traversal-tail end; the
            // dual side direction is +1 when that end is the stored head.
            bool at_head = side.dir < 0;
            word.push_back({side.edge, at_head ? +1 : -1});
            f = fs.s1(fs.s2(f));
        } while (f != f0);
        dual_faces.emplace_back(vertex_id, std::move(word));
    }
    // Deterministic face order: follow primal vertex order.
    std::map<std::string, std::vector<std::vector<EdgeSide>>> by_vertex;
    for (auto& [v, w] : dual_faces) by_vertex[v].push_back(std::move(w));
    for (const auto& v : c.vertices) {
        auto it = by_vertex.find(v);
        if (it == by_vertex.end()) throw std::runtime_error("vertex with no rotation (isolated): " + v);
        if (it->second.size() != 1) throw std::runtime_error("vertex rotation split: " + v);
        d.faces.push_back({v, std::move(it->second.front())});
    }
    return d;
}

std::string edge_bary_id(const std::string& edge) { return "eb:" + edge; }
std::string face_bary_id(const std::string& face) { return "fb:" + face; }
std::string half_edge_id(const std::string& edge, int end) {
    return "he:" + edge + (end == 0 ? ":t" : ":h");
}

BarycentricBoundary barycentric_boundary(const Complex2& c) {
    ValidationReport r = validate_surface(c);
    if (!r.ok) throw std::invalid_argument("barycentric_boundary: invalid complex: " + r.violations.front());

    BarycentricBoundary out;
    out.parent = c;
    Complex2& s = out.complex;

    s.vertices = c.vertices;
    for (const auto& e : c.edges) s.vertices.push_back(edge_bary_id(e.id));
    for (const auto& f : c.faces) s.vertices.push_back(face_bary_id(f.id));

    // Half edges of each parent edge.
    for (const auto& e : c.edges) {
        s.edges.push_back({half_edge_id(e.id, 0), e.tail, edge_bary_id(e.id)});
        s.edges.push_back({half_edge_id(e.id, 1), edge_bary_id(e.id), e.head});
    }
    // Spokes. Vertex spokes join corner vertices to the face barycenter, edge
    // spokes join edge barycenters to the face barycenter; one per slot.
    auto vspoke = [](const std::string& face, int slot) {
        return "vs:" + face + ":" + std::to_string(slot);
    };
    auto espoke = [](const std::string& face, int slot) {
        return "es:" + face + ":" + std::to_string(slot);
    };
    for (const auto& f : c.faces) {
        int L = static_cast<int>(f.boundary.size());
        for (int i = 0; i < L; ++i) {
            // vspoke i starts at the corner at the tail of slot i.
            s.edges.push_back({vspoke(f.id, i), c.side_tail(f.boundary[i]), face_bary_id(f.id)});
            s.edges.push_back({espoke(f.id, i), edge_bary_id(f.boundary[i].edge), face_bary_id(f.id)});
        }
    }
    out.by_face.resize(c.faces.size());
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        const FaceRec& f = c.faces[fi];
        int L = static_cast<int>(f.boundary.size());
        for (int i = 0; i < L; ++i) {
            const EdgeSide& side = f.boundary[i];
            // Triangle half 0: corner vertex -> edge barycenter -> face barycenter.
            std::string tid0 = "t:" + f.id + ":" + std::to_string(i) + ":0";
            std::string tid1 = "t:" + f.id + ":" + std::to_string(i) + ":1";
            int he_first = side.dir > 0 ? 0 : 1;
            s.faces.push_back({tid0,
                               {{half_edge_id(side.edge, he_first), side.dir},
                                {espoke(f.id, i), +1},
                                {vspoke(f.id, i), -1}}});
            out.triangles.push_back({f.id, i, 0});
            out.by_face[fi].push_back(static_cast<int>(out.triangles.size()) - 1);
            s.faces.push_back({tid1,
                               {{half_edge_id(side.edge, 1 - he_first), side.dir},
                                {vspoke(f.id, (i + 1) % L), +1},
                                {espoke(f.id, i), -1}}});
            out.triangles.push_back({f.id, i, 1});
            out.by_face[fi].push_back(static_cast<int>(out.triangles.size()) - 1);
        }
    }
    return out;
}

DualCapComplex dual_cap(const BarycentricBoundary& s) {
    DualCapComplex out;
    out.parent = s.parent;
    const Complex2& c = s.parent;
    Complex2& d = out.complex;

    d.vertices = c.vertices;
    for (const auto& e : c.edges) d.vertices.push_back(edge_bary_id(e.id));
    for (const auto& f : c.faces) d.vertices.push_back(face_bary_id(f.id));
    for (const auto& e : c.edges) {
        d.edges.push_back({half_edge_id(e.id, 0), e.tail, edge_bary_id(e.id)});
        d.edges.push_back({half_edge_id(e.id, 1), edge_bary_id(e.id), e.head});
    }
    auto espoke = [](const std::string& face, int slot) {
        return "es:" + face + ":" + std::to_string(slot);
    };
    for (const auto& f : c.faces) {
        int L = static_cast<int>(f.boundary.size());
        for (int i = 0; i < L; ++i)
            d.edges.push_back({espoke(f.id, i), edge_bary_id(f.boundary[i].edge), face_bary_id(f.id)});
    }
    // Cap at the corner between slot i-1 and slot i: the two barycentric
    // triangles there merged across the deleted vertex spoke.
    for (const auto& f : c.faces) {
        int L = static_cast<int>(f.boundary.size());
        for (int i = 0; i < L; ++i) {
            int prev = (i + L - 1) % L;
            const EdgeSide& in_side = f.boundary[prev];
            const EdgeSide& out_side = f.boundary[i];
            std::string cid = "cap:" + f.id + ":" + std::to_string(i);
            d.faces.push_back({cid,
                               {{half_edge_id(in_side.edge, in_side.dir > 0 ? 1 : 0), in_side.dir},
                                {half_edge_id(out_side.edge, out_side.dir > 0 ? 0 : 1), out_side.dir},
                                {espoke(f.id, i), +1},
                                {espoke(f.id, prev), -1}}});
            out.caps.push_back({f.id, i});
        }
    }
    return out;
}

}  // namespace bitwist
