#include "bitwist/generators.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bitwist {

namespace {

// Build the complex determined by face words over a random side matching;
// vertices are the forced corner classes.
Complex2 complex_from_matching(const std::vector<int>& face_lens,
                               const std::vector<std::pair<int, int>>& matching,
                               const std::vector<int>& slot_face, const std::vector<int>& slot_pos) {
    int nslots = static_cast<int>(slot_face.size());
    int nedges = static_cast<int>(matching.size());
    std::vector<int> edge_of_slot(nslots, -1), dir_of_slot(nslots, 0);
    for (int e = 0; e < nedges; ++e) {
        edge_of_slot[matching[e].first] = e;
        dir_of_slot[matching[e].first] = +1;
        edge_of_slot[matching[e].second] = e;
        dir_of_slot[matching[e].second] = -1;
    }
    // Edge ends: 0 = tail, 1 = head. Chaining constraint unifies them.
    std::vector<int> parent(2 * nedges);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<int>> slots_of_face(face_lens.size());
    for (int s = 0; s < nslots; ++s) slots_of_face[slot_face[s]].push_back(s);
    for (auto& v : slots_of_face)
        std::sort(v.begin(), v.end(), [&](int a, int b) { return slot_pos[a] < slot_pos[b]; });
    auto trav_head = [&](int s) { return 2 * edge_of_slot[s] + (dir_of_slot[s] > 0 ? 1 : 0); };
    auto trav_tail = [&](int s) { return 2 * edge_of_slot[s] + (dir_of_slot[s] > 0 ? 0 : 1); };
    for (const auto& slots : slots_of_face)
        for (size_t i = 0; i < slots.size(); ++i) {
            int a = find(trav_head(slots[i]));
            int b = find(trav_tail(slots[(i + 1) % slots.size()]));
            if (a != b) parent[a] = b;
        }
    std::map<int, int> vclass;
    for (int x = 0; x < 2 * nedges; ++x) {
        int r = find(x);
        if (!vclass.count(r)) vclass[r] = static_cast<int>(vclass.size());
    }
    Complex2 c;
    for (size_t i = 0; i < vclass.size(); ++i) c.vertices.push_back("v" + std::to_string(i));
    for (int e = 0; e < nedges; ++e)
        c.edges.push_back({"e" + std::to_string(e), "v" + std::to_string(vclass[find(2 * e)]),
                           "v" + std::to_string(vclass[find(2 * e + 1)])});
    for (size_t f = 0; f < face_lens.size(); ++f) {
        FaceRec rec{"f" + std::to_string(f), {}};
        for (int s : slots_of_face[f])
            rec.boundary.push_back({"e" + std::to_string(edge_of_slot[s]), dir_of_slot[s]});
        c.faces.push_back(std::move(rec));
    }
    return c;
}

}  // namespace

FacePairing random_paired_ball(Rng& rng, int max_faces, int max_len) {
    int max_pairs = std::max(1, max_faces / 2);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        int npairs = std::uniform_int_distribution<int>(1, max_pairs)(rng);
        std::vector<int> face_lens;
        for (int k = 0; k < npairs; ++k) {
            int len = std::uniform_int_distribution<int>(1, max_len)(rng);
            face_lens.push_back(len);
            face_lens.push_back(len);
        }
        int nslots = std::accumulate(face_lens.begin(), face_lens.end(), 0);
        if (nslots % 2 != 0) continue;
        std::vector<int> slot_face, slot_pos;
        for (size_t f = 0; f < face_lens.size(); ++f)
            for (int i = 0; i < face_lens[f]; ++i) {
                slot_face.push_back(static_cast<int>(f));
                slot_pos.push_back(i);
            }
        std::vector<int> perm(nslots);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::pair<int, int>> matching;
        for (int i = 0; i < nslots; i += 2) matching.push_back({perm[i], perm[i + 1]});

        Complex2 c = complex_from_matching(face_lens, matching, slot_face, slot_pos);
        if (c.edges.empty()) continue;
        ValidationReport r = validate_sphere(c);
        if (!r.ok) continue;

        FacePairing p;
        p.base = std::move(c);
        for (int k = 0; k < npairs; ++k) {
            int offset = std::uniform_int_distribution<int>(0, face_lens[2 * k] - 1)(rng);
            p.pairing.pairs.push_back(
                {"f" + std::to_string(2 * k), "f" + std::to_string(2 * k + 1), offset});
        }
        if (validate_pairing(p).ok) return p;
    }
    throw std::runtime_error("random_paired_ball: no sphere found (parameters too tight?)");
}

MultiplierFunction random_multipliers(Rng& rng, const EdgeCycleSet& cycles, int bound) {
    MultiplierFunction m;
    std::uniform_int_distribution<int> d(1, 2 * bound);
    for (const auto& cy : cycles.cycles) {
        int v = d(rng);
        m.by_representative[cy.representative] = v <= bound ? -v : v - bound;
    }
    return m;
}

FramedLink random_chain_link(Rng& rng, int min_len, int max_len, int coeff_bound) {
    int n = std::uniform_int_distribution<int>(min_len, max_len)(rng);
    FramedLink l;
    std::uniform_int_distribution<int> num(-coeff_bound, coeff_bound);
    std::uniform_int_distribution<int> den(1, coeff_bound);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < n; ++i) {
        LinkComponent c;
        c.id = "C" + std::to_string(i);
        c.kind = LinkComponent::Other;
        c.framing = Framing(mpq_class(num(rng), den(rng)));
        c.unknotted = true;
        l.components.push_back(c);
    }
    l.linking.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i + 1 < n; ++i) {
        long long v = sign(rng) ? 1 : -1;
        l.linking[i][i + 1] = l.linking[i + 1][i] = v;
    }
    if (n >= 2) {
        l.meridians.insert({"C0", "C1"});
        l.meridians.insert({"C" + std::to_string(n - 1), "C" + std::to_string(n - 2)});
    }
    return l;
}

}  // namespace bitwist
