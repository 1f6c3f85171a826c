#include "bitwist/invariants.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitwist {

Word free_reduce(const Word& w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    // Cyclic reduction is not applied; relators stay honest words.
    return out;
}

GroupPresentation pi1(const QuotientComplex& m) {
    GroupPresentation g;
    g.generators = static_cast<int>(m.orbits.edge_orbits.size());
    for (const auto& orb : m.orbits.edge_orbits)
        g.generator_names.push_back(orb.trace.front().edge);
    for (const auto& word : m.boundary_words) {
        Word w;
        for (const auto& [gen, exp] : word) w.push_back(exp > 0 ? gen + 1 : -(gen + 1));
        g.relators.push_back(w);
        g.reduced_relators.push_back(free_reduce(w));
    }
    return g;
}

mpz_class AbelianInvariants::order() const {
    if (free_rank > 0) return 0;
    mpz_class n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
}

std::string AbelianInvariants::to_string() const {
    if (trivial()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const auto& d : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + d.get_str();
    }
    return s;
}

std::vector<mpz_class> smith_normal_form(IntMatrix a) {
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    for (const auto& r : a)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");
    size_t n = std::min(rows, cols);
    std::vector<mpz_class> diag;

    size_t s = 0;
    while (s < n) {
        // Pivot: smallest nonzero absolute value in the lower-right block.
        size_t pi = s, pj = s;
        bool found = false;
        mpz_class best;
        for (size_t i = s; i < rows; ++i)
            for (size_t j = s; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                mpz_class v = abs(a[i][j]);
                if (!found || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        std::swap(a[s], a[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][s], a[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = s + 1; i < rows; ++i) {
                if (a[i][s] == 0) continue;
                mpz_class qq = a[i][s] / a[s][s];  // truncated division is fine here
                for (size_t j = s; j < cols; ++j) a[i][j] -= qq * a[s][j];
                if (a[i][s] != 0) {
                    std::swap(a[s], a[i]);
                    clean = false;
                }
            }
            for (size_t j = s + 1; j < cols; ++j) {
                if (a[s][j] == 0) continue;
                mpz_class qq = a[s][j] / a[s][s];
                for (size_t i = s; i < rows; ++i) a[i][j] -= qq * a[i][s];
                if (a[s][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(a[i][s], a[i][j]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(a[s][s]));
        ++s;
    }

    // Divisibility chain d1 | d2 | ...: gcd/lcm massage of the diagonal
    // (row/column moves realizing it exist, so the result is the true SNF).
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            mpz_class g = gcd(diag[i], diag[j]);
            if (g == diag[i] || g == 0) continue;
            mpz_class l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    std::sort(diag.begin(), diag.end());
    return diag;
}

AbelianInvariants abelian_invariants_of_matrix(const IntMatrix& relations, int generators) {
    AbelianInvariants out;
    std::vector<mpz_class> d = smith_normal_form(relations);
    int rank = 0;
    for (const auto& v : d) {
        if (v == 0) continue;
        ++rank;
        if (v > 1) out.torsion.push_back(v);
    }
    out.free_rank = generators - rank;
    return out;
}

AbelianInvariants h1(const GroupPresentation& pres) {
    IntMatrix a(pres.relators.size(), std::vector<mpz_class>(pres.generators, 0));
    for (size_t r = 0; r < pres.relators.size(); ++r)
        for (int x : pres.relators[r]) {
            int g = x > 0 ? x : -x;
            a[r][g - 1] += x > 0 ? 1 : -1;
        }
    return abelian_invariants_of_matrix(a, pres.generators);
}

long long euler(const QuotientComplex& m) { return m.euler(); }

}  // namespace bitwist
