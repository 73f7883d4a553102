#ifndef BDIV_TESTUTIL_HPP
#define BDIV_TESTUTIL_HPP

#include <random>

#include "../src/scenario.hpp"

namespace testutil {

using namespace bdiv;

// P^2 with the three coordinate lines, all in D (SCEN-A surface)
inline SurfacePair three_lines(bool x_in_d = true, bool y_in_d = true, bool z_in_d = true) {
    SurfacePair p;
    p.chi_top = 3;
    p.curves = {{"Lx", 0, x_in_d}, {"Ly", 0, y_in_d}, {"Lz", 0, z_in_d}};
    p.points = {{"pxy", {"Lx", "Ly"}}, {"pxz", {"Lx", "Lz"}}, {"pyz", {"Ly", "Lz"}}};
    return p;
}

inline ExpConnection monomial_connection(std::map<Symbol, Int> exps, Int rank = 1,
                                         const Symbol& tag = "c") {
    ExpVec e;
    for (auto& [c, k] : exps)
        if (k != 0) e.e[c] = k;
    ExpSummand s;
    s.value = e.e.empty() ? Combination{} : Combination::monomial(e, tag);
    s.rank = rank;
    return ExpConnection{{s}};
}

// SCEN-A: D = three coordinate lines, M = E^{z^2/(xy)}
inline SurfacePair scen_a_pair() { return three_lines(); }
inline ExpConnection scen_a_m() { return monomial_connection({{"Lx", -1}, {"Ly", -1}, {"Lz", 2}}); }

// SCEN-B: D = {Lx, Lz}, auxiliary Ly, M = E^{yz/x^2}
inline SurfacePair scen_b_pair() { return three_lines(true, false, true); }
inline ExpConnection scen_b_m() { return monomial_connection({{"Lx", -2}, {"Ly", 1}, {"Lz", 1}}); }

// SCEN-C: D = {Lx, Linf}, auxiliary Ly, M = E^{y/x}
inline SurfacePair scen_c_pair() {
    SurfacePair p;
    p.chi_top = 3;
    p.curves = {{"Linf", 0, true}, {"Lx", 0, true}, {"Ly", 0, false}};
    p.points = {{"pxy", {"Lx", "Ly"}}, {"pxinf", {"Linf", "Lx"}}, {"pyinf", {"Linf", "Ly"}}};
    return p;
}
inline ExpConnection scen_c_m() { return monomial_connection({{"Lx", -1}, {"Ly", 1}}); }

struct RandomScenario {
    SurfacePair pair;
    std::vector<ExpConnection> connections;
};

// random SNC configuration (<= 6 curves) with random monomial connections,
// exponents in [-4, 4], total rank <= 3
inline RandomScenario random_scenario(std::mt19937_64& rng) {
    RandomScenario out;
    std::uniform_int_distribution<int> d_curves(1, 6);
    std::uniform_int_distribution<int> d_genus(0, 2);
    std::uniform_int_distribution<int> d_chi(-2, 6);
    std::uniform_int_distribution<int> coin(0, 1);
    int nc = d_curves(rng);
    out.pair.chi_top = d_chi(rng);
    for (int i = 0; i < nc; ++i) {
        Curve c;
        c.id = "C" + std::to_string(i);
        c.genus = d_genus(rng);
        c.in_d = coin(rng) == 1;
        out.pair.curves.push_back(c);
    }
    // make sure D is nonempty so connections have somewhere to put poles
    out.pair.curves.front().in_d = true;
    int pid = 0;
    std::uniform_int_distribution<int> d_pts(0, 2);
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            int k = d_pts(rng);
            for (int t = 0; t < k; ++t) {
                MarkedPoint p;
                p.id = "p" + std::to_string(pid++);
                p.on = {out.pair.curves[i].id, out.pair.curves[j].id};
                std::sort(p.on.begin(), p.on.end());
                out.pair.points.push_back(p);
            }
        }
    std::uniform_int_distribution<int> d_nconn(1, 2);
    std::uniform_int_distribution<int> d_nsum(1, 3);
    std::uniform_int_distribution<int> d_exp(-4, 4);
    std::uniform_int_distribution<int> d_support(0, 2);
    int nconn = d_nconn(rng);
    int tagc = 0;
    for (int c = 0; c < nconn; ++c) {
        ExpConnection m;
        int nsum = d_nsum(rng);
        Int rank_left = 3;
        for (int si = 0; si < nsum && rank_left > 0; ++si) {
            ExpSummand sm;
            std::uniform_int_distribution<Int> d_rank(1, rank_left);
            sm.rank = d_rank(rng);
            rank_left -= sm.rank;
            ExpVec e;
            int nsup = d_support(rng);
            for (int t = 0; t < nsup; ++t) {
                const Curve& cu = out.pair.curves[std::uniform_int_distribution<std::size_t>(
                    0, out.pair.curves.size() - 1)(rng)];
                Int k = d_exp(rng);
                if (!cu.in_d && k < 0) k = -k;  // poles only on D
                if (k != 0) e.e[cu.id] = k;
            }
            sm.value = e.e.empty() ? Combination{} : Combination::monomial(e, "t" + std::to_string(tagc++));
            m.summands.push_back(std::move(sm));
        }
        validate_connection(out.pair, m);
        out.connections.push_back(std::move(m));
    }
    return out;
}

}  // namespace testutil

#endif
