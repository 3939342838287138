#pragma once

#include <string>
#include <utility>
#include <vector>

#include "priverm/core.hpp"

namespace priverm {

struct ClassPair {
    HypothesisClass h;
    HypothesisClass phi;
};

// Readable names for the points of a domain, index order.
std::vector<std::string> point_names(const FiniteDomain& domain, const std::string& prefix);
// Names for the product domain X x X* x {0,1}: "(x1,x*1,0)", ...
std::vector<std::string> product_point_names(std::size_t nx, std::size_t nxstar);

inline constexpr std::size_t kMaxTheorem1D = 5;

// H_1 = {000, 001, 100, 110}, Phi_1 = {000, 001, 010, 101} over three points;
// for d > 1, all d-fold products of those on d consecutive triplets of points.
ClassPair construct_theorem1(std::size_t d);

// The diagonal {(x_i, x*_i, 0) : i < 3d} as indices of the product domain.
std::vector<PointIndex> theorem1_witness(std::size_t d);

// Over d + dstar + 1 points: H = labelings with at most d ones, J = labelings
// with at most dstar zeros.
struct Lemma1Classes {
    HypothesisClass h;
    HypothesisClass j;
};
Lemma1Classes construct_lemma1_tight(std::size_t d, std::size_t dstar);

// d + dstar - 2 triples {(x_i, x*_{dstar}, 0) : i < d} and {(x_d, x*_j, 0) : j < dstar}
// built from the lexicographically first maximum shattered sets of H and Phi.
struct Lemma2Witness {
    std::size_t d = 0;
    std::size_t dstar = 0;
    std::vector<PointIndex> shattered_h;
    std::vector<PointIndex> shattered_phi;
    std::vector<Triple> triples;
    // Indices of `triples` in the product domain of the auxiliary loss class.
    std::vector<PointIndex> points;
    bool verified = false;
};
Lemma2Witness construct_lemma2_witness(const HypothesisClass& h, const HypothesisClass& phi);

// Hard distribution family for the privileged-side lower bound: mass is put
// on pairs (a_i, b_i) of a shattered set of Phi, one element of each pair
// weighted (1+alpha)/dstar and the other (1-alpha)/dstar.
struct Theorem5Family {
    std::vector<std::pair<PointIndex, PointIndex>> pairs;
    double alpha = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    // heavy_side[i] == 0 puts (1+alpha)/dstar on a_i, 1 puts it on b_i.
    std::vector<Label> heavy_side;
    // VC(Phi), and the even count of points actually used.
    std::size_t dstar = 0;
    std::size_t dstar_used = 0;
};

struct Theorem5Construction {
    Theorem5Family family;
    // Supported on (x = 0, x* in C, y = 0).
    FiniteDistribution distribution;
    // Member of Phi flagging exactly the light element of every pair.
    Hypothesis phi_star;
    std::size_t phi_star_index = 0;
};

double theorem5_alpha(double eps, double delta);

// Empty heavy_side means all zeros.
Theorem5Construction construct_theorem5_family(const HypothesisClass& phi, double eps, double delta,
                                               std::vector<Label> heavy_side = {});

// Members of Phi that flag exactly one element of every pair.
HypothesisClass phi_prime(const HypothesisClass& phi, const Theorem5Family& family);

}  // namespace priverm
