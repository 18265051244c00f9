#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctlab/hodge.hpp"

using namespace ctlab;

namespace {

RuminForm rand_form(const Grid& g, int degree, std::uint64_t seed, int band = 2) {
    std::vector<ScalarField> c;
    for (int i = 0; i < RuminForm::component_count(degree); ++i)
        c.push_back(random_band_limited(g, seed * 4 + i, band, 1.0));
    return RuminForm(degree, std::move(c));
}

}  // namespace

TEST_CASE("dense harmonic dimensions are (1, 3, 3, 1)") {
    Grid g{8};
    ContactModel m(g);
    RuminComplex R(m);
    SolverConfig sc;
    sc.dense = true;
    HodgeStack H(R, sc);
    CHECK(H[0].harmonic_basis().size() == 1);
    CHECK(H[1].harmonic_basis().size() == 3);
    CHECK(H[2].harmonic_basis().size() == 3);
    CHECK(H[3].harmonic_basis().size() == 1);
}

TEST_CASE("H_Q is a projector and G_Q inverts the Laplacian off the kernel") {
    Grid g{8};
    ContactModel m(g);
    RuminComplex R(m);
    HodgeStack H(R, SolverConfig{});
    for (int k = 0; k < 4; ++k) {
        RuminForm w = rand_form(g, k, 60 + k);
        const RuminForm hw = H[k].H_Q(w);
        CHECK(rumin_norm(H[k].H_Q(hw) - hw) < 1e-10);
        const RuminForm gw = H[k].G_Q(w);
        // Delta G w + H w = w and G w is orthogonal to the harmonic space.
        CHECK(rumin_norm(R.laplacian(gw) + hw - w) / rumin_norm(w) < 1e-8);
        CHECK(rumin_norm(H[k].H_Q(gw)) / rumin_norm(gw) < 1e-9);
    }
}

TEST_CASE("dense and CG Green operators agree") {
    Grid g{8};
    ContactModel m(g);
    RuminComplex R(m);
    SolverConfig dense;
    dense.dense = true;
    HodgeStack Hd(R, dense), Hc(R, SolverConfig{});
    for (int k = 0; k < 4; ++k) {
        RuminForm w = rand_form(g, k, 80 + k);
        const RuminForm a = Hd[k].G_Q(w), b = Hc[k].G_Q(w);
        CHECK(rumin_norm(a - b) / rumin_norm(a) < 1e-7);
    }
}

TEST_CASE("commutation relations at the working grid") {
    Grid g{16};
    ContactModel m(g);
    RuminComplex R(m);
    HodgeStack H(R, SolverConfig{});
    const auto rep = verify_commutations(R, H, 5, 2, 2);
    CHECK(rep.max_p_hq < 1e-8);
    CHECK(rep.max_hq_p < 1e-8);
}

TEST_CASE("hodge decomposition reconstructs the input") {
    Grid g{8};
    ContactModel m(g);
    RuminComplex R(m);
    SolverConfig sc;
    sc.dense = true;
    HodgeStack H(R, sc);
    for (int k = 0; k < 4; ++k) {
        RuminForm w = rand_form(g, k, 90 + k);
        const auto d = H[k].hodge_decompose(w);
        CHECK(rumin_norm(w - d.harmonic - d.exact - d.coexact) / rumin_norm(w) < 1e-8);
    }
}
