// End-to-end walkthrough on the Fubini-Study example: solve the flat
// linear extended connection, print the first correction terms and the
// certification residuals, then solve the polarization.
#include <cstdio>

#include <weilforge/polarization.hpp>

using namespace weilforge;

int main() {
    auto metric = builtin_example<RatC>("fubini-study", 1, 4);
    auto gamma = levi_civita(metric);
    std::printf("Gamma^1_11 = %s\n", gamma.gamma10[0][0][0].str().c_str());

    auto sol = solve_connection(gamma, 4);
    for (int k = 0; k <= 4; ++k)
        std::printf("D_%d(s1) = %s\n", k, sol.d_of_s[k][0].str().c_str());

    std::printf("flatness certified zero: %s\n",
                flatness_certified_zero(sol) ? "yes" : "no");
    std::printf("linearity residual: %g\n", linearity_residual(sol));

    auto pol = solve_polarization(sol, metric, 4);
    for (int k = 0; k <= 4; ++k)
        std::printf("Omega_%d = %s\n", k, pol.omega[k].str().c_str());
    std::printf("holomorphy certified zero: %s\n",
                holomorphy_certified_zero(sol, pol) ? "yes" : "no");
    auto posv = positivity_check(pol);
    std::printf("positivity floor: %g\n", posv.eigenvalue_floor);
    return 0;
}
