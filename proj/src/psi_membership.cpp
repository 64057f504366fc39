#include <Eigen/Dense>

#include "osserman/curvature.hpp"
#include "osserman/psi_fields.hpp"
#include "osserman/rng.hpp"

namespace osserman {

MembershipReport psi_membership_scan(const PsiField& psi, const GridRegion& region,
                                     int n_dirs, double tol, std::uint64_t seed) {
    const int p = psi.dim();
    if (p < 2) throw DimensionMismatchError("membership scan needs dim >= 2");
    if (region.dim() != p)
        throw DimensionMismatchError("membership scan: region dimension mismatch");

    MembershipReport report;
    report.directions_per_point = n_dirs;

    const std::int64_t points = region.point_count();
    for (std::int64_t g = 0; g < points; ++g) {
        const Eigen::VectorXd x = region.point(g);
        const XBlockCurvature rx = curvature_x_block(psi, x);
        ++report.points_checked;

        for (int d = 0; d < n_dirs; ++d) {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(g),
                                static_cast<std::uint64_t>(d)));
            const Eigen::VectorXd dir = rng.unit_sphere(p);

            const Eigen::MatrixXd form = jacobi_x_form(rx, dir);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
                form, Eigen::EigenvaluesOnly);
            const Eigen::VectorXd& lambda = es.eigenvalues();

            int near_zero = 0;
            bool negative = false;
            for (int i = 0; i < p; ++i) {
                if (lambda[i] < -tol) negative = true;
                if (std::abs(lambda[i]) <= tol) ++near_zero;
            }
            // J(X) X = 0 always, so a member shows exactly one kernel
            // direction and everything else strictly positive.
            if (negative || near_zero != 1) {
                report.member = false;
                report.witness = MembershipWitness{x, dir, lambda};
                return report;
            }
        }
    }

    report.member = true;
    return report;
}

}  // namespace osserman
