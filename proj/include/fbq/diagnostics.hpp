#pragma once

#include <map>

namespace fbq {

/// Per-sample-time record of norms, dissipation integrands, and the forcing
/// inner product, as written to diagnostics CSV files.
struct DiagnosticsRow {
    double t = 0.0;
    double l2_theta = 0.0;              ///< ||theta||_{L^2}
    double l2_u = 0.0;                  ///< ||u||_{L^2}
    double l2_omega = 0.0;              ///< ||omega||_{L^2}
    std::map<double, double> lp_theta;  ///< p -> ||theta||_{L^p} for configured p
    double hs1_theta = 0.0;             ///< ||theta||_{H^{s1}}
    double hs2_u = 0.0;                 ///< ||u||_{H^{s2}}
    double diss_beta = 0.0;             ///< ||Lambda^beta theta||^2
    double diss_alpha_u = 0.0;          ///< ||Lambda^alpha u||^2
    double diss_alpha_omega = 0.0;      ///< ||Lambda^alpha omega||^2
    double f_inner_theta = 0.0;         ///< <f, theta>
};

} // namespace fbq
