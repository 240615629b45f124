#pragma once

#include <string>

#include "json.hpp"

#include "channels.hpp"
#include "factorization.hpp"
#include "purity_opt.hpp"

namespace hadchan {

using nlohmann::json;

// Matrix wire format, row-major: {"rows": r, "cols": c, "data": [[re, im], ...]}.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Same encoding; symmetrized on load when the asymmetry is within
// kHermSymmetryTol * max|entry|, rejected otherwise.
HermitianMatrix hermitian_from_json(const json& j);

// Channel wire format:
// {"kind": "kraus"|"diagonal"|"choi", "dim_in": n, "dim_out": m, "payload": ...}
// payload: matrix list (kraus), one Hermitian matrix (diagonal C or choi).
json channel_to_json(const Channel& ch);
Channel channel_from_json(const json& j);

json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

json pure_state_to_json(const PureState& psi);

json optimizer_config_to_json(const OptimizerConfig& cfg);

json purity_estimate_to_json(const PurityEstimate& est);
json entropy_estimate_to_json(const EntropyEstimate& est);

// Residual/slack field names r1..r6, s1..s4 and "spectrum_sharing" are a
// stable format contract.
json certificate_to_json(const CertificateReport& rep);

}  // namespace hadchan
