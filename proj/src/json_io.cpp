#include "json_io.hpp"

#include <cmath>

namespace hadchan {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entry must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

void require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_to_json(m(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  require_field(j, "rows");
  require_field(j, "cols");
  require_field(j, "data");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be >= 1");
  const json& data = j["data"];
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("matrix data must hold rows*cols entries");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
  return m;
}

HermitianMatrix hermitian_from_json(const json& j) {
  const Matrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) throw ParseError("Hermitian matrix must be square");
  const double asym = max_abs(m - m.adjoint().eval());
  const double scale = std::max(max_abs(m), 0.0);
  if (asym > kHermSymmetryTol * std::max(scale, 1e-300))
    throw ParseError("matrix is not Hermitian: max asymmetry " + std::to_string(asym) +
                     " exceeds tolerance");
  return HermitianMatrix(m);
}

json channel_to_json(const Channel& ch) {
  if (ch.kind() == Channel::Kind::diagonal)
    return json{{"kind", "diagonal"},
                {"dim_in", ch.dim_in()},
                {"dim_out", ch.dim_out()},
                {"payload", matrix_to_json(ch.diagonal().c().mat())}};
  json ops = json::array();
  for (const Matrix& a : ch.kraus().ops()) ops.push_back(matrix_to_json(a));
  return json{{"kind", "kraus"},
              {"dim_in", ch.dim_in()},
              {"dim_out", ch.dim_out()},
              {"payload", std::move(ops)}};
}

Channel channel_from_json(const json& j) {
  require_field(j, "kind");
  require_field(j, "dim_in");
  require_field(j, "dim_out");
  require_field(j, "payload");
  const std::string kind = j["kind"].get<std::string>();
  const auto dim_in = j["dim_in"].get<Eigen::Index>();
  const auto dim_out = j["dim_out"].get<Eigen::Index>();
  const json& payload = j["payload"];

  if (kind == "kraus") {
    if (!payload.is_array() || payload.empty())
      throw ParseError("kraus payload must be a nonempty matrix list");
    std::vector<Matrix> ops;
    for (const json& op : payload) ops.push_back(matrix_from_json(op));
    try {
      return Channel(KrausChannel(dim_in, dim_out, std::move(ops)));
    } catch (const DimensionError& e) {
      throw ParseError(std::string("kraus channel invariant violated: ") + e.what());
    }
  }
  if (kind == "diagonal") {
    if (dim_in != dim_out) throw ParseError("diagonal channel must have dim_in == dim_out");
    HermitianMatrix c = hermitian_from_json(payload);
    if (c.dim() != dim_in) throw ParseError("diagonal payload dimension does not match dim_in");
    try {
      return Channel(DiagonalChannel(c));
    } catch (const NotPsdError& e) {
      throw ParseError(std::string("diagonal channel invariant violated: C is not PSD (") +
                       e.what() + ")");
    }
  }
  if (kind == "choi") {
    HermitianMatrix m = hermitian_from_json(payload);
    if (m.dim() != dim_in * dim_out)
      throw ParseError("choi payload dimension must be dim_in*dim_out");
    try {
      return Channel(channel_from_choi(ChoiMatrix{dim_in, dim_out, std::move(m)}));
    } catch (const NotPsdError& e) {
      throw ParseError(std::string("choi channel invariant violated: not CP (") + e.what() +
                       ")");
    }
  }
  throw ParseError("unknown channel kind \"" + kind + "\"");
}

json density_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix().mat()); }

DensityMatrix density_from_json(const json& j) {
  HermitianMatrix m = hermitian_from_json(j);
  try {
    return DensityMatrix(m);
  } catch (const Error& e) {
    throw ParseError(std::string("density matrix invariant violated: ") + e.what());
  }
}

json pure_state_to_json(const PureState& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i) amps.push_back(complex_to_json(psi.amplitudes()(i)));
  return json{{"dim", psi.dim()}, {"amplitudes", std::move(amps)}};
}

json optimizer_config_to_json(const OptimizerConfig& cfg) {
  return json{{"restarts", cfg.restarts},
              {"max_iters", cfg.max_iters},
              {"grad_tol", cfg.grad_tol},
              {"step_init", cfg.step_init},
              {"backtrack_factor", cfg.backtrack_factor},
              {"seed", cfg.seed},
              {"inject_basis_states", cfg.inject_basis_states}};
}

json purity_estimate_to_json(const PurityEstimate& est) {
  return json{{"p", est.p},
              {"value", est.value},
              {"maximizer", pure_state_to_json(est.maximizer)},
              {"per_restart_values", est.per_restart_values},
              {"iterations_used", est.iterations_used},
              {"converged", est.converged}};
}

json entropy_estimate_to_json(const EntropyEstimate& est) {
  return json{{"value", est.value},
              {"minimizer", pure_state_to_json(est.minimizer)},
              {"per_restart_values", est.per_restart_values},
              {"iterations_used", est.iterations_used},
              {"converged", est.converged}};
}

json certificate_to_json(const CertificateReport& rep) {
  json j{{"n", rep.n},
         {"k", rep.k},
         {"p", rep.p},
         {"residuals", rep.residuals},
         {"slacks", rep.slacks},
         {"s2_per_block", rep.s2_per_block},
         {"spectrum_sharing", rep.spectrum_sharing},
         {"s1_scale", rep.s1_scale},
         {"nu_estimates_converged", rep.nu_estimates_converged},
         {"verdict", rep.pass ? "pass" : "fail"},
         {"failing_steps", rep.failing_steps}};
  if (rep.nu_p_phi) j["nu_p_phi"] = purity_estimate_to_json(*rep.nu_p_phi);
  if (rep.nu_p_psi) j["nu_p_psi"] = purity_estimate_to_json(*rep.nu_p_psi);
  if (rep.error_step) {
    j["error"] = json{{"step", *rep.error_step},
                      {"message", rep.error_message.value_or("")}};
  }
  return j;
}

}  // namespace hadchan
