#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "factorization.hpp"
#include "json_io.hpp"

namespace hadchan {

// Gap/slack flags reflect optimizer precision, not the exactness of the
// underlying identities; the thresholds are echoed in report metadata.
inline constexpr double kMultGapThreshold = 1e-5;
inline constexpr double kEntropyGapThreshold = 1e-4;
inline constexpr double kFuzzSlackThreshold = -1e-9;  // times the instance scale

// "identity:<d>", "dephase:<n>", "wh:<d>" (or "wh<d>").
Channel make_named_channel(const std::string& name);

// Every runner is a pure function of its arguments; rerunning with the same
// arguments reproduces the report byte for byte. Each report carries
// summary.flagged, the count of records outside their threshold.
json run_nu(const Channel& ch, double p, const OptimizerConfig& cfg);

json run_mult_test(Eigen::Index n, Eigen::Index k, const std::vector<double>& ps,
                   int instances, std::uint64_t seed, const OptimizerConfig& cfg,
                   Eigen::Index kraus_rank = 3);

json run_replay(Eigen::Index n, Eigen::Index k, const std::vector<double>& ps, int instances,
                std::uint64_t seed, const OptimizerConfig& cfg, Eigen::Index kraus_rank = 3);

// Single-instance replay from explicit objects (file-driven mode).
json run_replay_single(const DiagonalChannel& phi, const Channel& psi, const DensityMatrix& rho,
                       double p, const OptimizerConfig& cfg);

json run_wh(Eigen::Index d, double p, const OptimizerConfig& cfg);

json run_entropy_add(Eigen::Index n, Eigen::Index k, int instances, std::uint64_t seed,
                     const OptimizerConfig& cfg, Eigen::Index kraus_rank = 3);

json run_lt_fuzz(Eigen::Index k, Eigen::Index n, const std::vector<double>& ps, int instances,
                 bool unitary_v, std::uint64_t seed);

}  // namespace hadchan
