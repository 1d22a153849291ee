#pragma once

#include <json.hpp>

#include "isozmc/job.hpp"

// JSON serialization with stable key order so that reports are diffable
// byte for byte.

namespace isozmc {

using OrderedJson = nlohmann::ordered_json;

OrderedJson family_to_json(const WeierstrassFamily& f);
OrderedJson grid_to_json(const GridSpec& grid);
OrderedJson tolerances_to_json(const Tolerances& tol);
OrderedJson numerics_to_json(const NumericsConfig& num);
OrderedJson job_to_json(const JobConfig& job);
OrderedJson report_to_json(const VerificationReport& report);

/// Full document: tool/version header, job echo, runs, overall verdict.
OrderedJson verification_document(const JobConfig& job,
                                  std::span<const VerificationReport> runs);

}  // namespace isozmc
