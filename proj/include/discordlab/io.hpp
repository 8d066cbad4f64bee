#pragma once

#include <string>

#include "discordlab/covariance.hpp"
#include "discordlab/estimation.hpp"
#include "discordlab/measures.hpp"
#include "discordlab/sampling.hpp"
#include "discordlab/scenario.hpp"

namespace discordlab {

/// Writes content to path via a temporary file and rename, so readers never
/// observe a partial file.
void atomicWriteFile(const std::string& path, const std::string& content);

/// Reads a covariance file: either a JSON object with the six standard-form
/// fields, or a 4x4 row-major array (nested or flat, bare or under
/// "matrix"), which is coerced to standard form with the given tolerance.
TwoModeCovariance<double> readCovarianceFile(const std::string& path, double tol = 1e-9);

std::string covarianceToJson(const TwoModeCovariance<double>& sigma);
void writeCovarianceFile(const std::string& path, const TwoModeCovariance<double>& sigma);

/// MeasureReport serialization: JSON object with the seven report fields,
/// or one CSV row matching the sweep-file column order.
std::string measureReportToJson(const MeasureReport<double>& report, LogUnit units);
std::string measureReportToCsvRow(const MeasureReport<double>& report);
inline constexpr const char* kMeasureCsvHeader = "I,J,D,E_N,separable,branch,e_min";

/// Estimated measures with one "value"/"sigma" pair per informational
/// measure.
std::string estimatedMeasuresToJson(const EstimatedMeasures<double>& est, LogUnit units);
std::string estimatedMeasuresToCsvRow(const EstimatedMeasures<double>& est);

/// Sample files: CSV with header "x_a,p_a,x_b,p_b" plus a JSON sidecar
/// (path + ".json") recording seed, count, state, and tool version.
void writeSamplesCsv(const std::string& path, const QuadratureSamples<double>& samples,
                     const TwoModeCovariance<double>& state);
QuadratureSamples<double> readSamplesCsv(const std::string& path);

/// Sweep files: CSV "param,I,J,D,E_N,separable,branch[,I_err,J_err,D_err,
/// E_N_err]" plus a JSON sidecar with config, fingerprint, and verdicts.
void writeSweepCsv(const std::string& path, const SweepResult& result);
void writeSweepSidecar(const std::string& path, const SweepResult& result,
                       const ScenarioConfig& config,
                       const std::vector<ValidatorVerdict>& verdicts);

/// Companion matplotlib script that plots the scenario's CSV files.
void writePlotScript(const std::string& path, const ScenarioOutcome& outcome,
                     const std::vector<std::string>& csv_paths);

}  // namespace discordlab
