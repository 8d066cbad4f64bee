#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "discordlab/channels.hpp"
#include "discordlab/covariance.hpp"
#include "discordlab/estimation.hpp"
#include "discordlab/measures.hpp"

namespace discordlab {

enum class StateKind { Squeezer, Tmsv, SplitThermal };

/// Declarative description of the initial two-mode state.  `mean_photons`
/// overrides the direct parameter: for tmsv it fixes r, for split_thermal
/// it fixes the modulation depth at twice the photon number.
struct StateSpec {
  StateKind kind = StateKind::SplitThermal;
  double squeezing_db = 3.2;
  double antisqueezing_db = 6.7;
  double r = 0;
  double modulation = 0;
  std::optional<double> mean_photons;
};

/// Exactly one parameter is swept per scenario.  Supported parameters:
/// "attenuation" (1 - T), "attenuation_db" (-10 log10 T), "modulation",
/// "added_noise".
struct SweepSpec {
  std::string parameter = "attenuation";
  std::vector<double> values;
};

/// Monte-Carlo mode: each sweep point is sampled and estimated instead of
/// evaluated in closed form.
struct SampledSpec {
  Eigen::Index n = 100000;
  std::uint64_t seed = 0;
  int resamples = 200;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::string label = "curve";
  LogUnit units = LogUnit::Bits;
  StateSpec state;
  double added_noise = 0;  ///< fixed kappa applied to mode B before attenuation
  double attenuation = 0;  ///< fixed 1-T used when attenuation is not swept
  std::optional<DetectorSpec<double>> detector;
  SweepSpec sweep;
  std::optional<SampledSpec> sampled;
};

struct SweepRecord {
  double param{};
  MeasureReport<double> report;
  std::optional<ErrorBars<double>> errors;
};

/// One curve: records ordered by sweep value, with provenance.
struct SweepResult {
  std::string label;
  std::vector<SweepRecord> records;
  std::string config_fingerprint;
  std::string tool_version;
};

struct ValidatorVerdict {
  std::string name;
  bool pass{};
  std::string detail;
};

/// Curves plus post-run validator verdicts for one scenario.
struct ScenarioOutcome {
  std::string name;
  std::vector<ScenarioConfig> configs;  ///< one per curve, parallel to `curves`
  std::vector<SweepResult> curves;
  std::vector<ValidatorVerdict> verdicts;

  bool allPass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

/// Options shared by the named scenarios.
struct RunOptions {
  LogUnit units = LogUnit::Bits;
  std::optional<SampledSpec> sampled;
};

/// Builds the initial state from its spec (before any channel).
TwoModeCovariance<double> buildState(const StateSpec& spec);

/// State after the full pipeline at one sweep value: base state, classical
/// noise, attenuation, detector map.
TwoModeCovariance<double> stateAtPoint(const ScenarioConfig& config, double sweep_value);

/// Runs a single curve.  Sweep points are independent and may be evaluated
/// on several threads (capped by DISCORD_LAB_THREADS); records are ordered
/// by sweep value regardless of completion order.
SweepResult runSweep(const ScenarioConfig& config);

/// Generic scenario: one curve, no validators.
ScenarioOutcome runGeneric(const ScenarioConfig& config);

/// Entangled state of two squeezers under increasing attenuation.
ScenarioOutcome runEntangledAttenuation(const RunOptions& opts = {});

/// Split-thermal discord versus modulation depth, with and without
/// detector imperfections.
ScenarioOutcome runModulationSweep(const RunOptions& opts = {});

/// Noisy split-thermal states under attenuation: discord revival.
ScenarioOutcome runDissipationRevival(const RunOptions& opts = {});

/// Equal-energy comparison of entangled and separable states.
ScenarioOutcome runEnergyComparison(const RunOptions& opts = {});

/// Dispatch by scenario name: fig2, fig3, fig4, fig5.
ScenarioOutcome runNamed(std::string_view name, const RunOptions& opts = {});

bool isNamedScenario(std::string_view name);

/// Stable hex fingerprint of the canonical JSON form of a config.
std::string fingerprint(const ScenarioConfig& config);

/// Config <-> JSON text (schema documented in the README).
ScenarioConfig parseScenarioConfig(const std::string& json_text);
std::string scenarioConfigToJson(const ScenarioConfig& config);

}  // namespace discordlab
