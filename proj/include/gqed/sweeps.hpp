#pragma once

#include <string>
#include <vector>

#include "gqed/core.hpp"
#include "gqed/types.hpp"

namespace gqed::sweeps {

enum class GridVariable { K, X, Theta, OmegaRabi };

struct GridSpec {
  GridVariable variable = GridVariable::K;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  void validate() const;
  double at(int i) const { return start + (stop - start) * i / (steps - 1); }
};

enum class CellStatus { Ok, Divergent, Decoupled };
const char* to_string(CellStatus status) noexcept;

struct HeaderEntry {
  std::string key;
  std::string text;
  double number = 0.0;
  bool numeric = false;

  static HeaderEntry num(std::string key, double value);
  static HeaderEntry str(std::string key, std::string value);
};

/// Ordered table of grid point -> observables with a provenance header.
/// Rows with a non-ok status hold zeros in the affected value cells; sweeps
/// never emit NaN and never abort on a degenerate cell.
struct SweepDataset {
  std::vector<HeaderEntry> header;
  std::vector<std::string> columns;         // numeric columns, in emission order
  std::vector<std::vector<double>> rows;    // one entry per grid point
  std::vector<CellStatus> row_status;       // empty: dataset has no status column
  std::string dataset_status = "ok";        // "divergent" when the whole curve is excluded
};

/// Limits worker threads used by sweep evaluation; 0 restores the hardware
/// default. Results are identical for any setting.
void set_max_threads(int n);
int max_threads();

SweepDataset sweep_flux(const TwoLevelParams& p, const GridSpec& k_grid);
SweepDataset sweep_flux(const ThreeLevelParams& p, const GridSpec& k_grid);

SweepDataset sweep_detection_excess(const TwoLevelParams& p, const GridSpec& k_grid,
                                    const GridSpec& theta_grid);
SweepDataset sweep_detection_excess(const ThreeLevelParams& p, const GridSpec& k_grid,
                                    const GridSpec& theta_grid);

SweepDataset sweep_g2(const TwoLevelParams& p, double k, Direction dir, const GridSpec& x_grid);
SweepDataset sweep_g2(const ThreeLevelParams& p, double k, Direction dir, const GridSpec& x_grid);

SweepDataset pole_table(const std::vector<TwoLevelParams>& params);
SweepDataset pole_table(const std::vector<ThreeLevelParams>& params);

}  // namespace gqed::sweeps
