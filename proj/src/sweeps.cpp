#include "gqed/sweeps.hpp"

#include <atomic>
#include <cmath>

#include "gqed/parallel.hpp"
#include "gqed/three_level.hpp"
#include "gqed/two_level.hpp"

namespace gqed::sweeps {

namespace {

std::atomic<int> g_max_threads{0};

CellStatus status_for(const ScatteringError& e) {
  switch (e.code()) {
    case ErrorCode::DivergentNormalization:
    case ErrorCode::DegenerateParameters:
    case ErrorCode::PoleCollision:
      return CellStatus::Divergent;
    default:
      return CellStatus::Decoupled;
  }
}

const char* to_string(Direction dir) { return dir == Direction::Transmitted ? "R" : "L"; }

void append_grid(std::vector<HeaderEntry>& header, const char* prefix, const GridSpec& grid) {
  header.push_back(HeaderEntry::num(std::string(prefix) + "_min", grid.start));
  header.push_back(HeaderEntry::num(std::string(prefix) + "_max", grid.stop));
  header.push_back(HeaderEntry::num(std::string(prefix) + "_steps", grid.steps));
}

std::vector<HeaderEntry> base_header(const TwoLevelParams& p) {
  return {HeaderEntry::str("model", "two_level"), HeaderEntry::num("omega0", p.omega0),
          HeaderEntry::num("gamma", p.gamma), HeaderEntry::num("theta", p.theta)};
}

std::vector<HeaderEntry> base_header(const ThreeLevelParams& p) {
  return {HeaderEntry::str("model", "three_level"), HeaderEntry::num("omega0", p.omega0),
          HeaderEntry::num("gamma", p.gamma),       HeaderEntry::num("theta", p.theta),
          HeaderEntry::num("omega_rabi", p.omega_rabi), HeaderEntry::num("delta", p.delta)};
}

template <class FluxFn>
SweepDataset flux_dataset(std::vector<HeaderEntry> header, const GridSpec& k_grid, double theta,
                          const FluxFn& flux) {
  k_grid.validate();
  SweepDataset d;
  d.header = std::move(header);
  append_grid(d.header, "k", k_grid);
  d.columns = {"k", "F"};
  d.rows.resize(k_grid.steps);
  d.row_status.assign(k_grid.steps, CellStatus::Ok);
  const bool decoupled = is_decoupled(theta);
  parallel_for(
      k_grid.steps,
      [&](std::size_t i) {
        const double k = k_grid.at(static_cast<int>(i));
        double value = 0.0;
        CellStatus status = decoupled ? CellStatus::Decoupled : CellStatus::Ok;
        try {
          value = flux(k);
          if (!std::isfinite(value)) {
            value = 0.0;
            status = CellStatus::Divergent;
          }
        } catch (const ScatteringError& e) {
          value = 0.0;
          status = status_for(e);
        }
        d.rows[i] = {k, value};
        d.row_status[i] = status;
      },
      max_threads());
  return d;
}

template <class ExcessFn>
SweepDataset excess_dataset(std::vector<HeaderEntry> header, const GridSpec& k_grid,
                            const GridSpec& theta_grid, const ExcessFn& excess) {
  k_grid.validate();
  theta_grid.validate();
  SweepDataset d;
  d.header = std::move(header);
  append_grid(d.header, "k", k_grid);
  append_grid(d.header, "theta", theta_grid);
  d.columns = {"k", "theta", "chi_R", "chi_L"};
  const std::size_t n = static_cast<std::size_t>(k_grid.steps) * theta_grid.steps;
  d.rows.resize(n);
  d.row_status.assign(n, CellStatus::Ok);
  parallel_for(
      n,
      [&](std::size_t idx) {
        const int ik = static_cast<int>(idx) / theta_grid.steps;
        const int it = static_cast<int>(idx) % theta_grid.steps;
        const double k = k_grid.at(ik);
        const double theta = theta_grid.at(it);
        DetectionExcess value{0.0, 0.0};
        CellStatus status = CellStatus::Ok;
        try {
          value = excess(k, theta);
          if (!std::isfinite(value.transmitted) || !std::isfinite(value.reflected)) {
            value = {0.0, 0.0};
            status = CellStatus::Divergent;
          }
        } catch (const ScatteringError& e) {
          status = status_for(e);
        }
        d.rows[idx] = {k, theta, value.transmitted, value.reflected};
        d.row_status[idx] = status;
      },
      max_threads());
  return d;
}

template <class G2Fn>
SweepDataset g2_dataset(std::vector<HeaderEntry> header, double k, Direction dir,
                        const GridSpec& x_grid, const G2Fn& g2_at) {
  x_grid.validate();
  SweepDataset d;
  d.header = std::move(header);
  d.header.push_back(HeaderEntry::num("k", k));
  d.header.push_back(HeaderEntry::str("direction", to_string(dir)));
  append_grid(d.header, "x", x_grid);
  d.columns = {"x", "g2"};
  try {
    g2_at(x_grid.start);
  } catch (const ScatteringError& e) {
    d.dataset_status = status_for(e) == CellStatus::Divergent ? "divergent" : "decoupled";
    return d;
  }
  d.rows.resize(x_grid.steps);
  d.row_status.assign(x_grid.steps, CellStatus::Ok);
  parallel_for(
      x_grid.steps,
      [&](std::size_t i) {
        const double x = x_grid.at(static_cast<int>(i));
        double value = 0.0;
        CellStatus status = CellStatus::Ok;
        try {
          value = g2_at(x);
        } catch (const ScatteringError& e) {
          status = status_for(e);
        }
        d.rows[i] = {x, value};
        d.row_status[i] = status;
      },
      max_threads());
  return d;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw std::invalid_argument("grid bounds must be finite");
  if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
  if (!(start < stop)) throw std::invalid_argument("grid start must be below stop");
}

const char* to_string(CellStatus status) noexcept {
  switch (status) {
    case CellStatus::Ok: return "ok";
    case CellStatus::Divergent: return "divergent";
    case CellStatus::Decoupled: return "decoupled";
  }
  return "ok";
}

HeaderEntry HeaderEntry::num(std::string key, double value) {
  HeaderEntry e;
  e.key = std::move(key);
  e.number = value;
  e.numeric = true;
  return e;
}

HeaderEntry HeaderEntry::str(std::string key, std::string value) {
  HeaderEntry e;
  e.key = std::move(key);
  e.text = std::move(value);
  return e;
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }
int max_threads() { return g_max_threads.load(); }

SweepDataset sweep_flux(const TwoLevelParams& p, const GridSpec& k_grid) {
  p.validate();
  return flux_dataset(base_header(p), k_grid, p.theta,
                      [p](double k) { return twolevel::total_incoherent_flux(p, k); });
}

SweepDataset sweep_flux(const ThreeLevelParams& p, const GridSpec& k_grid) {
  p.validate();
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "the three-level flux is defined at delta = 0");
  return flux_dataset(base_header(p), k_grid, p.theta,
                      [p](double k) { return threelevel::total_incoherent_flux(p, k); });
}

SweepDataset sweep_detection_excess(const TwoLevelParams& p, const GridSpec& k_grid,
                                    const GridSpec& theta_grid) {
  p.validate();
  return excess_dataset(base_header(p), k_grid, theta_grid, [p](double k, double theta) {
    TwoLevelParams q = p;
    q.theta = theta;
    return twolevel::detection_excess(q, k);
  });
}

SweepDataset sweep_detection_excess(const ThreeLevelParams& p, const GridSpec& k_grid,
                                    const GridSpec& theta_grid) {
  p.validate();
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "the three-level chi map is defined at delta = 0");
  return excess_dataset(base_header(p), k_grid, theta_grid, [p](double k, double theta) {
    ThreeLevelParams q = p;
    q.theta = theta;
    return threelevel::detection_excess(q, k);
  });
}

SweepDataset sweep_g2(const TwoLevelParams& p, double k, Direction dir, const GridSpec& x_grid) {
  p.validate();
  return g2_dataset(base_header(p), k, dir, x_grid,
                    [p, k, dir](double x) { return twolevel::g2(p, k, x, dir); });
}

SweepDataset sweep_g2(const ThreeLevelParams& p, double k, Direction dir,
                      const GridSpec& x_grid) {
  p.validate();
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "the three-level g2 is defined at delta = 0");
  return g2_dataset(base_header(p), k, dir, x_grid,
                    [p, k, dir](double x) { return threelevel::g2(p, k, x, dir); });
}

SweepDataset pole_table(const std::vector<TwoLevelParams>& params) {
  SweepDataset d;
  d.header = {HeaderEntry::str("model", "two_level")};
  d.columns = {"theta", "omega_rabi", "re_pole1", "im_pole1", "re_pole2", "im_pole2"};
  d.rows.resize(params.size());
  d.row_status.assign(params.size(), CellStatus::Ok);
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i].validate();
    const Complex pole = system_poles(params[i]).front().location;
    d.rows[i] = {params[i].theta, 0.0, pole.real(), pole.imag(), 0.0, 0.0};
  }
  return d;
}

SweepDataset pole_table(const std::vector<ThreeLevelParams>& params) {
  SweepDataset d;
  d.header = {HeaderEntry::str("model", "three_level")};
  d.columns = {"theta", "omega_rabi", "re_pole1", "im_pole1", "re_pole2", "im_pole2"};
  d.rows.resize(params.size());
  d.row_status.assign(params.size(), CellStatus::Ok);
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i].validate();
    d.rows[i] = {params[i].theta, params[i].omega_rabi, 0.0, 0.0, 0.0, 0.0};
    try {
      const auto poles = system_poles(params[i]);
      d.rows[i] = {params[i].theta,           params[i].omega_rabi,     poles[0].location.real(),
                   poles[0].location.imag(),  poles[1].location.real(), poles[1].location.imag()};
    } catch (const ScatteringError& e) {
      d.row_status[i] = status_for(e);
    }
  }
  return d;
}

}  // namespace gqed::sweeps
