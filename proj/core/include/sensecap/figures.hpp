#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Curve data for the standard capacity plots, emitted as CSV tables.
namespace sensecap {

enum class FigureId { Fig2, Fig3a, Fig3b, Fig4, Fig5, Fig6 };

std::string_view to_string(FigureId id);
FigureId parse_figure_id(std::string_view s);

/// Grid overrides. Empty vectors and unset scalars keep the figure's default.
///
///   fig2   alpha axis x snr set, d0 = 0 (Hamming, Bernoulli)
///   fig3a  d0 axis at fixed alpha, snr (sparse Gaussian, squared error)
///   fig3b  d0 axis at fixed alpha, snr (Bernoulli, Hamming)
///   fig4   alpha axis at fixed n (sensor-count scaling orders)
///   fig5   beta axis at fixed alpha, snr, d0, n (diversity saturation)
///   fig6   beta x alpha grid at fixed n, d0 = d0_fraction * alpha ({0,1} ensembles)
///
/// For fixed-alpha or fixed-snr figures the first entry of `alpha` / `snr` is used.
struct FigureGrid {
  std::vector<double> alpha;
  std::vector<double> snr;
  std::vector<double> d0;
  std::vector<double> beta;
  std::optional<int> n;
  std::optional<double> d0_fixed;     // fig5
  std::optional<double> d0_fraction;  // fig6
};

struct FigureSpec {
  FigureId id = FigureId::Fig2;
  FigureGrid grid;
  std::string output_path;  // empty: caller decides (e.g. stdout)
};

/// A table cell: a number, the Unbounded marker, or not applicable.
struct Cell {
  enum class State { Value, Unbounded, Missing };
  State state = State::Missing;
  double value = 0.0;

  static Cell of(double v) { return {State::Value, v}; }
  static Cell unbounded() { return {State::Unbounded, 0.0}; }
  static Cell missing() { return {State::Missing, 0.0}; }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  /// Index of a header column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

/// n logarithmically spaced points from lo to hi inclusive (endpoints exact).
std::vector<double> logspace(double lo, double hi, int count);
/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

Table figure_data(const FigureSpec& spec);

/// Header row plus one line per row. Unbounded cells print as `unbounded`,
/// missing cells as `NA`; numbers use `.` and 12 significant digits.
void write_csv(const Table& table, std::ostream& out);

}  // namespace sensecap
