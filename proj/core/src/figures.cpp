#include "sensecap/figures.hpp"

#include <cmath>
#include <ios>
#include <stdexcept>

#include "sensecap/bounds.hpp"
#include "sensecap/infotheory.hpp"

namespace sensecap {

namespace {

Cell cell(const BoundResult& b) {
  if (!b.valid) return Cell::missing();
  if (b.unbounded()) return Cell::unbounded();
  return Cell::of(*b.value);
}

double first_or(const std::vector<double>& v, double fallback) { return v.empty() ? fallback : v.front(); }

const std::vector<double>& or_default(const std::vector<double>& v, const std::vector<double>& fallback) {
  return v.empty() ? fallback : v;
}

Table fig2(const FigureGrid& g) {
  const auto alphas = or_default(g.alpha, logspace(1e-4, 0.5, 60));
  const auto snrs = or_default(g.snr, {1.0, 10.0, 100.0});
  Table t{{"alpha", "snr", "c_ub"}, {}};
  for (double snr : snrs) {
    for (double a : alphas) {
      t.rows.push_back({Cell::of(a), Cell::of(snr), cell(ub_capacity_discrete_gaussian(a, snr, 0.0))});
    }
  }
  return t;
}

Table fig3a(const FigureGrid& g) {
  const double alpha = first_or(g.alpha, 0.5);
  const double snr = first_or(g.snr, 10.0);
  const auto d0s = or_default(g.d0, linspace(alpha / 100.0, alpha / 2.0, 50));
  Table t{{"d0", "c_ub", "c_lb"}, {}};
  for (double d0 : d0s) {
    // The achievable scheme run at d0/2 guarantees distortion d0.
    t.rows.push_back({Cell::of(d0), cell(ub_capacity_continuous_gaussian(alpha, snr, d0)),
                      cell(lb_capacity_continuous(alpha, snr, d0 / 2.0))});
  }
  return t;
}

Table fig3b(const FigureGrid& g) {
  const double alpha = first_or(g.alpha, 0.1);
  const double snr = first_or(g.snr, 10.0);
  const auto d0s = or_default(g.d0, linspace(alpha / 100.0, alpha * 0.98, 50));
  Table t{{"d0", "c_ub", "c_lb"}, {}};
  for (double d0 : d0s) {
    t.rows.push_back({Cell::of(d0), cell(ub_capacity_discrete_gaussian(alpha, snr, d0)),
                      cell(lb_capacity_discrete(alpha, 2, snr, d0))});
  }
  return t;
}

Table fig4(const FigureGrid& g) {
  const int n = g.n.value_or(10000);
  if (n < 2) throw DomainError("fig4: n must be at least 2");
  const auto alphas = or_default(g.alpha, logspace(1e-5, 0.5, 100));
  Table t{{"alpha", "order_ours", "order_nowak"}, {}};
  for (double a : alphas) {
    t.rows.push_back({Cell::of(a), Cell::of(n * binary_entropy(a)), Cell::of(a * n * std::log2(double(n)))});
  }
  return t;
}

Table fig5(const FigureGrid& g) {
  const int n = g.n.value_or(200);
  const double alpha = first_or(g.alpha, 0.1);
  const double snr = first_or(g.snr, 10.0);
  const double d0 = g.d0_fixed.value_or(0.0);
  const auto betas = or_default(g.beta, linspace(0.02, 1.0, 50));
  const auto full = ub_capacity_discrete_gaussian(alpha, snr, d0);
  const Rate rate = rd_binary_hamming(alpha, d0);
  const Cell extreme = rate.bits > 0.0 ? Cell::of(0.5 * alpha * std::log2(1.0 + snr) / rate.bits)
                                       : Cell::unbounded();
  Table t{{"beta", "c_ub_diversity", "c_ub_full", "c_extreme"}, {}};
  for (double b : betas) {
    t.rows.push_back({Cell::of(b), cell(ub_capacity_diversity(alpha, b, snr, d0, n)), cell(full), extreme});
  }
  return t;
}

Table fig6(const FigureGrid& g) {
  const int n = g.n.value_or(200);
  const double frac = g.d0_fraction.value_or(0.1);
  const auto betas = or_default(g.beta, {0.1, 0.2, 0.3, 0.4, 0.5});
  const auto alphas = or_default(g.alpha, {0.01, 0.02, 0.05, 0.1, 0.15, 0.2});
  Table t{{"alpha", "beta", "d0", "c_rand", "c_contg"}, {}};
  for (double b : betas) {
    for (double a : alphas) {
      const double d0 = frac * a;
      t.rows.push_back({Cell::of(a), Cell::of(b), Cell::of(d0), cell(ub_capacity_01_random(a, b, d0, n)),
                        cell(ub_capacity_01_contiguous(a, b, d0))});
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3a: return "fig3a";
    case FigureId::Fig3b: return "fig3b";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Fig6: return "fig6";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view s) {
  for (auto id : {FigureId::Fig2, FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6}) {
    if (to_string(id) == s) return id;
  }
  throw DomainError("unknown figure id: " + std::string(s));
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column named " + std::string(name));
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > 0.0) || count < 1) throw DomainError("logspace: need positive endpoints and count >= 1");
  if (count == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::exp(a + step * i);
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw DomainError("linspace: count must be positive");
  if (count == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  v.back() = hi;
  return v;
}

Table figure_data(const FigureSpec& spec) {
  switch (spec.id) {
    case FigureId::Fig2: return fig2(spec.grid);
    case FigureId::Fig3a: return fig3a(spec.grid);
    case FigureId::Fig3b: return fig3b(spec.grid);
    case FigureId::Fig4: return fig4(spec.grid);
    case FigureId::Fig5: return fig5(spec.grid);
    case FigureId::Fig6: return fig6(spec.grid);
  }
  throw DomainError("figure_data: unknown figure");
}

void write_csv(const Table& table, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision(12);
  out.unsetf(std::ios::floatfield);
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      switch (row[i].state) {
        case Cell::State::Value: out << row[i].value; break;
        case Cell::State::Unbounded: out << "unbounded"; break;
        case Cell::State::Missing: out << "NA"; break;
      }
    }
    out << '\n';
  }
  out.precision(precision);
  out.flags(flags);
}

}  // namespace sensecap
