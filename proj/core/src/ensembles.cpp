#include "sensecap/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "sensecap/rng.hpp"

namespace sensecap {

namespace {

using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

void normalize_rows(Eigen::MatrixXd& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double norm = g.row(i).norm();
    if (norm == 0.0) throw DomainError("sample_matrix: row " + std::to_string(i) + " is all zero");
    g.row(i) /= norm;
  }
}

void fill_gaussian_row(RowRef row, double beta, CounterRng& rng) {
  std::normal_distribution<double> normal;
  const bool diluted = beta < 1.0;
  do {
    for (Eigen::Index j = 0; j < row.size(); ++j) {
      const bool active = !diluted || rng.uniform01() < beta;
      row[j] = active ? normal(rng) : 0.0;
    }
  } while (row.squaredNorm() == 0.0);
}

void fill_random_support_row(RowRef row, int l, CounterRng& rng) {
  const int n = static_cast<int>(row.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first l entries form a uniform l-subset.
  for (int t = 0; t < l; ++t) {
    std::uniform_int_distribution<int> pick(t, n - 1);
    std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  row.setZero();
  for (int t = 0; t < l; ++t) row[idx[static_cast<std::size_t>(t)]] = 1.0;
}

Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& correlation) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(correlation);
  if (es.info() != Eigen::Success) throw DomainError("sample_matrix: eigendecomposition failed");
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal();
}

}  // namespace

std::vector<int> contiguous_support(int n, int l, int start) {
  if (n < 1 || l < 1 || l > n) throw DomainError("contiguous_support: need 1 <= l <= n");
  std::vector<int> out(static_cast<std::size_t>(l));
  const int s = ((start % n) + n) % n;
  for (int t = 0; t < l; ++t) out[static_cast<std::size_t>(t)] = (s + t) % n;
  return out;
}

int toeplitz_stride(double downsample, int n) {
  if (!(downsample >= 0.0 && downsample <= 1.0)) throw DomainError("toeplitz_stride: downsample must lie in [0, 1]");
  if (downsample >= 1.0) return std::max(1, n);
  const double s = std::round(1.0 / (1.0 - downsample));
  return static_cast<int>(std::clamp(s, 1.0, static_cast<double>(std::max(1, n))));
}

SensingMatrix sample_matrix(const EnsembleSpec& spec, int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw DomainError("sample_matrix: m and n must be positive");
  if (!(spec.beta > 0.0 && spec.beta <= 1.0)) throw DomainError("sample_matrix: beta must lie in (0, 1]");

  SensingMatrix out;
  out.ensemble = spec;
  out.seed = seed;
  Eigen::MatrixXd& g = out.entries;
  g.setZero(m, n);
  const auto kind_tag = static_cast<std::uint64_t>(spec.kind);

  switch (spec.kind) {
    case EnsembleKind::GaussianDense:
    case EnsembleKind::GaussianDiluted:
      for (int i = 0; i < m; ++i) {
        CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(i), kind_tag));
        fill_gaussian_row(g.row(i), spec.beta, rng);
      }
      break;
    case EnsembleKind::ZeroOneRandom: {
      const int l = diversity_count(spec.beta, n);
      for (int i = 0; i < m; ++i) {
        CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(i), kind_tag));
        fill_random_support_row(g.row(i), l, rng);
      }
      break;
    }
    case EnsembleKind::ZeroOneContiguous: {
      const int l = diversity_count(spec.beta, n);
      for (int i = 0; i < m; ++i) {
        CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(i), kind_tag));
        std::uniform_int_distribution<int> start(0, n - 1);
        for (int j : contiguous_support(n, l, start(rng))) g(i, j) = 1.0;
      }
      break;
    }
    case EnsembleKind::ToeplitzFIR: {
      const int L = spec.filter_length;
      if (L < 1 || L > n) throw DomainError("sample_matrix: filter_length must lie in [1, n]");
      const int stride = toeplitz_stride(spec.downsample, n);
      for (int i = 0; i < m; ++i) {
        const int start = static_cast<int>((static_cast<long long>(i) * stride) % n);
        for (int j : contiguous_support(n, L, start)) g(i, j) = 1.0;
      }
      break;
    }
    case EnsembleKind::CorrelatedColumns: {
      if (spec.column_covariance.rows() != n || spec.column_covariance.cols() != n) {
        throw DomainError("sample_matrix: column_covariance must be n x n");
      }
      const Eigen::MatrixXd factor = covariance_factor(normalize_covariance(spec.column_covariance));
      std::normal_distribution<double> normal;
      for (int i = 0; i < m; ++i) {
        CounterRng rng(stream_key(seed, static_cast<std::uint64_t>(i), kind_tag));
        Eigen::VectorXd z(n);
        do {
          for (int j = 0; j < n; ++j) z[j] = normal(rng);
          g.row(i) = (factor * z).transpose();
        } while (g.row(i).squaredNorm() == 0.0);
      }
      break;
    }
    case EnsembleKind::Explicit:
      if (spec.matrix.rows() != m || spec.matrix.cols() != n) {
        throw DomainError("sample_matrix: explicit matrix must be m x n");
      }
      g = spec.matrix;
      break;
  }
  normalize_rows(g);
  return out;
}

std::vector<double> row_cross_correlations(const Eigen::MatrixXd& g) {
  std::vector<double> r;
  if (g.rows() < 2) return r;
  r.reserve(static_cast<std::size_t>(g.rows() - 1));
  for (Eigen::Index i = 0; i + 1 < g.rows(); ++i) {
    r.push_back(g.row(i).dot(g.row(i + 1)) / g.row(i).squaredNorm());
  }
  return r;
}

Eigen::MatrixXd normalize_covariance(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0) {
    throw DomainError("normalize_covariance: matrix must be square and non-empty");
  }
  const Eigen::ArrayXd diag = covariance.diagonal().array();
  if ((diag <= 0.0).any()) throw DomainError("normalize_covariance: diagonal must be positive");
  const Eigen::VectorXd inv_sd = diag.rsqrt().matrix();
  return inv_sd.asDiagonal() * covariance * inv_sd.asDiagonal();
}

double column_lambda_min(const Eigen::MatrixXd& covariance) {
  if (!covariance.isApprox(covariance.transpose(), 1e-12)) {
    throw DomainError("column_lambda_min: covariance must be symmetric");
  }
  const Eigen::MatrixXd c = normalize_covariance(covariance);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw DomainError("column_lambda_min: eigensolver failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < -1e-10 * std::max(1.0, hi)) throw DomainError("column_lambda_min: covariance is not PSD");
  return std::clamp(lo, 0.0, hi);
}

double mi_logdet_gaussian(const Eigen::MatrixXd& g, double alpha, double snr) {
  if (!(alpha >= 0.0) || !(snr >= 0.0)) throw DomainError("mi_logdet_gaussian: alpha and snr must be nonnegative");
  // G G^T and G^T G share their nonzero spectrum; decompose the smaller one.
  const Eigen::MatrixXd gram = g.rows() <= g.cols() ? Eigen::MatrixXd(g * g.transpose())
                                                    : Eigen::MatrixXd(g.transpose() * g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("mi_logdet_gaussian: eigensolver failed");
  const double scale = alpha * snr;
  double bits = 0.0;
  for (double lambda : es.eigenvalues()) bits += 0.5 * std::log1p(std::max(lambda, 0.0) * scale);
  return bits / std::log(2.0);
}

std::string matrix_to_csv(const SensingMatrix& g) {
  std::ostringstream os;
  os.precision(17);
  os << "m,n,ensemble\n" << g.rows() << ',' << g.cols() << ',' << to_string(g.ensemble.kind) << '\n';
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      if (j) os << ',';
      os << g.entries(i, j);
    }
    os << '\n';
  }
  return os.str();
}

SensingMatrix matrix_from_csv(std::string_view csv) {
  std::istringstream is{std::string(csv)};
  std::string line;
  if (!std::getline(is, line) || line != "m,n,ensemble") throw DomainError("matrix_from_csv: missing header");
  if (!std::getline(is, line)) throw DomainError("matrix_from_csv: missing shape line");
  std::istringstream shape(line);
  std::string tok;
  int m = 0;
  int n = 0;
  std::getline(shape, tok, ',');
  m = std::stoi(tok);
  std::getline(shape, tok, ',');
  n = std::stoi(tok);
  std::getline(shape, tok);
  SensingMatrix out;
  out.ensemble.kind = parse_ensemble_kind(tok);
  if (m < 1 || n < 1) throw DomainError("matrix_from_csv: bad shape");
  out.entries.resize(m, n);
  for (int i = 0; i < m; ++i) {
    if (!std::getline(is, line)) throw DomainError("matrix_from_csv: too few rows");
    std::istringstream row(line);
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, tok, ',')) throw DomainError("matrix_from_csv: too few columns");
      out.entries(i, j) = std::stod(tok);
    }
  }
  return out;
}

}  // namespace sensecap
