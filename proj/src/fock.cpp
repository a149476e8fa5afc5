#include "ngb/fock.hpp"

#include <cmath>

namespace ngb {

FockDensityMatrix FockDensityMatrix::from_diagonal(const RealVector& weights) {
  if (weights.size() == 0) throw InvalidInput("from_diagonal: empty weights");
  if (!weights.allFinite())
    throw InvalidInput("from_diagonal: non-finite weight");
  if (weights.minCoeff() < -tol::psd)
    throw InvalidInput("from_diagonal: negative weight beyond tolerance");
  const double sum = weights.sum();
  if (sum <= tol::psd) throw InvalidInput("from_diagonal: weights sum to zero");
  ComplexMatrix m = ComplexMatrix::Zero(weights.size(), weights.size());
  m.diagonal() = (weights / sum).cast<Complex>();
  return FockDensityMatrix(std::move(m));
}

FockDensityMatrix FockDensityMatrix::from_pure(const ComplexVector& amplitudes) {
  if (amplitudes.size() == 0) throw InvalidInput("from_pure: empty vector");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !amplitudes.allFinite())
    throw InvalidInput("from_pure: zero or non-finite state vector");
  const ComplexVector psi = amplitudes / norm;
  return FockDensityMatrix(psi * psi.adjoint());
}

FockDensityMatrix FockDensityMatrix::from_matrix(ComplexMatrix elements) {
  if (elements.rows() == 0 || elements.rows() != elements.cols())
    throw InvalidInput("from_matrix: matrix must be square and non-empty");
  if (!elements.allFinite()) throw InvalidInput("from_matrix: non-finite entry");
  const Complex tr = elements.trace();
  if (std::abs(tr.real()) <= tol::psd || std::abs(tr.imag()) > 1e-9)
    throw InvalidInput("from_matrix: trace not usable for normalization");
  elements /= tr.real();
  return FockDensityMatrix(std::move(elements));
}

ValidationReport validate(const FockDensityMatrix& rho) {
  const ComplexMatrix& m = rho.elements();
  ValidationReport report;
  report.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm,
                                                  Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.tail_mass = tail_mass(rho);
  return report;
}

double purity(const FockDensityMatrix& rho) {
  return rho.elements().squaredNorm();
}

double tail_mass(const FockDensityMatrix& rho) {
  const int d = rho.dim();
  double mass = rho(d - 1, d - 1).real();
  if (d >= 2) mass += rho(d - 2, d - 2).real();
  return mass;
}

Moments moments(const FockDensityMatrix& rho, double tail_tol) {
  if (tail_mass(rho) >= tail_tol)
    throw CutoffTooSmall("moments: tail mass " +
                         std::to_string(tail_mass(rho)) +
                         " above tolerance; increase the cutoff");
  const int d = rho.dim();
  // <a> = sum_j rho_{j,j-1} sqrt(j), <a^2> = sum_j rho_{j,j-2} sqrt(j(j-1)).
  Complex a(0, 0), a2(0, 0);
  double mean_n = 0.0;
  for (int j = 1; j < d; ++j) a += rho(j, j - 1) * std::sqrt(double(j));
  for (int j = 2; j < d; ++j)
    a2 += rho(j, j - 2) * std::sqrt(double(j) * (j - 1));
  for (int j = 0; j < d; ++j) mean_n += rho(j, j).real() * j;

  Moments out;
  out.mean_n = mean_n;
  out.d[0] = std::sqrt(2.0) * a.real();
  out.d[1] = std::sqrt(2.0) * a.imag();
  out.xx = (2.0 * mean_n + 1.0) / 2.0 + a2.real();
  out.pp = (2.0 * mean_n + 1.0) / 2.0 - a2.real();
  out.xp = a2.imag();
  return out;
}

Matrix2 covariance(const FockDensityMatrix& rho, double tail_tol) {
  const Moments m = moments(rho, tail_tol);
  Matrix2 g;
  g(0, 0) = 2.0 * (m.xx - m.d[0] * m.d[0]);
  g(1, 1) = 2.0 * (m.pp - m.d[1] * m.d[1]);
  g(0, 1) = g(1, 0) = 2.0 * (m.xp - m.d[0] * m.d[1]);
  return g;
}

FockDensityMatrix phase_average(const FockDensityMatrix& rho) {
  ComplexMatrix m = ComplexMatrix::Zero(rho.dim(), rho.dim());
  // Trace is carried over bit-exactly; no renormalization.
  m.diagonal() = rho.elements().diagonal();
  return FockDensityMatrix(std::move(m));
}

}  // namespace ngb
