#include "dini/stokes.hpp"

#include "dini/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <utility>

namespace dini {

namespace {

using Matrix = Eigen::MatrixXd;

// -d^2/dx^2 on m unknowns. Dirichlet rows treat the neighbours beyond the ends
// as zero nodes; ghost rows reflect the end cell (u_ghost = -u).
Matrix second_difference(Index m, double h, bool ghost) {
  Matrix t = Matrix::Zero(m, m);
  for (Index k = 0; k < m; ++k) {
    t(k, k) = 2.0;
    if (k > 0) t(k, k - 1) = -1.0;
    if (k + 1 < m) t(k, k + 1) = -1.0;
  }
  if (ghost) {
    t(0, 0) += 1.0;
    t(m - 1, m - 1) += 1.0;
  }
  return t / (h * h);
}

// Tx (x) I + I (x) Ty acting on (mx, my) arrays, solved by diagonalization.
class Separable {
 public:
  Separable(Matrix tx, Matrix ty) : tx_(std::move(tx)), ty_(std::move(ty)) {
    Eigen::SelfAdjointEigenSolver<Matrix> ex(tx_), ey(ty_);
    qx_ = ex.eigenvectors();
    qy_ = ey.eigenvectors();
    denom_ = ex.eigenvalues().replicate(1, ty_.rows()) +
             ey.eigenvalues().transpose().replicate(tx_.rows(), 1);
  }
  Matrix apply(const Matrix& u) const { return tx_ * u + u * ty_; }
  Matrix solve(const Matrix& f) const {
    Matrix g = qx_.transpose() * f * qy_;
    g.array() /= denom_.array();
    return qx_ * g * qy_.transpose();
  }

 private:
  Matrix tx_, ty_, qx_, qy_, denom_;
};

struct Faces {
  Matrix u1;  // (mx - 1) x my interior vertical faces
  Matrix u2;  // mx x (my - 1) interior horizontal faces
};

class Mac {
 public:
  explicit Mac(const Domain& d)
      : mx_(d.nx() - 1), my_(d.ny() - 1), dx_(d.dx()), dy_(d.dy()),
        a1_(second_difference(mx_ - 1, dx_, false), second_difference(my_, dy_, true)),
        a2_(second_difference(mx_, dx_, true), second_difference(my_ - 1, dy_, false)) {}

  Faces solve(const Faces& f) const { return {a1_.solve(f.u1), a2_.solve(f.u2)}; }
  Faces apply(const Faces& u) const { return {a1_.apply(u.u1), a2_.apply(u.u2)}; }

  Faces grad(const Matrix& p) const {
    return {(p.bottomRows(mx_ - 1) - p.topRows(mx_ - 1)) / dx_,
            (p.rightCols(my_ - 1) - p.leftCols(my_ - 1)) / dy_};
  }

  Matrix div(const Faces& u) const {
    Matrix a = Matrix::Zero(mx_ + 1, my_);
    a.middleRows(1, mx_ - 1) = u.u1;
    Matrix b = Matrix::Zero(mx_, my_ + 1);
    b.middleCols(1, my_ - 1) = u.u2;
    return (a.bottomRows(mx_) - a.topRows(mx_)) / dx_ + (b.rightCols(my_) - b.leftCols(my_)) / dy_;
  }

  Faces interior(const VectorField& v) const {
    return {v.v1.middleRows(1, mx_ - 1).matrix(), v.v2.middleCols(1, my_ - 1).matrix()};
  }

  VectorField full(const Domain& d, const Faces& u) const {
    VectorField v(d);
    v.v1.middleRows(1, mx_ - 1) = u.u1.array();
    v.v2.middleCols(1, my_ - 1) = u.u2.array();
    return v;
  }

 private:
  Index mx_, my_;
  double dx_, dy_;
  Separable a1_, a2_;
};

void remove_mean(Matrix& p) { p.array() -= p.mean(); }

}  // namespace

StokesSolution stokes_solve(const VectorField& f, const StokesOptions& opt) {
  const Domain& d = f.domain;
  if (d.masked()) throw unsupported_domain("stokes_solve: only unmasked rectangular grids");
  if (d.nx() < 3 || d.ny() < 3) throw invalid_argument("stokes_solve: need at least 3 nodes per side");
  if (!(opt.tol > 0.0) || opt.max_iterations < 1)
    throw invalid_argument("stokes_solve: tolerance and iteration limit must be positive");

  const Mac mac(d);
  const Faces fi = mac.interior(f);
  const Faces af = mac.solve(fi);
  auto schur = [&](const Matrix& p) -> Matrix { return -mac.div(mac.solve(mac.grad(p))); };

  Matrix b = -mac.div(af);
  remove_mean(b);
  Matrix p = Matrix::Zero(b.rows(), b.cols());
  StokesSolution out{VectorField(d), SampledField(cell_domain(d)), 0, {}, 0.0};

  const double bnorm = b.norm();
  if (bnorm > 0.0) {
    Matrix r = b;
    Matrix s = r;
    double rr = r.squaredNorm();
    for (int it = 1;; ++it) {
      Matrix q = schur(s);
      const double alpha = rr / s.cwiseProduct(q).sum();
      p += alpha * s;
      r -= alpha * q;
      remove_mean(r);
      const double next = r.squaredNorm();
      out.residuals.push_back(std::sqrt(next) / bnorm);
      out.iterations = it;
      if (out.residuals.back() <= opt.tol) break;
      if (it >= opt.max_iterations) {
        std::ostringstream os;
        os << "stokes_solve: no convergence after " << it << " iterations (relative residual "
           << out.residuals.back() << ", tolerance " << opt.tol << ")";
        throw solver_failure(os.str(), out.residuals);
      }
      s = r + (next / rr) * s;
      rr = next;
    }
    remove_mean(p);
  }

  const Faces gp = mac.grad(p);
  const Faces u = mac.solve({fi.u1 - gp.u1, fi.u2 - gp.u2});
  out.u = mac.full(d, u);
  out.p = SampledField(cell_domain(d), p.array());
  out.divergence = mac.div(u).cwiseAbs().maxCoeff();
  return out;
}

double stokes_residual(const VectorField& f, const StokesSolution& s) {
  const Domain& d = f.domain;
  const Mac mac(d);
  const Faces au = mac.apply(mac.interior(s.u));
  const Faces gp = mac.grad(s.p.values.matrix());
  const Faces fi = mac.interior(f);
  const double r = std::max((au.u1 + gp.u1 - fi.u1).cwiseAbs().maxCoeff(),
                            (au.u2 + gp.u2 - fi.u2).cwiseAbs().maxCoeff());
  const double fn = std::max(fi.u1.cwiseAbs().maxCoeff(), fi.u2.cwiseAbs().maxCoeff());
  return fn > 0.0 ? r / fn : r;
}

}  // namespace dini
