#include "oversamp/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oversamp {

ExactPolyMatrix as_poly_matrix(const ExactPencil& p) {
  return ExactPolyMatrix::affine(p.A, -p.B);
}

void KroneckerStructure::check_sizes() const {
  std::size_t n = 0;
  std::size_t m = 0;
  for (int e : right_minimal_indices) {
    n += static_cast<std::size_t>(e) + 1;
    m += static_cast<std::size_t>(e);
  }
  for (int e : left_minimal_indices) {
    n += static_cast<std::size_t>(e);
    m += static_cast<std::size_t>(e) + 1;
  }
  auto add_regular = [&](const std::vector<int>& blocks) {
    for (int b : blocks) {
      n += static_cast<std::size_t>(b);
      m += static_cast<std::size_t>(b);
    }
  };
  add_regular(zero_jordan_blocks);
  add_regular(infinite_blocks);
  for (const auto& ev : finite_nonzero) add_regular(ev.block_sizes);
  if (n != cols || m != rows) {
    std::ostringstream os;
    os << "Kronecker blocks account for " << m << "x" << n << " but the pencil is " << rows << "x" << cols;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

int KroneckerStructure::finite_multiplicity() const {
  int total = 0;
  for (int b : zero_jordan_blocks) total += b;
  for (const auto& ev : finite_nonzero)
    for (int b : ev.block_sizes) total += b;
  return total;
}

bool KroneckerStructure::same_structure(const KroneckerStructure& o, double tol) const {
  if (rows != o.rows || cols != o.cols || right_minimal_indices != o.right_minimal_indices ||
      left_minimal_indices != o.left_minimal_indices || zero_jordan_blocks != o.zero_jordan_blocks ||
      infinite_blocks != o.infinite_blocks || finite_nonzero.size() != o.finite_nonzero.size()) {
    return false;
  }
  std::vector<bool> used(o.finite_nonzero.size(), false);
  for (const auto& ev : finite_nonzero) {
    bool found = false;
    for (std::size_t i = 0; i < o.finite_nonzero.size() && !found; ++i) {
      if (used[i]) continue;
      const auto& other = o.finite_nonzero[i];
      if (std::abs(ev.value - other.value) <= tol * std::max(1.0, std::abs(ev.value)) &&
          ev.block_sizes == other.block_sizes) {
        used[i] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

/// Singular-value thresholding with an explicit ambiguity band.
class RankJudge {
 public:
  RankJudge(double scale, const StaircaseOptions& opts)
      : threshold_(opts.tol * (scale > 0.0 ? scale : 1.0)), factor_(opts.ambiguity_factor) {}

  std::size_t operator()(const Eigen::VectorXd& sv, const char* where) const {
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      const double s = sv(i);
      if (s > threshold_ / factor_ && s < threshold_ * factor_) {
        std::ostringstream os;
        os << "ambiguous rank decision in " << where << ": singular value " << s << " near threshold "
           << threshold_;
        throw RankAmbiguousError(os.str(), std::vector<double>(sv.data(), sv.data() + sv.size()), threshold_);
      }
      if (s > threshold_) ++rank;
    }
    return rank;
  }

 private:
  double threshold_;
  double factor_;
};

template <class Mat>
struct RzResult {
  std::vector<int> nullities;  // n_i
  std::vector<int> row_ranks;  // m_i
  Mat A;
  Mat B;
};

// One pass of the right staircase: repeatedly compress the null columns of A
// to the front, row-compress the matching columns of B, deflate. Reveals the
// right minimal indices and the Jordan structure at zero.
template <class Mat>
RzResult<Mat> right_staircase(Mat A, Mat B, const RankJudge& judge) {
  RzResult<Mat> out;
  while (A.cols() > 0) {
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    Eigen::Index nullity = n;
    if (m > 0) {
      Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
      const auto rank_a = static_cast<Eigen::Index>(judge(svd.singularValues(), "column compression"));
      nullity = n - rank_a;
      if (nullity == 0) break;
      Mat v(n, n);
      v << svd.matrixV().rightCols(nullity), svd.matrixV().leftCols(rank_a);
      A = (A * v).eval();
      B = (B * v).eval();
      A.leftCols(nullity).setZero();
    }
    Eigen::Index rank_b = 0;
    if (m > 0) {
      Eigen::JacobiSVD<Mat> svd(B.leftCols(nullity), Eigen::ComputeFullU);
      rank_b = static_cast<Eigen::Index>(judge(svd.singularValues(), "row compression"));
      const Mat uh = svd.matrixU().adjoint();
      A = (uh * A).eval();
      B = (uh * B).eval();
      B.block(rank_b, 0, m - rank_b, nullity).setZero();
    }
    out.nullities.push_back(static_cast<int>(nullity));
    out.row_ranks.push_back(static_cast<int>(rank_b));
    A = A.bottomRightCorner(m - rank_b, n - nullity).eval();
    B = B.bottomRightCorner(m - rank_b, n - nullity).eval();
  }
  out.A = std::move(A);
  out.B = std::move(B);
  return out;
}

struct RightStructure {
  std::vector<int> minimal_indices;
  std::vector<int> zero_blocks;
};

RightStructure decode(const std::vector<int>& n, const std::vector<int>& m) {
  RightStructure rs;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const int singular = n[i] - m[i];
    const int next = i + 1 < n.size() ? n[i + 1] : 0;
    const int jordan = m[i] - next;
    if (singular < 0 || jordan < 0) {
      throw RankAmbiguousError("staircase produced an inconsistent dimension sequence", {}, 0.0);
    }
    rs.minimal_indices.insert(rs.minimal_indices.end(), static_cast<std::size_t>(singular), static_cast<int>(i));
    rs.zero_blocks.insert(rs.zero_blocks.end(), static_cast<std::size_t>(jordan), static_cast<int>(i) + 1);
  }
  return rs;
}

double pencil_scale(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return std::max(a.norm(), b.norm());
}

}  // namespace

KroneckerStructure staircase(const FloatPencil& p, const StaircaseOptions& opts) {
  KroneckerStructure ks;
  ks.rows = p.rows();
  ks.cols = p.cols();
  const Eigen::MatrixXd a0 = to_eigen(p.A);
  const Eigen::MatrixXd b0 = to_eigen(p.B);
  const RankJudge judge(pencil_scale(a0, b0), opts);

  // Right singular part and zero eigenvalue.
  auto rz1 = right_staircase<Eigen::MatrixXd>(a0, b0, judge);
  auto right = decode(rz1.nullities, rz1.row_ranks);
  ks.right_minimal_indices = right.minimal_indices;
  ks.zero_jordan_blocks = right.zero_blocks;

  // Infinite eigenvalue: zero structure of the dual pencil B - lambda A.
  auto rz2 = right_staircase<Eigen::MatrixXd>(rz1.B, rz1.A, judge);
  auto dual = decode(rz2.nullities, rz2.row_ranks);
  if (!dual.minimal_indices.empty()) {
    throw RankAmbiguousError("right singular blocks reappeared in the dual pass", {}, 0.0);
  }
  ks.infinite_blocks = dual.zero_blocks;

  // Left singular part: right structure of the transposed remainder.
  auto rz3 = right_staircase<Eigen::MatrixXd>(rz2.B.transpose(), rz2.A.transpose(), judge);
  auto left = decode(rz3.nullities, rz3.row_ranks);
  if (!left.zero_blocks.empty()) {
    throw RankAmbiguousError("zero eigenvalue reappeared in the transposed pass", {}, 0.0);
  }
  ks.left_minimal_indices = left.minimal_indices;

  // What is left is square and regular with finite nonzero eigenvalues only.
  const Eigen::MatrixXd a3 = rz3.A.transpose();
  const Eigen::MatrixXd b3 = rz3.B.transpose();
  if (a3.rows() != a3.cols()) {
    throw RankAmbiguousError("regular core is not square", {}, 0.0);
  }
  if (a3.rows() > 0) {
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(a3, b3, false);
    if (ges.info() != Eigen::Success) throw Error(ErrorKind::RankAmbiguous, "QZ iteration failed");
    const Eigen::VectorXcd alphas = ges.alphas();
    const Eigen::VectorXd betas = ges.betas();
    std::vector<Complex> finite;
    for (Eigen::Index i = 0; i < alphas.size(); ++i) {
      const double mag = std::max(std::abs(alphas(i)), std::abs(betas(i)));
      if (std::abs(betas(i)) <= opts.tol * mag || std::abs(alphas(i)) <= opts.tol * mag) {
        // Zero and infinite eigenvalues were deflated above; seeing one here
        // means the earlier rank decisions were not trustworthy.
        throw RankAmbiguousError("regular core still carries a zero or infinite eigenvalue", {}, 0.0);
      }
      finite.push_back(alphas(i) / betas(i));
    }
    std::sort(finite.begin(), finite.end(), [](Complex x, Complex y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    // Single-linkage clustering of nearby eigenvalues.
    std::vector<std::vector<Complex>> clusters;
    std::vector<bool> taken(finite.size(), false);
    for (std::size_t i = 0; i < finite.size(); ++i) {
      if (taken[i]) continue;
      std::vector<Complex> cluster{finite[i]};
      taken[i] = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t j = 0; j < finite.size(); ++j) {
          if (taken[j]) continue;
          for (const auto& c : cluster) {
            if (std::abs(finite[j] - c) <= opts.cluster_tol * std::max(1.0, std::abs(c))) {
              cluster.push_back(finite[j]);
              taken[j] = true;
              grew = true;
              break;
            }
          }
        }
      }
      clusters.push_back(std::move(cluster));
    }
    const Eigen::MatrixXcd a3c = a3.cast<Complex>();
    const Eigen::MatrixXcd b3c = b3.cast<Complex>();
    for (const auto& cluster : clusters) {
      Complex mean{};
      for (const auto& c : cluster) mean += c;
      mean /= static_cast<double>(cluster.size());
      const Eigen::MatrixXcd shifted = a3c - mean * b3c;
      const RankJudge local(std::max(shifted.norm(), b3c.norm()), opts);
      auto rz = right_staircase<Eigen::MatrixXcd>(shifted, b3c, local);
      auto st = decode(rz.nullities, rz.row_ranks);
      int total = 0;
      for (int b : st.zero_blocks) total += b;
      if (!st.minimal_indices.empty() || total != static_cast<int>(cluster.size())) {
        throw RankAmbiguousError("Jordan structure at a finite eigenvalue could not be resolved", {}, 0.0);
      }
      ks.finite_nonzero.push_back({mean, st.zero_blocks});
    }
  }

  std::sort(ks.right_minimal_indices.begin(), ks.right_minimal_indices.end());
  std::sort(ks.left_minimal_indices.begin(), ks.left_minimal_indices.end());
  std::sort(ks.zero_jordan_blocks.begin(), ks.zero_jordan_blocks.end());
  std::sort(ks.infinite_blocks.begin(), ks.infinite_blocks.end());
  for (auto& ev : ks.finite_nonzero) std::sort(ev.block_sizes.begin(), ev.block_sizes.end());
  ks.check_sizes();
  return ks;
}

KroneckerStructure staircase(const ExactPencil& p, const StaircaseOptions& opts) {
  return staircase(p.cast<double>(), opts);
}

std::size_t normal_rank(const FloatPencil& p, std::mt19937_64& rng, double tol, int probes) {
  const Eigen::MatrixXcd a = to_eigen(p.A).cast<Complex>();
  const Eigen::MatrixXcd b = to_eigen(p.B).cast<Complex>();
  if (a.size() == 0) return 0;
  std::normal_distribution<double> normal;
  std::size_t best = 0;
  for (int k = 0; k < probes; ++k) {
    const Complex lambda{normal(rng), normal(rng)};
    const Eigen::MatrixXcd h = a - lambda * b;
    const double scale = std::max(a.norm(), std::abs(lambda) * b.norm());
    if (scale == 0.0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol * scale) ++rank;
    best = std::max(best, rank);
  }
  return best;
}

std::size_t normal_rank(const ExactPencil& p) { return normal_rank(as_poly_matrix(p)); }

SpectrumOracle spectrum_oracle(const ExactPencil& p) {
  const ExactPolyMatrix h = as_poly_matrix(p);
  SpectrumOracle out;
  out.normal_rank = normal_rank(h);
  out.minor_gcd = ExactPoly::one();
  if (out.normal_rank == 0) return out;
  const auto row_sets = combinations(h.rows(), out.normal_rank);
  const auto col_sets = combinations(h.cols(), out.normal_rank);
  ExactPoly g;
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      ExactPoly d = determinant(h.submatrix(rs, cs));
      if (d.is_zero()) continue;
      g = g.is_zero() ? poly_gcd({d}) : poly_gcd({g, d});
      if (g.degree() == 0) {
        out.minor_gcd = g;
        return out;
      }
    }
  }
  out.minor_gcd = g;
  return out;
}

std::vector<Complex> polynomial_roots(const ExactPoly& p) {
  std::vector<Complex> roots;
  if (p.is_zero()) throw Error(ErrorKind::AllZero, "roots of the zero polynomial");
  const int v = p.valuation();
  roots.insert(roots.end(), static_cast<std::size_t>(std::max(v, 0)), Complex{});
  const ExactPoly q = p.shifted(-v);
  const int d = q.degree();
  if (d == 0) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  const double lead = q.leading().get_d();
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -q.coeff(i).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

bool oracle_agrees(const KroneckerStructure& k, const SpectrumOracle& o, double root_tol) {
  if (k.normal_rank() != o.normal_rank) return false;
  if (k.has_right_singular_part() != (o.normal_rank < k.cols)) return false;
  if (o.minor_gcd.degree() != k.finite_multiplicity()) return false;
  int zero_mult = 0;
  for (int b : k.zero_jordan_blocks) zero_mult += b;
  if (o.zero_multiplicity() != zero_mult) return false;
  // Roots of the squarefree factors are simple, so each carries an exact
  // multiplicity and stays well conditioned.
  std::vector<std::pair<Complex, int>> roots;
  for (const auto& [f, mult] : squarefree_factors(o.minor_gcd.shifted(-o.zero_multiplicity())))
    for (const auto& r : polynomial_roots(f)) roots.emplace_back(r, mult);
  std::vector<bool> used(roots.size(), false);
  for (const auto& ev : k.finite_nonzero) {
    int need = 0;
    for (int b : ev.block_sizes) need += b;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!used[i] && std::abs(roots[i].first - ev.value) <= root_tol * std::max(1.0, std::abs(ev.value))) {
        used[i] = true;
        need -= roots[i].second;
      }
    }
    if (need != 0) return false;
  }
  return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

}  // namespace oversamp
