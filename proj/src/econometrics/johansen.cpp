#include "cspread/econometrics/johansen.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cspread/core/errors.hpp"

namespace cspread {

namespace {

// Rows indexed by g - q = 1..6.
constexpr std::array<std::array<double, 3>, 6> kTrace{{
    {2.9762, 4.1296, 6.9406},
    {10.4741, 12.3212, 16.3640},
    {21.7781, 24.2761, 29.5147},
    {37.0339, 40.1749, 46.5716},
    {56.2839, 60.0627, 67.6367},
    {79.5329, 83.9383, 92.7136},
}};

constexpr std::array<std::array<double, 3>, 6> kEigen{{
    {2.9762, 4.1296, 6.9406},
    {9.4748, 11.2246, 15.0923},
    {15.7175, 17.7961, 22.2519},
    {21.8370, 24.1592, 29.0609},
    {27.9160, 30.4428, 35.7359},
    {33.9271, 36.6301, 42.2333},
}};

void check_dim(int dim) {
    if (dim < 1 || dim > 6) throw std::invalid_argument("johansen: critical values tabulated for g - q in 1..6");
}

// Residuals of Y after regression on Z (Z may have no columns).
Eigen::MatrixXd partial_out(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& Z) {
    if (Z.cols() == 0) return Y;
    return Y - Z * Z.colPivHouseholderQr().solve(Y);
}

}  // namespace

std::array<double, 3> johansen_trace_critical(int dim) {
    check_dim(dim);
    return kTrace[static_cast<std::size_t>(dim - 1)];
}

std::array<double, 3> johansen_eigen_critical(int dim) {
    check_dim(dim);
    return kEigen[static_cast<std::size_t>(dim - 1)];
}

JohansenResult johansen(const Eigen::MatrixXd& levels, int k, ConfidenceLevel level) {
    const Eigen::Index n = levels.rows();
    const Eigen::Index g = levels.cols();
    if (g < 2 || g > 6) throw std::invalid_argument("johansen: need between 2 and 6 variables");
    if (k < 1) throw std::invalid_argument("johansen: VAR order must be at least 1");
    if (n <= g * k + 20) throw std::invalid_argument("johansen: too few observations for the VAR order");

    const Eigen::MatrixXd dx = levels.bottomRows(n - 1) - levels.topRows(n - 1);  // dx.row(i) = X_{i+1} - X_i
    const Eigen::Index T = n - k;
    // Observation t = k..n-1: dX_t = dx.row(t-1), X_{t-1} = levels.row(t-1).
    const Eigen::MatrixXd d0 = dx.bottomRows(T);
    const Eigen::MatrixXd l1 = levels.middleRows(k - 1, T);
    Eigen::MatrixXd lagged(T, g * (k - 1));
    for (int j = 1; j < k; ++j) lagged.middleCols(g * (j - 1), g) = dx.middleRows(k - 1 - j, T);

    const Eigen::MatrixXd r0 = partial_out(d0, lagged);
    const Eigen::MatrixXd r1 = partial_out(l1, lagged);
    const double tn = static_cast<double>(T);
    const Eigen::MatrixXd s00 = r0.transpose() * r0 / tn;
    const Eigen::MatrixXd s01 = r0.transpose() * r1 / tn;
    const Eigen::MatrixXd s11 = r1.transpose() * r1 / tn;

    const Eigen::LLT<Eigen::MatrixXd> l11(s11);
    const Eigen::LDLT<Eigen::MatrixXd> l00(s00);
    if (l11.info() != Eigen::Success || l00.info() != Eigen::Success || !l00.isPositive() ||
        l00.vectorD().minCoeff() <= std::numeric_limits<double>::epsilon() * s00.trace()) {
        throw NumericalError("johansen: singular moment matrix");
    }

    // S11^{-1/2'} S10 S00^{-1} S01 S11^{-1/2} in Cholesky form keeps the problem symmetric.
    const Eigen::MatrixXd a = l11.matrixL().solve(s01.transpose());
    Eigen::MatrixXd m = a * l00.solve(a.transpose());
    m = 0.5 * (m + m.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("johansen: eigen decomposition failed");

    JohansenResult out;
    out.lag_order = k;
    out.n_obs = static_cast<long>(T);
    out.eigenvalues = es.eigenvalues().reverse();
    const Eigen::MatrixXd u = es.eigenvectors().rowwise().reverse();
    out.vectors = l11.matrixU().solve(u);
    for (Eigen::Index j = 0; j < g; ++j) {
        const double lead = out.vectors(0, j);
        if (std::abs(lead) < std::numeric_limits<double>::min())
            throw NumericalError("johansen: eigenvector " + std::to_string(j) + " has zero first component");
        out.vectors.col(j) /= lead;
    }

    const Eigen::ArrayXd log_terms = (1.0 - out.eigenvalues.array().min(1.0 - 1e-300)).log() * (-tn);
    out.eigen_stats = log_terms.matrix();
    out.trace_stats.resize(g);
    double acc = 0.0;
    for (Eigen::Index q = g - 1; q >= 0; --q) {
        acc += log_terms[q];
        out.trace_stats[q] = acc;
    }

    out.trace_critical.resize(g, 3);
    out.eigen_critical.resize(g, 3);
    for (Eigen::Index q = 0; q < g; ++q) {
        const auto tc = johansen_trace_critical(static_cast<int>(g - q));
        const auto ec = johansen_eigen_critical(static_cast<int>(g - q));
        for (int c = 0; c < 3; ++c) {
            out.trace_critical(q, c) = tc[static_cast<std::size_t>(c)];
            out.eigen_critical(q, c) = ec[static_cast<std::size_t>(c)];
        }
    }

    const int col = static_cast<int>(level);
    out.selected_rank = static_cast<int>(g);
    for (Eigen::Index q = 0; q < g; ++q) {
        if (out.trace_stats[q] < out.trace_critical(q, col)) {
            out.selected_rank = static_cast<int>(q);
            break;
        }
    }
    return out;
}

int select_var_lag_bic(const Eigen::MatrixXd& levels, int max_lag) {
    const Eigen::Index n = levels.rows();
    const Eigen::Index g = levels.cols();
    if (max_lag < 1) throw std::invalid_argument("select_var_lag_bic: max_lag must be at least 1");
    if (n <= g * max_lag + 20) throw std::invalid_argument("select_var_lag_bic: too few observations");

    const Eigen::Index T = n - max_lag;
    const Eigen::MatrixXd y = levels.bottomRows(T);
    Eigen::MatrixXd x(T, g * max_lag);
    for (int j = 1; j <= max_lag; ++j) x.middleCols(g * (j - 1), g) = levels.middleRows(max_lag - j, T);

    const double tn = static_cast<double>(T);
    int best_k = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_lag; ++k) {
        const auto xk = x.leftCols(g * k);
        const Eigen::MatrixXd resid = y - xk * xk.colPivHouseholderQr().solve(y);
        const Eigen::MatrixXd sigma = resid.transpose() * resid / tn;
        const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success) throw NumericalError("select_var_lag_bic: singular residual covariance");
        const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        const double bic = logdet + std::log(tn) * static_cast<double>(k * g * g) / tn;
        if (bic < best) {
            best = bic;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace cspread
