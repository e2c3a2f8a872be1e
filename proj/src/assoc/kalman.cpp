#include "trackkit/kalman.hpp"

#include <cmath>

namespace trackkit::assoc {

namespace {

Eigen::Matrix<double, 8, 8> transition_matrix() {
    Eigen::Matrix<double, 8, 8> f = Eigen::Matrix<double, 8, 8>::Identity();
    for (int i = 0; i < 4; ++i) f(i, i + 4) = 1.0;  // dt = 1 frame
    return f;
}

Eigen::Matrix<double, 8, 8> process_noise(double h, const KalmanParams& p) {
    const double sp = p.pos_weight * h;
    const double sv = p.vel_weight * h;
    Eigen::Matrix<double, 8, 1> std;
    std << sp, sp, 1e-2, sp, sv, sv, 1e-5, sv;
    return std.array().square().matrix().asDiagonal();
}

Eigen::Matrix4d measurement_noise(double h, const KalmanParams& p) {
    const double sp = p.pos_weight * h;
    Eigen::Vector4d std;
    std << sp, sp, 1e-1, sp;
    return std.array().square().matrix().asDiagonal();
}

}  // namespace

Measurement box_to_measurement(const Box& b) {
    if (b.w <= 0 || b.h <= 0) throw DimensionError("box_to_measurement: empty box");
    return Measurement(b.u, b.v, b.h / b.w, b.h);
}

Box measurement_to_box(const Measurement& m) {
    const double gamma = m(2), h = m(3);
    if (gamma <= 0 || h <= 0) throw NumericalError("measurement_to_box: non-positive size");
    return Box{m(0), m(1), h / gamma, h};
}

Box state_box(const KalmanState& s) {
    return measurement_to_box(s.mean.head<4>());
}

KalmanState kalman_initiate(const Measurement& m, const KalmanParams& p) {
    KalmanState s;
    s.mean.head<4>() = m;
    const double h = m(3);
    Eigen::Matrix<double, 8, 1> std;
    std << 2 * p.pos_weight * h, 2 * p.pos_weight * h, 1e-2, 2 * p.pos_weight * h,
        10 * p.vel_weight * h, 10 * p.vel_weight * h, 1e-5, 10 * p.vel_weight * h;
    s.covariance = std.array().square().matrix().asDiagonal();
    return s;
}

KalmanState kalman_predict(const KalmanState& s, const KalmanParams& p) {
    static const Eigen::Matrix<double, 8, 8> f = transition_matrix();
    KalmanState out;
    out.mean = f * s.mean;
    out.covariance = f * s.covariance * f.transpose() + process_noise(s.mean(3), p);
    return out;
}

void project(const KalmanState& s, const KalmanParams& p, Measurement& mean,
             Eigen::Matrix4d& cov) {
    mean = s.mean.head<4>();
    cov = s.covariance.topLeftCorner<4, 4>() + measurement_noise(s.mean(3), p);
}

KalmanState kalman_update(const KalmanState& s, const Measurement& m,
                          const KalmanParams& p) {
    if (!m.allFinite()) throw NumericalError("kalman_update: non-finite measurement");
    Measurement mean;
    Eigen::Matrix4d cov;
    project(s, p, mean, cov);

    const Eigen::LLT<Eigen::Matrix4d> chol(cov);
    if (chol.info() != Eigen::Success)
        throw NumericalError("kalman_update: innovation covariance not invertible");

    // Kalman gain K = P H^T S^-1, with H selecting the first four dims.
    const Eigen::Matrix<double, 8, 4> pht = s.covariance.leftCols<4>();
    const Eigen::Matrix<double, 8, 4> gain = chol.solve(pht.transpose()).transpose();

    KalmanState out;
    out.mean = s.mean + gain * (m - mean);
    out.covariance = s.covariance - gain * pht.transpose();
    // Symmetrize against roundoff.
    out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
    return out;
}

double mahalanobis(const KalmanState& s, const Measurement& m, const KalmanParams& p) {
    Measurement mean;
    Eigen::Matrix4d cov;
    project(s, p, mean, cov);
    const Eigen::LLT<Eigen::Matrix4d> chol(cov);
    if (chol.info() != Eigen::Success)
        throw NumericalError("mahalanobis: projected covariance not invertible");
    const Eigen::Vector4d d = m - mean;
    return d.dot(chol.solve(d));
}

}  // namespace trackkit::assoc
