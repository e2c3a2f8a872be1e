#pragma once

#include <Eigen/Dense>

#include "trackkit/types.hpp"

namespace trackkit::assoc {

/// Measurement vector (u, v, gamma, h): box center, aspect ratio h/w, height.
using Measurement = Eigen::Vector4d;

/// Constant-velocity state (u, v, gamma, h, and their velocities).
struct KalmanState {
    Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 8> covariance = Eigen::Matrix<double, 8, 8>::Identity();
};

/// Process/measurement noise scales relative to the box height, following the
/// common DeepSORT parameterization.
struct KalmanParams {
    double pos_weight = 1.0 / 20.0;
    double vel_weight = 1.0 / 160.0;
};

Measurement box_to_measurement(const Box& b);
Box measurement_to_box(const Measurement& m);

/// Box of a state's current mean.
Box state_box(const KalmanState& s);

/// New state from a first measurement; velocities start at zero with wide
/// covariance.
KalmanState kalman_initiate(const Measurement& m, const KalmanParams& p = {});

/// Advance one frame: position += velocity, covariance = F P F^T + Q.
KalmanState kalman_predict(const KalmanState& s, const KalmanParams& p = {});

/// Standard linear correction with the measurement selecting the first four
/// state dimensions. Throws NumericalError when the innovation covariance is
/// not invertible.
KalmanState kalman_update(const KalmanState& s, const Measurement& m,
                          const KalmanParams& p = {});

/// Squared Mahalanobis distance of a measurement from the predicted
/// measurement distribution (innovation covariance includes measurement
/// noise).
double mahalanobis(const KalmanState& s, const Measurement& m,
                   const KalmanParams& p = {});

/// Project the state into measurement space: mean and innovation covariance.
void project(const KalmanState& s, const KalmanParams& p, Measurement& mean,
             Eigen::Matrix4d& cov);

/// 95% quantile of the chi-square distribution with 4 degrees of freedom; the
/// default Mahalanobis gate.
inline constexpr double kChi2Gate4d = 9.4877;

}  // namespace trackkit::assoc
