from ._semivariance import SemivarianceEstimate, semivariance, stop_loss_moment
