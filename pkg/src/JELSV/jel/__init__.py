from ._jel import (P_VALUE_FLOOR, JelSolution, JelStatus, chi2_1_isf, chi2_1_sf, jel_statistic, jel_test,
                   solve_lambda)
