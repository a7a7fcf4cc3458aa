from ._normal import (NormalTestResult, normal_cdf, normal_quantile, normal_test, psi_plugin,
                      two_sided_p_value)
