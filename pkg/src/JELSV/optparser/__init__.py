from ._describe import opt_describe_validate, prepare_describe_optparser
from ._IO import EXIT_ERROR
from ._semivar import opt_semivar_validate, prepare_semivar_optparser
from ._simulate import opt_simulate_validate, prepare_simulate_optparser
from ._test import opt_test_validate, prepare_test_optparser
