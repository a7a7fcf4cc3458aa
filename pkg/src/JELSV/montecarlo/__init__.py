from ._config import SimulationConfig, config_from_mapping, load_config
from ._distributions import (FAMILIES, DistributionSpec, cdf, make_spec, population_delta, population_semivariance,
                             quantile_function, replication_stream, sample_from)
from ._harness import (ReplicationOutcome, SimulationReport, SimulationRow, format_report_table, reports_to_frame,
                       run_power, run_replication, run_simulation, run_type1, write_report_csv)
