from ._samples import PooledSample, Sample, SortedIndex, empirical_cdf, pool, validate_sample
