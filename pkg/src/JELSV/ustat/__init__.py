from ._ustat import (DecomposedSums, DeltaEstimate, KernelArgs, PseudoValues, decompose, delta_fast, delta_naive,
                     jackknife_pseudovalues, jackknife_pseudovalues_naive, kernel_h)
