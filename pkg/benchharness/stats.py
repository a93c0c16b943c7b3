#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Two-sided Mann-Whitney U test: exact null distribution for small tie-free
samples, normal approximation with tie and continuity correction otherwise

"""

# Imports
import numpy as np
from scipy import stats

EXACT_MAX_N = 8


def mann_whitney_u(sample_a, sample_b):
    """ Returns (U, p): U is the statistic of sample_a, p the two-sided p-value.
        The exact distribution is used when min(n, m) <= 8 and no value is tied. """
    a = np.asarray(sample_a, dtype=float).ravel()
    b = np.asarray(sample_b, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise ValueError("Both samples must be nonempty")

    # All values identical: no rank information at all
    pooled = np.concatenate((a,b))
    if np.all(pooled == pooled[0]):
        return a.size*b.size/2.0, 1.0

    ties = np.unique(pooled).size < pooled.size
    method = "exact" if (min(a.size,b.size) <= EXACT_MAX_N and not ties) else "asymptotic"
    result = stats.mannwhitneyu(a, b, use_continuity=True, alternative="two-sided", method=method)
    return float(result.statistic), float(min(1.0, result.pvalue))
