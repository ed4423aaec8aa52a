# SPDX-License-Identifier: Apache-2.0
# Ripples of every 3-of-6 subarray for the toy geometry in test_pattern.cpp.
import itertools
import warnings

from minimax_oracle import design

warnings.filterwarnings("ignore")
for s in itertools.combinations(range(6), 3):
    rho, _ = design(list(s), 0.25, 4, 0.5, -20, 20, 5, 1.0, 0.1, "center")
    print("{{%d, %d, %d}, %.8f}," % (*s, rho))
