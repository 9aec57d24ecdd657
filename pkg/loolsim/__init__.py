"""L00L / p00p entanglement simulator.

A library and command-line tool that simulates the generation, two-photon
interference, measurement and reconstruction of unbalanced two-photon
Laguerre-Gaussian entangled states.
"""

__version__ = "0.1.0"
__author__ = "loolsim developers"
