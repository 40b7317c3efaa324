# Geometric entanglement of qubit pairs
__version__ = "0.1.0"
