"""
zmeasures - z-measures on partitions, Kerov's SL(2) operators, the infinite
wedge and the hypergeometric kernel, with a command-line verification harness
"""

__version__ = "0.1.0"
