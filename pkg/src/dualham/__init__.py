"""Hamilton cycles in duals of even plane triangulations.

Pipeline: analyse the mod-4 cycle structure of the big-vertex hypothesis
graph, build a 2-colouring with no monochromatic cycle, split the
triangulation's vertices into two induced trees, and read the tree cut off
as a Hamilton cycle of the cubic dual.
"""

__version__ = "0.1.0"
