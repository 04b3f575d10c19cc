"""Integrating factors e^{r0} * prod(p_i^c_i) for dy/dx = M(x,y)/N(x,y)."""

__version__ = "0.1.0"
