"""VQE workbench: statevector simulation, hardware-efficient ansatz, and
momentum-based optimizers with exact energy-evaluation accounting."""

__version__ = "0.1.0"
