"""Distance-constrained graph embedding problems and solvers."""
