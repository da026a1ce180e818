"""Green's function toolkit for the linearized 1-D compressible Navier-Stokes system.

Modules:
    state: gas constitutive relations and linearization matrices.
    spectrum: symbol-matrix eigenvalues, expansions, approximate branches.
    projector: spectral projectors and their frequency expansions.
    green_singular: closed-form singular (Dirac-carrying) part.
    green_fourier: frequency-side assembly and inverse Fourier synthesis.
    heatkernel: heat kernel with piecewise-constant conductivity.
    effective: cutoff-interpolated effective kernels.
    solver: nonlinear solver, Picard iteration, decay diagnostics.
    cli: command-line interface.
"""

__version__ = "0.1.0"
