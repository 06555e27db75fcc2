"""SqueezeFlow - interval homotopy-perturbation solver for squeezing nanofluid flow."""

__version__ = "0.1.0"
